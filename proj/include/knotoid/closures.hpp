#pragma once

#include <optional>

#include "affine.hpp"
#include "arrow.hpp"
#include "code.hpp"
#include "error.hpp"
#include "genus.hpp"

namespace knotoid {

/// The single open leg becomes a loop with the same passage sequence; loops are untouched.
inline KnotoidCode virtual_closure(const KnotoidCode& code) {
    if (code.leg_count() != 1) throw Error(ErrorKind::Shape, "virtual closure needs exactly one open leg");
    KnotoidCode out = code;
    for (auto& comp : out.components) comp.kind = ComponentKind::Loop;
    return out;
}

struct HeightBound {
    int affine_bound = 0;
    int lambda_bound = 0;
    int lower = 0;
    std::optional<int> declared_upper;
    bool formal = false;  ///< bounds are theorems only for classical input

    bool consistent() const { return !declared_upper || lower <= *declared_upper; }
};

inline HeightBound height_bounds(const KnotoidCode& code, int limit = default_state_limit) {
    if (!code.is_single_leg()) throw Error(ErrorKind::Shape, "height bounds need a single open leg");
    HeightBound h;
    h.affine_bound = max_degree(affine_index(code));
    h.lambda_bound = arrow_polynomial(code, limit).lambda_degree();
    h.lower = std::max(h.affine_bound, h.lambda_bound);
    h.declared_upper = code.declared_height_upper();
    h.formal = !code.declared_classical();
    return h;
}

}  // namespace knotoid
