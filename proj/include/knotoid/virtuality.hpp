#pragma once

#include <string>

#include "affine.hpp"
#include "arrow.hpp"
#include "code.hpp"
#include "parity_bracket.hpp"

namespace knotoid {

struct VirtualityReport {
    bool affine_asymmetric = false;
    bool k_degree_positive = false;
    bool irreducible_parity_graph = false;

    bool non_classical() const { return affine_asymmetric || k_degree_positive || irreducible_parity_graph; }
    std::string verdict() const { return non_classical() ? "provably non-classical" : "inconclusive"; }
};

/// Each flag is an obstruction to classicality; the affine flag is only evaluated on
/// single-component codes.
inline VirtualityReport detect_virtuality(const KnotoidCode& code, int limit = default_state_limit) {
    VirtualityReport r;
    if (code.is_single_component()) r.affine_asymmetric = !is_symmetric(affine_index(code));
    r.k_degree_positive = arrow_polynomial(code, limit).k_degree() > 0;
    r.irreducible_parity_graph = !parity_bracket(code, limit).graph_free();
    return r;
}

}  // namespace knotoid
