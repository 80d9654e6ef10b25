#pragma once

#include <set>
#include <string>

#include "code.hpp"

namespace knotoid {

struct OddWritheReport {
    std::set<std::string> odd_crossings;
    int value = 0;
};

/// Sum of signs over odd self-crossings; link crossings are skipped.
inline OddWritheReport odd_writhe(const KnotoidCode& code) {
    OddWritheReport r;
    for (const auto& info : classify_crossings(code)) {
        if (info.parity != Parity::Odd) continue;
        r.odd_crossings.insert(info.label);
        r.value += info.sign;
    }
    return r;
}

}  // namespace knotoid
