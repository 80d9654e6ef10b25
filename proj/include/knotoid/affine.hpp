#pragma once

#include <string>
#include <vector>

#include "code.hpp"
#include "error.hpp"
#include "poly.hpp"

namespace knotoid {

struct WeightRow {
    std::string label;
    int sign = 1;
    Parity parity = Parity::Even;
    int a = 0;  ///< label of the left-incoming arc
    int b = 0;  ///< label of the right-incoming arc
    int w_plus = 0;
    int w_minus = 0;
    int w_selected = 0;
};

struct WeightChart {
    std::vector<WeightRow> rows;
};

namespace detail {

inline void require_single_component(const KnotoidCode& code, const char* what) {
    if (!code.is_single_component())
        throw Error(ErrorKind::Shape, std::string(what) + " is defined for single-component codes only");
}

/// Arc k enters passage k; arc 0 is labelled 0 and crossing passage k adds -1 on the
/// left-incoming strand, +1 on the right-incoming one.
inline std::vector<int> arc_labels(const Diagram& d) {
    const int len = d.passages();
    const bool leg = d.comps.front().kind == ComponentKind::OpenLeg;
    std::vector<int> labels{0};
    for (int p = 0; p < len; ++p) labels.push_back(labels.back() + (d.pass_strand[p] == 0 ? -1 : 1));
    if (!leg) labels.pop_back();  // the closing arc is arc 0 again
    return labels;
}

}  // namespace detail

/// Labels per arc in traversal order: length+1 arcs on a leg, length arcs on a loop.
inline std::vector<int> arc_labels(const KnotoidCode& code) {
    detail::require_single_component(code, "arc labelling");
    return detail::arc_labels(diagram_of(code));
}

inline WeightChart weight_chart(const KnotoidCode& code) {
    detail::require_single_component(code, "the weight chart");
    const Diagram d = diagram_of(code);
    const auto labels = detail::arc_labels(d);
    const auto par = crossing_parities(d);
    WeightChart chart;
    for (int c = 0; c < d.crossings(); ++c) {
        WeightRow row;
        row.label = d.labels[c];
        row.sign = d.cross_sign[c];
        row.parity = par[c];
        row.a = labels[d.cross_pass[c][0]];
        row.b = labels[d.cross_pass[c][1]];
        row.w_plus = row.a - (row.b + 1);
        row.w_minus = row.b - (row.a - 1);
        row.w_selected = row.sign > 0 ? row.w_plus : row.w_minus;
        chart.rows.push_back(row);
    }
    return chart;
}

/// Sum over crossings of sign (t^w - 1).
inline AffinePoly affine_index(const KnotoidCode& code) {
    AffinePoly p;
    for (const auto& row : weight_chart(code).rows) {
        p.add_term(row.w_selected, row.sign);
        p.add_term(0, -row.sign);
    }
    return p;
}

}  // namespace knotoid
