#pragma once

#include <vector>

#include "code.hpp"
#include "error.hpp"
#include "smoothing.hpp"

namespace knotoid {

namespace detail {

/// Boundary cycles of the ribbon graph: 4-valent crossings with rotation (in0, in1, out0, out1),
/// 1-valent endpoints. Faces are the orbits of rotation-successor after arc-partner.
inline int ribbon_faces(const Diagram& d) {
    const PortGraph g = port_graph(d);
    const int ports = g.ports();
    auto rot_next = [&](int port) {
        if (g.is_endpoint(port)) return port;
        const int p = PortGraph::passage(port);
        const int c = d.pass_crossing[p];
        const int strand = d.pass_strand[p];
        const bool out = port & 1;
        // slot order: in0=0, in1=1, out0=2, out1=3
        const int slot = (out ? 2 : 0) + strand;
        const int nxt = (slot + 1) % 4;
        const int q = d.cross_pass[c][nxt % 2];
        return nxt >= 2 ? PortGraph::out(q) : PortGraph::in(q);
    };
    std::vector<char> seen(static_cast<std::size_t>(ports), 0);
    int faces = 0;
    for (int h = 0; h < ports; ++h) {
        if (seen[h]) continue;
        ++faces;
        int cur = h;
        while (!seen[cur]) {
            seen[cur] = 1;
            cur = rot_next(g.arc[cur]);
        }
    }
    return faces;
}

}  // namespace detail

/// Genus 1 + ((n-1) - faces)/2 of the closed surface around a single-leg diagram.
inline int carter_genus(const KnotoidCode& code) {
    if (!code.is_single_leg()) throw Error(ErrorKind::Shape, "the ribbon genus needs exactly one open leg");
    const Diagram d = diagram_of(code);
    const int n = d.crossings();
    const int faces = detail::ribbon_faces(d);
    const int excess = (n - 1) - faces;
    if (excess % 2 != 0) throw Error(ErrorKind::Parity, "odd Euler defect in ribbon surface");
    return 1 + excess / 2;
}

}  // namespace knotoid
