#pragma once

// Bundled triangulations.

#include "exotic/simplicial.hpp"

namespace exotic::builtin {

/// Boundary of the 5-simplex on vertices 1..6 (a 4-sphere), with the
/// pentachoron omitting vertex i carrying sign (-1)^(i-1).
inline std::vector<Pentachoron> boundary_5_simplex() {
    std::vector<Pentachoron> out;
    for (Vertex omit = 1; omit <= 6; ++omit) {
        Pentachoron u{};
        std::size_t j = 0;
        for (Vertex v = 1; v <= 6; ++v)
            if (v != omit) u[j++] = v;
        if ((omit - 1) % 2) std::swap(u[0], u[1]);
        out.push_back(u);
    }
    return out;
}

/// Kühnel's 9-vertex, 3-neighborly complex projective plane, consistently
/// oriented. Same data as assets/cp2_9.json.
inline std::vector<Pentachoron> cp2_9() {
    return {
        {1, 2, 3, 4, 5},
        {2, 1, 3, 4, 6},
        {1, 2, 3, 5, 6},
        {2, 1, 4, 5, 9},
        {1, 2, 4, 6, 7},
        {1, 2, 4, 7, 9},
        {2, 1, 5, 6, 8},
        {2, 1, 5, 8, 9},
        {2, 1, 6, 7, 8},
        {1, 2, 7, 8, 9},
        {1, 3, 4, 5, 7},
        {3, 1, 4, 6, 8},
        {1, 3, 4, 7, 8},
        {1, 3, 5, 6, 9},
        {3, 1, 5, 7, 9},
        {1, 3, 6, 8, 9},
        {3, 1, 7, 8, 9},
        {1, 4, 5, 7, 9},
        {1, 4, 6, 7, 8},
        {5, 1, 6, 8, 9},
        {3, 2, 4, 5, 8},
        {2, 3, 4, 6, 9},
        {3, 2, 4, 8, 9},
        {3, 2, 5, 6, 7},
        {3, 2, 5, 7, 8},
        {2, 3, 6, 7, 9},
        {2, 3, 7, 8, 9},
        {4, 2, 5, 8, 9},
        {4, 2, 6, 7, 9},
        {5, 2, 6, 7, 8},
        {4, 3, 5, 7, 8},
        {3, 4, 6, 8, 9},
        {3, 5, 6, 7, 9},
        {4, 5, 6, 7, 8},
        {5, 4, 6, 7, 9},
        {4, 5, 6, 8, 9}
    };
}

inline const std::vector<std::string>& names() {
    static const std::vector<std::string> n{"boundary-5-simplex", "cp2-9"};
    return n;
}

inline std::vector<Pentachoron> by_name(const std::string& name) {
    if (name == "boundary-5-simplex") return boundary_5_simplex();
    if (name == "cp2-9") return cp2_9();
    throw ValidationError("unknown builtin triangulation '" + name + "'");
}

}  // namespace exotic::builtin
