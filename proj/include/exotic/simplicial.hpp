#pragma once

// Triangulation data model: oriented pentachora, their face lattice with
// ascending canonical keys, incidence tables and orientation signs.

#include "exotic/core.hpp"

#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>

namespace exotic {

namespace detail {

template <std::size_t K, std::size_t N>
std::vector<Simplex<K>> k_subsets(const Simplex<N>& sorted_vertices) {
    static_assert(K <= N);
    std::vector<Simplex<K>> out;
    std::array<bool, N> pick{};
    std::fill(pick.begin(), pick.begin() + K, true);
    do {
        Simplex<K> s{};
        std::size_t j = 0;
        for (std::size_t i = 0; i < N; ++i)
            if (pick[i]) s[j++] = sorted_vertices[i];
        out.push_back(s);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

/// Face of `s` obtained by omitting position p.
template <std::size_t N>
Simplex<N - 1> omit(const Simplex<N>& s, std::size_t p) {
    Simplex<N - 1> out{};
    for (std::size_t i = 0, j = 0; i < N; ++i)
        if (i != p) out[j++] = s[i];
    return out;
}

}  // namespace detail

class Triangulation {
public:
    /// Builds the face lattice. Throws ValidationError on repeated vertices
    /// or vertex ids that do not cover 1..N0.
    static Triangulation build(std::vector<Pentachoron> pentachora) {
        if (pentachora.empty()) throw ValidationError("triangulation has no pentachora");
        Triangulation tri;
        Vertex max_id = 0;
        std::set<Vertex> used;
        for (const auto& u : pentachora) {
            const auto key = sorted(u);
            for (std::size_t i = 0; i < 5; ++i) {
                if (key[i] < 1) throw ValidationError("vertex id below 1 in pentachoron [" + to_string(u) + "]");
                if (i && key[i] == key[i - 1])
                    throw ValidationError("repeated vertex in pentachoron [" + to_string(u) + "]");
                used.insert(key[i]);
                max_id = std::max(max_id, key[i]);
            }
        }
        if (static_cast<Vertex>(used.size()) != max_id) {
            std::string missing;
            for (Vertex v = 1; v <= max_id; ++v)
                if (!used.count(v)) missing += (missing.empty() ? "" : ",") + std::to_string(v);
            throw ValidationError("vertex ids do not cover 1.." + std::to_string(max_id) + "; unused: " + missing);
        }
        tri.vertex_count_ = max_id;
        tri.pentachora_ = std::move(pentachora);

        std::set<Pentachoron> seen;
        std::set<Tetrahedron> tets;
        std::set<Triangle> tris;
        std::set<Edge> edges;
        for (const auto& u : tri.pentachora_) {
            const auto key = sorted(u);
            if (!seen.insert(key).second)
                throw ValidationError("pentachoron [" + to_string(u) + "] listed twice");
            for (const auto& t : detail::k_subsets<4>(key)) tets.insert(t);
            for (const auto& s : detail::k_subsets<3>(key)) tris.insert(s);
            for (const auto& e : detail::k_subsets<2>(key)) edges.insert(e);
        }
        tri.tetrahedra_.assign(tets.begin(), tets.end());
        tri.triangles_.assign(tris.begin(), tris.end());
        tri.edges_.assign(edges.begin(), edges.end());
        for (std::size_t i = 0; i < tri.tetrahedra_.size(); ++i) tri.tet_index_[tri.tetrahedra_[i]] = static_cast<int>(i);
        for (std::size_t i = 0; i < tri.triangles_.size(); ++i) tri.tri_index_[tri.triangles_[i]] = static_cast<int>(i);
        for (std::size_t i = 0; i < tri.edges_.size(); ++i) tri.edge_index_[tri.edges_[i]] = static_cast<int>(i);

        tri.tet_cofaces_.assign(tri.tetrahedra_.size(), {});
        for (std::size_t u = 0; u < tri.pentachora_.size(); ++u) {
            const auto key = sorted(tri.pentachora_[u]);
            std::array<int, 5> faces{};
            for (std::size_t p = 0; p < 5; ++p) {
                faces[p] = tri.tet_index_.at(detail::omit(key, p));
                tri.tet_cofaces_[faces[p]].push_back(static_cast<int>(u));
            }
            tri.pent_tets_.push_back(faces);
        }
        return tri;
    }

    int vertex_count() const { return vertex_count_; }
    int count(int dim) const {
        switch (dim) {
            case 0: return vertex_count_;
            case 1: return static_cast<int>(edges_.size());
            case 2: return static_cast<int>(triangles_.size());
            case 3: return static_cast<int>(tetrahedra_.size());
            case 4: return static_cast<int>(pentachora_.size());
            default: throw ContractViolation("dimension out of range");
        }
    }

    int euler_characteristic() const { return count(0) - count(1) + count(2) - count(3) + count(4); }

    /// Pentachora as given; the tuple order carries the orientation.
    const std::vector<Pentachoron>& pentachora() const { return pentachora_; }
    const std::vector<Tetrahedron>& tetrahedra() const { return tetrahedra_; }
    const std::vector<Triangle>& triangles() const { return triangles_; }
    const std::vector<Edge>& edges() const { return edges_; }

    Pentachoron sorted_pentachoron(int u) const { return sorted(pentachora_.at(u)); }

    /// Orientation of pentachoron u relative to its ascending key.
    int parity(int u) const { return permutation_sign(pentachora_.at(u)); }

    /// Index of a simplex given in any vertex order; -1 when absent.
    template <std::size_t N>
    int find(const Simplex<N>& s) const {
        const auto key = sorted(s);
        const auto& table = index_table<N>();
        auto it = table.find(key);
        return it == table.end() ? -1 : it->second;
    }

    template <std::size_t N>
    int index(const Simplex<N>& s) const {
        const int i = find(s);
        if (i < 0) throw ContractViolation("simplex [" + to_string(s) + "] is not in the triangulation");
        return i;
    }

    /// The five tetrahedra of u, the face opposite the lowest vertex first.
    const std::array<int, 5>& pentachoron_tetrahedra(int u) const { return pent_tets_.at(u); }

    /// Edges of u in lexicographic order of their ascending keys.
    std::array<int, 10> pentachoron_edges(int u) const {
        std::array<int, 10> out{};
        const auto subs = detail::k_subsets<2>(sorted_pentachoron(u));
        for (std::size_t i = 0; i < 10; ++i) out[i] = edge_index_.at(subs[i]);
        return out;
    }

    std::array<int, 10> pentachoron_triangles(int u) const {
        std::array<int, 10> out{};
        const auto subs = detail::k_subsets<3>(sorted_pentachoron(u));
        for (std::size_t i = 0; i < 10; ++i) out[i] = tri_index_.at(subs[i]);
        return out;
    }

    const std::vector<int>& tetrahedron_cofaces(int t) const { return tet_cofaces_.at(t); }

    /// Position of tetrahedron t in pentachoron_tetrahedra(u), or -1.
    int local_position(int u, int t) const {
        const auto& f = pent_tets_.at(u);
        for (int p = 0; p < 5; ++p)
            if (f[p] == t) return p;
        return -1;
    }

private:
    template <std::size_t N>
    const std::map<Simplex<N>, int>& index_table() const {
        if constexpr (N == 2) return edge_index_;
        else if constexpr (N == 3) return tri_index_;
        else if constexpr (N == 4) return tet_index_;
        else static_assert(N >= 2 && N <= 4, "no index for this dimension");
    }

    int vertex_count_ = 0;
    std::vector<Pentachoron> pentachora_;
    std::vector<Tetrahedron> tetrahedra_;
    std::vector<Triangle> triangles_;
    std::vector<Edge> edges_;
    std::map<Tetrahedron, int> tet_index_;
    std::map<Triangle, int> tri_index_;
    std::map<Edge, int> edge_index_;
    std::vector<std::vector<int>> tet_cofaces_;
    std::vector<std::array<int, 5>> pent_tets_;
};

/// Sign e such that e * (ascending key of t) is the orientation induced on t
/// by the oriented pentachoron u. Throws if t is not a face of u.
inline int induced_orientation_sign(const Pentachoron& u, const Tetrahedron& t) {
    const auto key = sorted(u);
    const auto tk = sorted(t);
    for (std::size_t p = 0; p < 5; ++p)
        if (detail::omit(key, p) == tk) return permutation_sign(u) * ((p & 1) ? -1 : 1);
    throw ContractViolation("[" + to_string(t) + "] is not a face of [" + to_string(u) + "]");
}

inline int induced_orientation_sign(const Triangulation& tri, int u, int t) {
    return induced_orientation_sign(tri.pentachora().at(u), tri.tetrahedra().at(t));
}

/// Sign of the face of oriented simplex `outer` obtained by dropping `v`,
/// relative to the ascending key of that face, under the convention that
/// the face followed by v reproduces the orientation of `outer`.
template <std::size_t N>
int face_sign_last(const Simplex<N>& outer, Vertex v) {
    Simplex<N - 1> face{};
    Simplex<N> reordered{};
    std::size_t j = 0;
    for (auto x : outer)
        if (x != v) face[j++] = x;
    if (j != N - 1) throw ContractViolation("vertex is not in the simplex");
    std::copy(face.begin(), face.end(), reordered.begin());
    reordered[N - 1] = v;
    return permutation_sign(face) * permutation_sign(reordered) * permutation_sign(outer);
}

struct ManifoldReport {
    std::vector<int> coface_counts;
    std::vector<int> bad_coface_count;        // tetrahedra not in exactly two pentachora
    std::vector<int> orientation_mismatch;    // tetrahedra whose two induced orientations agree
    int components = 0;

    bool connected() const { return components == 1; }
    bool passed() const { return bad_coface_count.empty() && orientation_mismatch.empty() && connected(); }
};

inline ManifoldReport check_closed_oriented(const Triangulation& tri) {
    ManifoldReport rep;
    const int n3 = tri.count(3);
    rep.coface_counts.resize(n3);
    std::vector<int> parent(tri.count(4));
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int t = 0; t < n3; ++t) {
        const auto& cof = tri.tetrahedron_cofaces(t);
        rep.coface_counts[t] = static_cast<int>(cof.size());
        if (cof.size() != 2) {
            rep.bad_coface_count.push_back(t);
        } else if (induced_orientation_sign(tri, cof[0], t) != -induced_orientation_sign(tri, cof[1], t)) {
            rep.orientation_mismatch.push_back(t);
        }
        for (std::size_t i = 1; i < cof.size(); ++i) parent[root(cof[i])] = root(cof[0]);
    }
    for (int u = 0; u < tri.count(4); ++u)
        if (root(u) == u) ++rep.components;
    return rep;
}

/// Edges of a maximal tree in the 1-skeleton and their complement.
struct EdgeBasisSplit {
    Vertex root = 1;
    std::vector<int> tree_edges;   // ascending edge indices
    std::vector<int> basis_edges;  // ascending edge indices
};

/// Breadth-first spanning tree from `root`, neighbours visited by increasing id.
inline EdgeBasisSplit maximal_tree_split(const Triangulation& tri, Vertex root = 1) {
    const int n0 = tri.vertex_count();
    if (root < 1 || root > n0) throw ContractViolation("tree root " + std::to_string(root) + " is not a vertex");
    std::vector<std::vector<std::pair<Vertex, int>>> adj(n0 + 1);
    for (int e = 0; e < tri.count(1); ++e) {
        const auto& [a, b] = tri.edges()[e];
        adj[a].push_back({b, e});
        adj[b].push_back({a, e});
    }
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());
    std::vector<bool> seen(n0 + 1, false);
    std::vector<bool> in_tree(tri.count(1), false);
    std::queue<Vertex> queue;
    queue.push(root);
    seen[root] = true;
    int reached = 1;
    while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop();
        for (const auto& [w, e] : adj[v]) {
            if (seen[w]) continue;
            seen[w] = true;
            in_tree[e] = true;
            ++reached;
            queue.push(w);
        }
    }
    if (reached != n0) throw ValidationError("1-skeleton is disconnected");
    EdgeBasisSplit split;
    split.root = root;
    for (int e = 0; e < tri.count(1); ++e) (in_tree[e] ? split.tree_edges : split.basis_edges).push_back(e);
    return split;
}

}  // namespace exotic
