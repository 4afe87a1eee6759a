#include "hypstab/triangulation.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace hypstab {

namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t x, std::size_t y) {
        x = find(x);
        y = find(y);
        if (x == y) return;
        if (rank_[x] < rank_[y]) std::swap(x, y);
        parent_[y] = x;
        if (rank_[x] == rank_[y]) ++rank_[x];
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<int> rank_;
};

std::string slot_name(Slot s) { return "(" + std::to_string(s.simplex) + "," + std::to_string(s.facet) + ")"; }

// Union-find over (simplex, vertex subset) with subsets as bitmasks.
UnionFind face_identifications(const Triangulation& T) {
    const int n = T.dim();
    const std::size_t masks = std::size_t{1} << (n + 1);
    UnionFind uf(static_cast<std::size_t>(T.simplex_count()) * masks);
    for (int p = 0; p < static_cast<int>(T.pairings().size()); ++p) {
        const Pairing& pr = T.pairings()[static_cast<std::size_t>(p)];
        const std::vector<int> pi = T.full_map(p);
        const unsigned facet_bits = ((1u << (n + 1)) - 1) & ~(1u << pr.a.facet);
        for (unsigned mask = facet_bits;; mask = (mask - 1) & facet_bits) {
            if (mask != 0) {
                unsigned image = 0;
                for (int v = 0; v <= n; ++v)
                    if (mask & (1u << v)) image |= 1u << pi[static_cast<std::size_t>(v)];
                uf.unite(static_cast<std::size_t>(pr.a.simplex) * masks + mask,
                         static_cast<std::size_t>(pr.b.simplex) * masks + image);
            }
            if (mask == 0) break;
        }
    }
    return uf;
}

}  // namespace

Triangulation::Triangulation(int dim, int simplex_count, std::vector<Pairing> pairings,
                             std::vector<std::string> labels)
    : dim_(dim), simplex_count_(simplex_count), pairings_(std::move(pairings)), labels_(std::move(labels)) {
    if (dim_ < 1 || dim_ > 8) throw InvalidArgument("triangulation dimension must be in 1..8");
    if (simplex_count_ < 1) throw InvalidArgument("triangulation needs at least one simplex");
    if (!labels_.empty() && static_cast<int>(labels_.size()) != simplex_count_)
        throw InvalidArgument("label count does not match simplex count");
    const auto slots = static_cast<std::size_t>(simplex_count_ * (dim_ + 1));
    slot_pairing_.assign(slots, -1);
    slot_side_a_.assign(slots, 0);
    auto in_range = [&](Slot s) { return s.simplex >= 0 && s.simplex < simplex_count_ && s.facet >= 0 && s.facet <= dim_; };
    for (int p = 0; p < static_cast<int>(pairings_.size()); ++p) {
        const Pairing& pr = pairings_[static_cast<std::size_t>(p)];
        for (const auto& [slot, side_a] : {std::pair{pr.a, true}, std::pair{pr.b, false}}) {
            if (!in_range(slot)) continue;
            const auto idx = static_cast<std::size_t>(slot.simplex * (dim_ + 1) + slot.facet);
            if (slot_pairing_[idx] == -1) {
                slot_pairing_[idx] = p;
                slot_side_a_[idx] = side_a ? 1 : 0;
            }
        }
    }
}

std::vector<int> Triangulation::full_map(int p) const {
    const Pairing& pr = pairings_.at(static_cast<std::size_t>(p));
    std::vector<int> pi(static_cast<std::size_t>(dim_ + 1), -1);
    pi[static_cast<std::size_t>(pr.a.facet)] = pr.b.facet;
    int j = 0;
    for (int v = 0; v <= dim_; ++v) {
        if (v == pr.a.facet) continue;
        pi[static_cast<std::size_t>(v)] = pr.map.at(static_cast<std::size_t>(j++));
    }
    return pi;
}

std::optional<std::pair<int, bool>> Triangulation::pairing_at(Slot s) const {
    if (s.simplex < 0 || s.simplex >= simplex_count_ || s.facet < 0 || s.facet > dim_) return std::nullopt;
    const auto idx = static_cast<std::size_t>(s.simplex * (dim_ + 1) + s.facet);
    if (slot_pairing_[idx] < 0) return std::nullopt;
    return std::pair{slot_pairing_[idx], slot_side_a_[idx] != 0};
}

ValidationReport validate(const Triangulation& T) {
    ValidationReport rep;
    const int n = T.dim();
    std::map<Slot, int> used;
    auto check_slot = [&](Slot s, int p) {
        if (s.simplex < 0 || s.simplex >= T.simplex_count() || s.facet < 0 || s.facet > n) {
            rep.issues.push_back("pairing " + std::to_string(p) + ": slot " + slot_name(s) + " out of range");
            return;
        }
        auto [it, fresh] = used.emplace(s, p);
        if (!fresh)
            rep.issues.push_back("slot " + slot_name(s) + " used by pairings " + std::to_string(it->second) + " and " +
                                 std::to_string(p));
    };
    for (int p = 0; p < static_cast<int>(T.pairings().size()); ++p) {
        const Pairing& pr = T.pairings()[static_cast<std::size_t>(p)];
        if (pr.a == pr.b) {
            rep.issues.push_back("pairing " + std::to_string(p) + ": slot " + slot_name(pr.a) + " paired with itself");
            continue;
        }
        check_slot(pr.a, p);
        check_slot(pr.b, p);
        if (static_cast<int>(pr.map.size()) != n) {
            rep.issues.push_back("pairing " + std::to_string(p) + ": vertex map has " + std::to_string(pr.map.size()) +
                                 " entries, expected " + std::to_string(n));
            continue;
        }
        std::set<int> image(pr.map.begin(), pr.map.end());
        const bool bijective = static_cast<int>(image.size()) == n && !image.contains(pr.b.facet) &&
                               *image.begin() >= 0 && *image.rbegin() <= n;
        if (!bijective)
            rep.issues.push_back("pairing " + std::to_string(p) + ": vertex map is not a bijection onto facet " +
                                 slot_name(pr.b));
    }
    for (int s = 0; s < T.simplex_count(); ++s)
        for (int f = 0; f <= n; ++f)
            if (!used.contains(Slot{s, f})) rep.boundary.push_back({s, f});
    rep.valid = rep.issues.empty();
    rep.closed = rep.valid && rep.boundary.empty();
    return rep;
}

void require_valid(const Triangulation& T) {
    ValidationReport rep = validate(T);
    if (!rep.valid) {
        std::string first = rep.issues.front();
        throw InvalidTriangulation("invalid triangulation: " + first, std::move(rep.issues));
    }
}

CellCounts cell_counts(const Triangulation& T) {
    require_valid(T);
    const int n = T.dim();
    const std::size_t masks = std::size_t{1} << (n + 1);
    UnionFind uf = face_identifications(T);
    std::vector<std::set<std::size_t>> roots(static_cast<std::size_t>(n + 1));
    for (int s = 0; s < T.simplex_count(); ++s)
        for (unsigned mask = 1; mask < masks; ++mask)
            roots[static_cast<std::size_t>(std::popcount(mask) - 1)].insert(
                uf.find(static_cast<std::size_t>(s) * masks + mask));
    CellCounts out;
    for (int d = 0; d <= n; ++d) {
        out.f.push_back(static_cast<long long>(roots[static_cast<std::size_t>(d)].size()));
        out.euler += (d % 2 == 0 ? 1 : -1) * out.f.back();
    }
    return out;
}

std::vector<int> vertex_classes(const Triangulation& T, int* count) {
    require_valid(T);
    const int n = T.dim();
    const std::size_t masks = std::size_t{1} << (n + 1);
    UnionFind uf = face_identifications(T);
    std::map<std::size_t, int> ids;
    std::vector<int> out;
    for (int s = 0; s < T.simplex_count(); ++s)
        for (int v = 0; v <= n; ++v) {
            const std::size_t root = uf.find(static_cast<std::size_t>(s) * masks + (1u << v));
            auto [it, fresh] = ids.emplace(root, static_cast<int>(ids.size()));
            out.push_back(it->second);
        }
    if (count) *count = static_cast<int>(ids.size());
    return out;
}

int permutation_sign(const std::vector<int>& perm) {
    std::vector<char> seen(perm.size(), 0);
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
            seen[j] = 1;
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

Orientability orientability(const Triangulation& T) {
    require_valid(T);
    const int t = T.simplex_count();
    // Adjacency: (neighbor, pairing, relation) with o_neighbor = relation * o_self.
    struct Edge {
        int to;
        int pairing;
        int relation;
    };
    std::vector<std::vector<Edge>> adj(static_cast<std::size_t>(t));
    for (int p = 0; p < static_cast<int>(T.pairings().size()); ++p) {
        const Pairing& pr = T.pairings()[static_cast<std::size_t>(p)];
        const int rel = -permutation_sign(T.full_map(p));
        adj[static_cast<std::size_t>(pr.a.simplex)].push_back({pr.b.simplex, p, rel});
        adj[static_cast<std::size_t>(pr.b.simplex)].push_back({pr.a.simplex, p, rel});
    }
    Orientability out;
    out.orientation.assign(static_cast<std::size_t>(t), 0);
    std::vector<int> parent_pairing(static_cast<std::size_t>(t), -1);
    std::vector<int> parent(static_cast<std::size_t>(t), -1);
    auto path_to_root = [&](int s) {
        std::vector<int> path;
        while (parent[static_cast<std::size_t>(s)] >= 0) {
            path.push_back(parent_pairing[static_cast<std::size_t>(s)]);
            s = parent[static_cast<std::size_t>(s)];
        }
        return path;
    };
    for (int root = 0; root < t; ++root) {
        if (out.orientation[static_cast<std::size_t>(root)] != 0) continue;
        out.orientation[static_cast<std::size_t>(root)] = 1;
        std::deque<int> queue{root};
        while (!queue.empty()) {
            const int s = queue.front();
            queue.pop_front();
            for (const Edge& e : adj[static_cast<std::size_t>(s)]) {
                const int want = e.relation * out.orientation[static_cast<std::size_t>(s)];
                int& have = out.orientation[static_cast<std::size_t>(e.to)];
                if (have == 0) {
                    have = want;
                    parent[static_cast<std::size_t>(e.to)] = s;
                    parent_pairing[static_cast<std::size_t>(e.to)] = e.pairing;
                    queue.push_back(e.to);
                } else if (have != want) {
                    // Odd cycle: tree path s -> lca, the offending pairing, tree path e.to -> lca.
                    std::vector<int> a = path_to_root(s), b = path_to_root(e.to);
                    while (!a.empty() && !b.empty() && a.back() == b.back()) {
                        a.pop_back();
                        b.pop_back();
                    }
                    out.violating_cycle = a;
                    out.violating_cycle.push_back(e.pairing);
                    out.violating_cycle.insert(out.violating_cycle.end(), b.rbegin(), b.rend());
                    out.orientable = false;
                    out.orientation.clear();
                    return out;
                }
            }
        }
    }
    out.orientable = true;
    return out;
}

LinkReport links(const Triangulation& T) {
    if (T.dim() != 3) throw InvalidArgument("links are computed for 3-dimensional triangulations");
    require_valid(T);
    const int t = T.simplex_count();
    int vertex_count = 0;
    const std::vector<int> vclass = vertex_classes(T, &vertex_count);

    // Link vertices are ordered pairs (v, w) of a tetrahedron: the end of edge vw near v.
    auto triple = [](int s, int v, int w) { return static_cast<std::size_t>((s * 4 + v) * 4 + w); };
    UnionFind ends(static_cast<std::size_t>(t * 16));
    std::vector<int> glued_corner_edges(static_cast<std::size_t>(vertex_count), 0);
    for (int p = 0; p < static_cast<int>(T.pairings().size()); ++p) {
        const Pairing& pr = T.pairings()[static_cast<std::size_t>(p)];
        const std::vector<int> pi = T.full_map(p);
        for (int v = 0; v < 4; ++v) {
            if (v == pr.a.facet) continue;
            ++glued_corner_edges[static_cast<std::size_t>(vclass[static_cast<std::size_t>(pr.a.simplex * 4 + v)])];
            for (int w = 0; w < 4; ++w) {
                if (w == v || w == pr.a.facet) continue;
                ends.unite(triple(pr.a.simplex, v, w),
                           triple(pr.b.simplex, pi[static_cast<std::size_t>(v)], pi[static_cast<std::size_t>(w)]));
            }
        }
    }

    std::vector<std::string> issues;
    LinkReport out;
    out.links.resize(static_cast<std::size_t>(vertex_count));
    std::vector<std::set<std::size_t>> link_vertices(static_cast<std::size_t>(vertex_count));
    for (int s = 0; s < t; ++s) {
        for (int v = 0; v < 4; ++v) {
            const int c = vclass[static_cast<std::size_t>(s * 4 + v)];
            ++out.links[static_cast<std::size_t>(c)].triangles;
            for (int w = 0; w < 4; ++w) {
                if (w == v) continue;
                link_vertices[static_cast<std::size_t>(c)].insert(ends.find(triple(s, v, w)));
                if (v < w && ends.find(triple(s, v, w)) == ends.find(triple(s, w, v)))
                    issues.push_back("edge " + std::to_string(v) + std::to_string(w) + " of tetrahedron " +
                                     std::to_string(s) + " is identified with itself reversed");
            }
        }
    }
    if (!issues.empty()) throw InvalidTriangulation("non-manifold link structure: " + issues.front(), issues);

    for (int c = 0; c < vertex_count; ++c) {
        VertexLink& L = out.links[static_cast<std::size_t>(c)];
        L.vertex = c;
        L.vertices = static_cast<int>(link_vertices[static_cast<std::size_t>(c)].size());
        const int incidences = 3 * L.triangles;
        const int glued = glued_corner_edges[static_cast<std::size_t>(c)];
        L.edges = incidences - glued;
        L.closed = incidences == 2 * glued;
        L.euler = static_cast<long long>(L.vertices) - L.edges + L.triangles;
    }

    const std::size_t masks = 16;
    UnionFind uf = face_identifications(T);
    std::map<std::size_t, int> edge_ids;
    std::map<int, int> valence;
    for (int s = 0; s < t; ++s)
        for (unsigned mask = 1; mask < masks; ++mask) {
            if (std::popcount(mask) != 2) continue;
            const std::size_t root = uf.find(static_cast<std::size_t>(s) * masks + mask);
            auto [it, fresh] = edge_ids.emplace(root, static_cast<int>(edge_ids.size()));
            ++valence[it->second];
        }
    for (const auto& [e, val] : valence) out.valences.push_back({e, val});
    return out;
}

}  // namespace hypstab
