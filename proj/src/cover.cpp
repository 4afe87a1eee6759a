#include "hypstab/cover.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <array>
#include <random>
#include <tuple>

#include "hypstab/errors.hpp"

namespace hypstab {

namespace {

std::vector<int> identity_perm(int d) {
    std::vector<int> p(static_cast<std::size_t>(d));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

std::vector<int> inverse_perm(const std::vector<int>& p) {
    std::vector<int> inv(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) inv[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
    return inv;
}

const std::vector<int>& perm_of(const CoverSpec& spec, int pairing, const std::vector<int>& identity) {
    auto it = spec.perms.find(pairing);
    return it == spec.perms.end() ? identity : it->second;
}

void check_spec(const Triangulation& T, const CoverSpec& spec) {
    if (spec.degree < 1) throw InvalidArgument("cover degree must be positive");
    for (const auto& [p, perm] : spec.perms) {
        if (p < 0 || p >= static_cast<int>(T.pairings().size()))
            throw InvalidArgument("cover spec names unknown pairing " + std::to_string(p));
        std::vector<int> sorted = perm;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != identity_perm(spec.degree))
            throw InvalidArgument("cover spec entry for pairing " + std::to_string(p) + " is not a permutation of " +
                                  std::to_string(spec.degree) + " sheets");
    }
}

}  // namespace

std::vector<RidgeCycle> ridge_cycles(const Triangulation& T) {
    require_valid(T);
    const int n = T.dim();
    if (n < 2) return {};
    // State (s, x, y): in simplex s at the ridge opposite {x, y}, about to cross facet x.
    std::set<std::tuple<int, int, int>> seen;
    std::vector<RidgeCycle> out;
    for (int s0 = 0; s0 < T.simplex_count(); ++s0) {
        for (int x0 = 0; x0 <= n; ++x0) {
            for (int y0 = x0 + 1; y0 <= n; ++y0) {
                if (seen.contains({s0, x0, y0})) continue;
                RidgeCycle cycle;
                std::vector<std::tuple<int, int, int>> visited;
                int s = s0, x = x0, y = y0;
                bool open = false;
                std::string path = std::to_string(s) + "[" + std::to_string(x) + std::to_string(y) + "]";
                do {
                    visited.emplace_back(s, x, y);
                    const auto hit = T.pairing_at({s, x});
                    if (!hit) {
                        open = true;
                        break;
                    }
                    const auto [p, side_a] = *hit;
                    std::vector<int> pi = T.full_map(p);
                    const Pairing& pr = T.pairings()[static_cast<std::size_t>(p)];
                    if (!side_a) pi = inverse_perm(pi);
                    cycle.steps.emplace_back(p, side_a);
                    s = side_a ? pr.b.simplex : pr.a.simplex;
                    const int entry = pi[static_cast<std::size_t>(x)];
                    x = pi[static_cast<std::size_t>(y)];
                    y = entry;
                    path += " -p" + std::to_string(p) + (side_a ? "+" : "-") + "-> " + std::to_string(s) + "[" +
                            std::to_string(x) + std::to_string(y) + "]";
                } while (std::tuple{s, x, y} != std::tuple{s0, x0, y0} &&
                         visited.size() <= static_cast<std::size_t>(T.simplex_count() * (n + 1) * n));
                for (const auto& [vs, vx, vy] : visited) {
                    seen.insert({vs, std::min(vx, vy), std::max(vx, vy)});
                }
                if (open) {
                    // Boundary ridge.
                    continue;
                }
                cycle.description = "ridge of simplex " + std::to_string(s0) + " opposite {" + std::to_string(x0) +
                                    "," + std::to_string(y0) + "}: " + path;
                out.push_back(std::move(cycle));
            }
        }
    }
    return out;
}

std::vector<int> holonomy(const RidgeCycle& cycle, const CoverSpec& spec) {
    const std::vector<int> id = identity_perm(spec.degree);
    std::vector<int> h = id;
    for (const auto& [p, forward] : cycle.steps) {
        const std::vector<int>& sigma = perm_of(spec, p, id);
        const std::vector<int> step = forward ? sigma : inverse_perm(sigma);
        for (int& k : h) k = step[static_cast<std::size_t>(k)];
    }
    return h;
}

Cover build_cover(const Triangulation& T, const CoverSpec& spec) {
    require_valid(T);
    check_spec(T, spec);
    const int d = spec.degree;
    const std::vector<int> id = identity_perm(d);
    for (const RidgeCycle& c : ridge_cycles(T)) {
        if (holonomy(c, spec) != id)
            throw BranchedCover("nontrivial holonomy around a codimension-2 face (branched, not a covering)",
                                c.description);
    }
    std::vector<Pairing> pairings;
    for (int p = 0; p < static_cast<int>(T.pairings().size()); ++p) {
        const Pairing& pr = T.pairings()[static_cast<std::size_t>(p)];
        const std::vector<int>& sigma = perm_of(spec, p, id);
        for (int k = 0; k < d; ++k)
            pairings.push_back({{pr.a.simplex * d + k, pr.a.facet},
                                {pr.b.simplex * d + sigma[static_cast<std::size_t>(k)], pr.b.facet},
                                pr.map});
    }
    std::vector<std::string> labels;
    std::vector<int> projection, sheet;
    for (int s = 0; s < T.simplex_count(); ++s) {
        for (int k = 0; k < d; ++k) {
            const std::string base = T.labels().empty() ? std::to_string(s) : T.labels()[static_cast<std::size_t>(s)];
            labels.push_back(base + "#" + std::to_string(k));
            projection.push_back(s);
            sheet.push_back(k);
        }
    }
    Triangulation tri(T.dim(), T.simplex_count() * d, std::move(pairings), std::move(labels));
    const int comps = connected_components(tri);
    return {std::move(tri), std::move(projection), std::move(sheet), d, comps};
}

bool verify_covering(const Triangulation& base, const Triangulation& cover, const std::vector<int>& projection) {
    if (!validate(base).valid || !validate(cover).valid) return false;
    if (base.dim() != cover.dim()) return false;
    if (static_cast<int>(projection.size()) != cover.simplex_count()) return false;
    if (cover.simplex_count() % base.simplex_count() != 0) return false;
    const int d = cover.simplex_count() / base.simplex_count();
    std::vector<int> preimages(static_cast<std::size_t>(base.simplex_count()), 0);
    for (int s : projection) {
        if (s < 0 || s >= base.simplex_count()) return false;
        ++preimages[static_cast<std::size_t>(s)];
    }
    if (std::any_of(preimages.begin(), preimages.end(), [d](int c) { return c != d; })) return false;

    for (int s = 0; s < cover.simplex_count(); ++s) {
        for (int f = 0; f <= cover.dim(); ++f) {
            const auto up = cover.pairing_at({s, f});
            const auto down = base.pairing_at({projection[static_cast<std::size_t>(s)], f});
            if (up.has_value() != down.has_value()) return false;
            if (!up) continue;
            const Pairing& cp = cover.pairings()[static_cast<std::size_t>(up->first)];
            const Pairing& bp = base.pairings()[static_cast<std::size_t>(down->first)];
            if (up->second != down->second) return false;
            const Slot other = up->second ? cp.b : cp.a;
            const Slot base_other = down->second ? bp.b : bp.a;
            if (projection[static_cast<std::size_t>(other.simplex)] != base_other.simplex) return false;
            if (other.facet != base_other.facet || cp.map != bp.map) return false;
        }
    }
    return true;
}

int connected_components(const Triangulation& T) {
    const int t = T.simplex_count();
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(t));
    for (const Pairing& p : T.pairings()) {
        if (p.a.simplex < 0 || p.a.simplex >= t || p.b.simplex < 0 || p.b.simplex >= t) continue;
        adj[static_cast<std::size_t>(p.a.simplex)].push_back(p.b.simplex);
        adj[static_cast<std::size_t>(p.b.simplex)].push_back(p.a.simplex);
    }
    std::vector<char> seen(static_cast<std::size_t>(t), 0);
    int comps = 0;
    for (int s = 0; s < t; ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        ++comps;
        std::deque<int> q{s};
        seen[static_cast<std::size_t>(s)] = 1;
        while (!q.empty()) {
            const int u = q.front();
            q.pop_front();
            for (int v : adj[static_cast<std::size_t>(u)])
                if (!seen[static_cast<std::size_t>(v)]) {
                    seen[static_cast<std::size_t>(v)] = 1;
                    q.push_back(v);
                }
        }
    }
    return comps;
}

CoverSpec torus_subgroup_spec(const LatticeSubgroup& S) {
    const long long m = index(S);
    // Fixture pairings: 0 glues the bottom of A to the top of B (cell shift (0,-1)),
    // 1 the right of A to the left of B (shift (1,0)), 2 is the diagonal.
    const std::array<std::array<long long, 2>, 2> shifts{{{0, -1}, {1, 0}}};
    CoverSpec spec;
    spec.degree = static_cast<int>(m);
    for (int p = 0; p < 2; ++p) {
        std::vector<int> perm(static_cast<std::size_t>(m));
        for (long long x = 0; x < S.a; ++x)
            for (long long y = 0; y < S.d; ++y) {
                const long long from = x * S.d + y;
                perm[static_cast<std::size_t>(from)] = static_cast<int>(
                    coset_index(S, {x + shifts[static_cast<std::size_t>(p)][0], y + shifts[static_cast<std::size_t>(p)][1]}));
            }
        spec.perms[p] = perm;
    }
    return spec;
}

CoverSpec random_admissible_torus_spec(Rng& rng, int max_degree) {
    if (max_degree < 1) throw InvalidArgument("max_degree must be positive");
    std::uniform_int_distribution<int> blocks_dist(1, 3);
    const int blocks = blocks_dist(rng);
    std::vector<LatticeSubgroup> parts;
    int degree = 0;
    for (int b = 0; b < blocks; ++b) {
        const int room = max_degree - degree;
        if (room < 1) break;
        std::uniform_int_distribution<int> idx_dist(1, std::min(room, 6));
        const auto subs = enumerate_subgroups(idx_dist(rng));
        std::uniform_int_distribution<std::size_t> pick(0, subs.size() - 1);
        parts.push_back(subs[pick(rng)]);
        degree += static_cast<int>(index(parts.back()));
    }
    CoverSpec spec;
    spec.degree = degree;
    std::vector<std::vector<int>> perms(3, std::vector<int>());
    for (const auto& S : parts) {
        const CoverSpec block = torus_subgroup_spec(S);
        const int offset = static_cast<int>(perms[0].size());
        for (int p = 0; p < 3; ++p) {
            if (p == 2) {
                for (int k = 0; k < block.degree; ++k) perms[2].push_back(offset + k);
            } else {
                for (int k : block.perms.at(p)) perms[static_cast<std::size_t>(p)].push_back(offset + k);
            }
        }
    }
    // Gauge: relabel the copies of each simplex independently.
    std::vector<int> gA = identity_perm(degree), gB = identity_perm(degree);
    std::shuffle(gA.begin(), gA.end(), rng);
    std::shuffle(gB.begin(), gB.end(), rng);
    const std::vector<int> gA_inv = inverse_perm(gA);
    for (int p = 0; p < 3; ++p) {
        std::vector<int> conj(static_cast<std::size_t>(degree));
        for (int k = 0; k < degree; ++k)
            conj[static_cast<std::size_t>(k)] =
                gB[static_cast<std::size_t>(perms[static_cast<std::size_t>(p)][static_cast<std::size_t>(gA_inv[static_cast<std::size_t>(k)])])];
        spec.perms[p] = conj;
    }
    return spec;
}

std::vector<CoverSpec> cyclic_cover_specs(const Triangulation& T, int degree, std::size_t limit) {
    require_valid(T);
    if (degree < 1) throw InvalidArgument("cover degree must be positive");
    const int t = T.simplex_count();
    const int P = static_cast<int>(T.pairings().size());
    // Spanning tree of the dual graph; tree pairings carry the trivial shift.
    std::vector<char> in_tree(static_cast<std::size_t>(P), 0);
    std::vector<char> reached(static_cast<std::size_t>(t), 0);
    for (int root = 0; root < t; ++root) {
        if (reached[static_cast<std::size_t>(root)]) continue;
        reached[static_cast<std::size_t>(root)] = 1;
        bool grew = true;
        while (grew) {
            grew = false;
            for (int p = 0; p < P; ++p) {
                const Pairing& pr = T.pairings()[static_cast<std::size_t>(p)];
                const bool ra = reached[static_cast<std::size_t>(pr.a.simplex)];
                const bool rb = reached[static_cast<std::size_t>(pr.b.simplex)];
                if (ra != rb) {
                    in_tree[static_cast<std::size_t>(p)] = 1;
                    reached[static_cast<std::size_t>(pr.a.simplex)] = reached[static_cast<std::size_t>(pr.b.simplex)] = 1;
                    grew = true;
                }
            }
        }
    }
    std::vector<int> free;
    for (int p = 0; p < P; ++p)
        if (!in_tree[static_cast<std::size_t>(p)]) free.push_back(p);

    const std::vector<RidgeCycle> cycles = ridge_cycles(T);
    std::vector<CoverSpec> out;
    std::vector<int> shift(free.size(), 0);
    while (out.size() < limit) {
        // Holonomy of a cyclic spec is the signed sum of shifts.
        bool ok = true;
        for (const auto& c : cycles) {
            long long total = 0;
            for (const auto& [p, forward] : c.steps) {
                auto it = std::find(free.begin(), free.end(), p);
                if (it == free.end()) continue;
                const int sh = shift[static_cast<std::size_t>(it - free.begin())];
                total += forward ? sh : -sh;
            }
            if (total % degree != 0) {
                ok = false;
                break;
            }
        }
        if (ok) {
            CoverSpec spec;
            spec.degree = degree;
            for (std::size_t i = 0; i < free.size(); ++i) {
                std::vector<int> perm(static_cast<std::size_t>(degree));
                for (int k = 0; k < degree; ++k) perm[static_cast<std::size_t>(k)] = (k + shift[i]) % degree;
                spec.perms[free[i]] = perm;
            }
            out.push_back(std::move(spec));
        }
        std::size_t i = 0;
        while (i < shift.size() && ++shift[i] == degree) shift[i++] = 0;
        if (i == shift.size()) break;
    }
    return out;
}

}  // namespace hypstab
