#include "hypstab/chain.hpp"

#include <algorithm>
#include <numeric>

namespace hypstab {

void Chain::add(const LabeledSimplex& s, Rational c) {
    if (c.numerator() == 0) return;
    auto [it, fresh] = terms_.emplace(s, c);
    if (!fresh) {
        it->second += c;
        if (it->second.numerator() == 0) terms_.erase(it);
    }
}

Rational Chain::l1_norm() const {
    Rational sum(0);
    for (const auto& [s, c] : terms_) sum += c.numerator() < 0 ? -c : c;
    return sum;
}

Chain alternation_chain(const Triangulation& T, const std::vector<int>& orientation) {
    require_valid(T);
    if (static_cast<int>(orientation.size()) != T.simplex_count())
        throw InvalidArgument("orientation length does not match the simplex count");
    const int n = T.dim();
    std::int64_t factorial = 1;
    for (int i = 2; i <= n + 1; ++i) factorial *= i;

    Chain z;
    std::vector<int> tau(static_cast<std::size_t>(n + 1));
    for (int s = 0; s < T.simplex_count(); ++s) {
        std::iota(tau.begin(), tau.end(), 0);
        do {
            const int sign = permutation_sign(tau) * orientation[static_cast<std::size_t>(s)];
            z.add({s, tau}, Rational(sign, factorial));
        } while (std::next_permutation(tau.begin(), tau.end()));
    }
    return z;
}

Chain fundamental_cycle(const Triangulation& T) {
    const ValidationReport rep = validate(T);
    if (!rep.valid) throw InvalidTriangulation("invalid triangulation", rep.issues);
    if (!rep.closed) throw InvalidArgument("fundamental cycle needs a closed triangulation");
    const Orientability o = orientability(T);
    if (!o.orientable) throw InvalidArgument("fundamental cycle needs an orientable triangulation");
    return alternation_chain(T, o.orientation);
}

Chain boundary(const Triangulation& T, const Chain& z) {
    const int n = T.dim();
    Chain out;
    for (const auto& [s, c] : z.terms()) {
        for (int i = 0; i <= n; ++i) {
            const int facet = s.order[static_cast<std::size_t>(i)];
            std::vector<int> face;
            for (int j = 0; j <= n; ++j)
                if (j != i) face.push_back(s.order[static_cast<std::size_t>(j)]);
            // Key: slot encoded as simplex * (n+1) + facet, then the ordered vertices.
            Slot slot{s.simplex, facet};
            if (auto hit = T.pairing_at(slot); hit && !hit->second) {
                // Side b: pull the vertices back to side a through the inverse map.
                const std::vector<int> pi = T.full_map(hit->first);
                std::vector<int> inverse(pi.size());
                for (std::size_t v = 0; v < pi.size(); ++v) inverse[static_cast<std::size_t>(pi[v])] = static_cast<int>(v);
                for (int& v : face) v = inverse[static_cast<std::size_t>(v)];
                slot = T.pairings()[static_cast<std::size_t>(hit->first)].a;
            }
            const Rational sign = i % 2 == 0 ? Rational(1) : Rational(-1);
            out.add({slot.simplex * (n + 1) + slot.facet, face}, sign * c);
        }
    }
    return out;
}

bool verify_cycle(const Triangulation& T, const Chain& z) { return boundary(T, z).empty(); }

}  // namespace hypstab
