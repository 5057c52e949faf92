#pragma once

// Torus semi-stability of syzygy points.  The barycenter has to lie in the
// convex hull of the T-states of monomial bases; membership is an exact LP,
// and the bases minimizing a weight come from the matroid greedy algorithm,
// which closes a cutting-plane loop.

#include "ribsyz/exactla.hpp"
#include "ribsyz/genus.hpp"
#include "ribsyz/koszul.hpp"
#include "ribsyz/lp.hpp"
#include "ribsyz/rational.hpp"
#include "ribsyz/syzbases.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ribsyz {

/// One-parameter subgroup of the diagonal torus; entries sum to zero.
using WeightVector = std::vector<Integer>;

struct Certificate {
    std::vector<TState> states;
    std::vector<Rational> lambdas;
    RationalVector target;
};

struct SeparatingWeight {
    WeightVector chi; ///< <chi, s - target> > 0 for every state s
};

using HullResult = std::variant<Certificate, SeparatingWeight>;

inline Integer pairing(const WeightVector& chi, const TState& s)
{
    if (chi.size() != s.size()) throw std::invalid_argument("weight and state lengths differ");
    Integer out = 0;
    for (std::size_t i = 0; i < s.size(); ++i) out += chi[i] * Integer(static_cast<long>(s[i]));
    return out;
}

inline Rational pairing(const WeightVector& chi, const RationalVector& v)
{
    if (chi.size() != v.size()) throw std::invalid_argument("weight and vector lengths differ");
    Rational out = 0;
    for (std::size_t i = 0; i < v.size(); ++i) out += Rational(chi[i]) * v[i];
    return out;
}

/// The constant vector (p+2) dim CoSyz_p / g; for p = 1 this is 3(3g-5)(g-1)/g.
inline RationalVector barycenter(const Genus& gen, int p)
{
    if (p < 1) throw std::invalid_argument("barycenter needs p >= 1");
    const Rational entry = make_rational((p + 2) * cosyz_dim_expected(gen, p), gen.g());
    return RationalVector(static_cast<std::size_t>(gen.g()), entry);
}

/// Throws std::logic_error unless the certificate is an exact convex combination.
inline void check_certificate(const Certificate& cert)
{
    if (cert.states.size() != cert.lambdas.size()) throw std::logic_error("certificate length mismatch");
    Rational total = 0;
    RationalVector sum(cert.target.size());
    for (std::size_t j = 0; j < cert.states.size(); ++j) {
        if (cert.lambdas[j] < 0) throw std::logic_error("certificate has a negative coefficient");
        if (cert.states[j].size() != sum.size()) throw std::logic_error("certificate state has the wrong length");
        total += cert.lambdas[j];
        for (std::size_t i = 0; i < sum.size(); ++i) {
            sum[i] += cert.lambdas[j] * Rational(static_cast<long>(cert.states[j][i]));
        }
    }
    if (total != 1 || sum != cert.target) {
        throw std::logic_error("certificate does not reproduce its target");
    }
}

/// Integer weight proportional to the zero-sum projection of z.
inline WeightVector integral_zero_sum(const RationalVector& z)
{
    Integer den = 1;
    for (const auto& x : z) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    }
    std::vector<Integer> v;
    Integer sum = 0;
    for (const auto& x : z) {
        v.push_back(Integer(x.get_num() * (den / x.get_den())));
        sum += v.back();
    }
    const Integer n = static_cast<long>(z.size());
    WeightVector chi;
    Integer g = 0;
    for (const auto& x : v) {
        chi.push_back(n * x - sum);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), chi.back().get_mpz_t());
    }
    if (g > 1) {
        for (auto& x : chi) x /= g;
    }
    return chi;
}

/// Decides target in conv(states).  The separating weight is projected to
/// zero sum; when that destroys strict separation (states and target on
/// different level sets of the coordinate sum) std::domain_error is thrown.
inline HullResult hull_contains(const std::vector<TState>& states, const RationalVector& target)
{
    if (states.empty()) throw std::invalid_argument("hull_contains needs at least one state");
    const std::size_t n = target.size();
    for (const auto& s : states) {
        if (s.size() != n) throw std::invalid_argument("state length differs from the target");
    }
    std::vector<RationalVector> rows(n + 1, RationalVector(states.size()));
    RationalVector rhs(n + 1);
    rhs[0] = 1;
    for (std::size_t j = 0; j < states.size(); ++j) {
        rows[0][j] = 1;
        for (std::size_t i = 0; i < n; ++i) rows[i + 1][j] = static_cast<long>(states[j][i]);
    }
    for (std::size_t i = 0; i < n; ++i) rhs[i + 1] = target[i];

    const FeasibilityResult lp = solve_feasibility(rows, rhs);
    if (lp.feasible) {
        Certificate cert{states, lp.x, target};
        check_certificate(cert);
        return cert;
    }
    RationalVector z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = -lp.farkas[i + 1];
    WeightVector chi = integral_zero_sum(z);
    const Rational at_target = pairing(chi, target);
    for (const auto& s : states) {
        if (Rational(pairing(chi, s)) <= at_target) {
            throw std::domain_error("no zero-sum weight separates the target from these states");
        }
    }
    return SeparatingWeight{std::move(chi)};
}

/// The explicit combination of w(C+), w(C-), w(C*) hitting the barycenter:
/// L = 6 w(C*) + (g-3) w(C-) is, modulo the all-ones vector, a negative
/// multiple of x_0 + x_k + x_2k, and w(C+) a nonnegative one.
inline Certificate verify_barycenter_lemma(const Genus& gen)
{
    const long long g = gen.g();
    const std::size_t k = static_cast<std::size_t>(gen.k());
    const std::size_t top = static_cast<std::size_t>(gen.top_index());
    const TState plus = t_state(family_plus(gen));
    const TState minus = t_state(family_minus(gen));
    const TState star = t_state(family_star(gen));

    // residue of v modulo the all-ones vector, if it is c (x_0 + x_k + x_2k)
    auto residue = [&](const TState& v) -> std::optional<long long> {
        const long long base = v[1];
        for (std::size_t i = 1; i < top; ++i) {
            if (i != k && v[i] != base) return std::nullopt;
        }
        if (v[0] != v[k] || v[top] != v[k]) return std::nullopt;
        return v[0] - base;
    };

    TState L(plus.size());
    for (std::size_t i = 0; i < L.size(); ++i) L[i] = 6 * star[i] + (g - 3) * minus[i];
    const long long alpha = 2 * g * g - 3 * g - 15;
    const long long beta = (g - 5) * (g - 1);
    if (residue(L) != -alpha) {
        throw std::logic_error("6 w(C*) + (g-3) w(C-) does not have the expected residue");
    }
    if (residue(plus) != beta) {
        throw std::logic_error("w(C+) does not have the expected residue");
    }

    // alpha w(C+) + beta L is constant; normalize to a convex combination
    const long long total = alpha + (g - 3) * beta + 6 * beta;
    Certificate cert{{plus, minus, star},
                     {make_rational(alpha, total), make_rational((g - 3) * beta, total), make_rational(6 * beta, total)},
                     barycenter(gen, 1)};
    check_certificate(cert);
    return cert;
}

/// Column matroid of the f_{p+1,1}-images of all eigenvector cosyzygies,
/// one block per degree.  Its bases are exactly the monomial bases.
class CosyzygyMatroid {
public:
    CosyzygyMatroid(const Genus& gen, int p) : gen_(gen), p_(p)
    {
        if (p < 1) throw std::invalid_argument("cosyzygy matroid needs p >= 1");
        if (p + 1 > gen.g()) throw std::invalid_argument("p too large for this genus");
        const KoszulTerm target(gen, p, 2);
        for (WedgeMask w : wedge_subsets(gen.g(), p + 1)) {
            for (int c = 0; c <= gen.top_index(); ++c) {
                Cosyzygy cz = Cosyzygy::make(wedge_indices(w), c);
                SparseVector img = differential_image(target, w, basis_section(gen, c));
                auto& block = blocks_[cz.degree()];
                block.members.push_back(std::move(cz));
                block.images.push_back(std::move(img));
            }
        }
        std::map<int, std::size_t> ker;
        for (const auto& row : differential_dims(gen, {p, 2})) ker[row.d] = row.ker;
        for (auto& [d, block] : blocks_) {
            block.rank = greedy_max_independent(block.images).size();
            const std::size_t expected = ker.count(d) ? ker.at(d) : 0;
            if (block.rank != expected) {
                throw std::domain_error("K_{" + std::to_string(p) + ",2} is nonzero in degree " + std::to_string(d)
                                        + "; no monomial basis exists");
            }
        }
    }

    const Genus& genus() const noexcept { return gen_; }
    int p() const noexcept { return p_; }

    std::size_t size() const
    {
        std::size_t n = 0;
        for (const auto& [d, b] : blocks_) n += b.members.size();
        return n;
    }

    /// The eigenvector cosyzygies of degree d and their images.
    const std::vector<Cosyzygy>& members(int d) const { return block(d).members; }
    const std::vector<SparseVector>& images(int d) const { return block(d).images; }
    std::size_t rank(int d) const { return block(d).rank; }

    std::vector<int> degrees() const
    {
        std::vector<int> out;
        for (const auto& [d, b] : blocks_) out.push_back(d);
        return out;
    }

    /// Weight of a single cosyzygy: the sum of chi over its indices.
    static Integer weight(const WeightVector& chi, const Cosyzygy& c)
    {
        Integer w = chi.at(static_cast<std::size_t>(c.factor));
        for (int i : c.wedge) w += chi.at(static_cast<std::size_t>(i));
        return w;
    }

    /// Greedy scan by ascending weight, ties by index tuple.
    CosyzygyFamily min_basis(const WeightVector& chi) const
    {
        if (chi.size() != static_cast<std::size_t>(gen_.g())) {
            throw std::invalid_argument("weight vector must have g entries");
        }
        CosyzygyFamily fam{gen_, p_, FamilyTag::custom, {}, {}};
        for (const auto& [d, b] : blocks_) {
            if (b.rank == 0) continue;
            std::vector<std::size_t> order(b.members.size());
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::vector<Integer> w;
            for (const auto& c : b.members) w.push_back(weight(chi, c));
            std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
                if (w[x] != w[y]) return w[x] < w[y];
                return b.members[x].key() < b.members[y].key();
            });
            IncrementalBasis span;
            for (std::size_t i : order) {
                if (span.insert(b.images[i])) {
                    fam.members.push_back(b.members[i]);
                    fam.sources.emplace_back("greedy");
                    if (span.rank() == b.rank) break;
                }
            }
        }
        return fam;
    }

private:
    struct Block {
        std::vector<Cosyzygy> members;
        std::vector<SparseVector> images;
        std::size_t rank = 0;
    };

    const Block& block(int d) const
    {
        static const Block empty;
        auto it = blocks_.find(d);
        return it == blocks_.end() ? empty : it->second;
    }

    Genus gen_;
    int p_;
    std::map<int, Block> blocks_;
};

inline void check_zero_sum(const WeightVector& chi)
{
    Integer s = 0;
    for (const auto& x : chi) s += x;
    if (s != 0) throw std::invalid_argument("weight vector entries must sum to zero");
}

struct GreedyResult {
    CosyzygyFamily family;
    TState state;
    Integer value; ///< <chi, state>, the minimum over all monomial bases
};

inline GreedyResult greedy_min_state_basis(const CosyzygyMatroid& matroid, const WeightVector& chi)
{
    check_zero_sum(chi);
    CosyzygyFamily fam = matroid.min_basis(chi);
    TState s = t_state(fam);
    Integer v = pairing(chi, s);
    return {std::move(fam), std::move(s), std::move(v)};
}

inline GreedyResult greedy_min_state_basis(const Genus& gen, int p, const WeightVector& chi)
{
    return greedy_min_state_basis(CosyzygyMatroid(gen, p), chi);
}

struct SemiStable {
    Certificate certificate;
};

struct Unstable {
    WeightVector chi;
    TState min_state;
    Integer value; ///< <chi, min_state> > 0 = <chi, barycenter>
};

struct StabilityOutcome {
    std::variant<SemiStable, Unstable> result;
    std::size_t iterations = 0;
    std::vector<std::size_t> rejected_seeds; ///< seeds that are not monomial bases

    bool semistable() const noexcept { return std::holds_alternative<SemiStable>(result); }
};

struct StabilityOptions {
    std::size_t max_iterations = 10000;
    /// Without the oracle the hull of the seeds alone is tested (diagnostic mode).
    bool use_oracle = true;
    /// Drop seeds that fail verify_monomial_basis.
    bool validate_seeds = true;
};

/// The named families for p = 1, otherwise the greedy basis at chi = 0.
inline std::vector<CosyzygyFamily> default_seeds(const Genus& gen, int p)
{
    if (p == 1) return {family_plus(gen), family_minus(gen), family_star(gen)};
    const CosyzygyMatroid matroid(gen, p);
    return {matroid.min_basis(WeightVector(static_cast<std::size_t>(gen.g()), Integer(0)))};
}

inline StabilityOutcome torus_semistability(const Genus& gen, int p, const std::vector<CosyzygyFamily>& seeds,
                                            const StabilityOptions& opts = {})
{
    std::optional<CosyzygyMatroid> matroid;
    if (opts.use_oracle) matroid.emplace(gen, p);
    const WeightVector zero(static_cast<std::size_t>(gen.g()), Integer(0));

    StabilityOutcome out{SemiStable{}, 0, {}};
    std::vector<TState> states;
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        if (seeds[i].p != p || !(seeds[i].genus == gen)) {
            throw std::invalid_argument("seed family does not match the genus and order");
        }
        if (opts.validate_seeds && !verify_monomial_basis(gen, seeds[i]).verdict) {
            out.rejected_seeds.push_back(i);
            continue;
        }
        TState s = t_state(seeds[i]);
        if (std::find(states.begin(), states.end(), s) == states.end()) states.push_back(std::move(s));
    }
    if (states.empty()) {
        if (!matroid) throw std::invalid_argument("no usable seed and the oracle is disabled");
        states.push_back(greedy_min_state_basis(*matroid, zero).state);
    }

    const RationalVector target = barycenter(gen, p);
    for (;;) {
        if (out.iterations >= opts.max_iterations) {
            throw std::runtime_error("cutting-plane loop exceeded " + std::to_string(opts.max_iterations)
                                     + " iterations");
        }
        ++out.iterations;
        HullResult hull = hull_contains(states, target);
        if (auto* cert = std::get_if<Certificate>(&hull)) {
            out.result = SemiStable{std::move(*cert)};
            return out;
        }
        WeightVector chi = std::get<SeparatingWeight>(hull).chi;
        if (!matroid) {
            auto best = std::min_element(states.begin(), states.end(), [&](const TState& a, const TState& b) {
                return pairing(chi, a) < pairing(chi, b);
            });
            Integer v = pairing(chi, *best);
            out.result = Unstable{std::move(chi), *best, std::move(v)};
            return out;
        }
        GreedyResult g = greedy_min_state_basis(*matroid, chi);
        if (g.value > 0) {
            out.result = Unstable{std::move(chi), std::move(g.state), std::move(g.value)};
            return out;
        }
        if (std::find(states.begin(), states.end(), g.state) != states.end()) {
            throw std::logic_error("separation oracle returned a known state: internal error");
        }
        states.push_back(std::move(g.state));
    }
}

inline StabilityOutcome torus_semistability(const Genus& gen, int p)
{
    return torus_semistability(gen, p, default_seeds(gen, p));
}

} // namespace ribsyz
