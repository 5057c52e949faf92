#include "oracle.hpp"

#include "ribsyz/stability.hpp"

#include <gtest/gtest.h>

#include <functional>

using namespace ribsyz;

namespace {

WeightVector weights(const std::vector<int>& xs)
{
    WeightVector out;
    for (int x : xs) out.emplace_back(x);
    return out;
}

/// Minimum of <chi, state> over all monomial bases, by enumerating every
/// independent subset of full size in every degree.
Integer brute_force_min(const CosyzygyMatroid& m, const WeightVector& chi)
{
    Integer total = 0;
    for (int d : m.degrees()) {
        const auto& members = m.members(d);
        const std::size_t r = m.rank(d);
        if (r == 0) continue;
        const KoszulTerm target(m.genus(), m.p(), 2);
        std::vector<std::vector<oracle::Q>> dense;
        for (const auto& img : m.images(d)) dense.push_back(to_dense(img, target.dim(d)));

        std::optional<Integer> best;
        std::vector<std::size_t> pick;
        std::function<void(std::size_t)> rec = [&](std::size_t start) {
            if (pick.size() == r) {
                std::vector<std::vector<oracle::Q>> cols;
                for (std::size_t i : pick) cols.push_back(dense[i]);
                if (oracle::column_rank(cols) != r) return;
                Integer w = 0;
                for (std::size_t i : pick) w += CosyzygyMatroid::weight(chi, members[i]);
                if (!best || w < *best) best = w;
                return;
            }
            for (std::size_t i = start; i < members.size(); ++i) {
                pick.push_back(i);
                rec(i + 1);
                pick.pop_back();
            }
        };
        rec(0);
        total += *best;
    }
    return total;
}

} // namespace

TEST(Barycenter, Examples)
{
    EXPECT_EQ(barycenter(Genus(7), 1), RationalVector(7, Rational(288, 7)));
    EXPECT_EQ(barycenter(Genus(5), 1), RationalVector(5, Rational(24)));
    EXPECT_EQ(barycenter(Genus(9), 2), RationalVector(9, Rational(2240, 9)));
}

TEST(BarycenterLemma, ResidueAndCertificates)
{
    const Genus g7(7);
    const TState minus = t_state(family_minus(g7));
    const TState star = t_state(family_star(g7));
    TState L(7);
    for (std::size_t i = 0; i < 7; ++i) L[i] = 6 * star[i] + 4 * minus[i];
    EXPECT_EQ(L[0] - L[1], -62);
    EXPECT_EQ(L[3] - L[1], -62);
    EXPECT_EQ(L[6] - L[1], -62);

    EXPECT_EQ(verify_barycenter_lemma(Genus(5)).lambdas, (RationalVector{1, 0, 0}));
    for (int g = 5; g <= 15; g += 2) {
        const Certificate c = verify_barycenter_lemma(Genus(g));
        EXPECT_NO_THROW(check_certificate(c));
        EXPECT_EQ(c.target, barycenter(Genus(g), 1));
        if (g > 5) {
            for (const auto& l : c.lambdas) EXPECT_GT(l, 0);
        }
    }
}

TEST(Matroid, RanksMatchCosyzygyDimensions)
{
    for (int g = 5; g <= 9; g += 2) {
        const CosyzygyMatroid m(Genus(g), 1);
        EXPECT_EQ(m.size(), static_cast<std::size_t>(g * g * (g - 1) / 2));
        std::size_t r = 0;
        for (int d : m.degrees()) r += m.rank(d);
        EXPECT_EQ(r, static_cast<std::size_t>(cosyz_dim_expected(Genus(g), 1)));
    }
}

TEST(GreedyMinStateBasis, ZeroWeightGivesAMonomialBasis)
{
    const Genus g7(7);
    const GreedyResult r = greedy_min_state_basis(g7, 1, WeightVector(7, Integer(0)));
    EXPECT_EQ(r.value, 0);
    EXPECT_TRUE(verify_monomial_basis(g7, r.family).verdict);
    EXPECT_THROW(greedy_min_state_basis(g7, 1, weights({1, 0, 0, 0, 0, 0, 0})), std::invalid_argument);
}

TEST(GreedyMinStateBasis, BoundedByKnownBases)
{
    const Genus g5(5);
    const WeightVector chi = weights({4, -1, -6, -1, 4});
    const GreedyResult r = greedy_min_state_basis(g5, 1, chi);
    EXPECT_LE(r.value, pairing(chi, t_state(family_plus(g5))));
    EXPECT_TRUE(verify_monomial_basis(g5, r.family).verdict);

    const Genus g7(7);
    const WeightVector spike = weights({6, -1, -1, -1, -1, -1, -1});
    const GreedyResult s = greedy_min_state_basis(g7, 1, spike);
    EXPECT_LE(s.value, pairing(spike, t_state(family_plus(g7))));
    EXPECT_LE(s.value, pairing(spike, t_state(family_star(g7))));
}

TEST(GreedyMinStateBasis, MatchesBruteForceAtGenusFive)
{
    const CosyzygyMatroid m(Genus(5), 1);
    oracle::Gen gen(5);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<int> raw = gen.zero_sum(5, 6);
        const WeightVector chi = weights(raw);
        const GreedyResult r = greedy_min_state_basis(m, chi);
        ASSERT_EQ(r.value, brute_force_min(m, chi)) << trial;
        ASSERT_EQ(r.value, pairing(chi, r.state));
    }
}

TEST(GreedyMinStateBasis, MirrorAntisymmetricWeightsAreNonPositive)
{
    oracle::Gen gen(77);
    for (int g : {5, 7, 9}) {
        const CosyzygyMatroid m(Genus(g), 1);
        for (int trial = 0; trial < 10; ++trial) {
            WeightVector chi(static_cast<std::size_t>(g));
            for (int i = 0; i < g / 2; ++i) {
                const int x = gen.integer(-9, 9);
                chi[static_cast<std::size_t>(i)] = x;
                chi[static_cast<std::size_t>(g - 1 - i)] = -x;
            }
            EXPECT_LE(greedy_min_state_basis(m, chi).value, 0);
        }
    }
}

TEST(GreedyMinStateBasis, Deterministic)
{
    const CosyzygyMatroid m(Genus(7), 1);
    const WeightVector chi = weights({3, -2, 0, 1, 0, -2, 0});
    EXPECT_EQ(m.min_basis(chi).members, m.min_basis(chi).members);
}

TEST(TorusSemistability, FirstSyzygyPoint)
{
    for (int g : {7, 9, 11, 13}) {
        const StabilityOutcome r = torus_semistability(Genus(g), 1);
        ASSERT_TRUE(r.semistable()) << g;
        const Certificate& c = std::get<SemiStable>(r.result).certificate;
        EXPECT_NO_THROW(check_certificate(c));
        EXPECT_EQ(c.target, barycenter(Genus(g), 1));
    }
}

TEST(TorusSemistability, SecondSyzygyPoint)
{
    const StabilityOutcome r = torus_semistability(Genus(9), 2);
    ASSERT_TRUE(r.semistable());
    EXPECT_NO_THROW(check_certificate(std::get<SemiStable>(r.result).certificate));
}

TEST(TorusSemistability, InvalidSeedsAreSetAside)
{
    const StabilityOutcome r = torus_semistability(Genus(7), 1);
    EXPECT_EQ(r.rejected_seeds, (std::vector<std::size_t>{1}));
}

TEST(TorusSemistability, SinglePointDiagnosticIsUnstable)
{
    const Genus g7(7);
    StabilityOptions opts;
    opts.use_oracle = false;
    opts.validate_seeds = false;
    const StabilityOutcome r = torus_semistability(g7, 1, {family_minus(g7)}, opts);
    ASSERT_FALSE(r.semistable());
    const Unstable& u = std::get<Unstable>(r.result);
    Integer sum = 0;
    for (const auto& x : u.chi) sum += x;
    EXPECT_EQ(sum, 0);
    EXPECT_GT(u.value, 0);
    EXPECT_EQ(u.value, pairing(u.chi, u.min_state));
}

TEST(TorusSemistability, SeedsMustMatch)
{
    EXPECT_THROW(torus_semistability(Genus(7), 1, {family_plus(Genus(9))}), std::invalid_argument);
}
