#pragma once

// Eigenvector cosyzygies (x_{a_0} /\ ... /\ x_{a_p}) (x) x_c, the three named
// monomial-basis candidates C+, C-, C*, and the quotient computations used to
// analyse them.

#include "ribsyz/exactla.hpp"
#include "ribsyz/genus.hpp"
#include "ribsyz/koszul.hpp"
#include "ribsyz/rational.hpp"
#include "ribsyz/ribbon.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ribsyz {

/// (x_{wedge[0]} /\ ... /\ x_{wedge[p]}) (x) x_factor, wedge strictly
/// increasing.  Reordering a wedge only changes a sign, which no span, rank
/// or state depends on, so it is dropped.
struct Cosyzygy {
    std::vector<int> wedge;
    int factor = 0;

    static Cosyzygy make(std::vector<int> wedge, int factor)
    {
        std::sort(wedge.begin(), wedge.end());
        if (std::adjacent_find(wedge.begin(), wedge.end()) != wedge.end()) {
            throw std::invalid_argument("cosyzygy with a repeated wedge index is zero");
        }
        if (wedge.size() < 2) {
            throw std::invalid_argument("cosyzygy needs at least two wedge factors");
        }
        return Cosyzygy{std::move(wedge), factor};
    }

    static Cosyzygy triple(int a, int b, int c) { return make({a, b}, c); }

    /// Syzygy order p (the wedge has p + 1 factors).
    int order() const noexcept { return static_cast<int>(wedge.size()) - 1; }

    int degree() const noexcept
    {
        int d = factor;
        for (int i : wedge) d += i;
        return d;
    }

    /// Index tuple (wedge..., factor); the tie-breaking key for greedy scans.
    std::vector<int> key() const
    {
        std::vector<int> out = wedge;
        out.push_back(factor);
        return out;
    }

    auto operator<=>(const Cosyzygy&) const = default;
};

inline std::string to_string(const Cosyzygy& c)
{
    std::string out = "(";
    for (std::size_t i = 0; i < c.wedge.size(); ++i) {
        out += (i ? "^x" : "x") + std::to_string(c.wedge[i]);
    }
    return out + ")(x)x" + std::to_string(c.factor);
}

inline void check_cosyzygy(const Genus& gen, const Cosyzygy& c)
{
    for (int i : c.wedge) check_index(gen, i);
    check_index(gen, c.factor);
    if (!std::is_sorted(c.wedge.begin(), c.wedge.end())
        || std::adjacent_find(c.wedge.begin(), c.wedge.end()) != c.wedge.end()) {
        throw std::invalid_argument("cosyzygy wedge must be strictly increasing: " + to_string(c));
    }
}

enum class FamilyTag { plus, minus, star, custom };

inline std::string to_string(FamilyTag t)
{
    switch (t) {
    case FamilyTag::plus: return "plus";
    case FamilyTag::minus: return "minus";
    case FamilyTag::star: return "star";
    case FamilyTag::custom: return "custom";
    }
    return "custom";
}

inline FamilyTag parse_family_tag(const std::string& s)
{
    if (s == "plus") return FamilyTag::plus;
    if (s == "minus") return FamilyTag::minus;
    if (s == "star") return FamilyTag::star;
    if (s == "custom") return FamilyTag::custom;
    throw std::invalid_argument("unknown family '" + s + "' (expected plus, minus, star or custom)");
}

/// Members in listing order; `sources[i]` names the sublist member i came from.
struct CosyzygyFamily {
    Genus genus;
    int p = 1;
    FamilyTag tag = FamilyTag::custom;
    std::vector<Cosyzygy> members;
    std::vector<std::string> sources;
};

/// Members listed more than once, each reported once, in sorted order.
inline std::vector<Cosyzygy> duplicate_members(const CosyzygyFamily& fam)
{
    std::map<Cosyzygy, int> seen;
    for (const auto& c : fam.members) ++seen[c];
    std::vector<Cosyzygy> out;
    for (const auto& [c, n] : seen) {
        if (n > 1) out.push_back(c);
    }
    return out;
}

/// Size of a monomial basis of cosyzygies for p = 1: (3g-5)(g-1) = 12k^2 - 4k.
inline long long first_order_basis_size(const Genus& gen)
{
    const long long g = gen.g();
    return (3 * g - 5) * (g - 1);
}

namespace detail {

inline long long floor_div(long long a, long long b)
{
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline long long ceil_div(long long a, long long b)
{
    return -floor_div(-a, b);
}

/// Nearest integer to n/3, i.e. floor(n/3 + 1/2).
inline long long round_third(long long n)
{
    return floor_div(2 * n + 3, 6);
}

class FamilyBuilder {
public:
    FamilyBuilder(const Genus& gen, FamilyTag tag) : fam_{gen, 1, tag, {}, {}} {}

    void add(int a, int b, int c, const char* source)
    {
        fam_.members.push_back(Cosyzygy::triple(a, b, c));
        fam_.sources.emplace_back(source);
    }

    CosyzygyFamily finish()
    {
        const long long expected = first_order_basis_size(fam_.genus);
        if (static_cast<long long>(fam_.members.size()) != expected) {
            throw std::logic_error("family " + to_string(fam_.tag) + " has " + std::to_string(fam_.members.size())
                                   + " members, expected " + std::to_string(expected));
        }
        for (const auto& c : fam_.members) check_cosyzygy(fam_.genus, c);
        return std::move(fam_);
    }

private:
    CosyzygyFamily fam_;
};

/// Sublists (T1)-(T9) of C-; shared with C*.
inline void add_minus_core(FamilyBuilder& b, int k)
{
    const int n = 2 * k;
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            if (i != j - k - 1 && i != j - k && i != j && i != j + k && i != j + k + 1) b.add(i, j, j, "T1");
        }
    }
    for (int j = 0; j <= n - 1; ++j) {
        for (int i = 0; i <= n; ++i) {
            if ((i > j + 1 || i == j - k + 1) && i != j + k && i != j + k + 1) b.add(i, j + 1, j, "T2");
        }
    }
    for (int j = 1; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            if ((i < j - 1 || i == j + k - 1) && i != j - k && i != j - k - 1) b.add(i, j - 1, j, "T3");
        }
    }
    for (int j = 1; j < k; ++j) {
        for (int i = k; i <= n; ++i) b.add(i, j, j + k, "T4");
    }
    for (int j = 0; j < k; ++j) {
        for (int i = k; i <= n; ++i) b.add(i, j, j + k + 1, "T5");
    }
    for (int j = 1; j < k; ++j) {
        for (int i = 0; i < k; ++i) b.add(i, j + k, j, "T6");
    }
    for (int j = 0; j < k; ++j) {
        for (int i = 0; i < k; ++i) b.add(i, j + k + 1, j, "T7");
    }
    b.add(k, 0, 0, "T8");
    b.add(k, n, n, "T9");
}

} // namespace detail

inline CosyzygyFamily family_plus(const Genus& gen)
{
    const int k = gen.k();
    const int n = 2 * k;
    detail::FamilyBuilder b(gen, FamilyTag::plus);
    for (int i = 1; i <= n - 1; ++i)
        for (int j = 0; j <= n - 1; ++j) b.add(0, i, j, "T1");
    for (int i = 1; i <= k - 1; ++i) b.add(0, i, n, "T2");
    for (int i = 0; i <= k - 1; ++i) b.add(0, n, i, "T3");
    for (int i = 1; i <= n - 1; ++i)
        for (int j = 1; j <= n; ++j) b.add(n, i, j, "T4");
    for (int i = k + 1; i <= n; ++i) b.add(n, 0, i, "T5");
    for (int i = k + 1; i <= n - 1; ++i) b.add(n, i, 0, "T6");
    for (int i = 1; i <= n - 1; ++i) {
        if (i == k) continue;
        for (int j = 1; j <= n - 1; ++j) b.add(k, i, j, "T7");
    }
    b.add(k, 0, n, "T8");
    b.add(k, n, 0, "T8");
    for (int i = 1; i <= k - 1; ++i) b.add(i, k + i, k - i, "T9");
    for (int i = 1; i <= k - 1; ++i) b.add(n - i, k - i, k + i, "T10");
    return b.finish();
}

/// (T10) member of C- in degree 2k <= d <= 4k.
inline Cosyzygy minus_degree_relation(const Genus& gen, int d)
{
    const int k = gen.k();
    if (d < 2 * k || d > 4 * k) {
        throw std::out_of_range("(T10) relations live in degrees 2k..4k");
    }
    if (k % 3 == 1 && d == 2 * k) {
        return Cosyzygy::triple(0, static_cast<int>(detail::floor_div(4 * k, 3)),
                                static_cast<int>(detail::ceil_div(2 * k, 3)));
    }
    const int s = static_cast<int>(detail::floor_div(d - 2 * k, 3));
    const int l = static_cast<int>(detail::ceil_div(d + 2 * k, 3));
    return Cosyzygy::triple(s, l, d - s - l);
}

/// C- exactly as listed.  For small genus some (T10) members coincide with
/// earlier sublists; they are kept (and counted in the state) and show up in
/// duplicate_members() and in verification.
inline CosyzygyFamily family_minus(const Genus& gen)
{
    const int k = gen.k();
    detail::FamilyBuilder b(gen, FamilyTag::minus);
    detail::add_minus_core(b, k);
    for (int d = 2 * k; d <= 4 * k; ++d) {
        const Cosyzygy c = minus_degree_relation(gen, d);
        b.add(c.wedge[0], c.wedge[1], c.factor, "T10");
    }
    return b.finish();
}

inline CosyzygyFamily family_star(const Genus& gen)
{
    const int k = gen.k();
    const int n = 2 * k;
    detail::FamilyBuilder b(gen, FamilyTag::star);
    detail::add_minus_core(b, k);
    for (int d = 2 * k; d < 3 * k; ++d) b.add(d - k, 0, k, "S2");
    b.add(n, 0, k, "S3");
    for (int d = 3 * k + 1; d <= 4 * k; ++d) b.add(d - 3 * k, n, k, "S4");
    return b.finish();
}

inline CosyzygyFamily named_family(const Genus& gen, FamilyTag tag)
{
    switch (tag) {
    case FamilyTag::plus: return family_plus(gen);
    case FamilyTag::minus: return family_minus(gen);
    case FamilyTag::star: return family_star(gen);
    case FamilyTag::custom: break;
    }
    throw std::invalid_argument("custom families have no generator");
}

/// The relations (T1)-(T7) of C-, whose quotient is generated by the sink tensors.
inline std::vector<Cosyzygy> minus_core_relations(const Genus& gen)
{
    const CosyzygyFamily fam = family_minus(gen);
    std::vector<Cosyzygy> out;
    for (std::size_t i = 0; i < fam.members.size(); ++i) {
        const std::string& s = fam.sources[i];
        if (s != "T8" && s != "T9" && s != "T10") out.push_back(fam.members[i]);
    }
    return out;
}

/// Image of a cosyzygy under f_{p+1,1}, in the coordinates of `target`
/// (= KoszulTerm(genus, p, 2)).
inline SparseVector cosyzygy_image(const KoszulTerm& target, const Cosyzygy& c)
{
    if (target.p() != c.order() || target.q() != 2) {
        throw std::invalid_argument("cosyzygy image target must be /\\^p H^0(w) (x) H^0(w^2)");
    }
    const Genus& gen = target.genus();
    check_cosyzygy(gen, c);
    return differential_image(target, wedge_mask(c.wedge), basis_section(gen, c.factor));
}

struct DegreeCheck {
    int d = 0;
    std::size_t members = 0;
    std::size_t kernel_dim = 0;
    std::size_t rank = 0;

    bool ok() const noexcept { return members == kernel_dim && rank == members; }
};

struct VerificationReport {
    bool verdict = false;
    std::size_t total = 0;     ///< number of members
    std::size_t expected = 0;  ///< dim CoSyz_p from the dimension formula
    std::vector<DegreeCheck> degrees;
    std::vector<Cosyzygy> duplicates;

    std::vector<int> failing_degrees() const
    {
        std::vector<int> out;
        for (const auto& d : degrees)
            if (!d.ok()) out.push_back(d.d);
        return out;
    }
};

/// Whether the images of the members form a basis of ker f_{p,2}, degree by
/// degree.  Every degree is evaluated and reported.
inline VerificationReport verify_monomial_basis(const Genus& gen, const CosyzygyFamily& fam)
{
    if (fam.p < 1) throw std::invalid_argument("family order p must be >= 1");
    for (const auto& c : fam.members) {
        check_cosyzygy(gen, c);
        if (c.order() != fam.p) {
            throw std::invalid_argument("cosyzygy " + to_string(c) + " does not have order p = "
                                        + std::to_string(fam.p));
        }
    }
    const KoszulTerm target(gen, fam.p, 2);
    std::map<int, DegreeCheck> checks;
    for (const auto& row : differential_dims(gen, {fam.p, 2})) {
        if (row.ker > 0) checks[row.d] = DegreeCheck{row.d, 0, row.ker, 0};
    }
    std::map<int, IncrementalBasis> spans;
    for (const auto& c : fam.members) {
        auto& chk = checks[c.degree()];
        chk.d = c.degree();
        ++chk.members;
        if (spans[c.degree()].insert(cosyzygy_image(target, c))) ++chk.rank;
    }

    VerificationReport report;
    report.total = fam.members.size();
    report.expected = static_cast<std::size_t>(cosyz_dim_expected(gen, fam.p));
    report.duplicates = duplicate_members(fam);
    report.verdict = true;
    for (const auto& [d, chk] : checks) {
        report.degrees.push_back(chk);
        report.verdict = report.verdict && chk.ok();
    }
    return report;
}

using TState = std::vector<long long>;

/// Occurrences of each x_i across all members (a member listed twice counts twice).
inline TState t_state(const CosyzygyFamily& fam)
{
    TState n(static_cast<std::size_t>(fam.genus.g()), 0);
    for (const auto& c : fam.members) {
        check_cosyzygy(fam.genus, c);
        for (int i : c.wedge) ++n[static_cast<std::size_t>(i)];
        ++n[static_cast<std::size_t>(c.factor)];
    }
    return n;
}

/// The displayed T-state formulas of the three named families.
inline TState closed_form_state(const Genus& gen, FamilyTag tag)
{
    const long long g = gen.g();
    const int k = gen.k();
    long long ends = 0;
    long long middle = 0;
    long long other = 0;
    switch (tag) {
    case FamilyTag::plus:
        ends = middle = g * g - 1;
        other = 6 * g - 6;
        break;
    case FamilyTag::minus:
        ends = 7 * g - 12;
        middle = 7 * g - 15;
        other = 9 * g - 18;
        break;
    case FamilyTag::star:
        ends = (15 * g - 29) / 2; // 15g - 29 is even for odd g
        middle = 8 * g - 16;
        other = 9 * g - 20;
        break;
    case FamilyTag::custom:
        throw std::invalid_argument("custom families have no closed-form state");
    }
    TState n(static_cast<std::size_t>(g), other);
    n.front() = ends;
    n.back() = ends;
    n[static_cast<std::size_t>(k)] = middle;
    return n;
}

struct QuotientDim {
    int d = 0;
    std::size_t dim = 0;
};

/// dim (H^0(w) (x) H^0(w^2))_d / <images of subset>_d for every degree.
inline std::vector<QuotientDim> quotient_dims(const Genus& gen, const std::vector<Cosyzygy>& subset)
{
    const KoszulTerm space(gen, 1, 2);
    std::map<int, IncrementalBasis> spans;
    for (const auto& c : subset) {
        if (c.order() != 1) throw std::invalid_argument("quotient_dims works with p = 1 cosyzygies");
        spans[c.degree()].insert(cosyzygy_image(space, c));
    }
    std::vector<QuotientDim> out;
    for (int d : space.degrees()) {
        auto it = spans.find(d);
        out.push_back({d, space.dim(d) - (it == spans.end() ? 0 : it->second.rank())});
    }
    return out;
}

/// x_level (x) quad, a tensor of H^0(w) (x) H^0(w^2).
struct LevelTensor {
    int level = 0;
    Monomial quad;

    int degree() const { return level + quad.degree(); }
};

struct SinkTensor {
    int type = 0; ///< 1, 2 or 3
    LevelTensor tensor;
};

/// The Type 1/2/3 generators present in degree d (Type 1 for 0 <= d <= 6k,
/// Type 2 for k <= d <= 4k, Type 3 for 2k <= d <= 5k).
inline std::vector<SinkTensor> sink_tensors(const Genus& gen, int d)
{
    using detail::ceil_div;
    using detail::floor_div;
    using detail::round_third;
    const long long k = gen.k();
    std::vector<SinkTensor> out;
    if (0 <= d && d <= 6 * k) {
        out.push_back({1, {static_cast<int>(round_third(d)),
                           Monomial{static_cast<int>(floor_div(d, 3)), static_cast<int>(ceil_div(d, 3))}}});
    }
    if (k <= d && d <= 4 * k) {
        out.push_back({2, {static_cast<int>(ceil_div(d + 2 * k, 3)),
                           Monomial{static_cast<int>(floor_div(d - k, 3)), static_cast<int>(round_third(d - k))}}});
    }
    if (2 * k <= d && d <= 5 * k) {
        out.push_back({3, {static_cast<int>(floor_div(d - 2 * k, 3)),
                           Monomial{static_cast<int>(round_third(d + k)), static_cast<int>(ceil_div(d + k, 3))}}});
    }
    return out;
}

/// x_i (x) x_{floor((d-i)/2)} x_{ceil((d-i)/2)}, when its indices are in range.
inline std::optional<LevelTensor> balanced_tensor(const Genus& gen, int d, int level)
{
    const int rest = d - level;
    if (level < 0 || level > gen.top_index() || rest < 0 || rest > 2 * gen.top_index()) {
        return std::nullopt;
    }
    return LevelTensor{level, Monomial{rest / 2, rest - rest / 2}};
}

struct QuotientCoordinates {
    int degree = 0;
    std::vector<int> types;      ///< sink types, in increasing order
    RationalVector coefficients; ///< one per type
};

/// Coordinates of x_level (x) quad in the quotient by the span of `subset`,
/// in the basis of sink tensors of its degree.  Throws std::domain_error if
/// the sink tensors are not a basis of the quotient in that degree.
inline QuotientCoordinates coefficients_in_quotient(const Genus& gen, int level, const Monomial& quad,
                                                    const std::vector<Cosyzygy>& subset)
{
    check_index(gen, level);
    check_monomial(gen, quad);
    if (quad.size() != 2) throw std::invalid_argument("coefficients_in_quotient needs a quadratic monomial");
    const KoszulTerm space(gen, 1, 2);
    const int d = level + quad.degree();
    const std::size_t n = space.dim(d);
    auto tensor = [&](const LevelTensor& t) {
        return space.coordinates(wedge_mask({t.level}), monomial_section(gen, t.quad));
    };

    IncrementalBasis relations;
    std::vector<RationalVector> columns;
    for (const auto& c : subset) {
        if (c.order() != 1) throw std::invalid_argument("coefficients_in_quotient works with p = 1 cosyzygies");
        if (c.degree() != d) continue;
        SparseVector v = cosyzygy_image(space, c);
        if (relations.insert(v)) columns.push_back(to_dense(v, n));
    }
    const auto sinks = sink_tensors(gen, d);
    QuotientCoordinates out{d, {}, {}};
    IncrementalBasis all = relations;
    std::vector<RationalVector> sink_columns;
    for (const auto& s : sinks) {
        const SparseVector v = tensor(s.tensor);
        if (!all.insert(v)) {
            throw std::domain_error("sink tensors are dependent modulo the relations in degree " + std::to_string(d));
        }
        sink_columns.push_back(to_dense(v, n));
        out.types.push_back(s.type);
    }
    if (all.rank() != n) {
        throw std::domain_error("sink tensors do not span the quotient in degree " + std::to_string(d) + " (dim "
                                + std::to_string(n - relations.rank()) + ", " + std::to_string(sinks.size())
                                + " sinks)");
    }
    sink_columns.insert(sink_columns.end(), columns.begin(), columns.end());
    const auto solution = solve_in_span(sink_columns, to_dense(tensor({level, quad}), n));
    if (!solution) {
        throw std::logic_error("tensor outside a spanning set: internal error");
    }
    out.coefficients.assign(solution->begin(), solution->begin() + static_cast<long>(sinks.size()));
    return out;
}

} // namespace ribsyz
