#pragma once

// Sections of powers of the dualizing sheaf of the balanced ribbon, kept as
// their restriction to the U-chart  Spec C[u, e]/(e^2).  A weight-d piece of a
// section of w^m is  a*u^d + b*u^(d-k-1)*e  times the m-th power of the local
// generator; the V-chart never needs to be materialized because membership in
// H^0(w^m) reduces to two linear conditions on (a, b).

#include "ribsyz/genus.hpp"
#include "ribsyz/rational.hpp"

#include <algorithm>
#include <compare>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ribsyz {

struct RibbonSection {
    int power = 0;
    int degree = 0;
    Rational u_coeff;   ///< coefficient of u^d
    Rational eps_coeff; ///< coefficient of u^(d-k-1) e

    friend bool operator==(const RibbonSection&, const RibbonSection&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const RibbonSection& s)
{
    return os << "(m=" << s.power << ", d=" << s.degree << ", a=" << s.u_coeff << ", b=" << s.eps_coeff
              << ")";
}

/// Nondecreasing list of variable indices: x_{i_1} x_{i_2} ... x_{i_m}.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<int> indices) : indices_(std::move(indices))
    {
        std::sort(indices_.begin(), indices_.end());
    }
    Monomial(std::initializer_list<int> indices) : Monomial(std::vector<int>(indices)) {}

    const std::vector<int>& indices() const noexcept { return indices_; }
    int size() const noexcept { return static_cast<int>(indices_.size()); }
    /// u-degree: the sum of the indices.
    int degree() const noexcept { return std::accumulate(indices_.begin(), indices_.end(), 0); }

    auto operator<=>(const Monomial&) const = default;

private:
    std::vector<int> indices_;
};

inline std::string to_string(const Monomial& m)
{
    std::string out;
    for (int i : m.indices()) {
        out += "x" + std::to_string(i);
    }
    return out.empty() ? "1" : out;
}

inline void check_index(const Genus& gen, int i)
{
    if (i < 0 || i > gen.top_index()) {
        throw std::out_of_range("variable index " + std::to_string(i) + " outside [0, "
                                + std::to_string(gen.top_index()) + "]");
    }
}

inline void check_monomial(const Genus& gen, const Monomial& mono)
{
    for (int i : mono.indices()) {
        check_index(gen, i);
    }
}

/// dim H^0(w^m)_d; zero outside [0, 2km].  For m = 1 every weight space is a line.
inline int weight_space_dim(const Genus& gen, int m, int d)
{
    if (m < 0) {
        throw std::invalid_argument("negative power of the dualizing sheaf");
    }
    const int k = gen.k();
    const int top = 2 * k * m;
    if (d < 0 || d > top) {
        return 0;
    }
    if (d <= k || d >= top - k) {
        return 1;
    }
    return 2;
}

/// Whether (a, b) at (m, d) is the chart restriction of a global section.
inline bool is_global_section(const Genus& gen, const RibbonSection& s)
{
    const int k = gen.k();
    if (weight_space_dim(gen, s.power, s.degree) == 0) {
        return is_zero(s.u_coeff) && is_zero(s.eps_coeff);
    }
    if (s.degree <= k && !is_zero(s.eps_coeff)) {
        return false;
    }
    if (s.degree >= 2 * k * s.power - k && s.eps_coeff != (s.degree - s.power * k) * s.u_coeff) {
        return false;
    }
    return true;
}

/// The chart form of x_i.
inline RibbonSection basis_section(const Genus& gen, int i)
{
    check_index(gen, i);
    const int k = gen.k();
    return RibbonSection{1, i, Rational(1), Rational(i > k ? i - k : 0)};
}

/// The unit of H^0(w^0).
inline RibbonSection unit_section()
{
    return RibbonSection{0, 0, Rational(1), Rational(0)};
}

/// Product in C[u, e]/(e^2).  The result is always a global section; a
/// violation means a bug upstream, so it throws std::logic_error.
inline RibbonSection multiply(const Genus& gen, const RibbonSection& s, const RibbonSection& t)
{
    RibbonSection r{s.power + t.power, s.degree + t.degree, s.u_coeff * t.u_coeff,
                    s.u_coeff * t.eps_coeff + s.eps_coeff * t.u_coeff};
    if (!is_global_section(gen, r)) {
        throw std::logic_error("product of global sections left H^0: internal error");
    }
    return r;
}

/// Closed form of a monomial on U: u^a + (a - b) u^(a-k-1) e with a the index
/// sum and b the sum of small indices plus k per large index.
inline RibbonSection monomial_section(const Genus& gen, const Monomial& mono)
{
    check_monomial(gen, mono);
    const int k = gen.k();
    int a = 0;
    int b = 0;
    for (int i : mono.indices()) {
        a += i;
        b += (i <= k) ? i : k;
    }
    return RibbonSection{mono.size(), a, Rational(1), Rational(a - b)};
}

struct QuadraticDecomposition {
    Rational balanced;   ///< coefficient of x_{floor(d/2)} x_{ceil(d/2)}
    Rational k_balanced; ///< coefficient of x_{floor((d-k)/2)} x_{ceil((d+k)/2)}
};

/// Writes x_i x_j (i <= j) in the balanced / k-balanced pair of its degree.
/// Where the weight space is a line the k-balanced coefficient is zero.
inline QuadraticDecomposition quad_decompose(const Genus& gen, int i, int j)
{
    check_index(gen, i);
    check_index(gen, j);
    if (i > j) {
        throw std::invalid_argument("quad_decompose expects i <= j");
    }
    const int k = gen.k();
    const int d = i + j;
    const RibbonSection target = monomial_section(gen, Monomial{i, j});
    const RibbonSection bal = monomial_section(gen, Monomial{d / 2, d - d / 2});
    if (weight_space_dim(gen, 2, d) == 1) {
        return {target.u_coeff / bal.u_coeff, Rational(0)};
    }
    const int lo = (d - k) / 2; // d > k here, so integer division is floor
    const RibbonSection kbal = monomial_section(gen, Monomial{lo, d - lo});

    // Cramer on [bal kbal] (lambda, mu)^T = target in (a, b) coordinates.
    const Rational det = bal.u_coeff * kbal.eps_coeff - kbal.u_coeff * bal.eps_coeff;
    if (is_zero(det)) {
        throw std::logic_error("balanced and k-balanced forms are dependent: internal error");
    }
    Rational lambda = (target.u_coeff * kbal.eps_coeff - kbal.u_coeff * target.eps_coeff) / det;
    Rational mu = (bal.u_coeff * target.eps_coeff - target.u_coeff * bal.eps_coeff) / det;
    return {lambda, mu};
}

enum class QuadraticFamily { plus, minus };

/// The two ribbon-symmetric monomial bases of H^0(w^2), in listing order.
inline std::vector<Monomial> quadratic_basis(const Genus& gen, QuadraticFamily family)
{
    const int k = gen.k();
    const int n = 2 * k;
    std::vector<Monomial> out;
    if (family == QuadraticFamily::plus) {
        for (int i = 0; i <= n; ++i) out.push_back(Monomial{0, i});
        for (int i = 1; i <= n - 1; ++i) out.push_back(Monomial{k, i});
        for (int i = 1; i <= n; ++i) out.push_back(Monomial{n, i});
    } else {
        for (int i = 0; i <= n; ++i) out.push_back(Monomial{i, i});
        for (int i = 0; i <= n - 1; ++i) out.push_back(Monomial{i, i + 1});
        for (int i = 1; i <= k - 1; ++i) out.push_back(Monomial{i, i + k});
        for (int i = 0; i <= k - 1; ++i) out.push_back(Monomial{i, i + k + 1});
    }
    return out;
}

/// The involution x_i <-> x_{2k-i}.
inline Monomial z2_mirror(const Genus& gen, const Monomial& mono)
{
    check_monomial(gen, mono);
    std::vector<int> out;
    out.reserve(mono.indices().size());
    for (int i : mono.indices()) {
        out.push_back(gen.top_index() - i);
    }
    return Monomial(std::move(out));
}

} // namespace ribsyz
