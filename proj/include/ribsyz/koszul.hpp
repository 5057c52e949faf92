#pragma once

// Weight-graded Koszul complex of the balanced ribbon
//
//   ... -> /\^p H^0(w) (x) H^0(w^q) --f_{p,q}--> /\^{p-1} H^0(w) (x) H^0(w^{q+1}) -> ...
//
// Every term splits by u-degree and every differential preserves it, so all
// matrices are assembled and reduced one degree at a time.

#include "ribsyz/exactla.hpp"
#include "ribsyz/genus.hpp"
#include "ribsyz/rational.hpp"
#include "ribsyz/ribbon.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace ribsyz {

using WedgeMask = std::uint64_t;

inline std::vector<int> wedge_indices(WedgeMask mask)
{
    std::vector<int> out;
    while (mask != 0) {
        out.push_back(std::countr_zero(mask));
        mask &= mask - 1;
    }
    return out;
}

inline WedgeMask wedge_mask(const std::vector<int>& indices)
{
    WedgeMask mask = 0;
    for (int i : indices) {
        if (i < 0 || i >= 64) {
            throw std::out_of_range("wedge index out of range");
        }
        const WedgeMask bit = WedgeMask{1} << i;
        if (mask & bit) {
            throw std::invalid_argument("repeated index in a wedge product");
        }
        mask |= bit;
    }
    return mask;
}

inline int wedge_degree(WedgeMask mask)
{
    int d = 0;
    for (int i : wedge_indices(mask)) d += i;
    return d;
}

/// All p-element subsets of {0, ..., n-1}, in lexicographic order of their
/// increasing index tuples.
inline std::vector<WedgeMask> wedge_subsets(int n, int p)
{
    std::vector<WedgeMask> out;
    if (p < 0 || p > n) {
        return out;
    }
    std::vector<int> idx(p);
    for (int i = 0; i < p; ++i) idx[i] = i;
    while (true) {
        out.push_back(wedge_mask(idx));
        int i = p - 1;
        while (i >= 0 && idx[i] == n - p + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < p; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

/// Basis vector of H^0(w^m)_e.  Two-dimensional weight spaces use the chart
/// unit vectors (slot 0: u^e, slot 1: u^(e-k-1) e); a line uses the unique
/// normalized section with u-coefficient 1.
struct H0Label {
    int power = 0;
    int degree = 0;
    int slot = 0;

    auto operator<=>(const H0Label&) const = default;
};

inline RibbonSection label_section(const Genus& gen, const H0Label& label)
{
    const int dim = weight_space_dim(gen, label.power, label.degree);
    if (dim == 0 || label.slot < 0 || label.slot >= dim) {
        throw std::out_of_range("no such basis label of H^0");
    }
    if (dim == 2) {
        return RibbonSection{label.power, label.degree, Rational(label.slot == 0 ? 1 : 0),
                             Rational(label.slot == 1 ? 1 : 0)};
    }
    const int k = gen.k();
    const int b = label.degree <= k ? 0 : label.degree - label.power * k;
    return RibbonSection{label.power, label.degree, Rational(1), Rational(b)};
}

/// Coordinates of a global section in the labels of its weight space.
inline RationalVector h0_coordinates(const Genus& gen, const RibbonSection& s)
{
    if (!is_global_section(gen, s)) {
        throw std::logic_error("coordinates requested for a non-global section");
    }
    switch (weight_space_dim(gen, s.power, s.degree)) {
    case 0:
        return {};
    case 1:
        return {s.u_coeff};
    default:
        return {s.u_coeff, s.eps_coeff};
    }
}

/// Labels of H^0(w^m), indexed by degree 0..2km.  For m = 1 the label of
/// degree e is the section x_e.
inline std::vector<std::vector<H0Label>> h0_basis(const Genus& gen, int m)
{
    if (m < 0) {
        throw std::invalid_argument("negative power of the dualizing sheaf");
    }
    const int top = 2 * gen.k() * m;
    std::vector<std::vector<H0Label>> out(top + 1);
    for (int e = 0; e <= top; ++e) {
        for (int s = 0; s < weight_space_dim(gen, m, e); ++s) {
            out[e].push_back(H0Label{m, e, s});
        }
    }
    return out;
}

inline int h0_dim(const Genus& gen, int m)
{
    if (m == 0) return 1;
    if (m == 1) return gen.g();
    return (2 * m - 1) * (gen.g() - 1);
}

/// Basis element  x_{a_1} /\ ... /\ x_{a_p} (x) label  with a_1 < ... < a_p.
struct WedgeTensor {
    WedgeMask wedge = 0;
    H0Label factor;

    int degree() const { return wedge_degree(wedge) + factor.degree; }
    auto operator<=>(const WedgeTensor&) const = default;
};

inline std::string to_string(const WedgeTensor& t)
{
    std::string out;
    for (int i : wedge_indices(t.wedge)) {
        out += (out.empty() ? "x" : "^x") + std::to_string(i);
    }
    if (out.empty()) out = "1";
    out += " (x) w" + std::to_string(t.factor.power) + "[" + std::to_string(t.factor.degree);
    if (t.factor.slot == 1) out += "e";
    return out + "]";
}

/// One term  /\^p H^0(w) (x) H^0(w^q), with an ordered basis per degree.
class KoszulTerm {
public:
    KoszulTerm(const Genus& gen, int p, int q) : gen_(gen), p_(p), q_(q)
    {
        if (p < 0 || q < 0) {
            throw std::invalid_argument("Koszul term needs p, q >= 0");
        }
        const auto labels = h0_basis(gen, q);
        for (WedgeMask w : wedge_subsets(gen.g(), p)) {
            const int wd = wedge_degree(w);
            for (const auto& per_degree : labels) {
                for (const auto& label : per_degree) {
                    const int d = wd + label.degree;
                    auto& basis = basis_[d];
                    index_.emplace(key(w, label), basis.size());
                    basis.push_back(WedgeTensor{w, label});
                }
            }
        }
    }

    const Genus& genus() const noexcept { return gen_; }
    int p() const noexcept { return p_; }
    int q() const noexcept { return q_; }

    std::vector<int> degrees() const
    {
        std::vector<int> out;
        for (const auto& [d, b] : basis_) out.push_back(d);
        return out;
    }

    const std::vector<WedgeTensor>& basis(int d) const
    {
        static const std::vector<WedgeTensor> empty;
        auto it = basis_.find(d);
        return it == basis_.end() ? empty : it->second;
    }

    std::size_t dim(int d) const { return basis(d).size(); }

    std::size_t total_dim() const
    {
        std::size_t n = 0;
        for (const auto& [d, b] : basis_) n += b.size();
        return n;
    }

    std::size_t index_of(WedgeMask w, const H0Label& label) const
    {
        auto it = index_.find(key(w, label));
        if (it == index_.end()) {
            throw std::out_of_range("tensor label not in this Koszul term");
        }
        return it->second;
    }

    /// Adds coeff * (w (x) y) to `out`, in the coordinates of degree
    /// wedge_degree(w) + y.degree.
    void accumulate(WedgeMask w, const RibbonSection& y, const Rational& coeff,
                    SparseAccumulator& out) const
    {
        if (y.power != q_ || std::popcount(w) != p_) {
            throw std::invalid_argument("tensor does not belong to this Koszul term");
        }
        const RationalVector c = h0_coordinates(gen_, y);
        for (std::size_t s = 0; s < c.size(); ++s) {
            if (!is_zero(c[s])) {
                out.add(index_of(w, H0Label{q_, y.degree, static_cast<int>(s)}), coeff * c[s]);
            }
        }
    }

    SparseVector coordinates(WedgeMask w, const RibbonSection& y) const
    {
        SparseAccumulator acc;
        accumulate(w, y, Rational(1), acc);
        return acc.take();
    }

private:
    using Key = std::tuple<WedgeMask, int, int>;
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept
        {
            auto [w, e, s] = k;
            return std::hash<WedgeMask>{}(w) ^ (static_cast<std::size_t>(e) << 1) ^ static_cast<std::size_t>(s);
        }
    };
    static Key key(WedgeMask w, const H0Label& l) { return {w, l.degree, l.slot}; }

    Genus gen_;
    int p_;
    int q_;
    std::map<int, std::vector<WedgeTensor>> basis_;
    std::unordered_map<Key, std::size_t, KeyHash> index_;
};

/// f_{p,q}(w (x) y) in the coordinates of `target` = KoszulTerm(p-1, q+1):
///   sum_i (-1)^i  x_{a_0} /\ .. ^x_{a_i}^ .. /\ x_{a_{p-1}}  (x)  x_{a_i} y
inline SparseVector differential_image(const KoszulTerm& target, WedgeMask w, const RibbonSection& y)
{
    const Genus& gen = target.genus();
    SparseAccumulator acc;
    const std::vector<int> idx = wedge_indices(w);
    for (std::size_t i = 0; i < idx.size(); ++i) {
        const WedgeMask rest = w & ~(WedgeMask{1} << idx[i]);
        const RibbonSection prod = multiply(gen, basis_section(gen, idx[i]), y);
        target.accumulate(rest, prod, Rational(i % 2 == 0 ? 1 : -1), acc);
    }
    return acc.take();
}

struct KoszulPosition {
    int p = 0;
    int q = 0;
};

struct GradedBlock {
    int degree = 0;
    SparseMatrixQ matrix;            ///< rows = codomain labels, cols = domain labels
    std::vector<WedgeTensor> rows;
    std::vector<WedgeTensor> cols;
};

/// A u-degree-indexed family of matrices.  Degrees with an empty domain are
/// absent.
class GradedMatrix {
public:
    void insert(GradedBlock block)
    {
        if (block.matrix.rows() != block.rows.size() || block.matrix.cols() != block.cols.size()) {
            throw std::logic_error("graded block labels do not match its matrix");
        }
        const int d = block.degree;
        blocks_.insert_or_assign(d, std::move(block));
    }

    const std::map<int, GradedBlock>& blocks() const noexcept { return blocks_; }

    const GradedBlock* at(int d) const
    {
        auto it = blocks_.find(d);
        return it == blocks_.end() ? nullptr : &it->second;
    }

private:
    std::map<int, GradedBlock> blocks_;
};

inline GradedMatrix koszul_differential(const Genus& gen, KoszulPosition pos)
{
    if (pos.p < 1 || pos.q < 0) {
        throw std::invalid_argument("f_{p,q} needs p >= 1 and q >= 0");
    }
    const KoszulTerm domain(gen, pos.p, pos.q);
    const KoszulTerm codomain(gen, pos.p - 1, pos.q + 1);
    GradedMatrix out;
    for (int d : domain.degrees()) {
        const auto& cols = domain.basis(d);
        std::vector<SparseVector> images;
        images.reserve(cols.size());
        for (const auto& t : cols) {
            images.push_back(differential_image(codomain, t.wedge, label_section(gen, t.factor)));
        }
        out.insert(GradedBlock{d, SparseMatrixQ::from_columns(images, codomain.dim(d)), codomain.basis(d), cols});
    }
    return out;
}

/// One row of a differential's dimension table.
struct DifferentialDims {
    int g = 0;
    int p = 0;
    int q = 0;
    int d = 0;
    std::size_t domain = 0;
    std::size_t rank = 0;
    std::size_t ker = 0;
    std::size_t coker = 0;
};

inline std::vector<DifferentialDims> differential_dims(const Genus& gen, KoszulPosition pos)
{
    std::vector<DifferentialDims> out;
    const GradedMatrix f = koszul_differential(gen, pos);
    for (const auto& [d, block] : f.blocks()) {
        const std::size_t r = rank(block.matrix);
        out.push_back({gen.g(), pos.p, pos.q, d, block.cols.size(), r, block.cols.size() - r,
                       block.rows.size() - r});
    }
    return out;
}

/// Per-degree dimension of K_{p,q}: ker f_{p,q} / im f_{p+1,q-1}.
inline std::map<int, std::size_t> koszul_cohomology_by_degree(const Genus& gen, KoszulPosition pos)
{
    if (pos.p < 0 || pos.q < 0) {
        throw std::invalid_argument("K_{p,q} needs p, q >= 0");
    }
    std::map<int, std::size_t> ker;
    if (pos.p == 0) {
        // f_{0,q} is the zero map to /\^{-1} = 0.
        const KoszulTerm t(gen, 0, pos.q);
        for (int d : t.degrees()) ker[d] = t.dim(d);
    } else {
        for (const auto& row : differential_dims(gen, pos)) ker[row.d] = row.ker;
    }
    if (pos.q >= 1) {
        for (const auto& row : differential_dims(gen, {pos.p + 1, pos.q - 1})) {
            if (row.rank == 0) continue;
            auto it = ker.find(row.d);
            if (it == ker.end() || it->second < row.rank) {
                throw std::logic_error("image larger than kernel: f o f != 0");
            }
            it->second -= row.rank;
        }
    }
    return ker;
}

inline std::size_t koszul_cohomology_dim(const Genus& gen, KoszulPosition pos)
{
    std::size_t total = 0;
    for (const auto& [d, n] : koszul_cohomology_by_degree(gen, pos)) total += n;
    return total;
}

inline long long binomial(long long n, long long r)
{
    if (r < 0 || r > n) return 0;
    long long out = 1;
    for (long long i = 1; i <= r; ++i) {
        out = out * (n - r + i) / i;
    }
    return out;
}

/// dim Gamma_p = g * C(g, p+1) - C(g, p+2).
inline long long gamma_dim(const Genus& gen, int p)
{
    if (p < 0) throw std::invalid_argument("gamma_dim needs p >= 0");
    const long long g = gen.g();
    return g * binomial(g, p + 1) - binomial(g, p + 2);
}

/// dim CoSyz_p = (3g - 2p - 3) * C(g-1, p).
inline long long cosyz_dim_expected(const Genus& gen, int p)
{
    if (p < 0) throw std::invalid_argument("cosyz_dim_expected needs p >= 0");
    const long long g = gen.g();
    return (3 * g - 2 * p - 3) * binomial(g - 1, p);
}

struct CosyzygyKernel {
    std::map<int, std::vector<RationalVector>> by_degree; ///< kernel basis of the degree-d block of f_{p,2}
    std::size_t total = 0;
};

inline CosyzygyKernel cosyz_kernel(const Genus& gen, int p)
{
    if (p < 1) throw std::invalid_argument("cosyz_kernel needs p >= 1");
    CosyzygyKernel out;
    const GradedMatrix f = koszul_differential(gen, {p, 2});
    for (const auto& [d, block] : f.blocks()) {
        auto basis = kernel_basis(block.matrix);
        out.total += basis.size();
        out.by_degree.emplace(d, std::move(basis));
    }
    return out;
}

/// All nondecreasing index tuples of length m over [0, 2k].
inline std::vector<Monomial> all_monomials(const Genus& gen, int m)
{
    std::vector<Monomial> out;
    if (m < 0) return out;
    std::vector<int> idx(m, 0);
    const int top = gen.top_index();
    while (true) {
        out.emplace_back(idx);
        int i = m - 1;
        while (i >= 0 && idx[i] == top) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < m; ++j) idx[j] = idx[i];
    }
    return out;
}

/// Sym^m H^0(w) -> H^0(w^m) is onto, checked weight space by weight space.
inline bool verify_N0(const Genus& gen, int m)
{
    if (m < 2) throw std::invalid_argument("verify_N0 needs m >= 2");
    std::map<int, std::vector<RationalVector>> charts;
    for (const auto& mono : all_monomials(gen, m)) {
        const RibbonSection s = monomial_section(gen, mono);
        charts[s.degree].push_back({s.u_coeff, s.eps_coeff});
    }
    for (int d = 0; d <= 2 * gen.k() * m; ++d) {
        const auto it = charts.find(d);
        const std::size_t r = it == charts.end() ? 0 : rank(SparseMatrixQ::from_rows(it->second, 2));
        if (r != static_cast<std::size_t>(weight_space_dim(gen, m, d))) {
            return false;
        }
    }
    return true;
}

} // namespace ribsyz
