#pragma once

// Exact feasibility LP  A x = b, x >= 0  by phase-one simplex with Bland's
// rule.  Infeasible systems come back with a Farkas vector y:
// y^T A <= 0 columnwise and y^T b > 0.

#include "ribsyz/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ribsyz {

struct FeasibilityResult {
    bool feasible = false;
    RationalVector x;      ///< a vertex solution when feasible
    RationalVector farkas; ///< certificate of infeasibility otherwise
    std::size_t pivots = 0;
};

inline FeasibilityResult solve_feasibility(const std::vector<RationalVector>& rows, const RationalVector& b)
{
    const std::size_t m = rows.size();
    if (b.size() != m) {
        throw std::invalid_argument("feasibility LP: right-hand side has the wrong length");
    }
    const std::size_t n = m == 0 ? 0 : rows.front().size();
    for (const auto& r : rows) {
        if (r.size() != n) throw std::invalid_argument("feasibility LP: ragged constraint matrix");
    }
    const std::size_t width = n + m + 1; // variables, artificials, rhs
    const std::size_t rhs = n + m;

    std::vector<RationalVector> t(m, RationalVector(width));
    std::vector<int> flip(m, 1);
    std::vector<std::size_t> basis(m);
    RationalVector cost(width); // reduced costs of the phase-one objective; cost[rhs] = -objective
    for (std::size_t i = 0; i < m; ++i) {
        flip[i] = b[i] < 0 ? -1 : 1;
        for (std::size_t j = 0; j < n; ++j) t[i][j] = flip[i] * rows[i][j];
        t[i][n + i] = 1;
        t[i][rhs] = flip[i] * b[i];
        basis[i] = n + i;
        for (std::size_t j = 0; j < n; ++j) cost[j] -= t[i][j];
        cost[rhs] -= t[i][rhs];
    }

    FeasibilityResult out;
    for (;;) {
        std::size_t enter = rhs;
        for (std::size_t j = 0; j < rhs; ++j) {
            if (cost[j] < 0) {
                enter = j;
                break;
            }
        }
        if (enter == rhs) break;

        std::size_t leave = m;
        Rational best;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            Rational ratio = t[i][rhs] / t[i][enter];
            if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave == m) {
            throw std::logic_error("phase-one LP unbounded: internal error");
        }

        const Rational piv = t[leave][enter];
        for (auto& x : t[leave]) x /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave || is_zero(t[i][enter])) continue;
            const Rational f = t[i][enter];
            for (std::size_t j = 0; j < width; ++j) t[i][j] -= f * t[leave][j];
        }
        if (!is_zero(cost[enter])) {
            const Rational f = cost[enter];
            for (std::size_t j = 0; j < width; ++j) cost[j] -= f * t[leave][j];
        }
        basis[leave] = enter;
        ++out.pivots;
    }

    out.feasible = is_zero(cost[rhs]);
    if (out.feasible) {
        out.x.assign(n, Rational(0));
        for (std::size_t i = 0; i < m; ++i) {
            if (basis[i] < n) out.x[basis[i]] = t[i][rhs];
        }
        return out;
    }
    out.farkas.resize(m);
    for (std::size_t i = 0; i < m; ++i) out.farkas[i] = flip[i] * (1 - cost[n + i]);

    Rational yb;
    for (std::size_t i = 0; i < m; ++i) yb += out.farkas[i] * b[i];
    bool ok = yb > 0;
    for (std::size_t j = 0; j < n && ok; ++j) {
        Rational ya;
        for (std::size_t i = 0; i < m; ++i) ya += out.farkas[i] * rows[i][j];
        ok = ya <= 0;
    }
    if (!ok) {
        throw std::logic_error("phase-one LP produced an invalid Farkas certificate: internal error");
    }
    return out;
}

} // namespace ribsyz
