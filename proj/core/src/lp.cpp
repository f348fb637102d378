// Copyright (c) bdproof contributors.
// SPDX-License-Identifier: Apache-2.0
#include "bdproof/lp.hpp"

#include <cstddef>
#include <limits>
#include <optional>

#include "bdproof/errors.hpp"

namespace bdproof {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

// Simplex tableau in equation form. Columns are [structural | slack |
// artificial], every row has one basic column, rhs stays >= 0.
struct Tableau {
    std::size_t cols = 0;
    std::size_t first_artificial = 0; // columns >= this are artificial
    std::vector<std::vector<Rational>> rows;
    std::vector<Rational> rhs;
    std::vector<std::size_t> basis;

    // Reduced costs of the active objective: z = value + obj . v over
    // the nonbasic variables.
    std::vector<Rational> obj;
    Rational value;

    bool artificial(std::size_t c) const { return c >= first_artificial; }

    void pivot(std::size_t r, std::size_t c) {
        const Rational p = rows[r][c];
        for (auto& coef : rows[r]) {
            coef /= p;
        }
        rhs[r] /= p;
        for (std::size_t q = 0; q < rows.size(); ++q) {
            if (q == r || rows[q][c] == 0) {
                continue;
            }
            const Rational factor = rows[q][c];
            for (std::size_t j = 0; j < cols; ++j) {
                rows[q][j] -= factor * rows[r][j];
            }
            rhs[q] -= factor * rhs[r];
        }
        if (obj[c] != 0) {
            const Rational factor = obj[c];
            for (std::size_t j = 0; j < cols; ++j) {
                obj[j] -= factor * rows[r][j];
            }
            value += factor * rhs[r];
        }
        basis[r] = c;
    }

    // Rewrites an arbitrary cost vector into reduced costs w.r.t. the
    // current basis.
    void price_out(std::vector<Rational> cost) {
        obj = std::move(cost);
        obj.resize(cols, Rational(0));
        value = 0;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const Rational coef = obj[basis[r]];
            if (coef == 0) {
                continue;
            }
            for (std::size_t j = 0; j < cols; ++j) {
                obj[j] -= coef * rows[r][j];
            }
            value += coef * rhs[r];
        }
    }

    // Bland: entering column is the lowest-index improvable one, the
    // leaving row is the minimal ratio breaking ties on the lowest basis
    // column. Returns Unbounded when an improvable column has no
    // positive entry; nullopt once optimal.
    std::optional<LpStatus> optimize(bool allow_artificial_entering) {
        for (;;) {
            std::size_t entering = npos;
            for (std::size_t c = 0; c < cols; ++c) {
                if (!allow_artificial_entering && artificial(c)) {
                    continue;
                }
                if (obj[c] > 0) {
                    entering = c;
                    break;
                }
            }
            if (entering == npos) {
                return std::nullopt;
            }
            std::size_t leaving = npos;
            Rational best_ratio;
            for (std::size_t r = 0; r < rows.size(); ++r) {
                if (rows[r][entering] <= 0) {
                    continue;
                }
                const Rational ratio = rhs[r] / rows[r][entering];
                if (leaving == npos || ratio < best_ratio ||
                    (ratio == best_ratio && basis[r] < basis[leaving])) {
                    leaving = r;
                    best_ratio = ratio;
                }
            }
            if (leaving == npos) {
                return LpStatus::Unbounded;
            }
            pivot(leaving, entering);
        }
    }
};

void require_row_width(const LinearProgram& lp) {
    if (lp.objective.size() != lp.num_vars) {
        throw ValidationError("objective length != variable count");
    }
    for (const auto& [row, rhs] : lp.less_equal) {
        (void)rhs;
        if (row.size() != lp.num_vars) {
            throw ValidationError("inequality row length != variable count");
        }
    }
    for (const auto& [row, rhs] : lp.equal) {
        (void)rhs;
        if (row.size() != lp.num_vars) {
            throw ValidationError("equality row length != variable count");
        }
    }
}

} // namespace

LpSolution solve(const LinearProgram& lp) {
    require_row_width(lp);

    const std::size_t n = lp.num_vars;
    const std::size_t m1 = lp.less_equal.size();
    const std::size_t m = m1 + lp.equal.size();

    Tableau t;
    t.rows.assign(m, {});
    t.rhs.assign(m, Rational(0));
    t.basis.assign(m, npos);

    // Rows are laid out with slack columns first; rows whose rhs had to
    // be flipped, and all equality rows, still need an artificial basis
    // column which is appended afterwards.
    std::vector<std::size_t> needs_artificial;
    for (std::size_t i = 0; i < m; ++i) {
        const bool is_ineq = i < m1;
        const auto& [row, rhs] = is_ineq ? lp.less_equal[i] : lp.equal[i - m1];
        auto& r = t.rows[i];
        r.assign(n + m1, Rational(0));
        for (std::size_t j = 0; j < n; ++j) {
            r[j] = row[j];
        }
        t.rhs[i] = rhs;
        if (is_ineq) {
            r[n + i] = 1;
        }
        if (t.rhs[i] < 0) {
            for (auto& coef : r) {
                coef = -coef;
            }
            t.rhs[i] = -t.rhs[i];
        }
        if (is_ineq && r[n + i] == 1) {
            t.basis[i] = n + i;
        } else {
            needs_artificial.push_back(i);
        }
    }
    t.first_artificial = n + m1;
    t.cols = t.first_artificial + needs_artificial.size();
    for (std::size_t k = 0; k < needs_artificial.size(); ++k) {
        const std::size_t r = needs_artificial[k];
        t.rows[r].resize(t.cols, Rational(0));
        t.rows[r][t.first_artificial + k] = 1;
        t.basis[r] = t.first_artificial + k;
    }
    for (auto& row : t.rows) {
        row.resize(t.cols, Rational(0));
    }

    if (!needs_artificial.empty()) {
        std::vector<Rational> phase1(t.cols, Rational(0));
        for (std::size_t c = t.first_artificial; c < t.cols; ++c) {
            phase1[c] = -1;
        }
        t.price_out(std::move(phase1));
        t.optimize(/*allow_artificial_entering=*/true);
        if (t.value != 0) {
            return LpSolution{LpStatus::Infeasible, Rational(0), {}};
        }
        // Drive leftover zero-level artificials out of the basis; a row
        // with no real column left is a redundant constraint.
        for (std::size_t r = 0; r < t.rows.size();) {
            if (!t.artificial(t.basis[r])) {
                ++r;
                continue;
            }
            std::size_t c = npos;
            for (std::size_t j = 0; j < t.first_artificial; ++j) {
                if (t.rows[r][j] != 0) {
                    c = j;
                    break;
                }
            }
            if (c == npos) {
                t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(r));
                t.rhs.erase(t.rhs.begin() + static_cast<std::ptrdiff_t>(r));
                t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(r));
            } else {
                t.pivot(r, c);
                ++r;
            }
        }
    }

    std::vector<Rational> cost(lp.objective);
    t.price_out(std::move(cost));
    if (const auto status = t.optimize(/*allow_artificial_entering=*/false)) {
        return LpSolution{*status, Rational(0), {}};
    }

    LpSolution solution;
    solution.status = LpStatus::Optimal;
    solution.optimum = t.value;
    solution.witness.assign(n, Rational(0));
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        if (t.basis[r] < n) {
            solution.witness[t.basis[r]] = t.rhs[r];
        }
    }
    return solution;
}

bool check_witness(const LinearProgram& lp, const std::vector<Rational>& witness) {
    if (witness.size() != lp.num_vars) {
        return false;
    }
    for (const auto& v : witness) {
        if (v < 0) {
            return false;
        }
    }
    const auto dot = [&](const std::vector<Rational>& row) {
        Rational sum{0};
        for (std::size_t j = 0; j < row.size(); ++j) {
            sum += row[j] * witness[j];
        }
        return sum;
    };
    for (const auto& [row, rhs] : lp.less_equal) {
        if (dot(row) > rhs) {
            return false;
        }
    }
    for (const auto& [row, rhs] : lp.equal) {
        if (dot(row) != rhs) {
            return false;
        }
    }
    return true;
}

} // namespace bdproof
