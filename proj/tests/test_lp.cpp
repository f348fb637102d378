// Copyright (c) bdproof contributors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>
#include <random>

#include "bdproof/lp.hpp"
#include "helpers.hpp"

using namespace bdproof;

namespace {

LinearProgram single_box() {
    LinearProgram lp;
    lp.num_vars = 1;
    lp.objective = {Rational(1)};
    lp.less_equal.emplace_back(std::vector<Rational>{Rational(1)}, Rational(1));
    return lp;
}

// The depth-2 optimization of the two-chain example, written out by
// hand: variables (x1, x2, y1, y2), box rows, equality of the
// zero-distance pairs {x1,y1} and {x2,y2} as opposed inequalities.
LinearProgram ex2_gamma2_lp() {
    LinearProgram lp;
    lp.num_vars = 4;
    lp.objective = {Rational(1, 2), Rational(1, 2), Rational(-2, 5), Rational(-3, 5)};
    const auto row = [](int a, int b, int c, int d) {
        return std::vector<Rational>{Rational(a), Rational(b), Rational(c), Rational(d)};
    };
    for (int i = 0; i < 4; ++i) {
        std::vector<Rational> box(4, Rational(0));
        box[static_cast<std::size_t>(i)] = 1;
        lp.less_equal.emplace_back(std::move(box), Rational(1));
    }
    lp.less_equal.emplace_back(row(1, 0, -1, 0), Rational(0));
    lp.less_equal.emplace_back(row(-1, 0, 1, 0), Rational(0));
    lp.less_equal.emplace_back(row(0, 1, 0, -1), Rational(0));
    lp.less_equal.emplace_back(row(0, -1, 0, 1), Rational(0));
    return lp;
}

// Gaussian elimination over exact rationals; nullopt when singular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a,
                                                  std::vector<Rational> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) {
            ++pivot;
        }
        if (pivot == n) {
            return std::nullopt;
        }
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) {
                continue;
            }
            const Rational factor = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) {
                a[r][c] -= factor * a[col][c];
            }
            b[r] -= factor * b[col];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = b[i] / a[i][i];
    }
    return x;
}

// Independent optimum: enumerate all candidate vertices (solutions of
// n-subsets of the constraints taken with equality), keep the feasible
// ones, and maximize the objective over them.
std::optional<Rational> brute_force_optimum(const LinearProgram& lp) {
    const std::size_t n = lp.num_vars;
    std::vector<std::pair<std::vector<Rational>, Rational>> constraints;
    for (const auto& c : lp.less_equal) {
        constraints.push_back(c);
    }
    for (const auto& c : lp.equal) {
        constraints.push_back(c);
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rational> unit(n, Rational(0));
        unit[i] = 1;
        constraints.emplace_back(std::move(unit), Rational(0));
    }

    std::optional<Rational> best;
    std::vector<std::size_t> pick(n);
    const std::size_t m = constraints.size();
    const auto consider = [&](const std::vector<std::size_t>& subset) {
        std::vector<std::vector<Rational>> a;
        std::vector<Rational> b;
        for (const std::size_t k : subset) {
            a.push_back(constraints[k].first);
            b.push_back(constraints[k].second);
        }
        const auto x = solve_square(std::move(a), std::move(b));
        if (!x || !check_witness(lp, *x)) {
            return;
        }
        Rational value{0};
        for (std::size_t i = 0; i < n; ++i) {
            value += lp.objective[i] * (*x)[i];
        }
        if (!best || value > *best) {
            best = value;
        }
    };
    const auto recurse = [&](auto&& self, std::size_t start, std::size_t depth) -> void {
        if (depth == n) {
            consider(pick);
            return;
        }
        for (std::size_t k = start; k < m; ++k) {
            pick[depth] = k;
            self(self, k + 1, depth + 1);
        }
    };
    if (n == 0) {
        return Rational(0);
    }
    recurse(recurse, 0, 0);
    return best;
}

} // namespace

TEST_CASE("single box constraint") {
    const auto sol = solve(single_box());
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.optimum == 1);
    CHECK(sol.witness == std::vector<Rational>{Rational(1)});
}

TEST_CASE("the depth-2 optimization of the two-chain example") {
    const auto sol = solve(ex2_gamma2_lp());
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.optimum == Rational(1, 10));
    CHECK(check_witness(ex2_gamma2_lp(), sol.witness));
    // The optimal face is the single vertex (1, 0, 1, 0).
    CHECK(sol.witness == std::vector<Rational>{Rational(1), Rational(0), Rational(1), Rational(0)});
}

TEST_CASE("contradictory constraints are infeasible") {
    LinearProgram lp;
    lp.num_vars = 1;
    lp.objective = {Rational(1)};
    lp.equal.emplace_back(std::vector<Rational>{Rational(1)}, Rational(2));
    lp.less_equal.emplace_back(std::vector<Rational>{Rational(1)}, Rational(1));
    CHECK(solve(lp).status == LpStatus::Infeasible);
}

TEST_CASE("missing constraints leave the objective unbounded") {
    LinearProgram lp;
    lp.num_vars = 1;
    lp.objective = {Rational(1)};
    CHECK(solve(lp).status == LpStatus::Unbounded);
}

TEST_CASE("negative right-hand sides go through phase one") {
    // x1 - x2 <= -1/2, boxes; optimum of x1 + x2 is 3/2 at (1/2, 1).
    LinearProgram lp;
    lp.num_vars = 2;
    lp.objective = {Rational(1), Rational(1)};
    lp.less_equal.emplace_back(std::vector<Rational>{Rational(1), Rational(-1)}, Rational(-1, 2));
    lp.less_equal.emplace_back(std::vector<Rational>{Rational(1), Rational(0)}, Rational(1));
    lp.less_equal.emplace_back(std::vector<Rational>{Rational(0), Rational(1)}, Rational(1));
    const auto sol = solve(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.optimum == Rational(3, 2));
    CHECK(sol.witness == std::vector<Rational>{Rational(1, 2), Rational(1)});
}

TEST_CASE("redundant equality rows are tolerated") {
    // Transport-style marginals: the last row is implied by the others.
    LinearProgram lp;
    lp.num_vars = 4; // w11 w12 w21 w22
    lp.objective = {Rational(0), Rational(-1), Rational(-1), Rational(0)};
    const auto row = [](int a, int b, int c, int d) {
        return std::vector<Rational>{Rational(a), Rational(b), Rational(c), Rational(d)};
    };
    lp.equal.emplace_back(row(1, 1, 0, 0), Rational(1, 2));
    lp.equal.emplace_back(row(0, 0, 1, 1), Rational(1, 2));
    lp.equal.emplace_back(row(1, 0, 1, 0), Rational(1, 2));
    lp.equal.emplace_back(row(0, 1, 0, 1), Rational(1, 2));
    const auto sol = solve(lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.optimum == 0);
    CHECK(check_witness(lp, sol.witness));
}

TEST_CASE("check_witness is exact") {
    const auto lp = single_box();
    const auto sol = solve(lp);
    CHECK(check_witness(lp, sol.witness));

    auto nudged = sol.witness;
    nudged[0] += Rational(1, 1000000000);
    CHECK_FALSE(check_witness(lp, nudged));

    CHECK_FALSE(check_witness(lp, {Rational(-1, 1000000000)}));
    CHECK_FALSE(check_witness(lp, {}));
}

TEST_CASE("solve is deterministic") {
    const auto lp = ex2_gamma2_lp();
    const auto a = solve(lp);
    const auto b = solve(lp);
    CHECK(a.status == b.status);
    CHECK(a.optimum == b.optimum);
    CHECK(a.witness == b.witness);
}

TEST_CASE("agrees with brute-force vertex enumeration") {
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> dim(1, 4);
    std::uniform_int_distribution<int> extra(0, 3);
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_int_distribution<int> den(1, 3);
    std::uniform_int_distribution<int> margin_num(0, 2);

    for (int iter = 0; iter < 60; ++iter) {
        const std::size_t n = static_cast<std::size_t>(dim(rng));
        LinearProgram lp;
        lp.num_vars = n;
        for (std::size_t i = 0; i < n; ++i) {
            lp.objective.emplace_back(num(rng), den(rng));
            std::vector<Rational> box(n, Rational(0));
            box[i] = 1;
            lp.less_equal.emplace_back(std::move(box), Rational(1));
        }
        // Half-planes kept feasible at the box center.
        const int extras = extra(rng);
        for (int k = 0; k < extras; ++k) {
            std::vector<Rational> row;
            Rational at_center{0};
            for (std::size_t i = 0; i < n; ++i) {
                row.emplace_back(num(rng), den(rng));
                at_center += row.back() / 2;
            }
            lp.less_equal.emplace_back(std::move(row), at_center + Rational(margin_num(rng), 4));
        }
        const auto sol = solve(lp);
        REQUIRE(sol.status == LpStatus::Optimal);
        CHECK(check_witness(lp, sol.witness));
        const auto brute = brute_force_optimum(lp);
        REQUIRE(brute.has_value());
        CHECK(sol.optimum == *brute);
    }
}

TEST_CASE("terminates on arbitrary small instances") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> dim(1, 3);
    std::uniform_int_distribution<int> rows(0, 4);
    std::uniform_int_distribution<int> eqs(0, 2);
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 4);

    for (int iter = 0; iter < 300; ++iter) {
        const std::size_t n = static_cast<std::size_t>(dim(rng));
        LinearProgram lp;
        lp.num_vars = n;
        for (std::size_t i = 0; i < n; ++i) {
            lp.objective.emplace_back(num(rng), den(rng));
        }
        const int m1 = rows(rng);
        for (int k = 0; k < m1; ++k) {
            std::vector<Rational> row;
            for (std::size_t i = 0; i < n; ++i) {
                row.emplace_back(num(rng), den(rng));
            }
            lp.less_equal.emplace_back(std::move(row), Rational(num(rng), den(rng)));
        }
        const int m2 = eqs(rng);
        for (int k = 0; k < m2; ++k) {
            std::vector<Rational> row;
            for (std::size_t i = 0; i < n; ++i) {
                row.emplace_back(num(rng), den(rng));
            }
            lp.equal.emplace_back(std::move(row), Rational(num(rng), den(rng)));
        }
        const auto sol = solve(lp);
        if (sol.status == LpStatus::Optimal) {
            CHECK(check_witness(lp, sol.witness));
            Rational value{0};
            for (std::size_t i = 0; i < n; ++i) {
                value += lp.objective[i] * sol.witness[i];
            }
            CHECK(value == sol.optimum);
        }
    }
}
