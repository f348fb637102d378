// Copyright (c) bdproof contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "bdproof/rational.hpp"

namespace bdproof {

// maximize objective . v  subject to
//   a . v <= b   for every less_equal row,
//   e . v  = f   for every equal row,
//   v >= 0.
// All rows have exactly num_vars coefficients.
struct LinearProgram {
    std::size_t num_vars = 0;
    std::vector<Rational> objective;
    std::vector<std::pair<std::vector<Rational>, Rational>> less_equal;
    std::vector<std::pair<std::vector<Rational>, Rational>> equal;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Rational optimum;              // meaningful when Optimal
    std::vector<Rational> witness; // vertex attaining the optimum
};

// Two-phase dense simplex over exact rationals. Bland's rule on both
// the entering and the leaving choice, so the pivot sequence terminates
// and is deterministic: identical inputs produce identical witnesses.
// The instances here are small (at most tens of variables), hence the
// dense tableau.
LpSolution solve(const LinearProgram& lp);

// True iff the witness satisfies every row and non-negativity exactly.
bool check_witness(const LinearProgram& lp, const std::vector<Rational>& witness);

} // namespace bdproof
