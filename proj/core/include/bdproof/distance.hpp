// Copyright (c) bdproof contributors.
// SPDX-License-Identifier: Apache-2.0
//
// The one-step functional Gamma and its Kleene iterates. Gamma maps a
// pseudometric d to a new one: 1 on label clashes, otherwise the
// supremum of expectation gaps tau(x) |= h - tau(y) |= h over maps h
// that are non-expansive with respect to d. The supremum is an exact
// rational LP over the joint successor support; iterating from the
// constant-zero distance approximates the behavioural distance from
// below.
#pragma once

#include <map>
#include <utility>
#include <vector>

#include "bdproof/lmc.hpp"
#include "bdproof/lp.hpp"

namespace bdproof {

// Unordered pair of states, stored with first <= second.
using PairKey = std::pair<StateId, StateId>;

inline PairKey unordered_pair(const StateId& a, const StateId& b) {
    return a <= b ? PairKey{a, b} : PairKey{b, a};
}

struct OptimalStep {
    enum class Kind { LabelClash, Lp, Zero };

    Kind kind = Kind::Zero;
    Rational value;
    // Optimal non-expansive map over the joint support; only populated
    // for Kind::Lp.
    std::map<StateId, Rational> h;
};

// Memoized iterate values keyed by (depth, unordered pair); symmetry is
// structural. Entries are filled on demand and only ever grow, so a
// filled table can be shared read-only. Works on lazy chains because
// the recursion only touches states reachable within `depth` steps.
class DistanceTable {
  public:
    explicit DistanceTable(const Lmc& lmc) : lmc_(&lmc) {}

    const Lmc& lmc() const { return *lmc_; }

    // Gamma^depth(bottom)(x, y).
    Rational value(unsigned depth, const StateId& x, const StateId& y);

  private:
    const Lmc* lmc_;
    std::map<std::pair<unsigned, PairKey>, Rational> entries_;
};

// One application of Gamma at (x, y) against the depth_prev iterate,
// returning the optimum together with an optimal map h over
// joint_support(x, y). Restricting the LP to the joint support is
// lossless; extend_nonexpansive below realizes the extension argument
// and serves as the test oracle for that fact.
OptimalStep gamma_step(DistanceTable& table, unsigned depth_prev, const StateId& x,
                       const StateId& y);

// Gamma^depth(bottom)(x, y) via a fresh table.
Rational distance(const Lmc& lmc, const StateId& x, const StateId& y, unsigned depth);

// Iterates until one more step gains less than delta at (x, y), then
// returns the last accepted value and its depth; max_depth caps the
// search. This successive-difference stop is a heuristic: it bounds
// nothing relative to the true behavioural distance, whose convergence
// rate is not known here. The depth-based interface is authoritative.
std::pair<Rational, unsigned> distance_until(const Lmc& lmc, const StateId& x, const StateId& y,
                                             const Rational& delta, unsigned max_depth);

// Minimal transport cost between step(x) and step(y) under the pair
// costs d: min sum w(u,v) d(u,v) over couplings w with the two
// successor distributions as marginals. By Kantorovich-Rubinstein
// duality this equals the gamma_step optimum when d is the previous
// iterate, which makes it an independent cross-check of the primal LP.
// d must cover supp(step(x)) x supp(step(y)) under unordered keys.
Rational coupling_value(const Lmc& lmc, const StateId& x, const StateId& y,
                        const std::map<PairKey, Rational>& d);

// Extends h, non-expansive on (S, d|S) with S = keys of h, to the whole
// domain via h'(z) = min over s of h(s) (+) d(z, s), with (+) truncated
// addition. The result agrees with h on S and is non-expansive on
// (domain, d). d uses unordered keys; the diagonal is implicitly zero.
// Throws NotNonexpansiveError when h violates the precondition.
std::map<StateId, Rational> extend_nonexpansive(const std::map<StateId, Rational>& h,
                                                const std::vector<StateId>& domain,
                                                const std::map<PairKey, Rational>& d);

} // namespace bdproof
