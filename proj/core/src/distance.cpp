// Copyright (c) bdproof contributors.
// SPDX-License-Identifier: Apache-2.0
#include "bdproof/distance.hpp"

#include <cstddef>

namespace bdproof {

namespace {

Rational pair_cost(const std::map<PairKey, Rational>& d, const StateId& u, const StateId& v) {
    const auto it = d.find(unordered_pair(u, v));
    if (it == d.end()) {
        throw MissingValueError("no distance for pair (" + u.to_string() + ", " + v.to_string() +
                                ")");
    }
    return it->second;
}

} // namespace

Rational DistanceTable::value(unsigned depth, const StateId& x, const StateId& y) {
    if (depth == 0 || x == y) {
        return Rational(0);
    }
    const std::pair<unsigned, PairKey> key{depth, unordered_pair(x, y)};
    if (const auto it = entries_.find(key); it != entries_.end()) {
        return it->second;
    }
    const Rational value = gamma_step(*this, depth - 1, x, y).value;
    entries_.emplace(key, value);
    return value;
}

OptimalStep gamma_step(DistanceTable& table, unsigned depth_prev, const StateId& x,
                       const StateId& y) {
    const Lmc& lmc = table.lmc();
    if (lmc.label(x) != lmc.label(y)) {
        return OptimalStep{OptimalStep::Kind::LabelClash, Rational(1), {}};
    }
    if (x == y) {
        return OptimalStep{OptimalStep::Kind::Zero, Rational(0), {}};
    }

    const std::vector<StateId> support = joint_support(lmc, x, y);
    const Distribution mu = lmc.step(x);
    const Distribution nu = lmc.step(y);

    LinearProgram prog;
    prog.num_vars = support.size();
    prog.objective.reserve(support.size());
    for (const auto& z : support) {
        prog.objective.push_back(mu.probability(z) - nu.probability(z));
    }
    for (std::size_t i = 0; i < support.size(); ++i) {
        std::vector<Rational> box(support.size(), Rational(0));
        box[i] = 1;
        prog.less_equal.emplace_back(std::move(box), Rational(1));
    }
    // Non-expansiveness against the previous iterate. Rows for pairs at
    // distance >= 1 are vacuous under the box rows and are skipped;
    // zero-distance rows stay (dropping them would widen the feasible
    // set).
    for (std::size_t i = 0; i < support.size(); ++i) {
        for (std::size_t j = i + 1; j < support.size(); ++j) {
            const Rational bound = table.value(depth_prev, support[i], support[j]);
            if (bound >= 1) {
                continue;
            }
            std::vector<Rational> forward(support.size(), Rational(0));
            forward[i] = 1;
            forward[j] = -1;
            std::vector<Rational> backward(support.size(), Rational(0));
            backward[i] = -1;
            backward[j] = 1;
            prog.less_equal.emplace_back(std::move(forward), bound);
            prog.less_equal.emplace_back(std::move(backward), bound);
        }
    }

    // Feasible at h = 0 and bounded by the box rows, so always Optimal.
    const LpSolution solution = solve(prog);
    if (solution.optimum == 0) {
        return OptimalStep{OptimalStep::Kind::Zero, Rational(0), {}};
    }
    OptimalStep step;
    step.kind = OptimalStep::Kind::Lp;
    step.value = solution.optimum;
    for (std::size_t i = 0; i < support.size(); ++i) {
        step.h.emplace(support[i], solution.witness[i]);
    }
    return step;
}

Rational distance(const Lmc& lmc, const StateId& x, const StateId& y, unsigned depth) {
    DistanceTable table(lmc);
    return table.value(depth, x, y);
}

std::pair<Rational, unsigned> distance_until(const Lmc& lmc, const StateId& x, const StateId& y,
                                             const Rational& delta, unsigned max_depth) {
    if (delta <= 0) {
        throw ValidationError("delta must be positive");
    }
    if (max_depth == 0) {
        return {Rational(0), 0};
    }
    DistanceTable table(lmc);
    Rational current = table.value(1, x, y);
    unsigned depth = 1;
    while (depth < max_depth) {
        const Rational next = table.value(depth + 1, x, y);
        if (next - current < delta) {
            break;
        }
        current = next;
        ++depth;
    }
    return {current, depth};
}

Rational coupling_value(const Lmc& lmc, const StateId& x, const StateId& y,
                        const std::map<PairKey, Rational>& d) {
    const Distribution mu = lmc.step(x);
    const Distribution nu = lmc.step(y);
    std::vector<StateId> us;
    std::vector<StateId> vs;
    for (const auto& [state, weight] : mu.weights()) {
        (void)weight;
        us.push_back(state);
    }
    for (const auto& [state, weight] : nu.weights()) {
        (void)weight;
        vs.push_back(state);
    }

    // Variables w(u, v) laid out row-major; marginals become equality
    // rows (one of them is redundant, which phase 1 tolerates).
    LinearProgram prog;
    prog.num_vars = us.size() * vs.size();
    prog.objective.assign(prog.num_vars, Rational(0));
    for (std::size_t i = 0; i < us.size(); ++i) {
        for (std::size_t j = 0; j < vs.size(); ++j) {
            prog.objective[i * vs.size() + j] = -pair_cost(d, us[i], vs[j]);
        }
    }
    for (std::size_t i = 0; i < us.size(); ++i) {
        std::vector<Rational> row(prog.num_vars, Rational(0));
        for (std::size_t j = 0; j < vs.size(); ++j) {
            row[i * vs.size() + j] = 1;
        }
        prog.equal.emplace_back(std::move(row), mu.probability(us[i]));
    }
    for (std::size_t j = 0; j < vs.size(); ++j) {
        std::vector<Rational> row(prog.num_vars, Rational(0));
        for (std::size_t i = 0; i < us.size(); ++i) {
            row[i * vs.size() + j] = 1;
        }
        prog.equal.emplace_back(std::move(row), nu.probability(vs[j]));
    }

    // The product coupling is always feasible.
    return -solve(prog).optimum;
}

std::map<StateId, Rational> extend_nonexpansive(const std::map<StateId, Rational>& h,
                                                const std::vector<StateId>& domain,
                                                const std::map<PairKey, Rational>& d) {
    if (h.empty()) {
        throw ValidationError("cannot extend an empty map");
    }
    const auto lookup = [&](const StateId& u, const StateId& v) {
        return u == v ? Rational(0) : pair_cost(d, u, v);
    };
    for (const auto& [s, value] : h) {
        if (!in_unit_interval(value)) {
            throw ValidationError("map value " + to_string(value) + " outside [0,1]");
        }
        bool in_domain = false;
        for (const auto& z : domain) {
            if (z == s) {
                in_domain = true;
                break;
            }
        }
        if (!in_domain) {
            throw ValidationError("map key '" + s.to_string() + "' outside the domain");
        }
    }
    for (auto it = h.begin(); it != h.end(); ++it) {
        for (auto jt = std::next(it); jt != h.end(); ++jt) {
            const Rational gap = it->second >= jt->second ? it->second - jt->second
                                                          : jt->second - it->second;
            if (gap > lookup(it->first, jt->first)) {
                throw NotNonexpansiveError("|h(" + it->first.to_string() + ") - h(" +
                                           jt->first.to_string() + ")| exceeds their distance");
            }
        }
    }

    std::map<StateId, Rational> extended;
    for (const auto& z : domain) {
        Rational best;
        bool first = true;
        for (const auto& [s, value] : h) {
            const Rational candidate = truncated_add(value, lookup(z, s));
            if (first || candidate < best) {
                best = candidate;
                first = false;
            }
        }
        extended.emplace(z, best);
    }
    return extended;
}

} // namespace bdproof
