// Copyright (c) bdproof contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Labelled Markov chains: states carry a label and a finitely supported
// rational distribution over successor states. Chains are either finite
// (loaded from a JSON document) or lazily generated (builtin families
// such as the random walk on the naturals).
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bdproof/errors.hpp"
#include "bdproof/rational.hpp"

namespace bdproof {

// State identifier: a string for file-loaded chains, a natural number
// for generated ones. Naturals order numerically, strings
// lexicographically; one chain never mixes the two kinds.
class StateId {
  public:
    StateId() = default;

    static StateId of(std::string name) { return StateId(std::move(name)); }
    static StateId of(std::uint64_t index) { return StateId(index); }

    bool is_natural() const { return std::holds_alternative<std::uint64_t>(id_); }
    std::uint64_t index() const { return std::get<std::uint64_t>(id_); }
    const std::string& name() const { return std::get<std::string>(id_); }

    std::string to_string() const {
        return is_natural() ? std::to_string(index()) : name();
    }

    auto operator<=>(const StateId&) const = default;

  private:
    explicit StateId(std::string name) : id_(std::move(name)) {}
    explicit StateId(std::uint64_t index) : id_(index) {}

    std::variant<std::uint64_t, std::string> id_{std::uint64_t{0}};
};

struct Label {
    std::string symbol; // non-empty

    auto operator<=>(const Label&) const = default;
};

// Finitely supported probability distribution. Stored weights are
// strictly positive and sum to exactly one.
class Distribution {
  public:
    // Validates the invariants; throws ValidationError.
    static Distribution from_weights(std::map<StateId, Rational> weights);
    static Distribution point(const StateId& s);

    const std::map<StateId, Rational>& weights() const { return weights_; }
    // Zero outside the support.
    Rational probability(const StateId& s) const;

    bool operator==(const Distribution&) const = default;

  private:
    Distribution() = default;
    std::map<StateId, Rational> weights_;
};

// Abstract chain. Implementations are immutable after construction and
// safe for concurrent label/step calls.
class Lmc {
  public:
    virtual ~Lmc() = default;

    virtual Label label(const StateId& s) const = 0;
    // step is deterministic: repeated calls on the same state yield
    // equal distributions.
    virtual Distribution step(const StateId& s) const = 0;
    // Finite chains enumerate their states in id order; lazy ones
    // return nullopt. Algorithms needing a global state set require a
    // finite chain; depth-bounded ones work on both.
    virtual std::optional<std::vector<StateId>> states() const { return std::nullopt; }
};

class FiniteLmc final : public Lmc {
  public:
    struct State {
        Label label;
        Distribution transitions;
    };

    // Validates that every transition target exists.
    explicit FiniteLmc(std::map<StateId, State> states);

    Label label(const StateId& s) const override;
    Distribution step(const StateId& s) const override;
    std::optional<std::vector<StateId>> states() const override;

  private:
    const State& at(const StateId& s) const;
    std::map<StateId, State> states_;
};

// sum over supp(mu) of mu(z) * h(z), exact.
// Throws MissingValueError when a support state has no h-value.
Rational expected_value(const Distribution& mu, const std::map<StateId, Rational>& h);

// supp(step(x)) union supp(step(y)), sorted by StateId.
std::vector<StateId> joint_support(const Lmc& lmc, const StateId& x, const StateId& y);

// Parses the JSON document format:
//   {"states": [{"id": ..., "label": ..., "transitions":
//       [{"to": ..., "prob": "p/q"}]}]}
// An empty transition list means a self-loop with probability 1.
// The alternative form {"generator": name, "params": {...}} selects a
// builtin chain.
std::shared_ptr<const Lmc> load_lmc(std::string_view text);

// Builtin chain registry; currently {"random-walk"}.
std::shared_ptr<const Lmc> builtin_lmc(const std::string& name,
                                       const std::map<std::string, std::string>& params);

} // namespace bdproof
