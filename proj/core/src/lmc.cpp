// Copyright (c) bdproof contributors.
// SPDX-License-Identifier: Apache-2.0
#include "bdproof/lmc.hpp"

#include <algorithm>
#include <utility>

#include <json.hpp>

namespace bdproof {

Distribution Distribution::from_weights(std::map<StateId, Rational> weights) {
    if (weights.empty()) {
        throw ValidationError("distribution with empty support");
    }
    Rational total{0};
    for (const auto& [state, weight] : weights) {
        if (weight <= 0 || weight > 1) {
            throw ValidationError("transition probability " + bdproof::to_string(weight) +
                                  " to '" + state.to_string() + "' outside (0,1]");
        }
        total += weight;
    }
    if (total != 1) {
        throw ValidationError("transition probabilities sum to " + bdproof::to_string(total) +
                              ", expected 1");
    }
    Distribution d;
    d.weights_ = std::move(weights);
    return d;
}

Distribution Distribution::point(const StateId& s) {
    Distribution d;
    d.weights_.emplace(s, Rational(1));
    return d;
}

Rational Distribution::probability(const StateId& s) const {
    const auto it = weights_.find(s);
    return it == weights_.end() ? Rational(0) : it->second;
}

FiniteLmc::FiniteLmc(std::map<StateId, State> states) : states_(std::move(states)) {
    if (states_.empty()) {
        throw ValidationError("chain with no states");
    }
    for (const auto& [id, state] : states_) {
        for (const auto& [target, weight] : state.transitions.weights()) {
            (void)weight;
            if (!states_.contains(target)) {
                throw ValidationError("transition from '" + id.to_string() + "' to unknown state '" +
                                      target.to_string() + "'");
            }
        }
    }
}

const FiniteLmc::State& FiniteLmc::at(const StateId& s) const {
    const auto it = states_.find(s);
    if (it == states_.end()) {
        throw UnknownStateError("unknown state '" + s.to_string() + "'");
    }
    return it->second;
}

Label FiniteLmc::label(const StateId& s) const {
    return at(s).label;
}

Distribution FiniteLmc::step(const StateId& s) const {
    return at(s).transitions;
}

std::optional<std::vector<StateId>> FiniteLmc::states() const {
    std::vector<StateId> out;
    out.reserve(states_.size());
    for (const auto& [id, state] : states_) {
        (void)state;
        out.push_back(id);
    }
    return out;
}

Rational expected_value(const Distribution& mu, const std::map<StateId, Rational>& h) {
    Rational sum{0};
    for (const auto& [state, weight] : mu.weights()) {
        const auto it = h.find(state);
        if (it == h.end()) {
            throw MissingValueError("no value for support state '" + state.to_string() + "'");
        }
        sum += weight * it->second;
    }
    return sum;
}

std::vector<StateId> joint_support(const Lmc& lmc, const StateId& x, const StateId& y) {
    std::vector<StateId> out;
    const Distribution mu = lmc.step(x);
    const Distribution nu = lmc.step(y);
    for (const auto& [state, weight] : mu.weights()) {
        (void)weight;
        out.push_back(state);
    }
    for (const auto& [state, weight] : nu.weights()) {
        (void)weight;
        out.push_back(state);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

using nlohmann::json;

// Random walk on the naturals: state 0 is absorbing with label b, every
// n > 0 has label a and steps to n-1 or n+1 with probability 1/2 each.
class RandomWalkLmc final : public Lmc {
  public:
    Label label(const StateId& s) const override {
        return check(s).index() == 0 ? Label{"b"} : Label{"a"};
    }

    Distribution step(const StateId& s) const override {
        const std::uint64_t n = check(s).index();
        if (n == 0) {
            return Distribution::point(StateId::of(std::uint64_t{0}));
        }
        std::map<StateId, Rational> w;
        w.emplace(StateId::of(n - 1), Rational(1, 2));
        w.emplace(StateId::of(n + 1), Rational(1, 2));
        return Distribution::from_weights(std::move(w));
    }

  private:
    static const StateId& check(const StateId& s) {
        if (!s.is_natural()) {
            throw UnknownStateError("random-walk states are naturals, got '" + s.to_string() + "'");
        }
        return s;
    }
};

std::shared_ptr<const Lmc> parse_states_document(const json& doc) {
    const auto& list = doc.at("states");
    if (!list.is_array()) {
        throw ParseError("\"states\" must be an array");
    }
    std::map<StateId, FiniteLmc::State> states;
    // First pass collects ids so the self-loop convention can be applied
    // before Distribution validation.
    for (const auto& entry : list) {
        if (!entry.is_object() || !entry.contains("id") || !entry.contains("label")) {
            throw ParseError("state entries need \"id\" and \"label\"");
        }
        const StateId id = StateId::of(entry.at("id").get<std::string>());
        const std::string label = entry.at("label").get<std::string>();
        if (label.empty()) {
            throw ValidationError("empty label on state '" + id.to_string() + "'");
        }
        std::map<StateId, Rational> weights;
        if (entry.contains("transitions")) {
            for (const auto& t : entry.at("transitions")) {
                const StateId target = StateId::of(t.at("to").get<std::string>());
                Rational prob;
                if (t.at("prob").is_string()) {
                    prob = parse_rational(t.at("prob").get<std::string>());
                } else if (t.at("prob").is_number_unsigned()) {
                    prob = Rational(t.at("prob").get<std::uint64_t>());
                } else {
                    throw ParseError("\"prob\" must be a \"p/q\" string or an integer");
                }
                if (!weights.emplace(target, prob).second) {
                    throw ValidationError("duplicate transition target '" + target.to_string() +
                                          "' from '" + id.to_string() + "'");
                }
            }
        }
        if (weights.empty()) {
            // States with no outgoing edges carry an implicit self-loop.
            weights.emplace(id, Rational(1));
        }
        FiniteLmc::State state{Label{label}, Distribution::from_weights(std::move(weights))};
        if (!states.emplace(id, std::move(state)).second) {
            throw ValidationError("duplicate state '" + id.to_string() + "'");
        }
    }
    return std::make_shared<FiniteLmc>(std::move(states));
}

} // namespace

std::shared_ptr<const Lmc> load_lmc(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        if (doc.is_object() && doc.contains("generator")) {
            std::map<std::string, std::string> params;
            if (doc.contains("params")) {
                for (const auto& [key, value] : doc.at("params").items()) {
                    params.emplace(key, value.is_string() ? value.get<std::string>() : value.dump());
                }
            }
            return builtin_lmc(doc.at("generator").get<std::string>(), params);
        }
        if (!doc.is_object() || !doc.contains("states")) {
            throw ParseError("expected a top-level \"states\" array or a \"generator\" object");
        }
        return parse_states_document(doc);
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed chain document: ") + e.what());
    }
}

std::shared_ptr<const Lmc> builtin_lmc(const std::string& name,
                                       const std::map<std::string, std::string>& params) {
    if (name == "random-walk") {
        if (!params.empty()) {
            throw ValidationError("random-walk takes no parameters");
        }
        return std::make_shared<RandomWalkLmc>();
    }
    throw UnknownGeneratorError("unknown generator '" + name + "'");
}

} // namespace bdproof
