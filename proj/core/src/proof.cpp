// Copyright (c) bdproof contributors.
// SPDX-License-Identifier: Apache-2.0
#include "bdproof/proof.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <tuple>

#include <json.hpp>

namespace bdproof {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

Judgement checked(Judgement j) {
    if (!in_unit_interval(j.bound)) {
        throw ValidationError("judgement bound " + to_string(j.bound) + " outside [0,1]");
    }
    return j;
}

} // namespace

std::string_view rule_name(Rule rule) {
    switch (rule) {
    case Rule::Zero:
        return "zero";
    case Rule::Lab:
        return "lab";
    case Rule::Symm:
        return "symm";
    case Rule::Weak:
        return "weak";
    case Rule::Exp:
        return "exp";
    }
    return "?";
}

ProofPtr ProofTree::zero(Judgement j) {
    auto node = std::make_shared<ProofTree>();
    node->rule = Rule::Zero;
    node->judgement = checked(std::move(j));
    return node;
}

ProofPtr ProofTree::lab(Judgement j) {
    auto node = std::make_shared<ProofTree>();
    node->rule = Rule::Lab;
    node->judgement = checked(std::move(j));
    return node;
}

ProofPtr ProofTree::symm(Judgement j, ProofPtr sub) {
    auto node = std::make_shared<ProofTree>();
    node->rule = Rule::Symm;
    node->judgement = checked(std::move(j));
    node->child = std::move(sub);
    return node;
}

ProofPtr ProofTree::weak(Judgement j, ProofPtr sub) {
    auto node = std::make_shared<ProofTree>();
    node->rule = Rule::Weak;
    node->judgement = checked(std::move(j));
    node->child = std::move(sub);
    return node;
}

ProofPtr ProofTree::exp(Judgement j, std::map<StateId, Rational> h,
                        std::vector<std::pair<StatePair, ProofPtr>> obligations) {
    auto node = std::make_shared<ProofTree>();
    node->rule = Rule::Exp;
    node->judgement = checked(std::move(j));
    node->h = std::move(h);
    node->obligations = std::move(obligations);
    return node;
}

std::string ValidityReport::to_string() const {
    if (valid) {
        return "valid";
    }
    std::ostringstream os;
    os << "INVALID at " << path << " (node " << node << ", rule " << rule_name(rule)
       << "): " << reason;
    return os.str();
}

namespace {

// Index ranges, arities and acyclicity. Defects here are malformed
// input, not failed side conditions.
void validate_structure(const ProofDag& dag) {
    if (dag.nodes.empty()) {
        throw ValidationError("proof has no nodes");
    }
    if (dag.root >= dag.nodes.size()) {
        throw ValidationError("root index out of range");
    }
    for (std::size_t i = 0; i < dag.nodes.size(); ++i) {
        const auto& node = dag.nodes[i];
        for (const std::size_t sub : node.subs) {
            if (sub >= dag.nodes.size()) {
                throw ValidationError("node " + std::to_string(i) + " references node " +
                                      std::to_string(sub) + " out of range");
            }
        }
        switch (node.rule) {
        case Rule::Zero:
        case Rule::Lab:
            if (!node.subs.empty() || !node.h.empty() || !node.sub_pairs.empty()) {
                throw ValidationError("node " + std::to_string(i) + ": " +
                                      std::string(rule_name(node.rule)) +
                                      " takes no premises");
            }
            break;
        case Rule::Symm:
        case Rule::Weak:
            if (node.subs.size() != 1 || !node.h.empty() || !node.sub_pairs.empty()) {
                throw ValidationError("node " + std::to_string(i) + ": " +
                                      std::string(rule_name(node.rule)) +
                                      " takes exactly one premise");
            }
            break;
        case Rule::Exp:
            if (node.subs.size() != node.sub_pairs.size()) {
                throw ValidationError("node " + std::to_string(i) +
                                      ": subs and sub_pairs lengths differ");
            }
            break;
        }
    }
    // Colors: 0 unseen, 1 on stack, 2 done.
    std::vector<int> color(dag.nodes.size(), 0);
    std::vector<std::pair<std::size_t, std::size_t>> stack{{dag.root, 0}};
    color[dag.root] = 1;
    while (!stack.empty()) {
        auto& [node, next] = stack.back();
        if (next == dag.nodes[node].subs.size()) {
            color[node] = 2;
            stack.pop_back();
            continue;
        }
        const std::size_t sub = dag.nodes[node].subs[next++];
        if (color[sub] == 1) {
            throw ValidationError("proof graph has a cycle through node " + std::to_string(sub));
        }
        if (color[sub] == 0) {
            color[sub] = 1;
            stack.emplace_back(sub, 0);
        }
    }
}

class Checker {
  public:
    Checker(const Lmc& lmc, const ProofDag& dag)
        : lmc_(lmc), dag_(dag), state_(dag.nodes.size(), 0) {}

    ValidityReport run() {
        check(dag_.root, "root");
        if (report_.valid) {
            report_.node = dag_.root;
            report_.rule = dag_.nodes[dag_.root].rule;
        }
        return report_;
    }

  private:
    bool check(std::size_t index, const std::string& path) {
        if (state_[index] != 0) {
            return state_[index] == 1;
        }
        const auto& node = dag_.nodes[index];
        const auto fail = [&](const std::string& reason) {
            state_[index] = 2;
            if (report_.valid) {
                report_ = ValidityReport{false, index, path, node.rule, reason};
            }
            return false;
        };
        const auto& j = node.judgement;
        if (!in_unit_interval(j.bound)) {
            return fail("bound " + to_string(j.bound) + " outside [0,1]");
        }
        switch (node.rule) {
        case Rule::Zero:
            if (j.bound != 0) {
                return fail("(zero) concludes bound 0, not " + to_string(j.bound));
            }
            break;
        case Rule::Lab:
            if (lmc_.label(j.left) == lmc_.label(j.right)) {
                return fail("labels of '" + j.left.to_string() + "' and '" +
                            j.right.to_string() + "' agree");
            }
            if (j.bound != 1) {
                return fail("(lab) concludes bound 1, not " + to_string(j.bound));
            }
            break;
        case Rule::Symm: {
            const auto& sub = dag_.nodes[node.subs[0]].judgement;
            if (sub.left != j.right || sub.right != j.left || sub.bound != j.bound) {
                return fail("premise must be the swapped judgement " + j.right.to_string() +
                            " |>_" + to_string(j.bound) + " " + j.left.to_string());
            }
            break;
        }
        case Rule::Weak: {
            const auto& sub = dag_.nodes[node.subs[0]].judgement;
            if (sub.left != j.left || sub.right != j.right) {
                return fail("premise concerns a different state pair");
            }
            if (j.bound > sub.bound) {
                return fail("bound " + to_string(j.bound) + " exceeds premise bound " +
                            to_string(sub.bound));
            }
            break;
        }
        case Rule::Exp: {
            const std::vector<StateId> support = joint_support(lmc_, j.left, j.right);
            if (node.h.size() != support.size() ||
                !std::equal(support.begin(), support.end(), node.h.begin(),
                            [](const StateId& s, const auto& entry) { return s == entry.first; })) {
                return fail("h domain differs from the joint successor support");
            }
            for (const auto& [state, value] : node.h) {
                if (!in_unit_interval(value)) {
                    return fail("h(" + state.to_string() + ") = " + to_string(value) +
                                " outside [0,1]");
                }
            }
            // Every value-decreasing ordered pair owes a sub-proof with
            // exactly the gap as bound; extras are rejected.
            std::vector<std::pair<StatePair, Rational>> required;
            for (const auto& [u, hu] : node.h) {
                for (const auto& [v, hv] : node.h) {
                    if (hu > hv) {
                        required.emplace_back(StatePair{u, v}, hu - hv);
                    }
                }
            }
            if (node.sub_pairs.size() != required.size()) {
                return fail("expected " + std::to_string(required.size()) +
                            " obligations, found " + std::to_string(node.sub_pairs.size()));
            }
            for (std::size_t k = 0; k < required.size(); ++k) {
                const auto& [pair, gap] = required[k];
                if (node.sub_pairs[k] != pair) {
                    return fail("obligation " + std::to_string(k) + " must be for pair (" +
                                pair.first.to_string() + ", " + pair.second.to_string() + ")");
                }
                const auto& sub = dag_.nodes[node.subs[k]].judgement;
                if (sub.left != pair.first || sub.right != pair.second || sub.bound != gap) {
                    return fail("sub-proof " + std::to_string(k) + " must conclude " +
                                pair.first.to_string() + " |>_" + to_string(gap) + " " +
                                pair.second.to_string());
                }
            }
            const Rational gap = expected_value(lmc_.step(j.left), node.h) -
                                 expected_value(lmc_.step(j.right), node.h);
            if (gap < j.bound) {
                return fail("expectation gap " + to_string(gap) + " is below the bound " +
                            to_string(j.bound));
            }
            break;
        }
        }
        for (std::size_t k = 0; k < node.subs.size(); ++k) {
            if (!check(node.subs[k], path + "/" + std::to_string(k))) {
                state_[index] = 2;
                return false;
            }
        }
        state_[index] = 1;
        return true;
    }

    const Lmc& lmc_;
    const ProofDag& dag_;
    std::vector<int> state_; // 0 unknown, 1 valid, 2 invalid
    ValidityReport report_;
};

} // namespace

ValidityReport check_proof(const Lmc& lmc, const ProofDag& dag) {
    validate_structure(dag);
    return Checker(lmc, dag).run();
}

ValidityReport check_proof(const Lmc& lmc, const ProofTree& tree) {
    return check_proof(lmc, tree_to_dag(tree));
}

namespace {

class Synthesizer {
  public:
    Synthesizer(const Lmc& lmc) : lmc_(lmc), table_(lmc) {}

    ProofDag run(const StateId& x, const StateId& y, unsigned depth) {
        dag_.root = build(depth, x, y);
        return std::move(dag_);
    }

  private:
    std::size_t add(ProofDag::Node node) {
        dag_.nodes.push_back(std::move(node));
        return dag_.nodes.size() - 1;
    }

    std::size_t build(unsigned depth, const StateId& x, const StateId& y) {
        const Rational value = table_.value(depth, x, y);
        // A certificate's validity does not mention the depth it was
        // built for, so any stored proof of the same judgement can be
        // reused; a stored swapped orientation is reused under (symm).
        const auto key = std::tuple{x, y, value};
        if (const auto it = memo_.find(key); it != memo_.end()) {
            return it->second;
        }
        if (const auto it = memo_.find(std::tuple{y, x, value}); it != memo_.end()) {
            ProofDag::Node symm;
            symm.rule = Rule::Symm;
            symm.judgement = {x, y, value};
            symm.subs = {it->second};
            const std::size_t index = add(std::move(symm));
            memo_.emplace(key, index);
            return index;
        }

        std::size_t index;
        if (depth == 0 || value == 0) {
            // Also preferred over (exp) when the LP value is zero; the
            // certificate is smaller and claims the same bound.
            ProofDag::Node zero;
            zero.rule = Rule::Zero;
            zero.judgement = {x, y, Rational(0)};
            index = add(std::move(zero));
        } else if (lmc_.label(x) != lmc_.label(y)) {
            ProofDag::Node lab;
            lab.rule = Rule::Lab;
            lab.judgement = {x, y, Rational(1)};
            index = add(std::move(lab));
        } else {
            const OptimalStep step = gamma_step(table_, depth - 1, x, y);
            ProofDag::Node exp;
            exp.rule = Rule::Exp;
            exp.judgement = {x, y, value};
            exp.h = step.h;
            for (const auto& [u, hu] : step.h) {
                for (const auto& [v, hv] : step.h) {
                    if (hu <= hv) {
                        continue;
                    }
                    const Rational gap = hu - hv;
                    std::size_t sub = build(depth - 1, u, v);
                    const Rational proved = dag_.nodes[sub].judgement.bound;
                    if (gap < proved) {
                        sub = weaken(sub, u, v, gap);
                    }
                    exp.sub_pairs.emplace_back(u, v);
                    exp.subs.push_back(sub);
                }
            }
            index = add(std::move(exp));
        }
        memo_.emplace(key, index);
        return index;
    }

    std::size_t weaken(std::size_t sub, const StateId& u, const StateId& v, const Rational& gap) {
        const auto key = std::pair{sub, gap};
        if (const auto it = weak_memo_.find(key); it != weak_memo_.end()) {
            return it->second;
        }
        ProofDag::Node weak;
        weak.rule = Rule::Weak;
        weak.judgement = {u, v, gap};
        weak.subs = {sub};
        const std::size_t index = add(std::move(weak));
        weak_memo_.emplace(key, index);
        return index;
    }

    const Lmc& lmc_;
    DistanceTable table_;
    ProofDag dag_;
    std::map<std::tuple<StateId, StateId, Rational>, std::size_t> memo_;
    std::map<std::pair<std::size_t, Rational>, std::size_t> weak_memo_;
};

} // namespace

ProofDag synthesize_proof(const Lmc& lmc, const StateId& x, const StateId& y, unsigned depth) {
    return Synthesizer(lmc).run(x, y, depth);
}

namespace {

unsigned guard_depth_at(const ProofDag& dag, std::size_t index, std::vector<unsigned>& memo) {
    if (memo[index] != std::numeric_limits<unsigned>::max()) {
        return memo[index];
    }
    const auto& node = dag.nodes[index];
    unsigned depth = 0;
    switch (node.rule) {
    case Rule::Zero:
        depth = 0;
        break;
    case Rule::Lab:
        depth = 1;
        break;
    case Rule::Symm:
    case Rule::Weak:
        depth = guard_depth_at(dag, node.subs[0], memo);
        break;
    case Rule::Exp: {
        unsigned deepest = 0;
        for (const std::size_t sub : node.subs) {
            deepest = std::max(deepest, guard_depth_at(dag, sub, memo));
        }
        depth = 1 + deepest;
        break;
    }
    }
    memo[index] = depth;
    return depth;
}

} // namespace

unsigned guard_depth(const ProofDag& dag) {
    validate_structure(dag);
    std::vector<unsigned> memo(dag.nodes.size(), std::numeric_limits<unsigned>::max());
    return guard_depth_at(dag, dag.root, memo);
}

unsigned guard_depth(const ProofTree& tree) {
    return guard_depth(tree_to_dag(tree));
}

namespace {

ProofPtr expand_at(const ProofDag& dag, std::size_t index, std::vector<ProofPtr>& memo) {
    if (memo[index]) {
        return memo[index];
    }
    const auto& node = dag.nodes[index];
    ProofPtr result;
    switch (node.rule) {
    case Rule::Zero:
        result = ProofTree::zero(node.judgement);
        break;
    case Rule::Lab:
        result = ProofTree::lab(node.judgement);
        break;
    case Rule::Symm:
        result = ProofTree::symm(node.judgement, expand_at(dag, node.subs[0], memo));
        break;
    case Rule::Weak:
        result = ProofTree::weak(node.judgement, expand_at(dag, node.subs[0], memo));
        break;
    case Rule::Exp: {
        std::vector<std::pair<StatePair, ProofPtr>> obligations;
        obligations.reserve(node.subs.size());
        for (std::size_t k = 0; k < node.subs.size(); ++k) {
            obligations.emplace_back(node.sub_pairs[k], expand_at(dag, node.subs[k], memo));
        }
        result = ProofTree::exp(node.judgement, node.h, std::move(obligations));
        break;
    }
    }
    memo[index] = result;
    return result;
}

std::size_t dag_of_tree(const ProofTree& tree, ProofDag& dag,
                        std::map<const ProofTree*, std::size_t>& memo) {
    if (const auto it = memo.find(&tree); it != memo.end()) {
        return it->second;
    }
    ProofDag::Node node;
    node.rule = tree.rule;
    node.judgement = tree.judgement;
    node.h = tree.h;
    if (tree.child) {
        node.subs.push_back(dag_of_tree(*tree.child, dag, memo));
    }
    for (const auto& [pair, sub] : tree.obligations) {
        node.sub_pairs.push_back(pair);
        node.subs.push_back(dag_of_tree(*sub, dag, memo));
    }
    dag.nodes.push_back(std::move(node));
    const std::size_t index = dag.nodes.size() - 1;
    memo.emplace(&tree, index);
    return index;
}

} // namespace

ProofPtr expand_dag(const ProofDag& dag) {
    validate_structure(dag);
    std::vector<ProofPtr> memo(dag.nodes.size());
    return expand_at(dag, dag.root, memo);
}

ProofDag tree_to_dag(const ProofTree& tree) {
    ProofDag dag;
    std::map<const ProofTree*, std::size_t> memo;
    dag.root = dag_of_tree(tree, dag, memo);
    return dag;
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json id_to_json(const StateId& s) {
    if (s.is_natural()) {
        return ordered_json(s.index());
    }
    return ordered_json(s.name());
}

enum class IdKind { Unknown, Natural, Text };

StateId id_from_json(const ordered_json& j, IdKind& kind) {
    IdKind seen;
    StateId id;
    if (j.is_string()) {
        seen = IdKind::Text;
        id = StateId::of(j.get<std::string>());
    } else if (j.is_number_unsigned()) {
        seen = IdKind::Natural;
        id = StateId::of(j.get<std::uint64_t>());
    } else {
        throw ParseError("state ids must be strings or naturals");
    }
    if (kind == IdKind::Unknown) {
        kind = seen;
    } else if (kind != seen) {
        throw ParseError("proof mixes string and natural state ids");
    }
    return id;
}

StateId id_from_key(const std::string& key, IdKind kind) {
    if (kind == IdKind::Natural) {
        for (const char c : key) {
            if (!std::isdigit(static_cast<unsigned char>(c))) {
                throw ParseError("h key '" + key + "' is not a natural");
            }
        }
        if (key.empty()) {
            throw ParseError("empty h key");
        }
        return StateId::of(std::stoull(key));
    }
    return StateId::of(key);
}

Rule rule_from_string(const std::string& name) {
    if (name == "zero") return Rule::Zero;
    if (name == "lab") return Rule::Lab;
    if (name == "symm") return Rule::Symm;
    if (name == "weak") return Rule::Weak;
    if (name == "exp") return Rule::Exp;
    throw ParseError("unknown rule '" + name + "'");
}

} // namespace

std::string proof_to_json(const ProofDag& dag) {
    ordered_json nodes = ordered_json::array();
    for (const auto& node : dag.nodes) {
        ordered_json entry;
        entry["rule"] = std::string(rule_name(node.rule));
        entry["left"] = id_to_json(node.judgement.left);
        entry["right"] = id_to_json(node.judgement.right);
        entry["bound"] = to_string(node.judgement.bound);
        if (node.rule == Rule::Exp) {
            ordered_json h = ordered_json::object();
            for (const auto& [state, value] : node.h) {
                h[state.to_string()] = to_string(value);
            }
            entry["h"] = std::move(h);
            ordered_json pairs = ordered_json::array();
            for (const auto& [u, v] : node.sub_pairs) {
                pairs.push_back(ordered_json::array({id_to_json(u), id_to_json(v)}));
            }
            entry["sub_pairs"] = std::move(pairs);
        }
        if (!node.subs.empty() || node.rule == Rule::Exp) {
            entry["subs"] = node.subs;
        }
        nodes.push_back(std::move(entry));
    }
    ordered_json doc;
    doc["nodes"] = std::move(nodes);
    doc["root"] = dag.root;
    return doc.dump() + "\n";
}

ProofDag proof_from_json(std::string_view text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        ProofDag dag;
        IdKind kind = IdKind::Unknown;
        for (const auto& entry : doc.at("nodes")) {
            ProofDag::Node node;
            node.rule = rule_from_string(entry.at("rule").get<std::string>());
            node.judgement.left = id_from_json(entry.at("left"), kind);
            node.judgement.right = id_from_json(entry.at("right"), kind);
            node.judgement.bound = parse_rational(entry.at("bound").get<std::string>());
            if (!in_unit_interval(node.judgement.bound)) {
                throw ValidationError("bound " + to_string(node.judgement.bound) +
                                      " outside [0,1]");
            }
            if (node.rule == Rule::Exp) {
                for (const auto& [key, value] : entry.at("h").items()) {
                    node.h.emplace(id_from_key(key, kind),
                                   parse_rational(value.get<std::string>()));
                }
                for (const auto& pair : entry.at("sub_pairs")) {
                    if (!pair.is_array() || pair.size() != 2) {
                        throw ParseError("sub_pairs entries must be [left, right]");
                    }
                    node.sub_pairs.emplace_back(id_from_json(pair[0], kind),
                                                id_from_json(pair[1], kind));
                }
            }
            if (entry.contains("subs")) {
                node.subs = entry.at("subs").get<std::vector<std::size_t>>();
            }
            dag.nodes.push_back(std::move(node));
        }
        dag.root = doc.at("root").get<std::size_t>();
        validate_structure(dag);
        return dag;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed proof document: ") + e.what());
    }
}

namespace {

void render_at(const ProofDag& dag, std::size_t index, unsigned indent, std::string& out) {
    const auto& node = dag.nodes[index];
    out.append(2 * indent, ' ');
    out += "(";
    out += rule_name(node.rule);
    out += ") ";
    out += node.judgement.left.to_string();
    out += " ▷_{" + to_string(node.judgement.bound) + "} ";
    out += node.judgement.right.to_string();
    if (node.rule == Rule::Exp) {
        out += "  h = {";
        bool first = true;
        for (const auto& [state, value] : node.h) {
            if (!first) {
                out += ", ";
            }
            out += state.to_string() + ": " + to_string(value);
            first = false;
        }
        out += "}";
    }
    out += "\n";
    for (const std::size_t sub : node.subs) {
        render_at(dag, sub, indent + 1, out);
    }
}

} // namespace

std::string render_proof_text(const ProofDag& dag) {
    validate_structure(dag);
    std::string out;
    render_at(dag, dag.root, 0, out);
    return out;
}

} // namespace bdproof
