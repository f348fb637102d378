// Copyright (c) bdproof contributors.
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "bdproof/proof.hpp"
#include "helpers.hpp"

using namespace bdproof;

namespace {

std::size_t tree_size(const ProofTree& p) {
    std::size_t count = 1;
    if (p.child) {
        count += tree_size(*p.child);
    }
    for (const auto& [pair, sub] : p.obligations) {
        (void)pair;
        count += tree_size(*sub);
    }
    return count;
}

} // namespace

TEST_CASE("synthesized certificate for the two-chain example") {
    const auto ex2 = load_fixture("ex2");
    const auto dag = synthesize_proof(*ex2, sid("x"), sid("y"), 2);
    const auto& root = dag.nodes[dag.root];
    CHECK(root.rule == Rule::Exp);
    CHECK(root.judgement.left == sid("x"));
    CHECK(root.judgement.right == sid("y"));
    CHECK(root.judgement.bound == Rational(1, 10));
    REQUIRE(root.sub_pairs.size() == 4);
    for (const std::size_t sub : root.subs) {
        CHECK(dag.nodes[sub].rule == Rule::Lab);
        CHECK(dag.nodes[sub].judgement.bound == 1);
    }
    CHECK(check_proof(*ex2, dag).valid);
    CHECK(guard_depth(dag) == 2);
}

TEST_CASE("reflexive pairs synthesize the zero certificate") {
    const auto ex2 = load_fixture("ex2");
    for (unsigned depth : {0u, 3u, 9u}) {
        const auto dag = synthesize_proof(*ex2, sid("x"), sid("x"), depth);
        CHECK(dag.nodes.size() == 1);
        CHECK(dag.nodes[dag.root].rule == Rule::Zero);
        CHECK(dag.nodes[dag.root].judgement.bound == 0);
        CHECK(check_proof(*ex2, dag).valid);
    }
}

TEST_CASE("synthesized certificate on the random walk") {
    const auto walk = builtin_lmc("random-walk", {});
    const auto dag = synthesize_proof(*walk, sid(2), sid(3), 3);
    const auto& root = dag.nodes[dag.root];
    CHECK(root.judgement == Judgement{sid(2), sid(3), Rational(1, 4)});
    const std::vector<StatePair> expected{{sid(1), sid(2)}, {sid(1), sid(3)}, {sid(1), sid(4)}};
    CHECK(root.sub_pairs == expected);
    for (const std::size_t sub : root.subs) {
        CHECK(dag.nodes[sub].judgement.bound == Rational(1, 2));
    }
    CHECK(check_proof(*walk, dag).valid);
}

TEST_CASE("checker rejects rule-shape violations") {
    const auto ex2 = load_fixture("ex2");

    SUBCASE("zero with a positive bound") {
        ProofDag dag;
        ProofDag::Node node;
        node.rule = Rule::Zero;
        node.judgement = {sid("x"), sid("y"), Rational(1, 2)};
        dag.nodes.push_back(node);
        const auto report = check_proof(*ex2, dag);
        CHECK_FALSE(report.valid);
        CHECK(report.node == 0);
        CHECK(report.rule == Rule::Zero);
    }

    SUBCASE("lab on states with equal labels") {
        ProofDag dag;
        ProofDag::Node node;
        node.rule = Rule::Lab;
        node.judgement = {sid("x"), sid("y"), Rational(1)};
        dag.nodes.push_back(node);
        CHECK_FALSE(check_proof(*ex2, dag).valid);
    }

    SUBCASE("a tampered root bound fails the expectation inequality") {
        auto dag = synthesize_proof(*ex2, sid("x"), sid("y"), 2);
        dag.nodes[dag.root].judgement.bound = Rational(1, 5);
        const auto report = check_proof(*ex2, dag);
        CHECK_FALSE(report.valid);
        CHECK(report.node == dag.root);
        CHECK(report.path == "root");
        CHECK(report.reason.find("expectation gap") != std::string::npos);
    }

    SUBCASE("a dropped obligation is noticed") {
        auto dag = synthesize_proof(*ex2, sid("x"), sid("y"), 2);
        auto& root = dag.nodes[dag.root];
        root.sub_pairs.pop_back();
        root.subs.pop_back();
        const auto report = check_proof(*ex2, dag);
        CHECK_FALSE(report.valid);
        CHECK(report.node == dag.root);
    }

    SUBCASE("a perturbed h value breaks the obligation match") {
        auto dag = synthesize_proof(*ex2, sid("x"), sid("y"), 2);
        auto& root = dag.nodes[dag.root];
        root.h.begin()->second += Rational(1, 7);
        CHECK_FALSE(check_proof(*ex2, dag).valid);
    }

    SUBCASE("h must range over the joint support exactly") {
        auto dag = synthesize_proof(*ex2, sid("x"), sid("y"), 2);
        auto& root = dag.nodes[dag.root];
        root.h.emplace(sid("x"), Rational(0)); // extra key
        const auto report = check_proof(*ex2, dag);
        CHECK_FALSE(report.valid);
        CHECK(report.reason.find("joint successor support") != std::string::npos);
    }
}

TEST_CASE("weak and symm wrappers validate") {
    const auto ex2 = load_fixture("ex2");
    const auto dag = synthesize_proof(*ex2, sid("x"), sid("y"), 2);
    const auto tree = expand_dag(dag);

    const auto weakened =
        ProofTree::weak({sid("x"), sid("y"), Rational(1, 20)}, tree);
    CHECK(check_proof(*ex2, *weakened).valid);

    const auto swapped = ProofTree::symm({sid("y"), sid("x"), Rational(1, 10)}, tree);
    CHECK(check_proof(*ex2, *swapped).valid);

    const auto too_strong = ProofTree::weak({sid("x"), sid("y"), Rational(1, 5)}, tree);
    CHECK_FALSE(check_proof(*ex2, *too_strong).valid);

    const auto wrong_way = ProofTree::symm({sid("x"), sid("y"), Rational(1, 10)}, tree);
    CHECK_FALSE(check_proof(*ex2, *wrong_way).valid);
}

TEST_CASE("guard depth") {
    const auto ex2 = load_fixture("ex2");
    CHECK(guard_depth(*ProofTree::zero({sid("x"), sid("y"), Rational(0)})) == 0);
    CHECK(guard_depth(*ProofTree::lab({sid("x"), sid("x2"), Rational(1)})) == 1);
    CHECK(guard_depth(synthesize_proof(*ex2, sid("x"), sid("y"), 2)) == 2);
    const auto walk = builtin_lmc("random-walk", {});
    CHECK(guard_depth(synthesize_proof(*walk, sid(2), sid(3), 3)) == 3);
}

TEST_CASE("dag expansion") {
    const auto noform = load_fixture("noform");

    SUBCASE("sharing disappears under expansion") {
        const auto dag = synthesize_proof(*noform, sid("x"), sid("y"), 3);
        const auto tree = expand_dag(dag);
        CHECK(tree_size(*tree) > dag.nodes.size()); // bound-1 leaves are shared
        CHECK(check_proof(*noform, *tree).valid);
        CHECK(tree->judgement.bound == Rational(3, 4));
        const auto roundtrip = tree_to_dag(*tree);
        CHECK(check_proof(*noform, roundtrip).valid);
        CHECK(roundtrip.nodes.size() == dag.nodes.size());
    }

    SUBCASE("a dag without sharing expands to the same shape") {
        const auto dag = synthesize_proof(*noform, sid("x"), sid("y"), 1);
        const auto tree = expand_dag(dag);
        CHECK(tree_size(*tree) == dag.nodes.size());
    }

    SUBCASE("single zero node") {
        ProofDag dag;
        ProofDag::Node node;
        node.rule = Rule::Zero;
        node.judgement = {sid("x"), sid("y"), Rational(0)};
        dag.nodes.push_back(node);
        const auto tree = expand_dag(dag);
        CHECK(tree->rule == Rule::Zero);
        CHECK(tree_size(*tree) == 1);
    }
}

TEST_CASE("synthesis agrees with the distance at every depth") {
    for (const char* name : {"ex2", "noform", "rady5"}) {
        const auto lmc = load_fixture(name);
        const auto states = *lmc->states();
        DistanceTable table(*lmc);
        for (unsigned depth = 0; depth <= 4; ++depth) {
            for (const auto& x : states) {
                for (const auto& y : states) {
                    const auto dag = synthesize_proof(*lmc, x, y, depth);
                    const auto& root = dag.nodes[dag.root].judgement;
                    CHECK(root.left == x);
                    CHECK(root.right == y);
                    CHECK(root.bound == table.value(depth, x, y));
                    CHECK(check_proof(*lmc, dag).valid);
                    // Executable form of soundness, one certificate at a
                    // time: the bound cannot exceed the iterate at the
                    // certificate's own guard depth.
                    CHECK(root.bound <= table.value(guard_depth(dag), x, y));
                }
            }
        }
    }
}

TEST_CASE("synthesis is orientation-invariant on the root bound") {
    const auto rady = load_fixture("rady5");
    const auto states = *rady->states();
    for (unsigned depth = 1; depth <= 3; ++depth) {
        for (const auto& x : states) {
            for (const auto& y : states) {
                const auto a = synthesize_proof(*rady, x, y, depth);
                const auto b = synthesize_proof(*rady, y, x, depth);
                CHECK(a.nodes[a.root].judgement.bound == b.nodes[b.root].judgement.bound);
            }
        }
    }
}

TEST_CASE("lowering any bound through a weak wrapper stays valid") {
    const auto rady = load_fixture("rady5");
    const auto dag = synthesize_proof(*rady, sid("x0"), sid("y0"), 3);
    const auto tree = expand_dag(dag);
    const Rational half = dag.nodes[dag.root].judgement.bound / 2;
    const auto wrapped = ProofTree::weak({sid("x0"), sid("y0"), half}, tree);
    CHECK(check_proof(*rady, *wrapped).valid);
    const auto zero = ProofTree::weak({sid("x0"), sid("y0"), Rational(0)}, tree);
    CHECK(check_proof(*rady, *zero).valid);
}

TEST_CASE("proof JSON round trip is byte-stable") {
    const auto rady = load_fixture("rady5");
    const auto dag = synthesize_proof(*rady, sid("x0"), sid("y0"), 3);
    const std::string once = proof_to_json(dag);
    const auto parsed = proof_from_json(once);
    CHECK(proof_to_json(parsed) == once);
    CHECK(check_proof(*rady, parsed).valid);
    CHECK(parsed.nodes.size() == dag.nodes.size());
    CHECK(parsed.root == dag.root);

    const auto walk = builtin_lmc("random-walk", {});
    const auto wd = synthesize_proof(*walk, sid(2), sid(3), 3);
    const std::string walk_json = proof_to_json(wd);
    const auto walk_parsed = proof_from_json(walk_json);
    CHECK(proof_to_json(walk_parsed) == walk_json);
    CHECK(check_proof(*walk, walk_parsed).valid);
}

TEST_CASE("proof JSON rejects malformed documents") {
    CHECK_THROWS_AS(proof_from_json("{\"nodes\": [\n"), ParseError);
    CHECK_THROWS_AS(proof_from_json(R"({"nodes": [], "root": 0})"), ValidationError);
    CHECK_THROWS_AS(
        proof_from_json(
            R"({"nodes":[{"rule":"flip","left":"x","right":"y","bound":"0"}],"root":0})"),
        ParseError);
    CHECK_THROWS_AS(
        proof_from_json(
            R"({"nodes":[{"rule":"zero","left":"x","right":"y","bound":"3/2"}],"root":0})"),
        ValidationError);
    CHECK_THROWS_AS(
        proof_from_json(
            R"({"nodes":[{"rule":"zero","left":"x","right":3,"bound":"0"}],"root":0})"),
        ParseError);
    // self-referential weak node
    CHECK_THROWS_AS(
        proof_from_json(
            R"({"nodes":[{"rule":"weak","left":"x","right":"y","bound":"0","subs":[0]}],"root":0})"),
        ValidationError);
    CHECK_THROWS_AS(
        proof_from_json(
            R"({"nodes":[{"rule":"weak","left":"x","right":"y","bound":"0","subs":[7]}],"root":0})"),
        ValidationError);
}

TEST_CASE("pretty rendering is deterministic and rule-per-line") {
    const auto ex2 = load_fixture("ex2");
    const auto dag = synthesize_proof(*ex2, sid("x"), sid("y"), 2);
    const std::string text = render_proof_text(dag);
    CHECK(text == render_proof_text(dag));
    CHECK(text.find("(exp) x ▷_{1/10} y") == 0);
    CHECK(text.find("(lab)") != std::string::npos);
    // one line per reachable node occurrence
    CHECK(std::count(text.begin(), text.end(), '\n') >= 5);
}
