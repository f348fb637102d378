// Copyright (c) bdproof contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Inductive certificates for lower bounds on behavioural distances.
// A judgement `x |>_e y` claims the distance between x and y is at
// least e; trees are built from five rules:
//
//   (zero)  x |>_0 y
//   (lab)   x |>_1 y                      when label(x) != label(y)
//   (symm)  x |>_e y                      from y |>_e x
//   (weak)  x |>_e y                      from x |>_e' y with e <= e'
//   (exp)   x |>_e y                      from a map h over the joint
//           successor support with recursive proofs x' |>_{h(x')-h(y')} y'
//           for every ordered pair with h(x') > h(y'), provided
//           tau(x) |= h - tau(y) |= h >= e.
//
// Certificates are stored as DAGs so repeated sub-bounds are shared; the
// checker works on DAGs natively and never needs the expanded tree.
#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bdproof/distance.hpp"
#include "bdproof/lmc.hpp"

namespace bdproof {

struct Judgement {
    StateId left;
    StateId right;
    Rational bound; // in [0,1]

    bool operator==(const Judgement&) const = default;
};

enum class Rule { Zero, Lab, Symm, Weak, Exp };

std::string_view rule_name(Rule rule);

// Ordered pair of states, as used by (exp) obligations.
using StatePair = std::pair<StateId, StateId>;

struct ProofTree;
using ProofPtr = std::shared_ptr<const ProofTree>;

struct ProofTree {
    Rule rule = Rule::Zero;
    Judgement judgement;
    ProofPtr child;                                        // symm, weak
    std::map<StateId, Rational> h;                         // exp
    std::vector<std::pair<StatePair, ProofPtr>> obligations; // exp, sorted by pair

    static ProofPtr zero(Judgement j);
    static ProofPtr lab(Judgement j);
    static ProofPtr symm(Judgement j, ProofPtr sub);
    static ProofPtr weak(Judgement j, ProofPtr sub);
    static ProofPtr exp(Judgement j, std::map<StateId, Rational> h,
                        std::vector<std::pair<StatePair, ProofPtr>> obligations);
};

struct ProofDag {
    struct Node {
        Rule rule = Rule::Zero;
        Judgement judgement;
        std::map<StateId, Rational> h;     // exp
        std::vector<StatePair> sub_pairs;  // exp, parallel to subs
        std::vector<std::size_t> subs;     // exp: per pair; symm/weak: exactly one
    };

    std::vector<Node> nodes;
    std::size_t root = 0;
};

struct ValidityReport {
    bool valid = true;
    std::size_t node = 0;   // failing node index when invalid
    std::string path;       // child-ordinal path from the root, e.g. "root/2/0"
    Rule rule = Rule::Zero;
    std::string reason;

    std::string to_string() const;
};

// Checks every reachable node against its rule. Node validity is
// memoized, so shared sub-proofs are checked once; the report points at
// the first node (preorder) whose own side conditions fail.
// Structural defects (bad indices, cycles) throw ValidationError.
ValidityReport check_proof(const Lmc& lmc, const ProofDag& dag);
ValidityReport check_proof(const Lmc& lmc, const ProofTree& tree);

// Builds a certificate with root judgement (x, y, Gamma^depth(bot)(x,y))
// following the completeness construction: Zero at depth 0 or distance
// zero, Lab on label clashes, otherwise Exp with the LP-optimal map and
// recursive proofs one level down. Sub-proofs are memoized per ordered
// pair; a swapped orientation reuses the stored proof under a Symm
// wrapper, and a strict obligation gap inserts a Weak wrapper.
ProofDag synthesize_proof(const Lmc& lmc, const StateId& x, const StateId& y, unsigned depth);

// Nesting count of (lab)/(exp) applications; bounds which iterate a
// certificate's root bound cannot exceed.
unsigned guard_depth(const ProofDag& dag);
unsigned guard_depth(const ProofTree& tree);

ProofPtr expand_dag(const ProofDag& dag);
// Inverse direction; shared subtrees (by node identity) share DAG nodes.
ProofDag tree_to_dag(const ProofTree& tree);

// Deterministic JSON bytes:
// {"nodes":[{"rule":...,"left":...,"right":...,"bound":"p/q",
//   "h":{...}?,"sub_pairs":[[l,r],...]?,"subs":[i,...]?}],"root":n}
// String ids serialize as JSON strings, natural ids as JSON numbers.
std::string proof_to_json(const ProofDag& dag);
ProofDag proof_from_json(std::string_view text);

// Indented rule-per-line rendering of the expanded tree.
std::string render_proof_text(const ProofDag& dag);

} // namespace bdproof
