// Copyright (c) bdproof contributors.
// SPDX-License-Identifier: Apache-2.0
//
// The quantitative modal logic interpreted over [0,1]:
//
//   phi ::= a | O phi | !phi | phi - q | phi | phi
// plus first-class derived forms  phi + q, phi & phi, false.
//
// Interpretation: atoms test the state label, O takes the expected
// value of the subformula over the successor distribution, ! is
// complement, - and + are truncated shifts, | is max and & is min.
// A certificate and a formula witness the same lower bound: the
// translations below are exact in both directions.
#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "bdproof/lmc.hpp"
#include "bdproof/proof.hpp"

namespace bdproof {

enum class FormulaKind { Atom, Next, Not, Minus, Or, And, Plus, False };

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable AST; subterms are shared freely (the proof translation
// reuses them heavily).
class Formula {
  public:
    FormulaKind kind() const { return kind_; }
    const Label& atom() const { return atom_; }
    const Rational& constant() const { return constant_; } // Minus/Plus
    const FormulaPtr& sub() const { return left_; }        // Next/Not/Minus/Plus
    const FormulaPtr& left() const { return left_; }       // Or/And
    const FormulaPtr& right() const { return right_; }     // Or/And

    static FormulaPtr atom(Label label);
    static FormulaPtr next(FormulaPtr sub);
    static FormulaPtr negation(FormulaPtr sub);
    // q must lie in [0,1].
    static FormulaPtr minus(FormulaPtr sub, Rational q);
    static FormulaPtr plus(FormulaPtr sub, Rational q);
    static FormulaPtr disjunction(FormulaPtr left, FormulaPtr right);
    static FormulaPtr conjunction(FormulaPtr left, FormulaPtr right);
    static FormulaPtr falsum();

  private:
    Formula() = default;
    FormulaKind kind_ = FormulaKind::False;
    Label atom_;
    Rational constant_;
    FormulaPtr left_;
    FormulaPtr right_;
};

bool formula_equal(const Formula& a, const Formula& b);

// Exact recursive evaluation; lands in [0,1] (checked). Terminates on
// lazy chains because only support states up to the modal depth are
// visited. Memoizes per (node, state) within one call.
Rational interp(const Lmc& lmc, const Formula& f, const StateId& s);
std::map<StateId, Rational> interp_states(const Lmc& lmc, const Formula& f,
                                          const std::vector<StateId>& states);

// Number of nested O modalities.
unsigned modal_depth(const Formula& f);

// Interpretation-preserving rewriting to a fixed point: identity shifts
// drop, double negation cancels, or/and chains are deduplicated and
// stripped of neutral constants, closed subterms fold into the
// canonical constant false + q. Preservation is a verified property,
// not an assumption.
FormulaPtr simplify(const FormulaPtr& f);

// Builds a certificate with root judgement
// (x, y, |interp(f,x) - interp(f,y)|) by induction on f. Derived
// connectives are desugared first; the O case uses interp of the
// subformula (or of its complement, depending on the gap's sign) as the
// map h.
ProofPtr formula_to_proof(const Lmc& lmc, const FormulaPtr& f, const StateId& x, const StateId& y);

// Builds a formula with interp = bound at the left state and 0 at the
// right state, exactly. The proof is checked first; InvalidProofError
// on rejection. The (exp) case combines the recursively obtained
// subformulas through the max-min normal form over the support, then
// cuts the expectation below by tau(right) |= h, and trims any strict
// slack in the premise so the root interpretation is exact.
FormulaPtr proof_to_formula(const Lmc& lmc, const ProofPtr& proof);
FormulaPtr proof_to_formula(const Lmc& lmc, const ProofDag& dag);

// Text syntax: `phi ::= ident | "false" | "O" phi | "!" phi |
// phi "-" q | phi "+" q | phi "|" phi | phi "&" phi | "(" phi ")"`
// with precedence O,! > -,+ > & > | and q a "p/q" or integer literal
// in [0,1]. ParseError carries the offending position.
FormulaPtr parse_formula(std::string_view text);

// Default rendering parenthesizes every binary connective, so the
// output reparses to the identical AST; compact mode emits minimal
// parentheses instead.
std::string render_formula(const Formula& f, bool compact = false);

// Nested {"op": ...} mirror of the AST, for machine consumers.
std::string formula_to_json(const Formula& f);
FormulaPtr formula_from_json(std::string_view text);

} // namespace bdproof
