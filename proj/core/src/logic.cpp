// Copyright (c) bdproof contributors.
// SPDX-License-Identifier: Apache-2.0
#include "bdproof/logic.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <utility>

#include <json.hpp>

namespace bdproof {

namespace {

Rational checked_constant(Rational q) {
    if (!in_unit_interval(q)) {
        throw ValidationError("formula constant " + to_string(q) + " outside [0,1]");
    }
    return q;
}

} // namespace

FormulaPtr Formula::atom(Label label) {
    if (label.symbol.empty()) {
        throw ValidationError("empty label");
    }
    auto f = std::shared_ptr<Formula>(new Formula());
    f->kind_ = FormulaKind::Atom;
    f->atom_ = std::move(label);
    return f;
}

FormulaPtr Formula::next(FormulaPtr sub) {
    auto f = std::shared_ptr<Formula>(new Formula());
    f->kind_ = FormulaKind::Next;
    f->left_ = std::move(sub);
    return f;
}

FormulaPtr Formula::negation(FormulaPtr sub) {
    auto f = std::shared_ptr<Formula>(new Formula());
    f->kind_ = FormulaKind::Not;
    f->left_ = std::move(sub);
    return f;
}

FormulaPtr Formula::minus(FormulaPtr sub, Rational q) {
    auto f = std::shared_ptr<Formula>(new Formula());
    f->kind_ = FormulaKind::Minus;
    f->left_ = std::move(sub);
    f->constant_ = checked_constant(std::move(q));
    return f;
}

FormulaPtr Formula::plus(FormulaPtr sub, Rational q) {
    auto f = std::shared_ptr<Formula>(new Formula());
    f->kind_ = FormulaKind::Plus;
    f->left_ = std::move(sub);
    f->constant_ = checked_constant(std::move(q));
    return f;
}

FormulaPtr Formula::disjunction(FormulaPtr left, FormulaPtr right) {
    auto f = std::shared_ptr<Formula>(new Formula());
    f->kind_ = FormulaKind::Or;
    f->left_ = std::move(left);
    f->right_ = std::move(right);
    return f;
}

FormulaPtr Formula::conjunction(FormulaPtr left, FormulaPtr right) {
    auto f = std::shared_ptr<Formula>(new Formula());
    f->kind_ = FormulaKind::And;
    f->left_ = std::move(left);
    f->right_ = std::move(right);
    return f;
}

FormulaPtr Formula::falsum() {
    auto f = std::shared_ptr<Formula>(new Formula());
    f->kind_ = FormulaKind::False;
    return f;
}

bool formula_equal(const Formula& a, const Formula& b) {
    if (&a == &b) {
        return true;
    }
    if (a.kind() != b.kind()) {
        return false;
    }
    switch (a.kind()) {
    case FormulaKind::Atom:
        return a.atom() == b.atom();
    case FormulaKind::False:
        return true;
    case FormulaKind::Next:
    case FormulaKind::Not:
        return formula_equal(*a.sub(), *b.sub());
    case FormulaKind::Minus:
    case FormulaKind::Plus:
        return a.constant() == b.constant() && formula_equal(*a.sub(), *b.sub());
    case FormulaKind::Or:
    case FormulaKind::And:
        return formula_equal(*a.left(), *b.left()) && formula_equal(*a.right(), *b.right());
    }
    return false;
}

namespace {

class Interpreter {
  public:
    explicit Interpreter(const Lmc& lmc) : lmc_(lmc) {}

    Rational eval(const Formula& f, const StateId& s) {
        const std::pair<const Formula*, StateId> key{&f, s};
        if (const auto it = memo_.find(key); it != memo_.end()) {
            return it->second;
        }
        Rational value;
        switch (f.kind()) {
        case FormulaKind::Atom:
            value = lmc_.label(s) == f.atom() ? 1 : 0;
            break;
        case FormulaKind::Next: {
            const Distribution mu = lmc_.step(s);
            Rational sum{0};
            for (const auto& [z, weight] : mu.weights()) {
                sum += weight * eval(*f.sub(), z);
            }
            value = sum;
            break;
        }
        case FormulaKind::Not:
            value = Rational(1) - eval(*f.sub(), s);
            break;
        case FormulaKind::Minus:
            value = truncated_sub(eval(*f.sub(), s), f.constant());
            break;
        case FormulaKind::Plus:
            value = truncated_add(eval(*f.sub(), s), f.constant());
            break;
        case FormulaKind::Or:
            value = std::max(eval(*f.left(), s), eval(*f.right(), s));
            break;
        case FormulaKind::And:
            value = std::min(eval(*f.left(), s), eval(*f.right(), s));
            break;
        case FormulaKind::False:
            value = 0;
            break;
        }
        if (!in_unit_interval(value)) {
            throw Error("interpretation left [0,1]"); // unreachable by construction
        }
        memo_.emplace(key, value);
        return value;
    }

  private:
    const Lmc& lmc_;
    std::map<std::pair<const Formula*, StateId>, Rational> memo_;
};

} // namespace

Rational interp(const Lmc& lmc, const Formula& f, const StateId& s) {
    return Interpreter(lmc).eval(f, s);
}

std::map<StateId, Rational> interp_states(const Lmc& lmc, const Formula& f,
                                          const std::vector<StateId>& states) {
    Interpreter interpreter(lmc);
    std::map<StateId, Rational> out;
    for (const auto& s : states) {
        out.emplace(s, interpreter.eval(f, s));
    }
    return out;
}

namespace {

unsigned modal_depth_at(const Formula& f, std::map<const Formula*, unsigned>& memo) {
    if (const auto it = memo.find(&f); it != memo.end()) {
        return it->second;
    }
    unsigned depth = 0;
    switch (f.kind()) {
    case FormulaKind::Atom:
    case FormulaKind::False:
        depth = 0;
        break;
    case FormulaKind::Next:
        depth = 1 + modal_depth_at(*f.sub(), memo);
        break;
    case FormulaKind::Not:
    case FormulaKind::Minus:
    case FormulaKind::Plus:
        depth = modal_depth_at(*f.sub(), memo);
        break;
    case FormulaKind::Or:
    case FormulaKind::And:
        depth = std::max(modal_depth_at(*f.left(), memo), modal_depth_at(*f.right(), memo));
        break;
    }
    memo.emplace(&f, depth);
    return depth;
}

} // namespace

unsigned modal_depth(const Formula& f) {
    std::map<const Formula*, unsigned> memo;
    return modal_depth_at(f, memo);
}

namespace {

// Closed subterms: false itself and the canonical constant false + q.
std::optional<Rational> constant_value(const Formula& f) {
    if (f.kind() == FormulaKind::False) {
        return Rational(0);
    }
    if (f.kind() == FormulaKind::Plus && f.sub()->kind() == FormulaKind::False) {
        return f.constant();
    }
    return std::nullopt;
}

FormulaPtr make_constant(const Rational& q) {
    return q == 0 ? Formula::falsum() : Formula::plus(Formula::falsum(), q);
}

void flatten_chain(FormulaKind kind, const FormulaPtr& f, std::vector<FormulaPtr>& out) {
    if (f->kind() == kind) {
        flatten_chain(kind, f->left(), out);
        flatten_chain(kind, f->right(), out);
    } else {
        out.push_back(f);
    }
}

FormulaPtr fold_right(FormulaKind kind, const std::vector<FormulaPtr>& members) {
    FormulaPtr acc = members.back();
    for (std::size_t i = members.size() - 1; i-- > 0;) {
        acc = kind == FormulaKind::Or ? Formula::disjunction(members[i], acc)
                                      : Formula::conjunction(members[i], acc);
    }
    return acc;
}

FormulaPtr simplify_at(const FormulaPtr& f, std::map<const Formula*, FormulaPtr>& memo) {
    if (const auto it = memo.find(f.get()); it != memo.end()) {
        return it->second;
    }
    FormulaPtr result = f;
    switch (f->kind()) {
    case FormulaKind::Atom:
    case FormulaKind::False:
        break;
    case FormulaKind::Next: {
        const FormulaPtr sub = simplify_at(f->sub(), memo);
        if (const auto c = constant_value(*sub)) {
            // The expected value of a constant is that constant.
            result = make_constant(*c);
        } else {
            result = sub == f->sub() ? f : Formula::next(sub);
        }
        break;
    }
    case FormulaKind::Not: {
        const FormulaPtr sub = simplify_at(f->sub(), memo);
        if (sub->kind() == FormulaKind::Not) {
            result = sub->sub();
        } else if (const auto c = constant_value(*sub)) {
            result = make_constant(Rational(1) - *c);
        } else {
            result = sub == f->sub() ? f : Formula::negation(sub);
        }
        break;
    }
    case FormulaKind::Minus: {
        const FormulaPtr sub = simplify_at(f->sub(), memo);
        if (f->constant() == 0) {
            result = sub;
        } else if (const auto c = constant_value(*sub)) {
            result = make_constant(truncated_sub(*c, f->constant()));
        } else if (f->constant() == 1) {
            result = Formula::falsum();
        } else {
            result = sub == f->sub() ? f : Formula::minus(sub, f->constant());
        }
        break;
    }
    case FormulaKind::Plus: {
        const FormulaPtr sub = simplify_at(f->sub(), memo);
        if (f->constant() == 0) {
            result = sub;
        } else if (const auto c = constant_value(*sub)) {
            if (sub->kind() == FormulaKind::False && sub == f->sub()) {
                result = f; // already the canonical constant
            } else {
                result = make_constant(truncated_add(*c, f->constant()));
            }
        } else {
            result = sub == f->sub() ? f : Formula::plus(sub, f->constant());
        }
        break;
    }
    case FormulaKind::Or:
    case FormulaKind::And: {
        const bool is_or = f->kind() == FormulaKind::Or;
        std::vector<FormulaPtr> chain;
        flatten_chain(f->kind(), f, chain);
        std::optional<Rational> folded;
        std::vector<FormulaPtr> members;
        for (const auto& raw : chain) {
            const FormulaPtr member = simplify_at(raw, memo);
            if (const auto c = constant_value(*member)) {
                folded = folded ? (is_or ? std::max(*folded, *c) : std::min(*folded, *c)) : *c;
                continue;
            }
            const bool seen = std::any_of(members.begin(), members.end(), [&](const FormulaPtr& m) {
                return formula_equal(*m, *member);
            });
            if (!seen) {
                members.push_back(member);
            }
        }
        // A dominating constant absorbs everything; a neutral one drops.
        if (folded && ((is_or && *folded == 1) || (!is_or && *folded == 0))) {
            result = make_constant(*folded);
            break;
        }
        if (folded && ((is_or && *folded == 0) || (!is_or && *folded == 1))) {
            folded.reset();
        }
        if (members.empty()) {
            result = make_constant(folded.value_or(Rational(is_or ? 0 : 1)));
            break;
        }
        if (folded) {
            members.push_back(make_constant(*folded));
        }
        result = fold_right(f->kind(), members);
        break;
    }
    }
    memo.emplace(f.get(), result);
    return result;
}

} // namespace

FormulaPtr simplify(const FormulaPtr& f) {
    FormulaPtr current = f;
    for (int round = 0; round < 64; ++round) {
        std::map<const Formula*, FormulaPtr> memo;
        FormulaPtr next = simplify_at(current, memo);
        if (formula_equal(*next, *current)) {
            return next;
        }
        current = std::move(next);
    }
    return current;
}

namespace {

// Rewrites min and truncated addition into the core fragment; false is
// kept, its certificate being the (zero) axiom directly.
FormulaPtr desugar(const FormulaPtr& f) {
    switch (f->kind()) {
    case FormulaKind::Atom:
    case FormulaKind::False:
        return f;
    case FormulaKind::Next:
        return Formula::next(desugar(f->sub()));
    case FormulaKind::Not:
        return Formula::negation(desugar(f->sub()));
    case FormulaKind::Minus:
        return Formula::minus(desugar(f->sub()), f->constant());
    case FormulaKind::Or:
        return Formula::disjunction(desugar(f->left()), desugar(f->right()));
    case FormulaKind::And:
        return Formula::negation(Formula::disjunction(Formula::negation(desugar(f->left())),
                                                      Formula::negation(desugar(f->right()))));
    case FormulaKind::Plus:
        return Formula::negation(
            Formula::minus(Formula::negation(desugar(f->sub())), f->constant()));
    }
    throw Error("unreachable");
}

class ProofBuilder {
  public:
    ProofBuilder(const Lmc& lmc) : lmc_(lmc), interpreter_(lmc) {}

    ProofPtr translate(const FormulaPtr& f, const StateId& x, const StateId& y) {
        const Rational gap = eval_gap(f, x, y);
        switch (f->kind()) {
        case FormulaKind::Atom:
            return gap == 0 ? ProofTree::zero({x, y, Rational(0)})
                            : ProofTree::lab({x, y, Rational(1)});
        case FormulaKind::Not:
            return translate(f->sub(), x, y);
        case FormulaKind::Minus: {
            // Truncation can only shrink the gap, so weaken the
            // subformula's certificate.
            ProofPtr sub = translate(f->sub(), x, y);
            return ProofTree::weak({x, y, gap}, std::move(sub));
        }
        case FormulaKind::Or: {
            const Rational left_gap = eval_gap(f->left(), x, y);
            const Rational right_gap = eval_gap(f->right(), x, y);
            const FormulaPtr& branch = left_gap >= right_gap ? f->left() : f->right();
            ProofPtr sub = translate(branch, x, y);
            return ProofTree::weak({x, y, gap}, std::move(sub));
        }
        case FormulaKind::Next: {
            if (gap == 0) {
                return ProofTree::zero({x, y, Rational(0)});
            }
            const std::vector<StateId> support = joint_support(lmc_, x, y);
            std::map<StateId, Rational> values;
            for (const auto& z : support) {
                values.emplace(z, interpreter_.eval(*f->sub(), z));
            }
            const Rational ex = expected_value(lmc_.step(x), values);
            const Rational ey = expected_value(lmc_.step(y), values);
            std::map<StateId, Rational> h;
            if (ex >= ey) {
                h = std::move(values);
            } else {
                for (const auto& [z, v] : values) {
                    h.emplace(z, Rational(1) - v);
                }
            }
            std::vector<std::pair<StatePair, ProofPtr>> obligations;
            for (const auto& [u, hu] : h) {
                for (const auto& [v, hv] : h) {
                    if (hu > hv) {
                        obligations.emplace_back(StatePair{u, v}, translate(f->sub(), u, v));
                    }
                }
            }
            return ProofTree::exp({x, y, gap}, std::move(h), std::move(obligations));
        }
        case FormulaKind::False:
            return ProofTree::zero({x, y, Rational(0)});
        case FormulaKind::And:
        case FormulaKind::Plus:
            break; // removed by desugaring
        }
        throw Error("translate: derived connective survived desugaring");
    }

  private:
    Rational eval_gap(const FormulaPtr& f, const StateId& x, const StateId& y) {
        const Rational vx = interpreter_.eval(*f, x);
        const Rational vy = interpreter_.eval(*f, y);
        return vx >= vy ? vx - vy : vy - vx;
    }

    const Lmc& lmc_;
    Interpreter interpreter_;
};

} // namespace

ProofPtr formula_to_proof(const Lmc& lmc, const FormulaPtr& f, const StateId& x,
                          const StateId& y) {
    return ProofBuilder(lmc).translate(desugar(f), x, y);
}

namespace {

FormulaPtr formula_of_proof(const Lmc& lmc, const ProofTree& p,
                            std::map<const ProofTree*, FormulaPtr>& memo) {
    if (const auto it = memo.find(&p); it != memo.end()) {
        return it->second;
    }
    FormulaPtr result;
    switch (p.rule) {
    case Rule::Zero:
        result = Formula::falsum();
        break;
    case Rule::Lab:
        result = Formula::atom(lmc.label(p.judgement.left));
        break;
    case Rule::Symm:
        // Complement of the swapped formula, cut down to [0, bound].
        result = Formula::minus(Formula::negation(formula_of_proof(lmc, *p.child, memo)),
                                Rational(1) - p.judgement.bound);
        break;
    case Rule::Weak:
        result = Formula::minus(formula_of_proof(lmc, *p.child, memo),
                                p.child->judgement.bound - p.judgement.bound);
        break;
    case Rule::Exp: {
        // Max-min normal form over the support: one disjunct per state
        // u, conjoining (phi_uv + h(v)) for u's obligations with the
        // anchor constant (false + h(u)); equal-value pairs are covered
        // by the anchor alone.
        std::vector<FormulaPtr> disjuncts;
        for (const auto& [u, hu] : p.h) {
            std::vector<FormulaPtr> conjuncts;
            for (const auto& [pair, sub] : p.obligations) {
                if (pair.first != u) {
                    continue;
                }
                conjuncts.push_back(Formula::plus(formula_of_proof(lmc, *sub, memo),
                                                  p.h.at(pair.second)));
            }
            conjuncts.push_back(Formula::plus(Formula::falsum(), hu));
            FormulaPtr inner = conjuncts.back();
            for (std::size_t i = conjuncts.size() - 1; i-- > 0;) {
                inner = Formula::conjunction(conjuncts[i], inner);
            }
            disjuncts.push_back(std::move(inner));
        }
        FormulaPtr body = disjuncts.back();
        for (std::size_t i = disjuncts.size() - 1; i-- > 0;) {
            body = Formula::disjunction(disjuncts[i], body);
        }
        const Rational at_left = expected_value(lmc.step(p.judgement.left), p.h);
        const Rational at_right = expected_value(lmc.step(p.judgement.right), p.h);
        result = Formula::minus(Formula::next(std::move(body)), at_right);
        // The rule only demands gap >= bound; trim strict slack so the
        // interpretation at the left state is exactly the bound.
        const Rational slack = (at_left - at_right) - p.judgement.bound;
        if (slack > 0) {
            result = Formula::minus(std::move(result), slack);
        }
        break;
    }
    }
    memo.emplace(&p, result);
    return result;
}

} // namespace

FormulaPtr proof_to_formula(const Lmc& lmc, const ProofPtr& proof) {
    const ValidityReport report = check_proof(lmc, *proof);
    if (!report.valid) {
        throw InvalidProofError(report.to_string());
    }
    std::map<const ProofTree*, FormulaPtr> memo;
    return formula_of_proof(lmc, *proof, memo);
}

FormulaPtr proof_to_formula(const Lmc& lmc, const ProofDag& dag) {
    return proof_to_formula(lmc, expand_dag(dag));
}

namespace {

class FormulaParser {
  public:
    explicit FormulaParser(std::string_view text) : text_(text) {}

    FormulaPtr run() {
        FormulaPtr f = parse_or();
        skip_ws();
        if (pos_ != text_.size()) {
            fail("unexpected trailing input");
        }
        return f;
    }

  private:
    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(message + " at offset " + std::to_string(pos_));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    std::string lex_identifier() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected an identifier");
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    Rational lex_constant() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/')) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected a rational constant");
        }
        Rational q;
        try {
            q = parse_rational(text_.substr(start, pos_ - start));
        } catch (const ParseError&) {
            pos_ = start;
            fail("malformed rational constant");
        }
        if (!in_unit_interval(q)) {
            pos_ = start;
            fail("constant out of [0,1]");
        }
        return q;
    }

    FormulaPtr parse_or() {
        FormulaPtr f = parse_and();
        while (eat('|')) {
            f = Formula::disjunction(std::move(f), parse_and());
        }
        return f;
    }

    FormulaPtr parse_and() {
        FormulaPtr f = parse_shift();
        while (eat('&')) {
            f = Formula::conjunction(std::move(f), parse_shift());
        }
        return f;
    }

    FormulaPtr parse_shift() {
        FormulaPtr f = parse_unary();
        for (;;) {
            if (eat('-')) {
                f = Formula::minus(std::move(f), lex_constant());
            } else if (eat('+')) {
                f = Formula::plus(std::move(f), lex_constant());
            } else {
                return f;
            }
        }
    }

    FormulaPtr parse_unary() {
        const char c = peek();
        if (c == '!') {
            ++pos_;
            return Formula::negation(parse_unary());
        }
        if (c == '(') {
            ++pos_;
            FormulaPtr f = parse_or();
            if (!eat(')')) {
                fail("expected ')'");
            }
            return f;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::string id = lex_identifier();
            if (id == "O") {
                return Formula::next(parse_unary());
            }
            if (id == "false") {
                return Formula::falsum();
            }
            return Formula::atom(Label{id});
        }
        fail("expected a formula");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

int precedence(FormulaKind kind) {
    switch (kind) {
    case FormulaKind::Atom:
    case FormulaKind::False:
        return 4;
    case FormulaKind::Next:
    case FormulaKind::Not:
        return 3;
    case FormulaKind::Minus:
    case FormulaKind::Plus:
        return 2;
    case FormulaKind::And:
        return 1;
    case FormulaKind::Or:
        return 0;
    }
    return 0;
}

void render_compact(const Formula& f, int min_prec, std::string& out) {
    const int prec = precedence(f.kind());
    const bool parens = prec < min_prec;
    if (parens) {
        out += "(";
    }
    switch (f.kind()) {
    case FormulaKind::Atom:
        out += f.atom().symbol;
        break;
    case FormulaKind::False:
        out += "false";
        break;
    case FormulaKind::Next:
        out += "O ";
        render_compact(*f.sub(), 3, out);
        break;
    case FormulaKind::Not:
        out += "!";
        render_compact(*f.sub(), 3, out);
        break;
    case FormulaKind::Minus:
    case FormulaKind::Plus:
        render_compact(*f.sub(), 2, out);
        out += f.kind() == FormulaKind::Minus ? " - " : " + ";
        out += to_string(f.constant());
        break;
    case FormulaKind::And:
        render_compact(*f.left(), 1, out);
        out += " & ";
        render_compact(*f.right(), 2, out);
        break;
    case FormulaKind::Or:
        render_compact(*f.left(), 0, out);
        out += " | ";
        render_compact(*f.right(), 1, out);
        break;
    }
    if (parens) {
        out += ")";
    }
}

void render_full(const Formula& f, std::string& out) {
    switch (f.kind()) {
    case FormulaKind::Atom:
        out += f.atom().symbol;
        break;
    case FormulaKind::False:
        out += "false";
        break;
    case FormulaKind::Next:
        out += "O ";
        render_full(*f.sub(), out);
        break;
    case FormulaKind::Not:
        out += "!";
        render_full(*f.sub(), out);
        break;
    case FormulaKind::Minus:
    case FormulaKind::Plus:
        out += "(";
        render_full(*f.sub(), out);
        out += f.kind() == FormulaKind::Minus ? " - " : " + ";
        out += to_string(f.constant());
        out += ")";
        break;
    case FormulaKind::And:
    case FormulaKind::Or:
        out += "(";
        render_full(*f.left(), out);
        out += f.kind() == FormulaKind::And ? " & " : " | ";
        render_full(*f.right(), out);
        out += ")";
        break;
    }
}

} // namespace

FormulaPtr parse_formula(std::string_view text) {
    return FormulaParser(text).run();
}

std::string render_formula(const Formula& f, bool compact) {
    std::string out;
    if (compact) {
        render_compact(f, 0, out);
    } else {
        render_full(f, out);
    }
    return out;
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json formula_json(const Formula& f) {
    ordered_json j;
    switch (f.kind()) {
    case FormulaKind::Atom:
        j["op"] = "atom";
        j["label"] = f.atom().symbol;
        break;
    case FormulaKind::False:
        j["op"] = "false";
        break;
    case FormulaKind::Next:
        j["op"] = "next";
        j["sub"] = formula_json(*f.sub());
        break;
    case FormulaKind::Not:
        j["op"] = "not";
        j["sub"] = formula_json(*f.sub());
        break;
    case FormulaKind::Minus:
    case FormulaKind::Plus:
        j["op"] = f.kind() == FormulaKind::Minus ? "minus" : "plus";
        j["sub"] = formula_json(*f.sub());
        j["q"] = to_string(f.constant());
        break;
    case FormulaKind::Or:
    case FormulaKind::And:
        j["op"] = f.kind() == FormulaKind::Or ? "or" : "and";
        j["left"] = formula_json(*f.left());
        j["right"] = formula_json(*f.right());
        break;
    }
    return j;
}

FormulaPtr formula_of_json(const ordered_json& j) {
    const std::string op = j.at("op").get<std::string>();
    if (op == "atom") {
        return Formula::atom(Label{j.at("label").get<std::string>()});
    }
    if (op == "false") {
        return Formula::falsum();
    }
    if (op == "next") {
        return Formula::next(formula_of_json(j.at("sub")));
    }
    if (op == "not") {
        return Formula::negation(formula_of_json(j.at("sub")));
    }
    if (op == "minus" || op == "plus") {
        Rational q = parse_rational(j.at("q").get<std::string>());
        if (!in_unit_interval(q)) {
            throw ValidationError("constant " + to_string(q) + " outside [0,1]");
        }
        FormulaPtr sub = formula_of_json(j.at("sub"));
        return op == "minus" ? Formula::minus(std::move(sub), std::move(q))
                             : Formula::plus(std::move(sub), std::move(q));
    }
    if (op == "or" || op == "and") {
        FormulaPtr left = formula_of_json(j.at("left"));
        FormulaPtr right = formula_of_json(j.at("right"));
        return op == "or" ? Formula::disjunction(std::move(left), std::move(right))
                          : Formula::conjunction(std::move(left), std::move(right));
    }
    throw ParseError("unknown formula op '" + op + "'");
}

} // namespace

std::string formula_to_json(const Formula& f) {
    return formula_json(f).dump() + "\n";
}

FormulaPtr formula_from_json(std::string_view text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        return formula_of_json(doc);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed formula document: ") + e.what());
    }
}

} // namespace bdproof
