// Copyright (c) bdproof contributors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: load a chain, compute distance approximants,
// synthesize and check certificates, translate between certificates and
// distinguishing formulas, evaluate formulas.
//
// Exit codes: 0 success, 1 semantic rejection (invalid certificate),
// 2 malformed input, 3 unknown state or generator.
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bdproof/distance.hpp"
#include "bdproof/lmc.hpp"
#include "bdproof/logic.hpp"
#include "bdproof/proof.hpp"

namespace {

using namespace bdproof;
using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot open '" + path + "'");
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_output(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write '" + out_path + "'");
    }
    out << payload;
}

struct ChainOptions {
    std::string lmc_path;
    std::string generator;
    std::vector<std::string> params;

    std::shared_ptr<const Lmc> load() const {
        if (!lmc_path.empty()) {
            return load_lmc(read_file(lmc_path));
        }
        if (!generator.empty()) {
            std::map<std::string, std::string> kv;
            for (const auto& p : params) {
                const auto eq = p.find('=');
                if (eq == std::string::npos) {
                    throw ValidationError("--param expects k=v, got '" + p + "'");
                }
                kv.emplace(p.substr(0, eq), p.substr(eq + 1));
            }
            return builtin_lmc(generator, kv);
        }
        throw ValidationError("one of --lmc or --builtin is required");
    }
};

void add_chain_options(CLI::App* cmd, ChainOptions& chain) {
    auto* lmc = cmd->add_option("--lmc", chain.lmc_path, "chain document (JSON)");
    auto* gen = cmd->add_option("--builtin", chain.generator, "builtin chain generator");
    cmd->add_option("--param", chain.params, "generator parameter k=v (repeatable)");
    lmc->excludes(gen);
    gen->excludes(lmc);
}

StateId parse_state(const Lmc& lmc, const std::string& token) {
    if (token.empty()) {
        throw ValidationError("empty state id");
    }
    const auto states = lmc.states();
    if (!states) {
        // Lazily generated chains address their states as naturals.
        for (const char c : token) {
            if (!std::isdigit(static_cast<unsigned char>(c))) {
                throw UnknownStateError("unknown state '" + token + "'");
            }
        }
        return StateId::of(std::stoull(token));
    }
    const StateId id = StateId::of(token);
    if (!std::binary_search(states->begin(), states->end(), id)) {
        throw UnknownStateError("unknown state '" + token + "'");
    }
    return id;
}

std::pair<StateId, StateId> parse_pair(const Lmc& lmc, const std::string& pair) {
    const auto comma = pair.find(',');
    if (comma == std::string::npos) {
        throw ValidationError("--pair expects two comma-separated states");
    }
    return {parse_state(lmc, pair.substr(0, comma)), parse_state(lmc, pair.substr(comma + 1))};
}

std::string judgement_text(const Judgement& j) {
    return j.left.to_string() + " ▷_{" + to_string(j.bound) + "} " + j.right.to_string();
}

struct DistCmd {
    ChainOptions chain;
    std::string pair;
    std::optional<unsigned> depth;
    std::string delta;
    unsigned max_depth = 32;
    bool json = false;
    std::string out;

    void run() const {
        const auto lmc = chain.load();
        const auto [x, y] = parse_pair(*lmc, pair);
        Rational value;
        unsigned used = 0;
        if (depth) {
            value = distance(*lmc, x, y, *depth);
            used = *depth;
        } else {
            if (!lmc->states()) {
                throw ValidationError("--delta needs a finite chain; use --depth");
            }
            const Rational d = parse_rational(delta);
            std::tie(value, used) = distance_until(*lmc, x, y, d, max_depth);
        }
        std::string payload;
        if (json) {
            ordered_json doc;
            doc["value"] = to_string(value);
            doc["depth"] = used;
            payload = doc.dump() + "\n";
        } else {
            payload = to_string(value) + "\n";
            if (!depth) {
                payload += "depth " + std::to_string(used) + "\n";
            }
        }
        write_output(out, payload);
    }
};

struct ProveCmd {
    ChainOptions chain;
    std::string pair;
    unsigned depth = 0;
    bool pretty = false;
    std::string out;

    void run() const {
        const auto lmc = chain.load();
        const auto [x, y] = parse_pair(*lmc, pair);
        const ProofDag dag = synthesize_proof(*lmc, x, y, depth);
        if (pretty && out.empty()) {
            std::cout << render_proof_text(dag);
            return;
        }
        write_output(out, proof_to_json(dag));
        if (pretty) {
            std::cout << render_proof_text(dag);
        }
    }
};

struct CheckCmd {
    ChainOptions chain;
    std::string proof_path;
    bool json = false;
    int* exit_code = nullptr;

    void run() const {
        const auto lmc = chain.load();
        const ProofDag dag = proof_from_json(read_file(proof_path));
        const ValidityReport report = check_proof(*lmc, dag);
        if (json) {
            ordered_json doc;
            doc["valid"] = report.valid;
            const auto& j = dag.nodes[dag.root].judgement;
            doc["left"] = j.left.to_string();
            doc["right"] = j.right.to_string();
            doc["bound"] = to_string(j.bound);
            if (!report.valid) {
                doc["node"] = report.node;
                doc["path"] = report.path;
                doc["rule"] = std::string(rule_name(report.rule));
                doc["reason"] = report.reason;
            }
            std::cout << doc.dump() << "\n";
        } else if (report.valid) {
            std::cout << "VALID: " << judgement_text(dag.nodes[dag.root].judgement) << "\n";
        } else {
            std::cout << report.to_string() << "\n";
        }
        if (!report.valid) {
            *exit_code = 1;
        }
    }
};

struct ExplainCmd {
    ChainOptions chain;
    std::string proof_path;
    std::string pair;
    std::optional<unsigned> depth;
    bool simplify_flag = false;
    bool json = false;
    std::string out;
    int* exit_code = nullptr;

    void run() const {
        const auto lmc = chain.load();
        ProofDag dag;
        if (!proof_path.empty()) {
            dag = proof_from_json(read_file(proof_path));
        } else if (depth) {
            const auto [x, y] = parse_pair(*lmc, pair);
            dag = synthesize_proof(*lmc, x, y, *depth);
        } else {
            throw ValidationError("explain needs a proof file or --depth");
        }
        // Translation of invalid certificates is refused rather than
        // producing unfounded formulas.
        const ValidityReport report = check_proof(*lmc, dag);
        if (!report.valid) {
            std::cout << report.to_string() << "\n";
            *exit_code = 1;
            return;
        }
        FormulaPtr f = proof_to_formula(*lmc, dag);
        if (simplify_flag) {
            f = simplify(f);
        }
        const auto& root = dag.nodes[dag.root].judgement;
        const Rational at_left = interp(*lmc, *f, root.left);
        const Rational at_right = interp(*lmc, *f, root.right);
        std::string payload;
        if (json) {
            ordered_json doc;
            doc["formula"] = render_formula(*f, /*compact=*/true);
            doc["ast"] = ordered_json::parse(formula_to_json(*f));
            ordered_json values;
            values[root.left.to_string()] = to_string(at_left);
            values[root.right.to_string()] = to_string(at_right);
            doc["interp"] = std::move(values);
            payload = doc.dump() + "\n";
        } else {
            payload = render_formula(*f, /*compact=*/true) + "\n";
            payload += "interp(" + root.left.to_string() + ") = " + to_string(at_left) + "\n";
            payload += "interp(" + root.right.to_string() + ") = " + to_string(at_right) + "\n";
        }
        write_output(out, payload);
    }
};

struct ToProofCmd {
    ChainOptions chain;
    std::string pair;
    std::string formula;
    std::string out;

    void run() const {
        const auto lmc = chain.load();
        const auto [x, y] = parse_pair(*lmc, pair);
        const FormulaPtr f = parse_formula(formula);
        const ProofPtr tree = formula_to_proof(*lmc, f, x, y);
        write_output(out, proof_to_json(tree_to_dag(*tree)));
    }
};

struct EvalCmd {
    ChainOptions chain;
    std::string pair;
    std::string formula;
    bool json = false;
    std::string out;

    void run() const {
        const auto lmc = chain.load();
        const auto [x, y] = parse_pair(*lmc, pair);
        const FormulaPtr f = parse_formula(formula);
        const auto values = interp_states(*lmc, *f, {x, y});
        std::string payload;
        if (json) {
            ordered_json doc;
            doc[x.to_string()] = to_string(values.at(x));
            doc[y.to_string()] = to_string(values.at(y));
            payload = doc.dump() + "\n";
        } else {
            payload = x.to_string() + " = " + to_string(values.at(x)) + "\n";
            if (!(y == x)) {
                payload += y.to_string() + " = " + to_string(values.at(y)) + "\n";
            }
        }
        write_output(out, payload);
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"behavioural-distance lower bounds with checkable certificates"};
    app.require_subcommand(1);
    int exit_code = 0;

    auto dist = std::make_shared<DistCmd>();
    auto* dist_cmd = app.add_subcommand("dist", "depth-bounded distance approximant");
    add_chain_options(dist_cmd, dist->chain);
    dist_cmd->add_option("--pair", dist->pair, "state pair A,B")->required();
    auto* dist_depth = dist_cmd->add_option("--depth", dist->depth, "iterate depth");
    auto* dist_delta =
        dist_cmd->add_option("--delta", dist->delta, "stop once one more step gains < delta");
    dist_cmd->add_option("--max-depth", dist->max_depth, "depth cap for --delta (default 32)");
    dist_depth->excludes(dist_delta);
    dist_delta->excludes(dist_depth);
    dist_cmd->add_flag("--json", dist->json, "JSON output");
    dist_cmd->add_option("--out", dist->out, "write output to a file");
    dist_cmd->callback([dist] {
        if (!dist->depth && dist->delta.empty()) {
            throw ValidationError("one of --depth or --delta is required");
        }
        dist->run();
    });

    auto prove = std::make_shared<ProveCmd>();
    auto* prove_cmd = app.add_subcommand("prove", "synthesize a certificate");
    add_chain_options(prove_cmd, prove->chain);
    prove_cmd->add_option("--pair", prove->pair, "state pair A,B")->required();
    prove_cmd->add_option("--depth", prove->depth, "iterate depth")->required();
    prove_cmd->add_flag("--pretty", prove->pretty, "render the certificate as text");
    prove_cmd->add_option("--out", prove->out, "write the proof JSON to a file");
    prove_cmd->callback([prove] { prove->run(); });

    auto check = std::make_shared<CheckCmd>();
    check->exit_code = &exit_code;
    auto* check_cmd = app.add_subcommand("check", "validate a certificate");
    add_chain_options(check_cmd, check->chain);
    check_cmd->add_option("proof", check->proof_path, "proof JSON file")->required();
    check_cmd->add_flag("--json", check->json, "JSON output");
    check_cmd->callback([check] { check->run(); });

    auto explain = std::make_shared<ExplainCmd>();
    explain->exit_code = &exit_code;
    auto* explain_cmd =
        app.add_subcommand("explain", "construct a distinguishing formula from a certificate");
    add_chain_options(explain_cmd, explain->chain);
    explain_cmd->add_option("proof", explain->proof_path, "proof JSON file");
    explain_cmd->add_option("--pair", explain->pair, "state pair A,B (with --depth)");
    explain_cmd->add_option("--depth", explain->depth, "synthesize at this depth instead");
    explain_cmd->add_flag("--simplify", explain->simplify_flag, "simplify the formula");
    explain_cmd->add_flag("--json", explain->json, "JSON output");
    explain_cmd->add_option("--out", explain->out, "write output to a file");
    explain_cmd->callback([explain] { explain->run(); });

    auto to_proof = std::make_shared<ToProofCmd>();
    auto* to_proof_cmd =
        app.add_subcommand("to-proof", "turn a formula's interpretation gap into a certificate");
    add_chain_options(to_proof_cmd, to_proof->chain);
    to_proof_cmd->add_option("--pair", to_proof->pair, "state pair A,B")->required();
    to_proof_cmd->add_option("formula", to_proof->formula, "formula text")->required();
    to_proof_cmd->add_option("--out", to_proof->out, "write the proof JSON to a file");
    to_proof_cmd->callback([to_proof] { to_proof->run(); });

    auto eval = std::make_shared<EvalCmd>();
    auto* eval_cmd = app.add_subcommand("eval", "evaluate a formula at both pair states");
    add_chain_options(eval_cmd, eval->chain);
    eval_cmd->add_option("--pair", eval->pair, "state pair A,B")->required();
    eval_cmd->add_option("formula", eval->formula, "formula text")->required();
    eval_cmd->add_flag("--json", eval->json, "JSON output");
    eval_cmd->add_option("--out", eval->out, "write output to a file");
    eval_cmd->callback([eval] { eval->run(); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e); // --help and friends
        }
        app.exit(e);
        return 2;
    } catch (const UnknownStateError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const UnknownGeneratorError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const InvalidProofError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
