// forklab: compare semantics of disjunctive logic programs from the shell.
//
//   forklab models prog.lp [--semantics sm,fork,ssm] [--alphabet a,b,c] [--json] [--strict]
//   forklab entails left.fk right.fk
//   forklab translate prog.lp --pass pf|t1|t2
//   forklab explain prog.lp [--model a,b]
//   forklab fuzz --iterations 1000 --seed 7 [--checks sm-in-jm,jm-fork] [generator flags]
//
// Exit status: 0 on success, 1 on input errors, 2 when --strict finds a
// violated inclusion or a failing fuzz check.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "forklab/lab.hpp"

using namespace forklab;

namespace {

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

AtomSet with_extra(AtomSet base, const std::string& extra) {
    for (auto& a : split(extra)) base.insert(a);
    return base;
}

void print_models(const std::string& name, const ModelList& ms) {
    std::cout << "  " << name << std::string(name.size() < 11 ? 11 - name.size() : 1, ' ') << to_string(ms) << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"forklab: semantics laboratory for disjunctive logic programs"};
    app.require_subcommand(1);
    bool json = false, strict = false;
    app.add_flag("--json", json, "machine-readable output");
    app.add_flag("--strict", strict, "non-zero exit on violated inclusions or fuzz failures");

    // models
    auto* models = app.add_subcommand("models", "compute and compare semantics");
    std::string models_file, selector, extra_atoms;
    bool witnesses = false;
    models->add_option("file", models_file, "program file, '-' for stdin")->required();
    models->add_option("--semantics", selector, "comma list of semantics (default: all)");
    models->add_option("--alphabet", extra_atoms, "extra atoms, comma separated");
    models->add_flag("--witnesses", witnesses, "include one witness per model where available");

    // entails
    auto* entails = app.add_subcommand("entails", "denotation inclusion between two forks");
    std::string left_file, right_file, entails_atoms;
    entails->add_option("left", left_file)->required();
    entails->add_option("right", right_file)->required();
    entails->add_option("--alphabet", entails_atoms, "extra atoms, comma separated");

    // translate
    auto* translate = app.add_subcommand("translate", "apply a program rewriting");
    std::string translate_file, pass = "pf";
    translate->add_option("file", translate_file)->required();
    translate->add_option("--pass", pass)->check(CLI::IsMember({"pf", "t1", "t2"}));

    // explain
    auto* explain = app.add_subcommand("explain", "DOT explanations of justified models");
    std::string explain_file, model_atoms;
    bool has_model = false;
    explain->add_option("file", explain_file)->required();
    explain->add_option("--model", model_atoms, "restrict to this model, comma separated")
        ->each([&](const std::string&) { has_model = true; });

    // fuzz
    auto* fz = app.add_subcommand("fuzz", "seeded theorem checks on random programs");
    GenConfig cfg;
    std::size_t iterations = 100;
    std::string checks;
    fz->add_option("--iterations", iterations);
    fz->add_option("--checks", checks, "comma list; default sm-in-jm,jm-fork,csm-fork,csm-in-ssm,spm-fixpoint,fork-entailment,ssm-min,ssm-normal,ad-chain");
    fz->add_option("--seed", cfg.seed);
    fz->add_option("--atoms", cfg.atom_count);
    fz->add_option("--rules", cfg.rule_count);
    fz->add_option("--max-head", cfg.max_head);
    fz->add_option("--max-body", cfg.max_body);
    fz->add_option("--p-neg", cfg.p_neg);
    fz->add_option("--p-negneg", cfg.p_negneg);
    fz->add_option("--p-constraint", cfg.p_constraint);
    fz->add_option("--p-dup-head", cfg.p_dup_head);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*models) {
            const Program p = parse_program(slurp(models_file));
            std::vector<Semantics> which;
            if (selector.empty()) which.assign(kAllSemantics.begin(), kAllSemantics.end());
            for (auto& s : split(selector)) which.push_back(parse_semantics(s));
            auto rep = compare(p, Alphabet(with_extra(alphabet(p), extra_atoms)), which, witnesses);
            if (json) {
                std::cout << to_json(rep).dump(2) << "\n";
            } else {
                std::cout << "alphabet " << to_string(AtomSet(rep.alphabet.begin(), rep.alphabet.end())) << "\n";
                for (const auto& [s, ms] : rep.models) print_models(semantics_name(s), ms);
                for (const auto& [s, ws] : rep.witnesses)
                    for (const auto& w : ws)
                        std::cout << "  " << semantics_name(s) << " " << to_string(w.model) << ": " << w.witness << "\n";
                for (const auto& v : rep.violations())
                    std::cout << "violated: " << semantics_name(v.lhs) << " within " << semantics_name(v.rhs) << "\n";
            }
            return strict && !rep.violations().empty() ? 2 : 0;
        }
        if (*entails) {
            const Fork f = parse_fork(slurp(left_file));
            const Fork g = parse_fork(slurp(right_file));
            AtomSet atoms = alphabet(f);
            auto ag = alphabet(g);
            atoms.insert(ag.begin(), ag.end());
            auto r = strongly_entails(f, g, Alphabet(with_extra(atoms, entails_atoms)));
            if (json) {
                nlohmann::json j{{"entails", r.holds}};
                if (!r.holds)
                    j["witness"] = {{"T", std::vector<Atom>(r.witness->begin(), r.witness->end())},
                                    {"support", r.witness_support->to_string()}};
                std::cout << j.dump(2) << "\n";
            } else if (r.holds) {
                std::cout << "entails\n";
            } else {
                std::cout << "does not entail: T = " << to_string(*r.witness) << ", support "
                          << r.witness_support->to_string() << " is missing on the right\n";
            }
            return 0;
        }
        if (*translate) {
            const Program p = parse_program(slurp(translate_file));
            Program q = pass == "pf" ? pf_translate(p) : pass == "t1" ? t1_eliminate_double_negation(p) : t2_disambiguate_heads(p);
            std::cout << render(q);
            return 0;
        }
        if (*explain) {
            const Program p = parse_program(slurp(explain_file));
            ModelList targets;
            if (has_model) {
                auto v = split(model_atoms);
                targets.push_back(AtomSet(v.begin(), v.end()));
            } else {
                targets = justified_models(p);
            }
            std::size_t n = 0;
            for (const auto& m : targets)
                for (const auto& e : explanations_of(p, m)) std::cout << e.to_dot("explanation" + std::to_string(++n));
            if (n == 0) std::cerr << "no explanation found\n";
            return 0;
        }
        if (*fz) {
            std::vector<Check> which = default_checks();
            if (!checks.empty()) {
                which.clear();
                for (auto& c : split(checks)) which.push_back(parse_check(c));
            }
            auto sum = fuzz(cfg, iterations, which);
            if (json) {
                std::cout << to_json(sum).dump(2) << "\n";
            } else {
                for (const auto& [c, n] : sum.counts)
                    std::cout << check_name(c) << ": " << n.pass << " pass, " << n.fail << " fail, " << n.skip << " skip\n";
                for (const auto& f : sum.failures)
                    std::cout << "\n" << check_name(f.check) << " failed at seed " << f.seed << ": " << f.detail
                              << "\nshrunk program:\n" << render(f.shrunk);
            }
            return strict && sum.violations() ? 2 : 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
