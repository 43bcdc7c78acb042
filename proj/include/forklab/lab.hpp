#pragma once

// Side-by-side computation of all semantics, the inclusion diagram between
// them, and the seeded fuzzing harness with rule-removal shrinking.

#include <array>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "forklab/denotation.hpp"
#include "forklab/di.hpp"
#include "forklab/ht.hpp"
#include "forklab/justified.hpp"
#include "forklab/parser.hpp"
#include "forklab/random.hpp"
#include "forklab/ssm.hpp"

namespace forklab {

enum class Semantics { Classical, SM, Fork, JM, SPM, AD, CSM, CSMClosed, DI, SSM };

inline constexpr std::array<Semantics, 10> kAllSemantics = {
    Semantics::Classical, Semantics::SM,  Semantics::Fork,      Semantics::JM, Semantics::SPM,
    Semantics::AD,        Semantics::CSM, Semantics::CSMClosed, Semantics::DI, Semantics::SSM};

inline std::string semantics_name(Semantics s) {
    switch (s) {
    case Semantics::Classical: return "classical";
    case Semantics::SM: return "sm";
    case Semantics::Fork: return "fork";
    case Semantics::JM: return "jm";
    case Semantics::SPM: return "spm";
    case Semantics::AD: return "ad-chain";
    case Semantics::CSM: return "csm";
    case Semantics::CSMClosed: return "csm-closed";
    case Semantics::DI: return "di";
    case Semantics::SSM: return "ssm";
    }
    return "?";
}

inline Semantics parse_semantics(const std::string& name) {
    for (auto s : kAllSemantics)
        if (semantics_name(s) == name) return s;
    throw InvalidArgument("unknown semantics '" + name + "'");
}

struct Inclusion {
    Semantics lhs;
    Semantics rhs;
    bool holds = true;
};

/// Edges of the inclusion diagram. Equalities appear as two edges.
inline std::vector<std::pair<Semantics, Semantics>> diagram_edges() {
    using S = Semantics;
    return {{S::SM, S::Fork},        {S::SM, S::JM},         {S::SM, S::CSM},  {S::Fork, S::JM},
            {S::JM, S::Fork},        {S::JM, S::CSM},        {S::CSM, S::JM},  {S::Fork, S::CSM},
            {S::CSM, S::Fork},       {S::Fork, S::SSM},      {S::JM, S::SSM},  {S::CSM, S::SSM},
            {S::SSM, S::Classical},  {S::Fork, S::SPM},      {S::JM, S::SPM},  {S::CSM, S::SPM},
            {S::SPM, S::Classical},  {S::SM, S::AD},         {S::AD, S::SPM},  {S::DI, S::CSMClosed},
            {S::CSMClosed, S::CSM},  {S::SM, S::Classical}};
}

struct ModelWitness {
    AtomSet model;
    std::string witness;
};

struct ComparisonReport {
    std::vector<Atom> alphabet;
    std::map<Semantics, ModelList> models;
    std::vector<Inclusion> inclusions;
    std::map<Semantics, std::vector<ModelWitness>> witnesses;
    std::map<Semantics, double> timing_ms;

    std::vector<Inclusion> violations() const {
        std::vector<Inclusion> out;
        for (const auto& i : inclusions)
            if (!i.holds) out.push_back(i);
        return out;
    }
};

namespace detail {

inline ModelList compute(Semantics s, const Program& p, const Alphabet& alpha,
                         std::vector<ModelWitness>* wit) {
    ModelList out;
    switch (s) {
    case Semantics::Classical: out = classical_models(p, alpha); break;
    case Semantics::SM: out = stable_models(p, alpha); break;
    case Semantics::Fork: out = fork_stable_models(forked(p), alpha); break;
    case Semantics::JM:
        out = justified_models(p, alpha);
        if (wit)
            for (const auto& m : out) wit->push_back({m, explanations_of(p, m).front().to_string()});
        break;
    case Semantics::SPM:
        out = supported_models_graph(p, alpha);
        if (wit)
            for (const auto& m : out) wit->push_back({m, support_graphs_of(p, m).front().to_string()});
        break;
    case Semantics::AD: out = ad_supported(p, alpha); break;
    case Semantics::CSM:
    case Semantics::CSMClosed:
        for (auto& c : candidate_stable_models(p, alpha, s == Semantics::CSMClosed)) {
            if (wit) wit->push_back({c.model, c.witness.to_string()});
            out.push_back(std::move(c.model));
        }
        break;
    case Semantics::DI: out = di_stable_models(p, alpha); break;
    case Semantics::SSM:
        for (auto& w : strongly_supported_witnesses(p, alpha)) {
            if (wit) wit->push_back({w.model, w.chain.to_string()});
            out.push_back(std::move(w.model));
        }
        break;
    }
    canonicalize(out);
    if (wit)
        std::sort(wit->begin(), wit->end(),
                  [](const ModelWitness& a, const ModelWitness& b) { return model_less(a.model, b.model); });
    return out;
}

} // namespace detail

inline ModelList models_under(Semantics s, const Program& p, const Alphabet& alpha) {
    return detail::compute(s, p, alpha, nullptr);
}

/// Computes the selected semantics over alpha (which must cover the program)
/// and checks every diagram edge whose endpoints were both computed.
inline ComparisonReport compare(const Program& p, const Alphabet& alpha, const std::vector<Semantics>& which,
                                bool with_witnesses = false) {
    if (!alpha.contains(alphabet(p))) throw InvalidArgument("alphabet misses program atoms");
    ComparisonReport rep;
    rep.alphabet = alpha.atoms();
    for (auto s : which) {
        if (rep.models.count(s)) continue;
        auto start = std::chrono::steady_clock::now();
        std::vector<ModelWitness> wit;
        rep.models[s] = detail::compute(s, p, alpha, with_witnesses ? &wit : nullptr);
        rep.timing_ms[s] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (with_witnesses && !wit.empty()) rep.witnesses[s] = std::move(wit);
    }
    for (auto [l, r] : diagram_edges())
        if (rep.models.count(l) && rep.models.count(r))
            rep.inclusions.push_back({l, r, model_subset(rep.models[l], rep.models[r])});
    return rep;
}

inline ComparisonReport compare(const Program& p) {
    return compare(p, Alphabet(alphabet(p)), {kAllSemantics.begin(), kAllSemantics.end()});
}

inline nlohmann::json to_json(const ModelList& ms) {
    auto out = nlohmann::json::array();
    for (const auto& m : ms) out.push_back(std::vector<Atom>(m.begin(), m.end()));
    return out;
}

inline ModelList models_from_json(const nlohmann::json& j) {
    ModelList out;
    for (const auto& m : j) {
        auto v = m.get<std::vector<Atom>>();
        out.emplace_back(v.begin(), v.end());
    }
    return out;
}

inline nlohmann::json to_json(const ComparisonReport& r, bool with_timing = true) {
    nlohmann::json j;
    j["alphabet"] = r.alphabet;
    j["semantics"] = nlohmann::json::object();
    for (const auto& [s, ms] : r.models) j["semantics"][semantics_name(s)] = to_json(ms);
    j["inclusions"] = nlohmann::json::array();
    for (const auto& i : r.inclusions)
        j["inclusions"].push_back({{"lhs", semantics_name(i.lhs)}, {"rhs", semantics_name(i.rhs)}, {"holds", i.holds}});
    j["witnesses"] = nlohmann::json::object();
    for (const auto& [s, ws] : r.witnesses) {
        auto arr = nlohmann::json::array();
        for (const auto& w : ws)
            arr.push_back({{"model", std::vector<Atom>(w.model.begin(), w.model.end())}, {"witness", w.witness}});
        j["witnesses"][semantics_name(s)] = arr;
    }
    if (with_timing) {
        j["timing_ms"] = nlohmann::json::object();
        for (const auto& [s, t] : r.timing_ms) j["timing_ms"][semantics_name(s)] = t;
    }
    return j;
}

inline ComparisonReport report_from_json(const nlohmann::json& j) {
    ComparisonReport r;
    r.alphabet = j.at("alphabet").get<std::vector<Atom>>();
    for (const auto& [name, ms] : j.at("semantics").items()) r.models[parse_semantics(name)] = models_from_json(ms);
    for (const auto& i : j.at("inclusions"))
        r.inclusions.push_back({parse_semantics(i.at("lhs")), parse_semantics(i.at("rhs")), i.at("holds").get<bool>()});
    if (j.contains("witnesses"))
        for (const auto& [name, ws] : j.at("witnesses").items())
            for (const auto& w : ws) {
                auto v = w.at("model").get<std::vector<Atom>>();
                r.witnesses[parse_semantics(name)].push_back({AtomSet(v.begin(), v.end()), w.at("witness")});
            }
    if (j.contains("timing_ms"))
        for (const auto& [name, t] : j.at("timing_ms").items()) r.timing_ms[parse_semantics(name)] = t.get<double>();
    return r;
}

// ---- fuzzing ----------------------------------------------------------------

enum class Check {
    PfProjection,
    SmInJm,
    JmFork,
    CsmFork,
    CsmInSsm,
    SpmFixpoint,
    ForkEntailment,
    SsmMin,
    SsmNormal,
    AdChain,
    T1,
    T2,
    Normal
};

inline constexpr std::array<Check, 13> kAllChecks = {
    Check::PfProjection, Check::SmInJm,    Check::JmFork,  Check::CsmFork, Check::CsmInSsm,
    Check::SpmFixpoint,  Check::ForkEntailment, Check::SsmMin, Check::SsmNormal, Check::AdChain,
    Check::T1,           Check::T2,        Check::Normal};

inline const std::vector<Check>& default_checks() {
    static const std::vector<Check> v = {Check::SmInJm,      Check::JmFork,         Check::CsmFork,
                                         Check::CsmInSsm,    Check::SpmFixpoint,    Check::ForkEntailment,
                                         Check::SsmMin,      Check::SsmNormal,      Check::AdChain};
    return v;
}

inline std::string check_name(Check c) {
    switch (c) {
    case Check::PfProjection: return "pf-projection";
    case Check::SmInJm: return "sm-in-jm";
    case Check::JmFork: return "jm-fork";
    case Check::CsmFork: return "csm-fork";
    case Check::CsmInSsm: return "csm-in-ssm";
    case Check::SpmFixpoint: return "spm-fixpoint";
    case Check::ForkEntailment: return "fork-entailment";
    case Check::SsmMin: return "ssm-min";
    case Check::SsmNormal: return "ssm-normal";
    case Check::AdChain: return "ad-chain";
    case Check::T1: return "t1";
    case Check::T2: return "t2";
    case Check::Normal: return "normal";
    }
    return "?";
}

inline Check parse_check(const std::string& name) {
    for (auto c : kAllChecks)
        if (check_name(c) == name) return c;
    throw InvalidArgument("unknown check '" + name + "'");
}

struct CheckOutcome {
    enum Status { Pass, Fail, Skip } status = Pass;
    std::string detail;
};

/// Contexts used for the projection check: the empty context, the atomic
/// shapes `p.`, `:- p.`, `:- not p.` alone and in pairs, and a fixed batch of
/// small random programs over the same atoms.
inline std::vector<Program> projection_contexts(const AtomSet& atoms, std::size_t random_count = 50) {
    std::vector<Program> out{Program()};
    if (atoms.empty()) return out;
    std::vector<Rule> shapes;
    for (const auto& a : atoms) {
        shapes.push_back(Rule::make({a}));
        shapes.push_back(Rule::make({}, {a}));
        shapes.push_back(Rule::make({}, {}, {a}));
    }
    for (const auto& s : shapes) out.push_back(Program(std::vector<Rule>{s}));
    for (std::size_t i = 0; i < shapes.size(); ++i)
        for (std::size_t j = i + 1; j < shapes.size(); ++j) out.push_back(Program(std::vector<Rule>{shapes[i], shapes[j]}));
    GenConfig cfg;
    cfg.rule_count = 2;
    cfg.max_head = 2;
    cfg.max_body = 2;
    const std::vector<Atom> pool(atoms.begin(), atoms.end());
    for (std::size_t k = 0; k < random_count; ++k) {
        cfg.seed = 0x5eed0000 + k;
        out.push_back(gen_program(cfg, pool));
    }
    return out;
}

namespace detail {

inline CheckOutcome expect_equal(const char* what, ModelList a, ModelList b) {
    canonicalize(a);
    canonicalize(b);
    if (a == b) return {};
    return {CheckOutcome::Fail, std::string(what) + ": " + to_string(a) + " vs " + to_string(b)};
}

inline CheckOutcome expect_subset(const char* what, const ModelList& a, const ModelList& b) {
    if (model_subset(a, b)) return {};
    return {CheckOutcome::Fail, std::string(what) + ": " + to_string(a) + " not inside " + to_string(b)};
}

template <class... Fs>
CheckOutcome all_of(Fs&&... steps) {
    CheckOutcome r;
    ((r.status == CheckOutcome::Pass ? (void)(r = steps()) : (void)0), ...);
    return r;
}

inline bool is_disjunctive(const Program& p) {
    return std::any_of(p.rules().begin(), p.rules().end(), [](const Rule& r) { return r.head.size() > 1; });
}

} // namespace detail

inline CheckOutcome run_check(Check c, const Program& p) {
    using detail::expect_equal;
    using detail::expect_subset;
    const Alphabet alpha(alphabet(p));
    switch (c) {
    case Check::PfProjection: {
        const Program pf = pf_translate(p);
        if (alphabet(pf).size() > kMaxEnumerationAtoms) return {CheckOutcome::Skip, "pf alphabet too large"};
        const Fork fp = forked(p);
        for (const auto& ctx : projection_contexts(alpha.as_set())) {
            const Program joined = pf.with(ctx);
            auto lhs = project(stable_models(joined, Alphabet(alphabet(joined))), alphabet(p));
            auto rhs = fork_stable_models(ctx.size() ? Fork::conj(fp, Fork::from(program_formula(ctx))) : fp, alpha);
            auto r = expect_equal("projected SM(pf) vs fork SM", lhs, rhs);
            if (r.status == CheckOutcome::Fail) {
                r.detail += " under context {" + render(ctx) + "}";
                return r;
            }
        }
        return {};
    }
    case Check::SmInJm: {
        auto sm = stable_models(p, alpha);
        auto jm = justified_models(p, alpha);
        if (!detail::is_disjunctive(p)) return expect_equal("SM = JM", sm, jm);
        return expect_subset("SM within JM", sm, jm);
    }
    case Check::JmFork: return expect_equal("JM = fork SM", justified_models(p, alpha), fork_stable_models(forked(p), alpha));
    case Check::CsmFork: return expect_equal("CSM = fork SM", csm(p, alpha), fork_stable_models(forked(p), alpha));
    case Check::CsmInSsm: return expect_subset("CSM within SSM", csm(p, alpha), strongly_supported_models(p, alpha));
    case Check::SpmFixpoint: return expect_equal("graph SPM = fixpoint SPM", supported_models_graph(p, alpha), spm_via_fixpoint(p, alpha));
    case Check::ForkEntailment: {
        auto e = strongly_entails(Fork::from(program_formula(p)), forked(p), alpha);
        if (!e.holds) return {CheckOutcome::Fail, "program does not strongly entail its fork at T = " + to_string(*e.witness)};
        return expect_subset("SM within fork SM", stable_models(p, alpha), fork_stable_models(forked(p), alpha));
    }
    case Check::SsmMin: {
        auto ssm = strongly_supported_models(p, alpha);
        return detail::all_of([&] { return expect_subset("SSM within M", ssm, classical_models(p, alpha)); },
                              [&] { return expect_equal("minimal SSM = SM", minimal_elements(ssm), stable_models(p, alpha)); });
    }
    case Check::SsmNormal:
        if (detail::is_disjunctive(p)) return {CheckOutcome::Skip, "disjunctive program"};
        return expect_equal("SSM = SM", strongly_supported_models(p, alpha), stable_models(p, alpha));
    case Check::AdChain: {
        auto ad = ad_supported(p, alpha);
        return detail::all_of([&] { return expect_subset("SM within AD", stable_models(p, alpha), ad); },
                              [&] { return expect_subset("AD within SPM", ad, supported_models_graph(p, alpha)); });
    }
    case Check::T1: {
        const Program q = t1_eliminate_double_negation(p);
        return expect_equal("SM(t1 P) projected = SM(P)", project(stable_models(q), alphabet(p)), stable_models(p, alpha));
    }
    case Check::T2: {
        const Program q = t2_disambiguate_heads(p);
        const Alphabet qa(alphabet(q));
        auto open = csm(p, alpha);
        return detail::all_of(
            [&] { return expect_equal("open CSM(t2 P) projected = open CSM(P)", project(csm(q, qa), alphabet(p)), open); },
            [&] { return expect_equal("closed CSM(t2 P) projected = open CSM(P)", project(csm(q, qa, true), alphabet(p)), open); });
    }
    case Check::Normal: {
        if (detail::is_disjunctive(p)) return {CheckOutcome::Skip, "disjunctive program"};
        auto sm = stable_models(p, alpha);
        return detail::all_of([&] { return expect_equal("SM = JM", sm, justified_models(p, alpha)); },
                              [&] { return expect_equal("SM = SSM", sm, strongly_supported_models(p, alpha)); });
    }
    }
    return {};
}

/// Greedy rule removal while the check keeps failing.
inline Program shrink(const Program& p, Check c) {
    std::vector<Rule> rules = p.without_labels().rules();
    bool progress = true;
    while (progress && rules.size() > 1) {
        progress = false;
        for (std::size_t i = 0; i < rules.size(); ++i) {
            auto fewer = rules;
            fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(i));
            if (run_check(c, Program(fewer)).status == CheckOutcome::Fail) {
                rules = std::move(fewer);
                progress = true;
                break;
            }
        }
    }
    return Program(std::move(rules));
}

struct FuzzFailure {
    Check check;
    std::uint64_t seed;
    Program program;
    Program shrunk;
    std::string detail;
};

struct CheckCounts {
    std::size_t pass = 0, fail = 0, skip = 0;
};

struct FuzzSummary {
    std::size_t iterations = 0;
    std::map<Check, CheckCounts> counts;
    std::vector<FuzzFailure> failures;

    std::size_t violations() const { return failures.size(); }
};

/// Program k is generated from seed cfg.seed + k, so any failure can be
/// replayed from its seed alone.
inline FuzzSummary fuzz(const GenConfig& cfg, std::size_t iterations, const std::vector<Check>& checks) {
    cfg.validate();
    FuzzSummary sum;
    sum.iterations = iterations;
    for (auto c : checks) sum.counts[c];
    for (std::size_t k = 0; k < iterations; ++k) {
        GenConfig local = cfg;
        local.seed = cfg.seed + k;
        const Program p = gen_program(local);
        for (auto c : checks) {
            auto r = run_check(c, p);
            auto& n = sum.counts[c];
            if (r.status == CheckOutcome::Pass) ++n.pass;
            else if (r.status == CheckOutcome::Skip) ++n.skip;
            else {
                ++n.fail;
                sum.failures.push_back({c, local.seed, p, shrink(p, c), r.detail});
            }
        }
    }
    return sum;
}

inline nlohmann::json to_json(const FuzzSummary& s) {
    nlohmann::json j;
    j["iterations"] = s.iterations;
    j["checks"] = nlohmann::json::object();
    for (const auto& [c, n] : s.counts) j["checks"][check_name(c)] = {{"pass", n.pass}, {"fail", n.fail}, {"skip", n.skip}};
    j["failures"] = nlohmann::json::array();
    for (const auto& f : s.failures)
        j["failures"].push_back({{"check", check_name(f.check)},
                                 {"seed", f.seed},
                                 {"program", render(f.program)},
                                 {"shrunk", render(f.shrunk)},
                                 {"detail", f.detail}});
    return j;
}

} // namespace forklab
