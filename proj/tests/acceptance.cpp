// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "forklab/lab.hpp"

using namespace forklab;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Recorder {
public:
    void expect(bool ok, const std::string& what) {
        ++checks_;
        if (!ok && first_.empty()) first_ = what;
        pass_ = pass_ && ok;
    }
    template <class A, class B>
    void expect_eq(const A& got, const B& want, const std::string& what) {
        const bool ok = got == want;
        if (!ok) expect(false, what + ": got " + to_string(got) + ", want " + to_string(want));
        else expect(true, what);
    }
    Outcome done(std::string summary) const {
        if (!pass_) summary += "; first failure: " + first_;
        return {pass_, summary};
    }
    std::size_t checks() const { return checks_; }

private:
    bool pass_ = true;
    std::size_t checks_ = 0;
    std::string first_;
};

ModelList ms(std::initializer_list<AtomSet> l) {
    ModelList out(l.begin(), l.end());
    canonicalize(out);
    return out;
}

Outcome criterion1() {
    Recorder r;
    auto rep = compare(parse_program("a | b. a | c."));
    auto& m = rep.models;
    const auto four = ms({{"a"}, {"a", "b"}, {"a", "c"}, {"b", "c"}});
    r.expect_eq(m[Semantics::SM], ms({{"a"}, {"b", "c"}}), "sm");
    r.expect_eq(m[Semantics::Fork], four, "fork");
    r.expect_eq(m[Semantics::JM], four, "jm");
    r.expect_eq(m[Semantics::CSM], four, "csm");
    r.expect_eq(m[Semantics::Classical], ms({{"a"}, {"a", "b"}, {"a", "c"}, {"b", "c"}, {"a", "b", "c"}}), "classical");
    r.expect_eq(m[Semantics::SSM], m[Semantics::Classical], "ssm");
    r.expect_eq(m[Semantics::AD], ms({{"a"}, {"b", "c"}}), "ad");
    r.expect_eq(m[Semantics::SPM], m[Semantics::JM], "spm");
    return r.done(std::to_string(r.checks()) + " set equalities");
}

Outcome criterion2() {
    Recorder r;
    auto rep = compare(parse_program("a | b. a. b :- not b."));
    auto& m = rep.models;
    r.expect_eq(m[Semantics::SM], ModelList{}, "sm");
    for (auto s : {Semantics::Fork, Semantics::JM, Semantics::CSM})
        r.expect_eq(m[s], ms({{"a", "b"}}), semantics_name(s));
    return r.done(std::to_string(r.checks()) + " set equalities");
}

Outcome criterion3() {
    Recorder r;
    auto p = parse_program("p. :- c. a | b. b | a :- p.");
    const Alphabet alpha(alphabet(p));
    r.expect_eq(csm(p, alpha), ms({{"p", "a"}, {"p", "b"}, {"p", "a", "b"}}), "open csm");
    r.expect_eq(csm(p, alpha, true), ms({{"p", "a"}, {"p", "b"}}), "closed csm");
    r.expect_eq(di_stable_models(p, alpha), ms({{"p", "a"}, {"p", "b"}}), "di");
    auto q = parse_program("p. :- c. a | b. b | a | c :- p.");
    auto closed = csm(q, true);
    r.expect(std::find(closed.begin(), closed.end(), AtomSet{"p", "a", "b"}) != closed.end(),
             "{a,b,p} closed after widening the last head, closed csm " + to_string(closed));
    return r.done(std::to_string(r.checks()) + " set checks");
}

Outcome criterion4() {
    Recorder r;
    auto p = parse_program("p :- p.");
    auto rep = compare(p, Alphabet(alphabet(p)), {kAllSemantics.begin(), kAllSemantics.end()}, true);
    auto& m = rep.models;
    r.expect_eq(m[Semantics::SPM], ms({{}, {"p"}}), "spm");
    for (auto s : {Semantics::JM, Semantics::SM, Semantics::SSM}) r.expect_eq(m[s], ms({{}}), semantics_name(s));
    auto graphs = support_graphs_of(p, {"p"});
    r.expect(graphs.size() == 1, "exactly one support graph for {p}");
    if (!graphs.empty()) {
        const auto& g = graphs.front();
        r.expect(g.edges == std::set<std::pair<Atom, Atom>>{{"p", "p"}} && !g.acyclic(), "support graph is the self-loop p -> p");
        r.expect(check_support_graph(g, p, {"p"}).verdict == GraphVerdict::ValidCyclic, "self-loop verified as cyclic");
    }
    r.expect(explanations_of(p, {"p"}).empty(), "no explanation for {p}");
    bool spm_witness = false;
    for (const auto& w : rep.witnesses[Semantics::SPM])
        if (w.model == AtomSet{"p"}) spm_witness = w.witness == graphs.front().to_string();
    r.expect(spm_witness, "spm witness of {p} is the self-loop graph");
    return r.done(std::to_string(r.checks()) + " checks");
}

std::string counts_line(const FuzzSummary& s) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [c, n] : s.counts) {
        os << (first ? "" : ", ") << check_name(c) << " " << n.pass << "/" << n.fail << "/" << n.skip;
        first = false;
    }
    return os.str();
}

Outcome fuzz_outcome(const FuzzSummary& s, const std::string& label) {
    std::string d = label + " (pass/fail/skip): " + counts_line(s);
    if (s.violations() == 0) return {true, d};
    const auto& f = s.failures.front();
    d += "; " + std::to_string(s.violations()) + " violation(s), first " + check_name(f.check) + " at seed " +
         std::to_string(f.seed) + ": " + f.detail + "; shrunk program: " + render(f.shrunk);
    for (auto& ch : d)
        if (ch == '\n') ch = ' ';
    return {false, d};
}

Outcome criterion5() {
    GenConfig cfg;
    return fuzz_outcome(fuzz(cfg, 1000, default_checks()), "1000 programs");
}

Outcome criterion6() {
    GenConfig cfg;
    std::size_t checked = 0, skipped = 0;
    std::uint64_t seed = cfg.seed;
    for (; checked < 200; ++seed) {
        GenConfig local = cfg;
        local.seed = seed;
        const Program p = gen_program(local);
        auto r = run_check(Check::PfProjection, p);
        if (r.status == CheckOutcome::Skip) {
            ++skipped;
            continue;
        }
        if (r.status == CheckOutcome::Fail)
            return {false, "seed " + std::to_string(seed) + ": " + r.detail};
        ++checked;
    }
    return {true, std::to_string(checked) + " programs checked against the sampled context family, " +
                      std::to_string(skipped) + " skipped for pf alphabet size"};
}

bool same_denotation(const Fork& f, const Fork& g, const Alphabet& alpha) {
    for (Mask t = 0; t <= alpha.full(); ++t) {
        AtomSet ts = alpha.set_of(t);
        if (!(denotation(f, ts) == denotation(g, ts))) return false;
    }
    return true;
}

Outcome criterion7() {
    Recorder r;
    for (std::uint64_t k = 0; k < 500; ++k) {
        const auto atoms = default_atoms(2 + k % 2);
        const Alphabet alpha(AtomSet(atoms.begin(), atoms.end()));
        const std::uint64_t s = 0xa19e0000 + 4 * k;
        auto f = gen_fork(s, atoms, 3), g = gen_fork(s + 1, atoms, 3), l = gen_fork(s + 2, atoms, 3);
        const std::string tag = " case " + std::to_string(k);
        r.expect(same_denotation(Fork::pair(Fork::pair(f, g), l), Fork::pair(f, Fork::pair(g, l)), alpha),
                 "associativity" + tag);
        r.expect(same_denotation(Fork::conj(Fork::pair(f, g), l), Fork::pair(Fork::conj(f, l), Fork::conj(g, l)), alpha),
                 "distributivity" + tag);
        auto u = fork_stable_models(f, alpha);
        auto ug = fork_stable_models(g, alpha);
        u.insert(u.end(), ug.begin(), ug.end());
        canonicalize(u);
        r.expect(fork_stable_models(Fork::pair(f, g), alpha) == u, "SM union" + tag);
        for (Mask t = 0; t <= alpha.full(); ++t) {
            const AtomSet ts = alpha.set_of(t);
            const auto v = denotation(f, ts);
            const auto c = closure(ts, v.members());
            r.expect(c == v && closure(ts, c.members()) == c, "closure idempotence" + tag);
            for (const auto& h : v.generators()) r.expect(closure(ts, ideal(h).members()) == ideal(h), "ideal idempotence" + tag);
        }
        const Formula phi = gen_formula(s + 3, atoms, 3);
        for (Mask t = 0; t <= alpha.full(); ++t)
            for (Mask h = t;; h = (h - 1) & t) {
                if (ht_sat(HTInterpretation(alpha.set_of(h), alpha.set_of(t)), phi))
                    r.expect(ht_sat(HTInterpretation(alpha.set_of(t), alpha.set_of(t)), phi) &&
                                 classical_sat(alpha.set_of(t), phi),
                             "persistence" + tag);
                if (h == 0) break;
            }
    }
    return r.done("500 cases, " + std::to_string(r.checks()) + " property checks");
}

Outcome criterion8() {
    GenConfig cfg;
    cfg.seed = 0x7e570000;
    return fuzz_outcome(fuzz(cfg, 500, {Check::T1, Check::T2}), "500 programs");
}

Outcome criterion9() {
    Recorder r;
    GenConfig cfg;
    for (std::uint64_t k = 0; k < 1000; ++k) {
        cfg.seed = 0x9a0000 + k;
        const Program p = gen_program(cfg);
        r.expect(parse_program(render(p)) == p, "program round trip for " + render(p));
    }
    const auto atoms = default_atoms(3);
    for (std::uint64_t k = 0; k < 500; ++k) {
        const Fork f = gen_fork(0x9b0000 + k, atoms, 3);
        r.expect(parse_fork(render(f)) == f, "fork round trip for " + render(f));
    }
    return r.done("1000 programs, 500 forks");
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"two-disjunction example values", criterion1},
        {"self-blocking example values", criterion2},
        {"open/closed selection example values", criterion3},
        {"positive self-loop example values and witness", criterion4},
        {"theorem fuzz suite", criterion5},
        {"pf projection under sampled contexts", criterion6},
        {"denotation algebra properties", criterion7},
        {"t1/t2 rewriting preservation", criterion8},
        {"parser round trip", criterion9},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ["
                  << o.detail << "] (" << std::fixed << std::setprecision(2) << secs << " s)" << std::endl;
        failed += o.pass ? 0 : 1;
    }
    std::cout << (failed ? std::to_string(failed) + " criterion failing" : std::string("all criteria pass")) << "\n";
    return failed ? 1 : 0;
}
