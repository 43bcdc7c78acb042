#pragma once

// Abstract syntax: atoms, propositional formulas, extended disjunctive rules,
// labelled programs and forks.

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "forklab/errors.hpp"

namespace forklab {

using Atom = std::string;
using AtomSet = std::set<Atom>;

// ---------------------------------------------------------------------------
// Formula
// ---------------------------------------------------------------------------

/// Propositional formula over the five primitive connectives. Negation and
/// verum are stored expanded (not p == p -> bot, top == bot -> bot).
class Formula {
public:
    enum class Kind { Bottom, Atom, And, Or, Implies };

    static Formula bottom();
    static Formula atom(Atom name);
    static Formula conj(Formula lhs, Formula rhs);
    static Formula disj(Formula lhs, Formula rhs);
    static Formula implies(Formula lhs, Formula rhs);
    static Formula neg(Formula f) { return implies(std::move(f), bottom()); }
    static Formula top() { return neg(bottom()); }

    /// Right-nested conjunction; empty list yields top.
    static Formula conj_all(const std::vector<Formula>& fs);
    /// Right-nested disjunction; empty list yields bottom.
    static Formula disj_all(const std::vector<Formula>& fs);

    Kind kind() const noexcept;
    const Atom& name() const;
    const Formula& lhs() const;
    const Formula& rhs() const;

    bool is_negation() const { return kind() == Kind::Implies && rhs().kind() == Kind::Bottom; }
    bool is_top() const { return is_negation() && lhs().kind() == Kind::Bottom; }

    friend bool operator==(const Formula& a, const Formula& b);

private:
    struct Node;
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct Formula::Node {
    Kind kind;
    Atom name;
    std::optional<Formula> lhs;
    std::optional<Formula> rhs;
};

inline Formula Formula::bottom() {
    static const Formula b{std::make_shared<const Node>(Node{Kind::Bottom, {}, {}, {}})};
    return b;
}
inline Formula Formula::atom(Atom name) {
    if (name.empty()) throw InvalidArgument("atom name must be non-empty");
    return Formula{std::make_shared<const Node>(Node{Kind::Atom, std::move(name), {}, {}})};
}
inline Formula Formula::conj(Formula l, Formula r) {
    return Formula{std::make_shared<const Node>(Node{Kind::And, {}, std::move(l), std::move(r)})};
}
inline Formula Formula::disj(Formula l, Formula r) {
    return Formula{std::make_shared<const Node>(Node{Kind::Or, {}, std::move(l), std::move(r)})};
}
inline Formula Formula::implies(Formula l, Formula r) {
    return Formula{std::make_shared<const Node>(Node{Kind::Implies, {}, std::move(l), std::move(r)})};
}
inline Formula Formula::conj_all(const std::vector<Formula>& fs) {
    if (fs.empty()) return top();
    Formula acc = fs.back();
    for (auto it = fs.rbegin() + 1; it != fs.rend(); ++it) acc = conj(*it, acc);
    return acc;
}
inline Formula Formula::disj_all(const std::vector<Formula>& fs) {
    if (fs.empty()) return bottom();
    Formula acc = fs.back();
    for (auto it = fs.rbegin() + 1; it != fs.rend(); ++it) acc = disj(*it, acc);
    return acc;
}
inline Formula::Kind Formula::kind() const noexcept { return node_->kind; }
inline const Atom& Formula::name() const {
    if (kind() != Kind::Atom) throw InvalidArgument("Formula::name on non-atom");
    return node_->name;
}
inline const Formula& Formula::lhs() const {
    if (!node_->lhs) throw InvalidArgument("Formula::lhs on leaf");
    return *node_->lhs;
}
inline const Formula& Formula::rhs() const {
    if (!node_->rhs) throw InvalidArgument("Formula::rhs on leaf");
    return *node_->rhs;
}
inline bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case Formula::Kind::Bottom: return true;
    case Formula::Kind::Atom: return a.name() == b.name();
    default: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
}

// ---------------------------------------------------------------------------
// Fork
// ---------------------------------------------------------------------------

/// Fork: formulas extended with the head-level connective '|'. Forks can only
/// appear as conjuncts, fork branches and implication consequents; the
/// disjunction and antecedent slots take plain formulas, so the grammar
/// restriction holds by construction.
class Fork {
public:
    enum class Kind { Bottom, Atom, Pair, And, Or, Implies };

    static Fork bottom();
    static Fork atom(Atom name);
    static Fork pair(Fork lhs, Fork rhs);
    static Fork conj(Fork lhs, Fork rhs);
    static Fork disj(Formula lhs, Formula rhs);
    static Fork implies(Formula antecedent, Fork consequent);
    /// Structural embedding of a formula.
    static Fork from(const Formula& f);

    static Fork conj_all(const std::vector<Fork>& fs);
    static Fork pair_all(const std::vector<Fork>& fs);

    Kind kind() const noexcept;
    const Atom& name() const;
    /// Fork children (Pair, And) and the consequent of Implies.
    const Fork& left() const;
    const Fork& right() const;
    /// Formula children: both sides of Or, the antecedent of Implies.
    const Formula& formula_left() const;
    const Formula& formula_right() const;

    /// True iff no '|' occurs, i.e. the fork is a formula in disguise.
    bool is_formula() const;
    Formula to_formula() const;

    friend bool operator==(const Fork& a, const Fork& b);

private:
    struct Node;
    explicit Fork(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct Fork::Node {
    Kind kind;
    Atom name;
    std::optional<Fork> left;
    std::optional<Fork> right;
    std::optional<Formula> fleft;
    std::optional<Formula> fright;
};

inline Fork Fork::bottom() {
    static const Fork b{std::make_shared<const Node>(Node{Kind::Bottom, {}, {}, {}, {}, {}})};
    return b;
}
inline Fork Fork::atom(Atom name) {
    if (name.empty()) throw InvalidArgument("atom name must be non-empty");
    return Fork{std::make_shared<const Node>(Node{Kind::Atom, std::move(name), {}, {}, {}, {}})};
}
inline Fork Fork::pair(Fork l, Fork r) {
    return Fork{std::make_shared<const Node>(Node{Kind::Pair, {}, std::move(l), std::move(r), {}, {}})};
}
inline Fork Fork::conj(Fork l, Fork r) {
    return Fork{std::make_shared<const Node>(Node{Kind::And, {}, std::move(l), std::move(r), {}, {}})};
}
inline Fork Fork::disj(Formula l, Formula r) {
    return Fork{std::make_shared<const Node>(Node{Kind::Or, {}, {}, {}, std::move(l), std::move(r)})};
}
inline Fork Fork::implies(Formula a, Fork c) {
    return Fork{std::make_shared<const Node>(Node{Kind::Implies, {}, {}, std::move(c), std::move(a), {}})};
}
inline Fork Fork::from(const Formula& f) {
    switch (f.kind()) {
    case Formula::Kind::Bottom: return bottom();
    case Formula::Kind::Atom: return atom(f.name());
    case Formula::Kind::And: return conj(from(f.lhs()), from(f.rhs()));
    case Formula::Kind::Or: return disj(f.lhs(), f.rhs());
    case Formula::Kind::Implies: return implies(f.lhs(), from(f.rhs()));
    }
    return bottom();
}
inline Fork Fork::conj_all(const std::vector<Fork>& fs) {
    if (fs.empty()) return from(Formula::top());
    Fork acc = fs.back();
    for (auto it = fs.rbegin() + 1; it != fs.rend(); ++it) acc = conj(*it, acc);
    return acc;
}
inline Fork Fork::pair_all(const std::vector<Fork>& fs) {
    if (fs.empty()) return bottom();
    Fork acc = fs.back();
    for (auto it = fs.rbegin() + 1; it != fs.rend(); ++it) acc = pair(*it, acc);
    return acc;
}
inline Fork::Kind Fork::kind() const noexcept { return node_->kind; }
inline const Atom& Fork::name() const {
    if (kind() != Kind::Atom) throw InvalidArgument("Fork::name on non-atom");
    return node_->name;
}
inline const Fork& Fork::left() const {
    if (!node_->left) throw InvalidArgument("Fork::left: no fork child");
    return *node_->left;
}
inline const Fork& Fork::right() const {
    if (!node_->right) throw InvalidArgument("Fork::right: no fork child");
    return *node_->right;
}
inline const Formula& Fork::formula_left() const {
    if (!node_->fleft) throw InvalidArgument("Fork::formula_left: no formula child");
    return *node_->fleft;
}
inline const Formula& Fork::formula_right() const {
    if (!node_->fright) throw InvalidArgument("Fork::formula_right: no formula child");
    return *node_->fright;
}
inline bool Fork::is_formula() const {
    switch (kind()) {
    case Kind::Pair: return false;
    case Kind::And: return left().is_formula() && right().is_formula();
    case Kind::Implies: return right().is_formula();
    default: return true;
    }
}
inline Formula Fork::to_formula() const {
    switch (kind()) {
    case Kind::Bottom: return Formula::bottom();
    case Kind::Atom: return Formula::atom(name());
    case Kind::And: return Formula::conj(left().to_formula(), right().to_formula());
    case Kind::Or: return Formula::disj(formula_left(), formula_right());
    case Kind::Implies: return Formula::implies(formula_left(), right().to_formula());
    case Kind::Pair: break;
    }
    throw InvalidArgument("fork contains '|' and has no formula reading");
}
inline bool operator==(const Fork& a, const Fork& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case Fork::Kind::Bottom: return true;
    case Fork::Kind::Atom: return a.name() == b.name();
    case Fork::Kind::Pair:
    case Fork::Kind::And: return a.left() == b.left() && a.right() == b.right();
    case Fork::Kind::Or: return a.formula_left() == b.formula_left() && a.formula_right() == b.formula_right();
    case Fork::Kind::Implies: return a.formula_left() == b.formula_left() && a.right() == b.right();
    }
    return false;
}

// ---------------------------------------------------------------------------
// Rules and programs
// ---------------------------------------------------------------------------

/// Extended disjunctive rule  h1 v ... v hm <- B+ , not B- , not not B--.
struct Rule {
    std::optional<std::string> label;
    std::vector<Atom> head; // first-occurrence order, duplicate-free
    AtomSet pos;
    AtomSet neg;
    AtomSet negneg;

    /// Builds a rule, collapsing repeated head atoms.
    static Rule make(std::vector<Atom> head, AtomSet pos = {}, AtomSet neg = {}, AtomSet negneg = {},
                     std::optional<std::string> label = std::nullopt) {
        Rule r;
        r.label = std::move(label);
        for (auto& a : head)
            if (std::find(r.head.begin(), r.head.end(), a) == r.head.end()) r.head.push_back(std::move(a));
        r.pos = std::move(pos);
        r.neg = std::move(neg);
        r.negneg = std::move(negneg);
        return r;
    }

    AtomSet head_set() const { return AtomSet(head.begin(), head.end()); }
    AtomSet body_atoms() const {
        AtomSet b = pos;
        b.insert(neg.begin(), neg.end());
        b.insert(negneg.begin(), negneg.end());
        return b;
    }
    bool body_empty() const { return pos.empty() && neg.empty() && negneg.empty(); }
    bool is_constraint() const { return head.empty(); }
    bool is_normal() const { return head.size() <= 1; }
    bool is_fact() const { return head.size() == 1 && body_empty(); }
    bool has_double_negation() const { return !negneg.empty(); }

    /// Structural equality ignoring the label.
    bool same_shape(const Rule& o) const {
        return head == o.head && pos == o.pos && neg == o.neg && negneg == o.negneg;
    }
    friend bool operator==(const Rule& a, const Rule& b) { return a.label == b.label && a.same_shape(b); }
};

/// Ordered list of rules. Labels, when present, are pairwise distinct.
class Program {
public:
    Program() = default;
    explicit Program(std::vector<Rule> rules) : rules_(std::move(rules)) { check_labels(); }

    const std::vector<Rule>& rules() const noexcept { return rules_; }
    std::size_t size() const noexcept { return rules_.size(); }
    bool empty() const noexcept { return rules_.empty(); }
    const Rule& operator[](std::size_t i) const { return rules_.at(i); }

    bool is_normal() const {
        return std::all_of(rules_.begin(), rules_.end(), [](const Rule& r) { return r.is_normal(); });
    }
    bool has_double_negation() const {
        return std::any_of(rules_.begin(), rules_.end(), [](const Rule& r) { return r.has_double_negation(); });
    }

    /// Label of rule i; unlabelled rules get "r<i+1>".
    std::string label_of(std::size_t i) const {
        const Rule& r = rules_.at(i);
        return r.label ? *r.label : "r" + std::to_string(i + 1);
    }

    /// Copy with every rule labelled. Existing labels are kept; unlabelled
    /// rules get r1, r2, ... by position, skipping names already taken.
    Program labelled() const {
        std::set<std::string> taken;
        for (const auto& r : rules_)
            if (r.label) taken.insert(*r.label);
        std::vector<Rule> out = rules_;
        std::size_t next = 1;
        for (auto& r : out) {
            if (r.label) continue;
            std::string l;
            do { l = "r" + std::to_string(next++); } while (taken.count(l));
            taken.insert(l);
            r.label = l;
        }
        return Program(std::move(out));
    }

    Program with(const Program& more) const {
        std::vector<Rule> out = rules_;
        out.insert(out.end(), more.rules_.begin(), more.rules_.end());
        return Program(std::move(out));
    }

    Program without_labels() const {
        std::vector<Rule> out = rules_;
        for (auto& r : out) r.label.reset();
        return Program(std::move(out));
    }

    friend bool operator==(const Program& a, const Program& b) { return a.rules_ == b.rules_; }

private:
    void check_labels() const {
        std::set<std::string> seen;
        for (const auto& r : rules_)
            if (r.label && !seen.insert(*r.label).second)
                throw InvalidArgument("duplicate rule label '" + *r.label + "'");
    }
    std::vector<Rule> rules_;
};

// ---------------------------------------------------------------------------
// Conversions
// ---------------------------------------------------------------------------

/// Bd(r): positive atoms, then negated, then doubly negated, right-nested; top if empty.
inline Formula body_formula(const Rule& r) {
    std::vector<Formula> lits;
    for (const auto& a : r.pos) lits.push_back(Formula::atom(a));
    for (const auto& a : r.neg) lits.push_back(Formula::neg(Formula::atom(a)));
    for (const auto& a : r.negneg) lits.push_back(Formula::neg(Formula::neg(Formula::atom(a))));
    return Formula::conj_all(lits);
}

/// Hd(r): right-nested disjunction in head order; bottom if empty.
inline Formula head_formula(const Rule& r) {
    std::vector<Formula> hs;
    for (const auto& a : r.head) hs.push_back(Formula::atom(a));
    return Formula::disj_all(hs);
}

inline Formula rule_to_formula(const Rule& r) { return Formula::implies(body_formula(r), head_formula(r)); }

inline Formula program_formula(const Program& p) {
    std::vector<Formula> fs;
    for (const auto& r : p.rules()) fs.push_back(rule_to_formula(r));
    return Formula::conj_all(fs);
}

/// <r>: the head disjunction replaced by '|'. Normal rules map to their formula.
inline Fork forked(const Rule& r) {
    if (r.is_normal()) return Fork::from(rule_to_formula(r));
    std::vector<Fork> hs;
    for (const auto& a : r.head) hs.push_back(Fork::atom(a));
    return Fork::implies(body_formula(r), Fork::pair_all(hs));
}

/// Conjunction of <r> over the program; a single rule is returned as is.
inline Fork forked(const Program& p) {
    std::vector<Fork> fs;
    for (const auto& r : p.rules()) fs.push_back(forked(r));
    return Fork::conj_all(fs);
}

inline void collect_atoms(const Formula& f, AtomSet& out) {
    switch (f.kind()) {
    case Formula::Kind::Bottom: return;
    case Formula::Kind::Atom: out.insert(f.name()); return;
    default: collect_atoms(f.lhs(), out); collect_atoms(f.rhs(), out);
    }
}

inline void collect_atoms(const Fork& f, AtomSet& out) {
    switch (f.kind()) {
    case Fork::Kind::Bottom: return;
    case Fork::Kind::Atom: out.insert(f.name()); return;
    case Fork::Kind::Pair:
    case Fork::Kind::And: collect_atoms(f.left(), out); collect_atoms(f.right(), out); return;
    case Fork::Kind::Or: collect_atoms(f.formula_left(), out); collect_atoms(f.formula_right(), out); return;
    case Fork::Kind::Implies: collect_atoms(f.formula_left(), out); collect_atoms(f.right(), out); return;
    }
}

inline AtomSet alphabet(const Formula& f) {
    AtomSet s;
    collect_atoms(f, s);
    return s;
}
inline AtomSet alphabet(const Fork& f) {
    AtomSet s;
    collect_atoms(f, s);
    return s;
}
inline AtomSet alphabet(const Rule& r) {
    AtomSet s = r.body_atoms();
    s.insert(r.head.begin(), r.head.end());
    return s;
}
inline AtomSet alphabet(const Program& p) {
    AtomSet s;
    for (const auto& r : p.rules()) {
        auto a = alphabet(r);
        s.insert(a.begin(), a.end());
    }
    return s;
}

/// Atoms with the reserved "__" prefix are produced by the translations only.
inline bool is_reserved_atom(const Atom& a) { return a.size() >= 2 && a[0] == '_' && a[1] == '_'; }

inline AtomSet strip_reserved(const AtomSet& s) {
    AtomSet out;
    for (const auto& a : s)
        if (!is_reserved_atom(a)) out.insert(a);
    return out;
}

} // namespace forklab
