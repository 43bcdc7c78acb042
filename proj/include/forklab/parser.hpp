#pragma once

// Text formats for programs and forks.
//
// Programs (ASP-like):
//   program  ::= { rule }
//   rule     ::= [ ident ':' ] [ head ] [ ':-' body ] '.'
//   head     ::= atom { '|' atom }
//   body     ::= literal { ',' literal }
//   literal  ::= atom | 'not' atom | 'not' 'not' atom | '#true'
//
// Forks:
//   fork     ::= impl { ';' impl }            % fork connective, right-nested
//   impl     ::= disj [ '->' impl ]
//   disj     ::= conj { 'v' conj }
//   conj     ::= unary { '&' unary }
//   unary    ::= '-' unary | primary
//   primary  ::= atom | '#false' | '#true' | '(' fork ')'
//
// Identifiers match [A-Za-z_][A-Za-z0-9_']*. 'not' and 'v' are keywords.
// Atoms starting with "__" are reserved for generated auxiliaries and are
// rejected unless ParseOptions::allow_reserved is set. '%' starts a comment.

#include <cctype>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "forklab/errors.hpp"
#include "forklab/syntax.hpp"

namespace forklab {

struct ParseOptions {
    bool allow_reserved = false;
};

namespace detail {

enum class Tok { Ident, Colon, If, Bar, Comma, Dot, Semi, Arrow, Amp, Minus, LParen, RParen, True, False, End };

struct Token {
    Tok kind;
    std::string text;
    SourceSpan span;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            SourceSpan at{line_, col_, 1};
            if (pos_ >= src_.size()) {
                out.push_back({Tok::End, "", at});
                return out;
            }
            char c = src_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string id;
                while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                              src_[pos_] == '_' || src_[pos_] == '\''))
                    id += advance();
                at.length = id.size();
                out.push_back({Tok::Ident, id, at});
                continue;
            }
            if (c == '#') {
                std::string kw(1, advance());
                while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) kw += advance();
                at.length = kw.size();
                if (kw == "#true") out.push_back({Tok::True, kw, at});
                else if (kw == "#false") out.push_back({Tok::False, kw, at});
                else throw ParseError("unknown directive '" + kw + "'", at);
                continue;
            }
            if (c == ':' && peek(1) == '-') {
                advance(), advance();
                at.length = 2;
                out.push_back({Tok::If, ":-", at});
                continue;
            }
            if (c == '-' && peek(1) == '>') {
                advance(), advance();
                at.length = 2;
                out.push_back({Tok::Arrow, "->", at});
                continue;
            }
            Tok k;
            switch (c) {
            case ':': k = Tok::Colon; break;
            case '|': k = Tok::Bar; break;
            case ',': k = Tok::Comma; break;
            case '.': k = Tok::Dot; break;
            case ';': k = Tok::Semi; break;
            case '&': k = Tok::Amp; break;
            case '-': k = Tok::Minus; break;
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            default: throw ParseError(std::string("unexpected character '") + c + "'", at);
            }
            out.push_back({k, std::string(1, advance()), at});
        }
    }

private:
    char peek(std::size_t off) const { return pos_ + off < src_.size() ? src_[pos_ + off] : '\0'; }
    char advance() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }
    void skip_space() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '%') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

class ParserBase {
public:
    ParserBase(std::string_view text, ParseOptions opts) : toks_(Lexer(text).run()), opts_(opts) {}

protected:

    const Token& cur() const { return toks_[i_]; }
    const Token& look(std::size_t k) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
    bool at(Tok k) const { return cur().kind == k; }
    Token take() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }
    Token expect(Tok k, const char* what) {
        if (!at(k)) throw ParseError(std::string("expected ") + what + describe(), cur().span);
        return take();
    }
    std::string describe() const {
        if (at(Tok::End)) return ", found end of input";
        return ", found '" + cur().text + "'";
    }
    bool is_keyword(const std::string& s) const { return s == "not" || s == "v"; }

    Atom atom() {
        if (!at(Tok::Ident)) throw ParseError("expected atom" + describe(), cur().span);
        Token t = take();
        if (is_keyword(t.text)) throw ParseError("keyword '" + t.text + "' cannot be used as an atom", t.span);
        if (!opts_.allow_reserved && is_reserved_atom(t.text))
            throw ParseError("atom names starting with '__' are reserved", t.span);
        return t.text;
    }

    std::vector<Token> toks_;
    std::size_t i_ = 0;
    ParseOptions opts_;
};

class ProgramParser : public ParserBase {
public:
    using ParserBase::ParserBase;

    Program run() {
        std::vector<Rule> rules;
        std::set<std::string> labels;
        while (!at(Tok::End)) {
            Rule r;
            if (at(Tok::Ident) && look(1).kind == Tok::Colon) {
                Token l = take();
                take();
                if (is_keyword(l.text)) throw ParseError("keyword '" + l.text + "' cannot be a label", l.span);
                if (!labels.insert(l.text).second) throw ParseError("duplicate label '" + l.text + "'", l.span);
                r.label = l.text;
            }
            SourceSpan start = cur().span;
            std::vector<Atom> head;
            if (at(Tok::Ident)) {
                head.push_back(atom());
                while (at(Tok::Bar)) {
                    take();
                    head.push_back(atom());
                }
            }
            bool has_body = false;
            if (at(Tok::If)) {
                take();
                has_body = true;
                literal(r);
                while (at(Tok::Comma)) {
                    take();
                    literal(r);
                }
            }
            if (head.empty() && !has_body) throw ParseError("empty rule", start);
            expect(Tok::Dot, "'.'");
            Rule built = Rule::make(std::move(head), std::move(r.pos), std::move(r.neg), std::move(r.negneg),
                                    std::move(r.label));
            rules.push_back(std::move(built));
        }
        return Program(std::move(rules));
    }

private:
    void literal(Rule& r) {
        if (at(Tok::True)) {
            take();
            return;
        }
        int nots = 0;
        while (at(Tok::Ident) && cur().text == "not" && nots < 2) {
            take();
            ++nots;
        }
        if (at(Tok::Ident) && cur().text == "not")
            throw ParseError("at most two nested 'not' are supported", cur().span);
        Atom a = atom();
        (nots == 0 ? r.pos : nots == 1 ? r.neg : r.negneg).insert(std::move(a));
    }
};

class ForkParser : public ParserBase {
public:
    using ParserBase::ParserBase;

    Fork run() {
        Fork f = fork();
        if (!at(Tok::End)) throw ParseError("unexpected trailing input" + describe(), cur().span);
        return f;
    }

private:
    Formula formula_slot(const Fork& f, const SourceSpan& span, const char* where) {
        if (!f.is_formula()) throw ParseError(std::string("fork not allowed in ") + where, span);
        return f.to_formula();
    }

    Fork fork() {
        Fork lhs = impl();
        if (!at(Tok::Semi)) return lhs;
        take();
        return Fork::pair(lhs, fork());
    }

    Fork impl() {
        SourceSpan span = cur().span;
        Fork lhs = disj();
        if (!at(Tok::Arrow)) return lhs;
        take();
        Formula ante = formula_slot(lhs, span, "antecedent");
        return Fork::implies(ante, impl());
    }

    Fork disj() {
        SourceSpan span = cur().span;
        Fork lhs = conj();
        if (!(at(Tok::Ident) && cur().text == "v")) return lhs;
        take();
        Formula l = formula_slot(lhs, span, "disjunction");
        SourceSpan rspan = cur().span;
        Fork rhs = disj();
        return Fork::disj(l, formula_slot(rhs, rspan, "disjunction"));
    }

    Fork conj() {
        Fork lhs = unary();
        if (!at(Tok::Amp)) return lhs;
        take();
        return Fork::conj(lhs, conj());
    }

    Fork unary() {
        if (at(Tok::Minus)) {
            take();
            SourceSpan span = cur().span;
            Fork inner = unary();
            return Fork::implies(formula_slot(inner, span, "antecedent"), Fork::bottom());
        }
        return primary();
    }

    Fork primary() {
        if (at(Tok::False)) {
            take();
            return Fork::bottom();
        }
        if (at(Tok::True)) {
            take();
            return Fork::from(Formula::top());
        }
        if (at(Tok::LParen)) {
            take();
            Fork f = fork();
            expect(Tok::RParen, "')'");
            return f;
        }
        return Fork::atom(atom());
    }
};

// ---- rendering -------------------------------------------------------------

inline bool simple(const Formula& f) {
    return f.kind() == Formula::Kind::Atom || f.kind() == Formula::Kind::Bottom || f.is_top() ||
           (f.is_negation() && simple(f.lhs()));
}

inline std::string render_formula(const Formula& f, bool nested);

inline std::string wrap(const Formula& f) { return render_formula(f, true); }

inline std::string render_formula(const Formula& f, bool nested) {
    std::string s;
    switch (f.kind()) {
    case Formula::Kind::Bottom: return "#false";
    case Formula::Kind::Atom: return f.name();
    case Formula::Kind::And: s = wrap(f.lhs()) + " & " + wrap(f.rhs()); break;
    case Formula::Kind::Or: s = wrap(f.lhs()) + " v " + wrap(f.rhs()); break;
    case Formula::Kind::Implies:
        if (f.is_top()) return "#true";
        if (f.is_negation()) return "-" + wrap(f.lhs());
        s = wrap(f.lhs()) + " -> " + wrap(f.rhs());
        break;
    }
    return nested ? "(" + s + ")" : s;
}

inline std::string render_fork(const Fork& f, bool nested) {
    std::string s;
    switch (f.kind()) {
    case Fork::Kind::Bottom: return "#false";
    case Fork::Kind::Atom: return f.name();
    case Fork::Kind::Pair: s = render_fork(f.left(), true) + " ; " + render_fork(f.right(), true); break;
    case Fork::Kind::And: s = render_fork(f.left(), true) + " & " + render_fork(f.right(), true); break;
    case Fork::Kind::Or: s = wrap(f.formula_left()) + " v " + wrap(f.formula_right()); break;
    case Fork::Kind::Implies:
        if (f.right().kind() == Fork::Kind::Bottom) {
            if (f.formula_left().kind() == Formula::Kind::Bottom) return "#true";
            return "-" + wrap(f.formula_left());
        }
        s = wrap(f.formula_left()) + " -> " + render_fork(f.right(), true);
        break;
    }
    return nested ? "(" + s + ")" : s;
}

} // namespace detail

inline Program parse_program(std::string_view text, ParseOptions opts = {}) {
    return detail::ProgramParser(text, opts).run();
}

inline Fork parse_fork(std::string_view text, ParseOptions opts = {}) {
    return detail::ForkParser(text, opts).run();
}

/// A fork text without '|'; grammar violations and forks raise ParseError.
inline Formula parse_formula(std::string_view text, ParseOptions opts = {}) {
    Fork f = parse_fork(text, opts);
    if (!f.is_formula()) throw ParseError("expected a formula, found a fork", SourceSpan{});
    return f.to_formula();
}

inline std::string render(const Rule& r) {
    std::string s;
    if (r.label) s += *r.label + ": ";
    for (std::size_t i = 0; i < r.head.size(); ++i) {
        if (i) s += " | ";
        s += r.head[i];
    }
    if (!r.body_empty() || r.head.empty()) {
        s += r.head.empty() ? ":- " : " :- ";
        std::vector<std::string> lits;
        for (const auto& a : r.pos) lits.push_back(a);
        for (const auto& a : r.neg) lits.push_back("not " + a);
        for (const auto& a : r.negneg) lits.push_back("not not " + a);
        if (lits.empty()) lits.push_back("#true");
        for (std::size_t i = 0; i < lits.size(); ++i) {
            if (i) s += ", ";
            s += lits[i];
        }
    }
    return s + ".";
}

/// One rule per line, newline-terminated.
inline std::string render(const Program& p) {
    std::string s;
    for (const auto& r : p.rules()) s += render(r) + "\n";
    return s;
}

inline std::string render(const Fork& f) { return detail::render_fork(f, false); }
inline std::string render(const Formula& f) { return detail::render_formula(f, false); }

} // namespace forklab
