#include "gdlr/gtl.hpp"

#include "gdlr/validate.hpp"

#include <algorithm>
#include <cctype>

namespace gdlr {

Formula Formula::make(Kind k, Term atom, std::vector<Formula> children) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->atom = std::move(atom);
    n->children = std::move(children);
    int d = 0;
    std::size_t size = 1;
    for (const auto& c : n->children) {
        d = std::max(d, c.degree());
        size += c.size();
    }
    n->degree = k == Kind::Next ? d + 1 : d;
    n->size = size;
    Formula f;
    f.node_ = std::move(n);
    return f;
}

Formula Formula::atom(Term a) { return make(Kind::Atom, std::move(a), {}); }
Formula Formula::top() { return make(Kind::Top, {}, {}); }
Formula Formula::bottom() { return make(Kind::Bottom, {}, {}); }
Formula Formula::negate(Formula f) { return make(Kind::Not, {}, {std::move(f)}); }
Formula Formula::conj(Formula a, Formula b) { return make(Kind::And, {}, {std::move(a), std::move(b)}); }
Formula Formula::disj(Formula a, Formula b) { return make(Kind::Or, {}, {std::move(a), std::move(b)}); }
Formula Formula::implies(Formula a, Formula b) { return make(Kind::Implies, {}, {std::move(a), std::move(b)}); }
Formula Formula::next(Formula f) { return make(Kind::Next, {}, {std::move(f)}); }

Formula Formula::conj_all(const std::vector<Formula>& fs) {
    if (fs.empty()) {
        return top();
    }
    Formula acc = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i) {
        acc = conj(acc, fs[i]);
    }
    return acc;
}

Formula Formula::disj_all(const std::vector<Formula>& fs) {
    if (fs.empty()) {
        return bottom();
    }
    Formula acc = fs.front();
    for (std::size_t i = 1; i < fs.size(); ++i) {
        acc = disj(acc, fs[i]);
    }
    return acc;
}

Formula Formula::desugar() const {
    switch (kind()) {
    case Kind::Atom:
    case Kind::Top:
        return *this;
    case Kind::Bottom:
        return negate(top());
    case Kind::Not:
        return negate(child(0).desugar());
    case Kind::Next:
        return next(child(0).desugar());
    case Kind::And:
        return conj(child(0).desugar(), child(1).desugar());
    case Kind::Or:
        return negate(conj(negate(child(0).desugar()), negate(child(1).desugar())));
    case Kind::Implies:
        return negate(conj(child(0).desugar(), negate(child(1).desugar())));
    }
    return *this;
}

namespace {

void collect_atoms(const Formula& f, std::vector<Term>& out) {
    if (f.kind() == Formula::Kind::Atom) {
        out.push_back(f.atom_term());
    }
    for (std::size_t i = 0; i < f.arity(); ++i) {
        collect_atoms(f.child(i), out);
    }
}

int precedence(Formula::Kind k) {
    switch (k) {
    case Formula::Kind::Implies:
        return 1;
    case Formula::Kind::Or:
        return 2;
    case Formula::Kind::And:
        return 3;
    case Formula::Kind::Not:
    case Formula::Kind::Next:
        return 4;
    default:
        return 5;
    }
}

void print(const Formula& f, std::string& out);

void print_child(const Formula& c, int min_prec, std::string& out) {
    if (precedence(c.kind()) < min_prec) {
        out += '(';
        print(c, out);
        out += ')';
    } else {
        print(c, out);
    }
}

void print(const Formula& f, std::string& out) {
    using K = Formula::Kind;
    switch (f.kind()) {
    case K::Atom:
        out += f.atom_term().to_string();
        return;
    case K::Top:
        out += "#true";
        return;
    case K::Bottom:
        out += "#false";
        return;
    case K::Not:
        out += '~';
        print_child(f.child(0), 4, out);
        return;
    case K::Next:
        out += "X ";
        print_child(f.child(0), 4, out);
        return;
    case K::And:
    case K::Or: {
        int p = precedence(f.kind());
        print_child(f.child(0), p, out);
        out += f.kind() == K::And ? " & " : " | ";
        print_child(f.child(1), p + 1, out);
        return;
    }
    case K::Implies:
        print_child(f.child(0), 2, out);
        out += " -> ";
        print_child(f.child(1), 1, out);
        return;
    }
}

} // namespace

std::vector<Term> Formula::atoms() const {
    std::vector<Term> out;
    collect_atoms(*this, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string Formula::to_string() const {
    std::string out;
    print(*this, out);
    return out;
}

bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) {
        return true;
    }
    if (a.kind() != b.kind() || a.arity() != b.arity()) {
        return false;
    }
    if (a.kind() == Formula::Kind::Atom && !(a.atom_term() == b.atom_term())) {
        return false;
    }
    for (std::size_t i = 0; i < a.arity(); ++i) {
        if (!(a.child(i) == b.child(i))) {
            return false;
        }
    }
    return true;
}

Formula nest(const Formula& f, NestOp op, int n) {
    if (n < 0) {
        throw GtlError("nest depth must be non-negative");
    }
    Formula acc = f;
    for (int i = 0; i < n; ++i) {
        acc = op == NestOp::And ? Formula::conj(f, Formula::next(acc)) : Formula::disj(f, Formula::next(acc));
    }
    return acc;
}

namespace {

Formula at(const char* name) { return Formula::atom(Term::symbol(name)); }

} // namespace

Formula macro_end(int n) {
    return nest(at("terminal"), NestOp::Or, n);
}

Formula macro_legal_any(const GameDescription& desc, const Term& role) {
    std::vector<Formula> alts;
    for (const auto& a : desc.moves(role)) {
        alts.push_back(Formula::atom(Term::compound("legal", {role, a})));
    }
    return Formula::disj_all(alts);
}

Formula macro_play(const GameDescription& desc, int n) {
    std::vector<Formula> per_role;
    for (const auto& p : desc.roles()) {
        per_role.push_back(macro_legal_any(desc, p));
    }
    return nest(Formula::disj(at("terminal"), Formula::conj_all(per_role)), NestOp::And, n);
}

Formula macro_loss(const Term& role, int n) {
    Formula not_won = Formula::negate(Formula::atom(Term::compound("goal", {role, Term::symbol("100")})));
    return nest(Formula::disj(Formula::negate(at("terminal")), not_won), NestOp::And, n);
}

Formula macro_static(const Term& fluent, int n) {
    if (n < 1) {
        throw GtlError("static(f,n) needs n >= 1");
    }
    Formula t = Formula::atom(Term::compound("true", {fluent}));
    return Formula::conj(Formula::negate(at("terminal")), Formula::next(nest(t, NestOp::And, n - 1)));
}

Formula macro_turntaking(const Term& f1, const Term& f2, int n) {
    Formula t1 = Formula::atom(Term::compound("true", {f1}));
    Formula t2 = Formula::atom(Term::compound("true", {f2}));
    Formula only1 = Formula::conj(t1, Formula::negate(t2));
    Formula only2 = Formula::conj(t2, Formula::negate(t1));
    return nest(Formula::disj(only1, only2), NestOp::And, n);
}

void check_gtl_atom(const GameDescription& desc, const Term& atom) {
    const std::string& p = atom.name();
    if (!atom.is_ground()) {
        throw GtlError("atom " + atom.to_string() + " is not ground");
    }
    if (p == "does") {
        throw GtlError("atom " + atom.to_string() + " depends on does");
    }
    if (p == "init" || p == "next") {
        throw GtlError("atom " + atom.to_string() + " uses " + p + ", which cannot occur in a formula");
    }
    if (p == "true") {
        if (atom.arity() != 1 || !desc.is_base(atom.arg(0))) {
            throw GtlError("unknown atom " + atom.to_string() + ": not a base proposition");
        }
        return;
    }
    if (p == "legal") {
        if (atom.arity() != 2 || !desc.is_input(atom.arg(0), atom.arg(1))) {
            throw GtlError("unknown atom " + atom.to_string() + ": not in the move domain");
        }
        return;
    }
    bool defined = false;
    for (const auto& r : desc.all_rules()) {
        if (r.head && r.head->name() == p && r.head->arity() == atom.arity()) {
            defined = true;
            break;
        }
    }
    if (!defined) {
        throw GtlError("unknown atom " + atom.to_string() + ": no rule defines " + p + "/" +
                       std::to_string(atom.arity()));
    }
    if (depends_on_does(desc, p)) {
        throw GtlError("atom " + atom.to_string() + " depends on does");
    }
}

namespace {

bool defines_predicate(const GameDescription& desc, const std::string& name) {
    for (const auto& r : desc.all_rules()) {
        if (r.head && r.head->name() == name) {
            return true;
        }
        for (const auto& l : r.body) {
            if (l.atom.name() == name) {
                return true;
            }
        }
    }
    return false;
}

bool is_macro_name(const std::string& s) {
    return s == "nest" || s == "end" || s == "play" || s == "loss" || s == "static" || s == "turntaking";
}

enum class T { Ident, LParen, RParen, Comma, Not, And, Or, Imp, True, False, End };

struct Tok {
    T kind;
    std::string text;
    std::size_t pos;
};

std::vector<Tok> lex(std::string_view s) {
    std::vector<Tok> out;
    std::size_t i = 0;
    auto ident = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (ident(c)) {
            while (i < s.size() && ident(s[i])) {
                ++i;
            }
            out.push_back({T::Ident, std::string(s.substr(start, i - start)), start});
            continue;
        }
        switch (c) {
        case '(':
            out.push_back({T::LParen, "(", i++});
            continue;
        case ')':
            out.push_back({T::RParen, ")", i++});
            continue;
        case ',':
            out.push_back({T::Comma, ",", i++});
            continue;
        case '~':
            out.push_back({T::Not, "~", i++});
            continue;
        case '&':
            out.push_back({T::And, "&", i++});
            continue;
        case '|':
            out.push_back({T::Or, "|", i++});
            continue;
        case '-':
            if (i + 1 < s.size() && s[i + 1] == '>') {
                out.push_back({T::Imp, "->", i});
                i += 2;
                continue;
            }
            break;
        case '#': {
            ++i;
            while (i < s.size() && ident(s[i])) {
                ++i;
            }
            std::string w(s.substr(start, i - start));
            if (w == "#true") {
                out.push_back({T::True, w, start});
                continue;
            }
            if (w == "#false") {
                out.push_back({T::False, w, start});
                continue;
            }
            throw GtlError("unknown constant '" + w + "' at offset " + std::to_string(start));
        }
        default:
            break;
        }
        throw GtlError(std::string("unexpected character '") + c + "' at offset " + std::to_string(start));
    }
    out.push_back({T::End, "", s.size()});
    return out;
}

class GtlParser {
public:
    GtlParser(std::string_view text, const GameDescription* desc) : toks_(lex(text)), desc_(desc) {}

    Formula parse_all() {
        Formula f = implication();
        if (cur().kind != T::End) {
            fail("unexpected '" + cur().text + "'");
        }
        return f;
    }

private:
    std::vector<Tok> toks_;
    std::size_t i_ = 0;
    const GameDescription* desc_;

    const Tok& cur() const { return toks_[i_]; }
    [[noreturn]] void fail(const std::string& msg) const {
        throw GtlError("syntax error at offset " + std::to_string(cur().pos) + ": " + msg);
    }
    void expect(T kind, const char* what) {
        if (cur().kind != kind) {
            fail(std::string("expected ") + what);
        }
        ++i_;
    }

    Formula implication() {
        Formula lhs = disjunction();
        if (cur().kind == T::Imp) {
            ++i_;
            return Formula::implies(lhs, implication());
        }
        return lhs;
    }

    Formula disjunction() {
        Formula acc = conjunction();
        while (cur().kind == T::Or) {
            ++i_;
            acc = Formula::disj(acc, conjunction());
        }
        return acc;
    }

    Formula conjunction() {
        Formula acc = unary();
        while (cur().kind == T::And) {
            ++i_;
            acc = Formula::conj(acc, unary());
        }
        return acc;
    }

    Formula unary() {
        if (cur().kind == T::Not) {
            ++i_;
            return Formula::negate(unary());
        }
        if (cur().kind == T::Ident && cur().text == "X") {
            ++i_;
            return Formula::next(unary());
        }
        return primary();
    }

    Formula primary() {
        switch (cur().kind) {
        case T::LParen: {
            ++i_;
            Formula f = implication();
            expect(T::RParen, "')'");
            return f;
        }
        case T::True:
            ++i_;
            return Formula::top();
        case T::False:
            ++i_;
            return Formula::bottom();
        case T::Ident:
            break;
        default:
            fail("expected a formula");
        }
        const std::string& name = cur().text;
        bool call = toks_[i_ + 1].kind == T::LParen;
        if (call && is_macro_name(name) && (!desc_ || !defines_predicate(*desc_, name))) {
            return macro();
        }
        Term a = term();
        if (a.is_variable()) {
            fail("variable " + a.name() + " cannot be an atom");
        }
        if (desc_) {
            check_gtl_atom(*desc_, a);
        }
        return Formula::atom(std::move(a));
    }

    Term term() {
        if (cur().kind != T::Ident) {
            fail("expected a term");
        }
        std::string name = cur().text;
        ++i_;
        if (cur().kind != T::LParen) {
            char c = name[0];
            if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
                return Term::variable(name);
            }
            return Term::symbol(name);
        }
        ++i_;
        std::vector<Term> args{term()};
        while (cur().kind == T::Comma) {
            ++i_;
            args.push_back(term());
        }
        expect(T::RParen, "')'");
        return Term::compound(name, std::move(args));
    }

    int number() {
        if (cur().kind != T::Ident) {
            fail("expected a number");
        }
        const std::string& s = cur().text;
        if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            fail("expected a number, got '" + s + "'");
        }
        ++i_;
        return std::stoi(s);
    }

    const GameDescription& need_desc(const std::string& name) const {
        if (!desc_) {
            throw GtlError("macro " + name + " needs a game description");
        }
        return *desc_;
    }

    Term ground_term() {
        Term t = term();
        if (!t.is_ground()) {
            fail("macro argument " + t.to_string() + " is not ground");
        }
        return t;
    }

    Formula macro() {
        std::string name = cur().text;
        i_ += 2;  // name and '('
        Formula result = Formula::top();
        if (name == "nest") {
            Formula f = implication();
            expect(T::Comma, "','");
            if (cur().kind != T::Ident || (cur().text != "and" && cur().text != "or")) {
                fail("nest expects 'and' or 'or'");
            }
            NestOp op = cur().text == "and" ? NestOp::And : NestOp::Or;
            ++i_;
            expect(T::Comma, "','");
            result = nest(f, op, number());
        } else if (name == "end") {
            result = macro_end(number());
        } else if (name == "play") {
            const auto& d = need_desc(name);
            result = macro_play(d, number());
        } else if (name == "loss") {
            Term role = ground_term();
            expect(T::Comma, "','");
            int n = number();
            if (desc_ && !std::binary_search(desc_->roles().begin(), desc_->roles().end(), role)) {
                throw GtlError("loss: " + role.to_string() + " is not a role");
            }
            result = macro_loss(role, n);
        } else if (name == "static") {
            Term f = ground_term();
            expect(T::Comma, "','");
            result = macro_static(f, number());
        } else if (name == "turntaking") {
            Term f1 = ground_term();
            expect(T::Comma, "','");
            Term f2 = ground_term();
            expect(T::Comma, "','");
            result = macro_turntaking(f1, f2, number());
        }
        expect(T::RParen, "')'");
        if (desc_) {
            for (const auto& a : result.atoms()) {
                check_gtl_atom(*desc_, a);
            }
        }
        return result;
    }
};

} // namespace

Formula parse_gtl(std::string_view text, const GameDescription* desc) {
    return GtlParser(text, desc).parse_all();
}

Formula build_macro(const std::string& name, const std::vector<std::string>& args, const GameDescription& desc) {
    if (!is_macro_name(name)) {
        throw GtlError("unknown macro " + name);
    }
    if (name == "play") {
        if (args.size() != 1) {
            throw GtlError("play takes one argument");
        }
        int n = 0;
        try {
            n = std::stoi(args[0]);
        } catch (const std::exception&) {
            throw GtlError("play: bad count " + args[0]);
        }
        return macro_play(desc, n);
    }
    std::string text = name + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        text += (i ? "," : "") + args[i];
    }
    text += ")";
    // build via the parser, but without letting a same-named predicate shadow the macro
    GtlParser p(text, nullptr);
    return p.parse_all();
}

} // namespace gdlr
