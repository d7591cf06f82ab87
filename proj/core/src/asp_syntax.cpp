#include "gdlr/asp_syntax.hpp"

#include <cctype>

namespace gdlr::asp {

Rule Rule::fact(Term a) {
    Rule r;
    r.head.kind = Head::Kind::Atom;
    r.head.atom = std::move(a);
    return r;
}

Rule Rule::normal(Term a, std::vector<BodyItem> body) {
    Rule r = fact(std::move(a));
    r.body = std::move(body);
    return r;
}

Rule Rule::constraint(std::vector<BodyItem> body) {
    Rule r;
    r.body = std::move(body);
    return r;
}

Rule Rule::choice(std::optional<int> lo, std::vector<Element> els, std::optional<int> hi, std::vector<BodyItem> body) {
    Rule r;
    r.head.kind = Head::Kind::Choice;
    r.head.lower = lo;
    r.head.upper = hi;
    r.head.elements = std::move(els);
    r.body = std::move(body);
    return r;
}

Rule Rule::weak_constraint(std::vector<BodyItem> body, Weak w) {
    Rule r = constraint(std::move(body));
    r.weak = std::move(w);
    return r;
}

std::string to_string(const Literal& l) {
    if (l.cmp) {
        return l.atom.to_string() + *l.cmp + l.rhs.to_string();
    }
    return (l.naf ? "not " : "") + l.atom.to_string();
}

namespace {

std::string join_literals(const std::vector<Literal>& ls) {
    std::string out;
    for (std::size_t i = 0; i < ls.size(); ++i) {
        out += (i ? "," : "") + to_string(ls[i]);
    }
    return out;
}

std::string element_string(const Element& e) {
    std::string out = e.atom.to_string();
    if (!e.conditions.empty()) {
        out += ":" + join_literals(e.conditions);
    }
    return out;
}

std::string aggregate_string(const std::optional<int>& lo, const std::vector<Element>& els,
                             const std::optional<int>& hi) {
    std::string out = lo ? std::to_string(*lo) : "";
    out += "{";
    for (std::size_t i = 0; i < els.size(); ++i) {
        out += (i ? ";" : "") + element_string(els[i]);
    }
    out += "}";
    if (hi) {
        out += std::to_string(*hi);
    }
    return out;
}

std::string body_item_string(const BodyItem& b) {
    switch (b.kind) {
    case BodyItem::Kind::Lit:
        return to_string(b.lit);
    case BodyItem::Kind::Conditional:
        return to_string(b.lit) + ":" + join_literals(b.conditions);
    case BodyItem::Kind::Count:
        return aggregate_string(b.lower, b.elements, b.upper);
    }
    return {};
}

std::string body_string(const std::vector<BodyItem>& body) {
    std::string out;
    for (std::size_t i = 0; i < body.size(); ++i) {
        if (i) {
            // a conditional literal swallows ','-separated conditions
            out += body[i - 1].kind == BodyItem::Kind::Conditional ? "; " : ", ";
        }
        out += body_item_string(body[i]);
    }
    return out;
}

} // namespace

std::string to_string(const Rule& r) {
    std::string out;
    if (r.weak) {
        out = ":~ " + body_string(r.body) + ". [" + r.weak->weight.to_string() + "@" +
              std::to_string(r.weak->priority);
        for (const auto& t : r.weak->terms) {
            out += "," + t.to_string();
        }
        return out + "]";
    }
    switch (r.head.kind) {
    case Head::Kind::None:
        return ":- " + body_string(r.body) + ".";
    case Head::Kind::Atom:
        out = r.head.atom.to_string();
        break;
    case Head::Kind::Choice:
        out = aggregate_string(r.head.lower, r.head.elements, r.head.upper);
        break;
    }
    if (!r.body.empty()) {
        out += " :- " + body_string(r.body);
    }
    return out + ".";
}

std::string to_string(const Program& p) {
    std::string out;
    for (const auto& r : p) {
        out += to_string(r) + "\n";
    }
    return out;
}

namespace {

struct Token {
    enum class T { Ident, Var, Number, Punct, Not, End };
    T type = T::End;
    std::string text;
    int line = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip();
            Token t;
            t.line = line_;
            if (i_ >= src_.size()) {
                out.push_back(t);
                return out;
            }
            char c = src_[i_];
            if (c == '#') {
                // directive: skip to the end of the statement
                while (i_ < src_.size() && src_[i_] != '.') {
                    line_ += src_[i_] == '\n';
                    ++i_;
                }
                ++i_;
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t b = i_;
                while (i_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_')) {
                    ++i_;
                }
                t.text = std::string(src_.substr(b, i_ - b));
                if (t.text == "not") {
                    t.type = Token::T::Not;
                } else if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
                    t.type = Token::T::Var;
                } else {
                    t.type = Token::T::Ident;
                }
            } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                       (c == '-' && i_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_ + 1])))) {
                std::size_t b = i_++;
                while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) {
                    ++i_;
                }
                t.type = Token::T::Number;
                t.text = std::string(src_.substr(b, i_ - b));
            } else {
                t.type = Token::T::Punct;
                static const char* two[] = {":-", ":~", "<=", ">=", "!=", "<>"};
                for (const char* p : two) {
                    if (src_.substr(i_, 2) == p) {
                        t.text = p;
                    }
                }
                if (t.text.empty()) {
                    if (std::string_view("(),;:.{}[]@<>=").find(c) == std::string_view::npos) {
                        throw AspError("line " + std::to_string(line_) + ": unexpected character '" +
                                       std::string(1, c) + "'");
                    }
                    t.text = std::string(1, c);
                }
                i_ += t.text.size();
            }
            out.push_back(t);
        }
    }

private:
    std::string_view src_;
    std::size_t i_ = 0;
    int line_ = 1;

    void skip() {
        while (i_ < src_.size()) {
            char c = src_[i_];
            if (c == '\n') {
                ++line_;
                ++i_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++i_;
            } else if (c == '%') {
                while (i_ < src_.size() && src_[i_] != '\n') {
                    ++i_;
                }
            } else {
                return;
            }
        }
    }
};

bool is_cmp(const Token& t) {
    if (t.type != Token::T::Punct) {
        return false;
    }
    for (const char* op : {"<", ">", "<=", ">=", "=", "!=", "<>"}) {
        if (t.text == op) {
            return true;
        }
    }
    return false;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Program run() {
        Program out;
        while (peek().type != Token::T::End) {
            out.push_back(statement());
        }
        return out;
    }

private:
    std::vector<Token> toks_;
    std::size_t k_ = 0;

    const Token& peek(std::size_t ahead = 0) const {
        return toks_[std::min(k_ + ahead, toks_.size() - 1)];
    }
    bool at(std::string_view punct, std::size_t ahead = 0) const {
        return peek(ahead).type == Token::T::Punct && peek(ahead).text == punct;
    }
    [[noreturn]] void fail(const std::string& what) const {
        const Token& t = peek();
        throw AspError("line " + std::to_string(t.line) + ": expected " + what + ", got '" +
                       (t.type == Token::T::End ? std::string("end of input") : t.text) + "'");
    }
    void expect(std::string_view punct) {
        if (!at(punct)) {
            fail("'" + std::string(punct) + "'");
        }
        ++k_;
    }
    int number() {
        if (peek().type != Token::T::Number) {
            fail("a number");
        }
        return std::stoi(toks_[k_++].text);
    }

    Term term() {
        const Token& t = peek();
        switch (t.type) {
        case Token::T::Var:
            ++k_;
            return Term::variable(t.text);
        case Token::T::Number:
            ++k_;
            return Term::symbol(t.text);
        case Token::T::Ident: {
            ++k_;
            std::string name = t.text;
            if (at("(")) {
                return Term::compound(name, args());
            }
            return Term::symbol(name);
        }
        default:
            if (at("(")) {
                auto items = args();
                return items.size() == 1 ? items[0] : Term::tuple(std::move(items));
            }
            fail("a term");
        }
    }

    std::vector<Term> args() {
        expect("(");
        std::vector<Term> out{term()};
        while (at(",")) {
            ++k_;
            out.push_back(term());
        }
        expect(")");
        return out;
    }

    Term atom() {
        if (peek().type != Token::T::Ident) {
            fail("an atom");
        }
        return term();
    }

    Literal literal() {
        if (peek().type == Token::T::Not) {
            ++k_;
            return Literal::neg(atom());
        }
        Term lhs = term();
        if (is_cmp(peek())) {
            std::string op = toks_[k_++].text;
            return Literal::compare(std::move(lhs), op, term());
        }
        if (lhs.is_variable() || lhs.kind() == Term::Kind::Tuple || std::isdigit(static_cast<unsigned char>(lhs.name()[0])) ||
            lhs.name()[0] == '-') {
            fail("a comparison operator");
        }
        return Literal::pos(std::move(lhs));
    }

    std::vector<Literal> conditions() {
        std::vector<Literal> out{literal()};
        while (at(",")) {
            ++k_;
            out.push_back(literal());
        }
        return out;
    }

    Element element() {
        Element e{atom(), {}};
        if (at(":")) {
            ++k_;
            e.conditions = conditions();
        }
        return e;
    }

    void aggregate(std::optional<int>& lo, std::vector<Element>& els, std::optional<int>& hi) {
        if (peek().type == Token::T::Number) {
            lo = number();
        }
        expect("{");
        if (!at("}")) {
            els.push_back(element());
            while (at(";")) {
                ++k_;
                els.push_back(element());
            }
        }
        expect("}");
        if (peek().type == Token::T::Number) {
            hi = number();
        }
    }

    bool aggregate_ahead() const { return at("{") || (peek().type == Token::T::Number && at("{", 1)); }

    std::vector<BodyItem> body() {
        std::vector<BodyItem> out;
        while (true) {
            if (aggregate_ahead()) {
                BodyItem b;
                b.kind = BodyItem::Kind::Count;
                aggregate(b.lower, b.elements, b.upper);
                out.push_back(std::move(b));
            } else {
                Literal l = literal();
                if (at(":")) {
                    ++k_;
                    out.push_back(BodyItem::conditional(std::move(l), conditions()));
                } else {
                    out.push_back(BodyItem::literal(std::move(l)));
                }
            }
            if (at(",") || at(";")) {
                ++k_;
                continue;
            }
            return out;
        }
    }

    Rule statement() {
        Rule r;
        if (at(":-")) {
            ++k_;
            r.body = body();
            expect(".");
            return r;
        }
        if (at(":~")) {
            ++k_;
            r.body = body();
            expect(".");
            expect("[");
            Weak w;
            w.weight = term();
            if (at("@")) {
                ++k_;
                w.priority = number();
            }
            while (at(",")) {
                ++k_;
                w.terms.push_back(term());
            }
            expect("]");
            r.weak = std::move(w);
            return r;
        }
        if (aggregate_ahead()) {
            r.head.kind = Head::Kind::Choice;
            aggregate(r.head.lower, r.head.elements, r.head.upper);
        } else {
            r.head.kind = Head::Kind::Atom;
            r.head.atom = atom();
        }
        if (at(":-")) {
            ++k_;
            r.body = body();
        }
        expect(".");
        return r;
    }
};

} // namespace

Program parse_program(std::string_view text) {
    return Parser(Lexer(text).run()).run();
}

} // namespace gdlr::asp
