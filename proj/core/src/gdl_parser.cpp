#include "gdlr/gdl_parser.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace gdlr {

std::string SourceRule::to_string() const {
    Rule r;
    r.head = head;
    r.body = body;
    return r.to_string();
}

namespace {

enum class Tok { Ident, LParen, RParen, Comma, Dot, If, Label, Directive, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    SourcePos pos;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip();
        Token t;
        t.pos = {line_, col_};
        if (i_ >= src_.size()) {
            t.kind = Tok::End;
            return t;
        }
        char c = src_[i_];
        if (is_ident(c)) {
            std::size_t start = i_;
            while (i_ < src_.size() && is_ident(src_[i_])) {
                advance();
            }
            t.kind = Tok::Ident;
            t.text = std::string(src_.substr(start, i_ - start));
            return t;
        }
        switch (c) {
        case '(':
            advance();
            t.kind = Tok::LParen;
            return t;
        case ')':
            advance();
            t.kind = Tok::RParen;
            return t;
        case ',':
            advance();
            t.kind = Tok::Comma;
            return t;
        case '.':
            advance();
            t.kind = Tok::Dot;
            return t;
        case ':':
            advance();
            if (i_ < src_.size() && src_[i_] == '-') {
                advance();
                t.kind = Tok::If;
                return t;
            }
            throw ParseError("expected ':-'", t.pos);
        case '[': {
            advance();
            std::size_t start = i_;
            while (i_ < src_.size() && src_[i_] != ']' && src_[i_] != '\n') {
                advance();
            }
            if (i_ >= src_.size() || src_[i_] != ']') {
                throw ParseError("unterminated rule label", t.pos);
            }
            t.text = std::string(src_.substr(start, i_ - start));
            advance();
            t.kind = Tok::Label;
            return t;
        }
        case '#': {
            advance();
            std::size_t start = i_;
            while (i_ < src_.size() && is_ident(src_[i_])) {
                advance();
            }
            t.text = std::string(src_.substr(start, i_ - start));
            t.kind = Tok::Directive;
            return t;
        }
        default:
            break;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", t.pos);
    }

private:
    std::string_view src_;
    std::size_t i_ = 0;
    int line_ = 1;
    int col_ = 1;

    static bool is_ident(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    void advance() {
        if (src_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }

    void skip() {
        while (i_ < src_.size()) {
            char c = src_[i_];
            if (c == '%') {
                while (i_ < src_.size() && src_[i_] != '\n') {
                    advance();
                }
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }
};

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) { shift(); }

    ParsedGame parse() {
        ParsedGame game;
        std::string label;
        while (cur_.kind != Tok::End) {
            if (cur_.kind == Tok::Label) {
                label = cur_.text;
                shift();
                continue;
            }
            if (cur_.kind == Tok::Directive) {
                directive(game);
                continue;
            }
            SourceRule r = rule();
            r.label = label;
            game.rules.push_back(std::move(r));
        }
        return game;
    }

private:
    Lexer lex_;
    Token cur_;
    SourcePos empty_pos_{};

    void shift() { cur_ = lex_.next(); }

    Token expect(Tok kind, const char* what) {
        if (cur_.kind != kind) {
            throw ParseError(std::string("expected ") + what, cur_.pos);
        }
        Token t = cur_;
        shift();
        return t;
    }

    void directive(ParsedGame& game) {
        Token d = cur_;
        if (d.text != "empty") {
            throw ParseError("unknown directive '#" + d.text + "'", d.pos);
        }
        shift();
        Token n = expect(Tok::Ident, "rule count after #empty");
        int value = 0;
        try {
            std::size_t used = 0;
            value = std::stoi(n.text, &used);
            if (used != n.text.size() || value < 0) {
                throw std::invalid_argument("");
            }
        } catch (const std::exception&) {
            throw ParseError("#empty expects a non-negative integer", n.pos);
        }
        expect(Tok::Dot, "'.' after #empty directive");
        if (game.empty_count) {
            throw ParseError("duplicate #empty directive (first at line " + std::to_string(empty_pos_.line) + ")",
                             d.pos);
        }
        game.empty_count = value;
        empty_pos_ = d.pos;
    }

    Term term() {
        Token id = expect(Tok::Ident, "term");
        if (cur_.kind == Tok::LParen) {
            shift();
            std::vector<Term> args;
            args.push_back(term());
            while (cur_.kind == Tok::Comma) {
                shift();
                args.push_back(term());
            }
            expect(Tok::RParen, "')'");
            return Term::compound(id.text, std::move(args));
        }
        char first = id.text[0];
        if (std::isupper(static_cast<unsigned char>(first)) || first == '_') {
            return Term::variable(id.text);
        }
        return Term::symbol(id.text);
    }

    Term atom() {
        SourcePos pos = cur_.pos;
        Term t = term();
        if (t.is_variable()) {
            throw ParseError("variable '" + t.name() + "' used as an atom", pos);
        }
        if (!t.name().empty() && std::isdigit(static_cast<unsigned char>(t.name()[0]))) {
            throw ParseError("number '" + t.name() + "' used as an atom", pos);
        }
        return t;
    }

    Literal literal() {
        if (cur_.kind == Tok::Ident && cur_.text == "not") {
            shift();
            return Literal::neg(atom());
        }
        return Literal::pos(atom());
    }

    SourceRule rule() {
        SourceRule r;
        r.pos = cur_.pos;
        r.head = atom();
        if (r.head.name() == "not") {
            throw ParseError("'not' cannot start a rule head", r.pos);
        }
        if (cur_.kind == Tok::If) {
            shift();
            if (cur_.kind == Tok::Dot || cur_.kind == Tok::End) {
                throw ParseError("empty body after ':-'", cur_.pos);
            }
            r.body.push_back(literal());
            while (cur_.kind == Tok::Comma) {
                shift();
                r.body.push_back(literal());
            }
        }
        expect(Tok::Dot, "'.' at end of rule");
        return r;
    }
};

} // namespace

ParsedGame parse_gdl(std::string_view text) {
    return Parser(text).parse();
}

ParsedGame parse_gdl_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_gdl(ss.str());
}

} // namespace gdlr
