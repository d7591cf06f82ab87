#include "gdlr/term.hpp"

#include <cctype>
#include <stdexcept>

namespace gdlr {

Term Term::symbol(std::string name) {
    Term t;
    t.kind_ = Kind::Symbol;
    t.name_ = std::move(name);
    return t;
}

Term Term::variable(std::string name) {
    Term t;
    t.kind_ = Kind::Variable;
    t.name_ = std::move(name);
    return t;
}

Term Term::compound(std::string functor, std::vector<Term> args) {
    Term t;
    t.kind_ = Kind::Compound;
    t.name_ = std::move(functor);
    t.args_ = std::move(args);
    return t;
}

Term Term::tuple(std::vector<Term> items) {
    Term t;
    t.kind_ = Kind::Tuple;
    t.args_ = std::move(items);
    return t;
}

Term Term::make(std::string functor, std::vector<Term> args) {
    if (args.empty()) {
        return symbol(std::move(functor));
    }
    return compound(std::move(functor), std::move(args));
}

bool Term::is_ground() const {
    if (kind_ == Kind::Variable) {
        return false;
    }
    for (const auto& a : args_) {
        if (!a.is_ground()) {
            return false;
        }
    }
    return true;
}

Term Term::with_arg(Term extra) const {
    if (kind_ == Kind::Variable || kind_ == Kind::Tuple) {
        throw std::logic_error("cannot extend " + to_string() + " with an argument");
    }
    auto args = args_;
    args.push_back(std::move(extra));
    return compound(name_, std::move(args));
}

namespace {

void write(std::string& out, const Term& t) {
    if (t.kind() != Term::Kind::Tuple) {
        out += t.name();
    }
    if (t.kind() == Term::Kind::Compound || t.kind() == Term::Kind::Tuple) {
        out += '(';
        for (std::size_t i = 0; i < t.args().size(); ++i) {
            if (i > 0) {
                out += ',';
            }
            write(out, t.args()[i]);
        }
        // one-element tuples need the trailing comma to stay tuples
        if (t.kind() == Term::Kind::Tuple && t.args().size() == 1) {
            out += ',';
        }
        out += ')';
    }
}

} // namespace

std::string Term::to_string() const {
    std::string out;
    write(out, *this);
    return out;
}

std::size_t Term::hash() const noexcept {
    std::size_t h = std::hash<std::string>{}(name_) ^ (static_cast<std::size_t>(kind_) * 0x9e3779b97f4a7c15ull);
    for (const auto& a : args_) {
        h ^= a.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

bool operator==(const Term& a, const Term& b) noexcept {
    return a.kind_ == b.kind_ && a.name_ == b.name_ && a.args_ == b.args_;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) noexcept {
    if (auto c = a.name_.compare(b.name_); c != 0) {
        return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    std::size_t n = std::min(a.args_.size(), b.args_.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = a.args_[i] <=> b.args_[i]; c != 0) {
            return c;
        }
    }
    if (auto c = a.args_.size() <=> b.args_.size(); c != 0) {
        return c;
    }
    return a.kind_ <=> b.kind_;
}

std::ostream& operator<<(std::ostream& os, const Term& t) {
    return os << t.to_string();
}

namespace {

class TermReader {
public:
    explicit TermReader(std::string_view text) : s_(text) {}

    Term read_all() {
        Term t = read();
        skip_ws();
        if (pos_ != s_.size()) {
            fail("trailing input");
        }
        return t;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("malformed term '" + std::string(s_) + "': " + what + " at offset " +
                                    std::to_string(pos_));
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    std::vector<Term> read_list(bool& trailing_comma) {
        std::vector<Term> items;
        trailing_comma = false;
        if (accept(')')) {
            return items;
        }
        while (true) {
            items.push_back(read());
            if (accept(')')) {
                return items;
            }
            if (!accept(',')) {
                fail("expected ',' or ')'");
            }
            if (accept(')')) {
                trailing_comma = true;
                return items;
            }
        }
    }

    Term read() {
        skip_ws();
        if (pos_ >= s_.size()) {
            fail("unexpected end");
        }
        bool trailing = false;
        if (s_[pos_] == '(') {
            ++pos_;
            auto items = read_list(trailing);
            if (items.size() == 1 && !trailing) {
                return items.front();
            }
            return Term::tuple(std::move(items));
        }
        std::size_t start = pos_;
        if (s_[pos_] == '-') {
            ++pos_;
        }
        while (pos_ < s_.size() && ident_char(s_[pos_])) {
            ++pos_;
        }
        if (pos_ == start) {
            fail("expected identifier");
        }
        std::string name(s_.substr(start, pos_ - start));
        if (pos_ < s_.size() && s_[pos_] == '(') {
            ++pos_;
            auto args = read_list(trailing);
            return Term::make(std::move(name), std::move(args));
        }
        char first = name[0];
        if (std::isupper(static_cast<unsigned char>(first)) || first == '_') {
            return Term::variable(std::move(name));
        }
        return Term::symbol(std::move(name));
    }
};

} // namespace

Term parse_term(std::string_view text) {
    return TermReader(text).read_all();
}

} // namespace gdlr
