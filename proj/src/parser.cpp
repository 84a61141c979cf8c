#include "diffalg/parser.hpp"
#include "diffalg/errors.hpp"

#include <cctype>
#include <sstream>

namespace diffalg {

namespace {

bool isIdentStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool isIdentChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool isDigit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

class Parser {
public:
    Parser(const std::string& text, RingPtr ring, std::size_t line)
        : s_(text), ring_(std::move(ring)), line_(line) {}

    DiffPoly parse()
    {
        skip();
        if (pos_ == s_.size())
            fail("empty expression");
        DiffPoly p = expr();
        skip();
        if (pos_ != s_.size())
            fail(std::string("unexpected '") + s_[pos_] + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, pos_ + 1); }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c))
            fail(std::string("expected '") + c + "'");
    }

    mpz_class integer()
    {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && isDigit(s_[pos_]))
            ++pos_;
        if (start == pos_)
            fail("expected an integer");
        return mpz_class(s_.substr(start, pos_ - start));
    }

    std::int64_t smallInt(const char* what)
    {
        std::size_t at = pos_;
        mpz_class v = integer();
        if (!v.fits_slong_p() || v > 1'000'000'000) {
            pos_ = at;
            fail(std::string(what) + " too large");
        }
        return v.get_si();
    }

    DiffPoly expr()
    {
        skip();
        bool neg = false;
        if (accept('-'))
            neg = true;
        else
            accept('+');
        DiffPoly acc = term();
        if (neg)
            acc = -acc;
        for (;;) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    DiffPoly term()
    {
        DiffPoly acc = power();
        for (;;) {
            if (accept('*')) {
                acc *= power();
            } else if (accept('/')) {
                std::size_t at = pos_;
                DiffPoly d = power();
                if (!d.isConstant() || d.isZero()) {
                    pos_ = at;
                    fail("division is only allowed by a nonzero constant");
                }
                acc = Rational(1 / d.constantTerm()) * acc;
            } else {
                return acc;
            }
        }
    }

    DiffPoly power()
    {
        DiffPoly base = atom();
        if (accept('^')) {
            skip();
            // `(...)^(k)` is a parenthesized exponent when not directly after a name.
            bool paren = accept('(');
            std::int64_t e = smallInt("exponent");
            if (paren)
                expect(')');
            if (e > 10000)
                fail("exponent too large");
            base = base.pow(static_cast<std::uint32_t>(e));
        }
        return base;
    }

    DiffPoly atom()
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end of expression");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            DiffPoly p = expr();
            expect(')');
            return p;
        }
        if (isDigit(c))
            return DiffPoly::constant(ring_, Rational(integer()));
        if (isIdentStart(c))
            return derivative();
        fail(std::string("unexpected '") + c + "'");
    }

    DiffPoly derivative()
    {
        std::size_t start = pos_;
        while (pos_ < s_.size() && isIdentChar(s_[pos_]))
            ++pos_;
        std::string name = s_.substr(start, pos_ - start);
        auto var = ring_->indexOf(name);
        if (!var) {
            pos_ = start;
            fail("unknown variable '" + name + "'");
        }
        std::int64_t order = 0;
        if (pos_ + 1 < s_.size() && s_[pos_] == '^' && s_[pos_ + 1] == '(') {
            pos_ += 2;
            order = smallInt("derivative order");
            expect(')');
        } else {
            while (pos_ < s_.size() && s_[pos_] == '\'') {
                ++order;
                ++pos_;
            }
        }
        return DiffPoly::derivative(ring_, *var, order);
    }

    const std::string& s_;
    RingPtr ring_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

std::string trim(const std::string& s)
{
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

bool validIdentifier(const std::string& s)
{
    if (s.empty() || !isIdentStart(s[0]))
        return false;
    for (char c : s)
        if (!isIdentChar(c))
            return false;
    return true;
}

} // namespace

DiffPoly parsePolynomial(const std::string& text, const RingPtr& ring)
{
    return Parser(text, ring, 1).parse();
}

std::vector<std::string> scanIdentifiers(const std::string& text)
{
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (isIdentStart(text[i])) {
            std::size_t j = i;
            while (j < text.size() && isIdentChar(text[j]))
                ++j;
            std::string name = text.substr(i, j - i);
            if (std::find(out.begin(), out.end(), name) == out.end())
                out.push_back(name);
            i = j;
        } else if (isDigit(text[i])) {
            // skip whole numbers so `2x` style typos don't invent names from digits
            while (i < text.size() && isIdentChar(text[i]))
                ++i;
        } else {
            ++i;
        }
    }
    return out;
}

std::vector<std::string> splitVarList(const std::string& list)
{
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        std::string t = trim(cur);
        cur.clear();
        if (t.empty())
            return;
        if (!validIdentifier(t))
            throw Error("invalid variable name '" + t + "'");
        out.push_back(t);
    };
    for (char c : list) {
        if (c == ',' || c == ' ' || c == '\t')
            flush();
        else
            cur += c;
    }
    flush();
    return out;
}

ParsedSystem parseSystem(const std::string& text, const std::optional<std::vector<std::string>>& declared)
{
    struct Line {
        std::size_t number;
        std::size_t offset;
        std::string label;
        std::string body;
    };
    std::vector<Line> lines;
    std::optional<std::vector<std::string>> varsLine;

    std::istringstream in(text);
    std::string raw;
    std::size_t lineNo = 0;
    while (std::getline(in, raw)) {
        ++lineNo;
        if (auto hash = raw.find('#'); hash != std::string::npos)
            raw.erase(hash);
        std::string t = trim(raw);
        if (t.empty())
            continue;
        if (t.rfind("vars", 0) == 0 && (t.size() == 4 || !isIdentChar(t[4]))) {
            if (varsLine)
                throw ParseError("duplicate vars line", lineNo, 1);
            if (!lines.empty())
                throw ParseError("vars line must precede the equations", lineNo, 1);
            try {
                varsLine = splitVarList(t.substr(4));
            } catch (const Error& e) {
                throw ParseError(e.what(), lineNo, 1);
            }
            continue;
        }
        Line l{lineNo, 0, "", raw};
        if (auto def = raw.find(":="); def != std::string::npos) {
            l.label = trim(raw.substr(0, def));
            if (!validIdentifier(l.label))
                throw ParseError("invalid equation label '" + l.label + "'", lineNo, 1);
            l.body = raw.substr(def + 2);
            l.offset = def + 2;
        }
        lines.push_back(std::move(l));
    }

    std::vector<std::string> names;
    if (declared)
        names = *declared;
    else if (varsLine)
        names = *varsLine;
    else
        for (const auto& l : lines)
            for (auto& n : scanIdentifiers(l.body))
                if (std::find(names.begin(), names.end(), n) == names.end())
                    names.push_back(n);

    ParsedSystem sys;
    sys.ring = Ring::make(names);
    for (const auto& l : lines) {
        try {
            sys.equations.push_back(Parser(l.body, sys.ring, l.number).parse());
        } catch (const ParseError& e) {
            throw ParseError(std::string(e.what()).substr(std::string(e.what()).find(": ") + 2), l.number,
                             e.column() + l.offset);
        }
        sys.labels.push_back(l.label.empty() ? "u" + std::to_string(sys.equations.size()) : l.label);
    }
    return sys;
}

} // namespace diffalg
