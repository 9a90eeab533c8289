#pragma once

#include <cctype>
#include <sstream>
#include <string>

#include "qcluster/laurent.hpp"
#include "qcluster/tropical.hpp"

namespace qcluster {

// Textual grammar for CLI I/O: terms joined by +/-, factors q^{n/2}, z+[j]^k,
// z-[j]^k, u[j]^k (and u+/u- variants), integer literals. Whitespace ignored.
// Doubled exponents print as ^{n/2} when odd, plain integers otherwise.

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace exprio_detail {

inline void print_exp2(std::ostream& os, std::int64_t e2) {
    if (e2 == 2) return; // power 1
    if (e2 % 2 == 0)
        os << '^' << e2 / 2;
    else
        os << "^{" << e2 << "/2}";
}

inline void print_sym_monomial(std::ostream& os, const SymMonomial& m, bool& printed_factor) {
    for (const auto& [s, e2] : m.entries()) {
        if (printed_factor) os << '*';
        os << s.name();
        print_exp2(os, e2);
        printed_factor = true;
    }
}

} // namespace exprio_detail

inline std::string to_string(const SymMonomial& m) {
    std::ostringstream os;
    bool printed = false;
    exprio_detail::print_sym_monomial(os, m, printed);
    if (!printed) os << '1';
    return os.str();
}

inline std::string to_string(const TropMonomial& m) { return to_string(m.monomial()); }

inline std::string to_string(const LaurentElem& a) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    // Iterate highest term first for stable, human-friendly ordering.
    for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it) {
        BigInt c = it->second;
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        BigInt ac = c < 0 ? BigInt(-c) : c;
        bool printed = false;
        if (ac != 1 || it->first.is_unit()) {
            os << ac;
            printed = true;
        }
        exprio_detail::print_sym_monomial(os, it->first, printed);
    }
    return os.str();
}

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    LaurentElem parse() {
        LaurentElem r = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input");
        return r;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError("parse error at offset " + std::to_string(pos_) + ": " + msg);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    LaurentElem parse_sum() {
        LaurentElem acc;
        bool negate = false;
        if (eat('-'))
            negate = true;
        else
            eat('+');
        acc = negate ? -parse_product() : parse_product();
        while (true) {
            if (eat('+'))
                acc += parse_product();
            else if (eat('-'))
                acc -= parse_product();
            else
                break;
        }
        return acc;
    }

    LaurentElem parse_product() {
        LaurentElem acc = parse_factor();
        while (true) {
            skip_ws();
            char c = peek();
            if (c == '*') {
                eat('*');
                acc *= parse_factor();
            } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '(') {
                acc *= parse_factor(); // juxtaposition
            } else {
                break;
            }
        }
        return acc;
    }

    std::int64_t parse_int() {
        skip_ws();
        bool neg = false;
        if (eat('-')) neg = true;
        skip_ws();
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected integer");
        std::int64_t v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            v = v * 10 + (text_[pos_++] - '0');
        return neg ? -v : v;
    }

    // Exponent after '^': either n, or {n/2} (doubled value n).
    std::int64_t parse_exp2() {
        if (eat('{')) {
            std::int64_t n = parse_int();
            if (!eat('/')) fail("expected / in fractional exponent");
            std::int64_t d = parse_int();
            if (d != 2) fail("only halves are supported");
            if (!eat('}')) fail("expected }");
            return n;
        }
        return 2 * parse_int();
    }

    LaurentElem parse_factor() {
        skip_ws();
        if (eat('(')) {
            LaurentElem inner = parse_sum();
            if (!eat(')')) fail("expected )");
            if (eat('^')) {
                std::int64_t e2 = parse_exp2();
                if (e2 % 2 != 0) fail("half power of a parenthesized expression");
                std::int64_t k = e2 / 2;
                if (k < 0) fail("negative power of a parenthesized expression");
                LaurentElem r = LaurentElem::one();
                for (std::int64_t i = 0; i < k; ++i) r *= inner;
                return r;
            }
            return inner;
        }
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            BigInt v = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                v = v * 10 + (text_[pos_++] - '0');
            return LaurentElem(v);
        }
        if (c == 'q') {
            ++pos_;
            std::int64_t e2 = eat('^') ? parse_exp2() : 2;
            return LaurentElem::monomial(SymMonomial::of(Symbol::q(), e2));
        }
        if (c == 'z' || c == 'u') {
            ++pos_;
            Symbol::Kind kind;
            if (c == 'z') {
                if (eat('+'))
                    kind = Symbol::Kind::ZPlus;
                else if (eat('-'))
                    kind = Symbol::Kind::ZMinus;
                else
                    fail("expected z+ or z-");
            } else {
                if (eat('+'))
                    kind = Symbol::Kind::UPlus;
                else if (eat('-'))
                    kind = Symbol::Kind::UMinus;
                else
                    kind = Symbol::Kind::U;
            }
            if (!eat('[')) fail("expected [");
            std::int64_t j = parse_int();
            if (!eat(']')) fail("expected ]");
            std::int64_t e2 = eat('^') ? parse_exp2() : 2;
            return LaurentElem::monomial(SymMonomial::of(Symbol{kind, j}, e2));
        }
        fail("expected a factor");
    }
};

inline LaurentElem parse_laurent(std::string_view text) { return ExprParser(text).parse(); }

inline TropMonomial parse_trop(std::string_view text) {
    LaurentElem e = parse_laurent(text);
    auto t = e.as_single_term();
    if (!t || t->second != 1) throw ParseError("not a coefficient monomial: " + std::string(text));
    return TropMonomial::from_sym_monomial(t->first);
}

} // namespace qcluster
