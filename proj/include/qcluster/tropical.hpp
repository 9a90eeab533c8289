#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "qcluster/laurent.hpp"
#include "qcluster/symbol.hpp"

namespace qcluster {

/// Laurent monomial in the non-q coefficient symbols; an element of the
/// tropical semifield, where ⊕ takes componentwise exponent minima.
/// Exponents are stored doubled, like everywhere else in this library.
class TropMonomial {
public:
    TropMonomial() = default;

    static TropMonomial one() { return {}; }

    static TropMonomial of(Symbol s, std::int64_t doubled_exp) {
        if (s.is_q()) throw SymbolError("q is not a tropical symbol");
        TropMonomial m;
        m.mono_.mul_in(s, doubled_exp);
        return m;
    }

    static TropMonomial symbol(Symbol s, std::int64_t power = 1) { return of(s, 2 * power); }

    static TropMonomial from_sym_monomial(const SymMonomial& m) {
        TropMonomial t;
        for (const auto& [s, e] : m.entries()) {
            if (s.is_q()) throw SymbolError("q is not a tropical symbol");
            t.mono_.mul_in(s, e);
        }
        return t;
    }

    const SymMonomial& monomial() const { return mono_; }
    bool is_one() const { return mono_.is_unit(); }
    std::int64_t exponent2(Symbol s) const { return mono_.exponent2(s); }

    TropMonomial& mul_in(Symbol s, std::int64_t doubled_exp) {
        if (s.is_q()) throw SymbolError("q is not a tropical symbol");
        mono_.mul_in(s, doubled_exp);
        return *this;
    }

    friend TropMonomial operator*(const TropMonomial& a, const TropMonomial& b) {
        TropMonomial r;
        r.mono_ = a.mono_ * b.mono_;
        return r;
    }

    TropMonomial inverse() const {
        TropMonomial r;
        r.mono_ = mono_.inverse();
        return r;
    }

    friend TropMonomial operator/(const TropMonomial& a, const TropMonomial& b) {
        return a * b.inverse();
    }

    friend bool operator==(const TropMonomial&, const TropMonomial&) = default;
    friend auto operator<=>(const TropMonomial&, const TropMonomial&) = default;

private:
    SymMonomial mono_;
};

/// Tropical addition: componentwise min of exponents (absent symbols count 0).
inline TropMonomial trop_add(const TropMonomial& a, const TropMonomial& b) {
    std::map<Symbol, char> support;
    for (const auto& [s, e] : a.monomial().entries()) support[s] = 1;
    for (const auto& [s, e] : b.monomial().entries()) support[s] = 1;
    TropMonomial r;
    for (const auto& [s, unused] : support) {
        std::int64_t m = std::min(a.monomial().exponent2(s), b.monomial().exponent2(s));
        if (m != 0) r.mul_in(s, m);
    }
    return r;
}

/// The same monomial as a one-term Laurent element.
inline LaurentElem embed_trop(const TropMonomial& m) {
    return LaurentElem::monomial(m.monomial());
}

/// Monomial-to-monomial semifield map; symbols not in the table are kept.
inline TropMonomial trop_apply(const TropMonomial& m,
                               const std::map<Symbol, TropMonomial>& assignment) {
    TropMonomial out;
    for (const auto& [s, e2] : m.monomial().entries()) {
        auto it = assignment.find(s);
        if (it == assignment.end()) {
            out.mul_in(s, e2);
        } else {
            for (const auto& [ts, te] : it->second.monomial().entries()) {
                if ((te * e2) % 2 != 0) throw SymbolError("quarter power in tropical map");
                out.mul_in(ts, te * e2 / 2);
            }
        }
    }
    return out;
}

} // namespace qcluster
