#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qcluster/symbol.hpp"

namespace qcluster {

using BigInt = boost::multiprecision::cpp_int;

struct SymbolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Monomial in the coefficient symbols. All exponents are stored doubled so
/// that q^{1/2} (exponent 1) and half-integer u-powers are exact integers.
/// Entries are sorted by symbol and never zero.
class SymMonomial {
public:
    SymMonomial() = default;

    static SymMonomial unit() { return {}; }

    static SymMonomial of(Symbol s, std::int64_t doubled_exp) {
        SymMonomial m;
        if (doubled_exp != 0) m.entries_.push_back({s, doubled_exp});
        return m;
    }

    const std::vector<std::pair<Symbol, std::int64_t>>& entries() const { return entries_; }
    bool is_unit() const { return entries_.empty(); }

    std::int64_t exponent2(Symbol s) const {
        for (const auto& [sym, e] : entries_)
            if (sym == s) return e;
        return 0;
    }

    SymMonomial& mul_in(Symbol s, std::int64_t doubled_exp) {
        if (doubled_exp == 0) return *this;
        auto it = std::lower_bound(entries_.begin(), entries_.end(), s,
                                   [](const auto& a, Symbol b) { return a.first < b; });
        if (it != entries_.end() && it->first == s) {
            it->second += doubled_exp;
            if (it->second == 0) entries_.erase(it);
        } else {
            entries_.insert(it, {s, doubled_exp});
        }
        return *this;
    }

    friend SymMonomial operator*(const SymMonomial& a, const SymMonomial& b) {
        SymMonomial r = a;
        for (const auto& [s, e] : b.entries_) r.mul_in(s, e);
        return r;
    }

    SymMonomial inverse() const {
        SymMonomial r;
        r.entries_ = entries_;
        for (auto& [s, e] : r.entries_) e = -e;
        return r;
    }

    std::int64_t degree2() const {
        std::int64_t d = 0;
        for (const auto& [s, e] : entries_) d += e;
        return d;
    }

    friend auto operator<=>(const SymMonomial&, const SymMonomial&) = default;

private:
    std::vector<std::pair<Symbol, std::int64_t>> entries_;
};

/// Graded-lex order on symbol monomials: total doubled degree first, then the
/// earliest symbol with differing exponent decides. Multiplicative, so it is a
/// sound term order for the exact-division loop.
struct SymMonoGrlex {
    bool operator()(const SymMonomial& a, const SymMonomial& b) const {
        std::int64_t da = a.degree2(), db = b.degree2();
        if (da != db) return da < db;
        auto ia = a.entries().begin(), ea = a.entries().end();
        auto ib = b.entries().begin(), eb = b.entries().end();
        while (ia != ea && ib != eb) {
            if (ia->first < ib->first) return ia->second < 0;
            if (ib->first < ia->first) return 0 < ib->second;
            if (ia->second != ib->second) return ia->second < ib->second;
            ++ia;
            ++ib;
        }
        if (ia != ea) return ia->second < 0;
        if (ib != eb) return 0 < ib->second;
        return false;
    }
};

/// Exact Laurent polynomial over Z in q^{1/2} and the named z/u symbols.
/// Canonical form: a sorted term map with no zero coefficients.
class LaurentElem {
public:
    using TermMap = std::map<SymMonomial, BigInt, SymMonoGrlex>;

    LaurentElem() = default;
    LaurentElem(int n) { add_term(SymMonomial::unit(), BigInt(n)); } // NOLINT(google-explicit-constructor)
    LaurentElem(BigInt n) { add_term(SymMonomial::unit(), std::move(n)); } // NOLINT

    static LaurentElem zero() { return {}; }
    static LaurentElem one() { return LaurentElem(1); }

    /// q^{n/2} where n is the doubled exponent.
    static LaurentElem q_half(std::int64_t n) {
        LaurentElem r;
        r.add_term(SymMonomial::of(Symbol::q(), n), 1);
        return r;
    }

    static LaurentElem symbol(Symbol s, std::int64_t power = 1) {
        LaurentElem r;
        r.add_term(SymMonomial::of(s, 2 * power), 1);
        return r;
    }

    static LaurentElem monomial(SymMonomial m, BigInt c = 1) {
        LaurentElem r;
        r.add_term(std::move(m), std::move(c));
        return r;
    }

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->first.is_unit() && terms_.begin()->second == 1;
    }

    /// Single term? Returns it if so.
    std::optional<std::pair<SymMonomial, BigInt>> as_single_term() const {
        if (terms_.size() != 1) return std::nullopt;
        return *terms_.begin();
    }

    void add_term(SymMonomial m, BigInt c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(std::move(m), std::move(c));
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    friend LaurentElem operator+(const LaurentElem& a, const LaurentElem& b) {
        LaurentElem r = a;
        for (const auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }

    friend LaurentElem operator-(const LaurentElem& a) {
        LaurentElem r = a;
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }

    friend LaurentElem operator-(const LaurentElem& a, const LaurentElem& b) { return a + (-b); }

    friend LaurentElem operator*(const LaurentElem& a, const LaurentElem& b) {
        LaurentElem r;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
        return r;
    }

    LaurentElem& operator+=(const LaurentElem& o) { return *this = *this + o; }
    LaurentElem& operator-=(const LaurentElem& o) { return *this = *this - o; }
    LaurentElem& operator*=(const LaurentElem& o) { return *this = *this * o; }

    friend bool operator==(const LaurentElem&, const LaurentElem&) = default;

    /// All integer coefficients nonnegative (membership in Z^+_{q,W}).
    bool is_nonnegative() const {
        for (const auto& [m, c] : terms_)
            if (c < 0) return false;
        return true;
    }

private:
    TermMap terms_;
};

inline LaurentElem laurent_add(const LaurentElem& a, const LaurentElem& b) { return a + b; }
inline LaurentElem laurent_mul(const LaurentElem& a, const LaurentElem& b) { return a * b; }

/// Simultaneous substitution. Values must not mention substituted symbols;
/// q may only be reassigned to a power of q.
inline LaurentElem specialize(const LaurentElem& a,
                              const std::map<Symbol, LaurentElem>& assignment) {
    for (const auto& [s, v] : assignment) {
        for (const auto& [m, c] : v.terms())
            for (const auto& [sym, e] : m.entries())
                if (assignment.count(sym))
                    throw SymbolError("cyclic assignment through " + sym.name());
        if (s.is_q()) {
            for (const auto& [m, c] : v.terms())
                for (const auto& [sym, e] : m.entries())
                    if (!sym.is_q()) throw SymbolError("q may only be assigned a power of q");
        }
    }
    // Substituted symbols enter with doubled exponents; an odd doubled exponent
    // needs a square root of the value, which only exists for single monomials.
    auto half_power = [](const LaurentElem& v, std::int64_t e2) -> LaurentElem {
        if (e2 % 2 == 0) {
            LaurentElem r = LaurentElem::one();
            std::int64_t k = e2 / 2;
            LaurentElem base = v;
            if (k < 0) {
                auto t = v.as_single_term();
                if (!t || !(t->second == 1 || t->second == -1))
                    throw SymbolError("cannot invert a non-monomial substitution value");
                base = LaurentElem::monomial(t->first.inverse(), t->second);
                k = -k;
            }
            for (std::int64_t i = 0; i < k; ++i) r *= base;
            return r;
        }
        auto t = v.as_single_term();
        if (!t || t->second != 1)
            throw SymbolError("half-integer power of a non-monomial substitution value");
        SymMonomial m;
        for (const auto& [sym, e] : t->first.entries()) {
            if ((e * e2) % 2 != 0) throw SymbolError("substitution would need a quarter power");
            m.mul_in(sym, e * e2 / 2);
        }
        return LaurentElem::monomial(m);
    };
    LaurentElem out;
    for (const auto& [m, c] : a.terms()) {
        LaurentElem term = LaurentElem(c);
        for (const auto& [sym, e2] : m.entries()) {
            auto it = assignment.find(sym);
            if (it == assignment.end()) {
                term *= LaurentElem::monomial(SymMonomial::of(sym, e2));
            } else {
                term *= half_power(it->second, e2);
            }
        }
        out += term;
    }
    return out;
}

/// Exact division, Laurent-aware: both sides are shifted to honest polynomial
/// support, then divided by leading-term elimination. Throws if not exact.
struct NotDivisible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline LaurentElem laurent_divide_exact(const LaurentElem& num, const LaurentElem& den) {
    if (den.is_zero()) throw NotDivisible("division by zero");
    if (num.is_zero()) return LaurentElem::zero();
    if (auto t = den.as_single_term()) {
        LaurentElem r;
        SymMonomial inv = t->first.inverse();
        for (const auto& [m, c] : num.terms()) {
            if (c % t->second != 0) throw NotDivisible("coefficient not divisible");
            r.add_term(m * inv, c / t->second);
        }
        return r;
    }
    LaurentElem q;
    const auto& dlead = *den.terms().rbegin();
    LaurentElem rem = num;
    SymMonoGrlex less;
    std::size_t budget = 16 * (num.size() + den.size()) * (num.size() + den.size()) + 4096;
    while (!rem.is_zero()) {
        if (budget-- == 0) throw NotDivisible("division budget exceeded");
        auto rlead = *rem.terms().rbegin();
        if (rlead.second % dlead.second != 0) throw NotDivisible("leading coefficient");
        SymMonomial qm = rlead.first * dlead.first.inverse();
        BigInt qc = rlead.second / dlead.second;
        q.add_term(qm, qc);
        LaurentElem sub;
        for (const auto& [m, c] : den.terms()) sub.add_term(m * qm, c * qc);
        rem -= sub;
        if (!rem.is_zero() && !less(rem.terms().rbegin()->first, rlead.first))
            throw NotDivisible("leading term did not decrease");
    }
    return q;
}

} // namespace qcluster
