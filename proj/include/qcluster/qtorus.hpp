#pragma once

#include <memory>
#include <numeric>
#include <sstream>
#include <vector>

#include "qcluster/exprio.hpp"
#include "qcluster/laurent.hpp"

namespace qcluster {

struct LatticeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Lattice Z^N with an integer skew-symmetric form.
class SkewLattice {
public:
    SkewLattice(int rank, std::vector<std::vector<std::int64_t>> form)
        : rank_(rank), form_(std::move(form)) {
        if (rank_ < 0) throw LatticeError("negative rank");
        if (form_.size() != static_cast<std::size_t>(rank_)) throw LatticeError("form size");
        for (int i = 0; i < rank_; ++i) {
            if (form_[i].size() != static_cast<std::size_t>(rank_)) throw LatticeError("form size");
            for (int j = 0; j < rank_; ++j)
                if (form_[i][j] != -form_[j][i]) throw LatticeError("form is not skew-symmetric");
        }
    }

    int rank() const { return rank_; }

    std::int64_t form(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) const {
        std::int64_t s = 0;
        for (int i = 0; i < rank_; ++i) {
            if (a[i] == 0) continue;
            for (int j = 0; j < rank_; ++j) s += a[i] * form_[i][j] * b[j];
        }
        return s;
    }

    std::int64_t form_entry(int i, int j) const { return form_[i][j]; }

    friend bool operator==(const SkewLattice& a, const SkewLattice& b) {
        return a.rank_ == b.rank_ && a.form_ == b.form_;
    }

private:
    int rank_;
    std::vector<std::vector<std::int64_t>> form_;
};

using LatticeRef = std::shared_ptr<const SkewLattice>;

inline LatticeRef make_lattice(int rank, std::vector<std::vector<std::int64_t>> form) {
    return std::make_shared<SkewLattice>(rank, std::move(form));
}

/// Graded-lexicographic order on exponent vectors: compare total degree, then
/// the first differing coordinate (larger wins). Additive, total, fixed.
inline bool grlex_less(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    std::int64_t da = std::accumulate(a.begin(), a.end(), std::int64_t{0});
    std::int64_t db = std::accumulate(b.begin(), b.end(), std::int64_t{0});
    if (da != db) return da < db;
    return a < b;
}

struct GrlexLess {
    bool operator()(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) const {
        return grlex_less(a, b);
    }
};

/// Element of the based quantum torus: finite sum of basis vectors B_λ with
/// LaurentElem coefficients, where B_λ·B_μ = q^{(λ,μ)/2} B_{λ+μ}.
class TorusElem {
public:
    using Exponent = std::vector<std::int64_t>;
    using TermMap = std::map<Exponent, LaurentElem, GrlexLess>;

    TorusElem() = default;
    explicit TorusElem(LatticeRef lattice) : lattice_(std::move(lattice)) {}

    static TorusElem zero(LatticeRef lattice) { return TorusElem(std::move(lattice)); }

    static TorusElem with_term(LatticeRef lattice, Exponent lambda, LaurentElem coeff) {
        TorusElem t(std::move(lattice));
        t.check_dim(lambda);
        t.add_term(std::move(lambda), std::move(coeff));
        return t;
    }

    static TorusElem unit(LatticeRef lattice) {
        Exponent zero_vec(lattice->rank(), 0);
        return with_term(std::move(lattice), std::move(zero_vec), LaurentElem::one());
    }

    static TorusElem scalar(LatticeRef lattice, LaurentElem c) {
        Exponent zero_vec(lattice->rank(), 0);
        return with_term(std::move(lattice), std::move(zero_vec), std::move(c));
    }

    const LatticeRef& lattice() const { return lattice_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    bool is_single_term() const { return terms_.size() == 1; }

    void add_term(Exponent lambda, LaurentElem coeff) {
        if (coeff.is_zero()) return;
        auto it = terms_.find(lambda);
        if (it == terms_.end()) {
            terms_.emplace(std::move(lambda), std::move(coeff));
        } else {
            it->second += coeff;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend bool operator==(const TorusElem& a, const TorusElem& b) {
        if (a.lattice_ && b.lattice_ && !(*a.lattice_ == *b.lattice_)) return false;
        return a.terms_ == b.terms_;
    }

private:
    void check_dim(const Exponent& lambda) const {
        if (static_cast<int>(lambda.size()) != lattice_->rank())
            throw LatticeError("exponent dimension mismatch");
    }

    LatticeRef lattice_;
    TermMap terms_;
};

inline void require_same_lattice(const TorusElem& a, const TorusElem& b) {
    if (!a.lattice() || !b.lattice()) throw LatticeError("missing lattice");
    if (!(*a.lattice() == *b.lattice())) throw LatticeError("lattice mismatch");
}

/// B_x: the frame monomial at lattice point x (single term, coefficient 1).
inline TorusElem frame_monomial(const LatticeRef& lattice, std::vector<std::int64_t> x) {
    return TorusElem::with_term(lattice, std::move(x), LaurentElem::one());
}

inline TorusElem frame_basis(const LatticeRef& lattice, int i) {
    std::vector<std::int64_t> x(lattice->rank(), 0);
    x.at(i) = 1;
    return frame_monomial(lattice, std::move(x));
}

inline TorusElem qt_add(const TorusElem& a, const TorusElem& b) {
    require_same_lattice(a, b);
    TorusElem r = a;
    for (const auto& [mu, c] : b.terms()) r.add_term(mu, c);
    return r;
}

inline TorusElem qt_neg(const TorusElem& a) {
    TorusElem r(a.lattice());
    for (const auto& [mu, c] : a.terms()) r.add_term(mu, -c);
    return r;
}

inline TorusElem qt_sub(const TorusElem& a, const TorusElem& b) { return qt_add(a, qt_neg(b)); }

inline TorusElem qt_mul(const TorusElem& a, const TorusElem& b) {
    require_same_lattice(a, b);
    const SkewLattice& L = *a.lattice();
    TorusElem r(a.lattice());
    for (const auto& [la, ca] : a.terms()) {
        for (const auto& [lb, cb] : b.terms()) {
            std::vector<std::int64_t> sum(la.size());
            for (std::size_t i = 0; i < la.size(); ++i) sum[i] = la[i] + lb[i];
            LaurentElem c = ca * cb * LaurentElem::q_half(L.form(la, lb));
            r.add_term(std::move(sum), std::move(c));
        }
    }
    return r;
}

inline TorusElem qt_scale(const LaurentElem& c, const TorusElem& a) {
    TorusElem r(a.lattice());
    for (const auto& [mu, k] : a.terms()) r.add_term(mu, c * k);
    return r;
}

enum class QuotientSide {
    Left,  // returns c with c · den = num
    Right, // returns c with den · c = num
};

/// Exact division in the quantum torus. Leading-term elimination in the
/// graded-lex order; against a single-term divisor this is plain monomial
/// division and always terminates. Against other divisors the loop runs under
/// a generous budget; exceeding it reports NotDivisible.
inline TorusElem divide_exact(const TorusElem& num, const TorusElem& den,
                              QuotientSide side = QuotientSide::Left) {
    require_same_lattice(num, den);
    if (den.is_zero()) throw NotDivisible("division by zero torus element");
    const SkewLattice& L = *num.lattice();
    TorusElem quotient(num.lattice());
    TorusElem rem = num;
    const auto& dl = *den.terms().rbegin();
    std::size_t budget = 64 * (num.size() + den.size() + 8) * (num.size() + den.size() + 8);
    while (!rem.is_zero()) {
        if (budget-- == 0) throw NotDivisible("torus division budget exceeded");
        const auto rl = *rem.terms().rbegin(); // by value: rem is reassigned below
        std::vector<std::int64_t> mu(rl.first.size());
        for (std::size_t i = 0; i < mu.size(); ++i) mu[i] = rl.first[i] - dl.first[i];
        // c·B_mu · cd·B_ld = c·cd·q^{(mu,ld)/2} B_{mu+ld}  (left);
        // cd·B_ld · c·B_mu picks up q^{(ld,mu)/2}          (right).
        std::int64_t tw = side == QuotientSide::Left ? L.form(mu, dl.first) : L.form(dl.first, mu);
        LaurentElem c;
        try {
            c = laurent_divide_exact(rl.second, dl.second * LaurentElem::q_half(tw));
        } catch (const NotDivisible&) {
            throw NotDivisible("coefficient not divisible in torus division");
        }
        TorusElem t = TorusElem::with_term(num.lattice(), mu, c);
        quotient = qt_add(quotient, t);
        TorusElem prod = side == QuotientSide::Left ? qt_mul(t, den) : qt_mul(den, t);
        rem = qt_sub(rem, prod);
        if (!rem.is_zero() && !grlex_less(rem.terms().rbegin()->first, rl.first))
            throw NotDivisible("leading term did not decrease");
    }
    return quotient;
}

/// Apply a Laurent-coefficient transformation to every term.
template <typename F>
TorusElem map_coefficients(const TorusElem& a, F&& f) {
    TorusElem r(a.lattice());
    for (const auto& [mu, c] : a.terms()) r.add_term(mu, f(c));
    return r;
}

inline std::string to_string(const TorusElem& a) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = a.terms().rbegin(); it != a.terms().rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        os << '(' << to_string(it->second) << ")*B[";
        for (std::size_t i = 0; i < it->first.size(); ++i) {
            if (i) os << ',';
            os << it->first[i];
        }
        os << ']';
    }
    return os.str();
}

/// Parses the textual form printed by to_string: terms "(coeff)*B[l1,...,lN]"
/// joined by " + ", or "0".
inline TorusElem parse_torus(const LatticeRef& lattice, std::string_view text) {
    TorusElem out(lattice);
    std::size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    skip_ws();
    if (text.substr(pos) == "0") return out;
    while (pos < text.size()) {
        skip_ws();
        if (text[pos] != '(') throw ParseError("expected ( in torus element");
        int depth = 1;
        std::size_t start = ++pos;
        while (pos < text.size() && depth > 0) {
            if (text[pos] == '(') ++depth;
            if (text[pos] == ')') --depth;
            ++pos;
        }
        if (depth != 0) throw ParseError("unbalanced parentheses");
        LaurentElem coeff = parse_laurent(text.substr(start, pos - 1 - start));
        skip_ws();
        if (text.substr(pos, 3) != "*B[") throw ParseError("expected *B[");
        pos += 3;
        std::vector<std::int64_t> lam;
        while (true) {
            skip_ws();
            bool neg = false;
            if (pos < text.size() && text[pos] == '-') {
                neg = true;
                ++pos;
            }
            std::int64_t v = 0;
            bool got = false;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                v = v * 10 + (text[pos++] - '0');
                got = true;
            }
            if (!got) throw ParseError("expected integer in B[..]");
            lam.push_back(neg ? -v : v);
            skip_ws();
            if (pos < text.size() && text[pos] == ',') {
                ++pos;
                continue;
            }
            if (pos < text.size() && text[pos] == ']') {
                ++pos;
                break;
            }
            throw ParseError("expected , or ] in B[..]");
        }
        if (static_cast<int>(lam.size()) != lattice->rank())
            throw ParseError("B[..] arity does not match the lattice rank");
        out.add_term(std::move(lam), std::move(coeff));
        skip_ws();
        if (pos >= text.size()) break;
        if (text[pos] == '+') {
            ++pos;
            continue;
        }
        throw ParseError("expected + between torus terms");
    }
    return out;
}

} // namespace qcluster
