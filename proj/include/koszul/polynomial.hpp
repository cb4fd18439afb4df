// Multivariate polynomials over exact rationals, graded-lex monomial order.
#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "koszul/rational.hpp"

namespace koszul {

using Exponents = std::vector<unsigned>;

inline unsigned total_degree(const Exponents& e) {
    return std::accumulate(e.begin(), e.end(), 0u);
}

// Graded lexicographic: compare total degree first, then exponent vectors.
struct GrlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        unsigned da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return a < b;
    }
};

class Polynomial {
  public:
    using TermMap = std::map<Exponents, Rational, GrlexLess>;

    Polynomial() : nvars_(0) {}
    explicit Polynomial(int nvars) : nvars_(nvars) {}

    static Polynomial constant(int nvars, const Rational& c) {
        Polynomial p(nvars);
        if (!koszul::is_zero(c)) p.terms_[Exponents(nvars, 0)] = c;
        return p;
    }
    static Polynomial variable(int nvars, int index, unsigned power = 1) {
        Polynomial p(nvars);
        Exponents e(nvars, 0);
        e[index] = power;
        p.terms_[e] = 1;
        return p;
    }

    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
    }
    Rational constant_value() const {
        if (terms_.empty()) return 0;
        return terms_.begin()->second;
    }

    unsigned degree() const {
        if (terms_.empty()) return 0;
        return total_degree(terms_.rbegin()->first);
    }

    void add_term(const Exponents& e, const Rational& c) {
        if (koszul::is_zero(c)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (koszul::is_zero(it->second)) terms_.erase(it);
        }
    }

    Polynomial operator-() const {
        Polynomial r(nvars_);
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }
    Polynomial operator+(const Polynomial& o) const {
        Polynomial r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, c);
        return r;
    }
    Polynomial operator-(const Polynomial& o) const {
        Polynomial r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
        return r;
    }
    Polynomial operator*(const Polynomial& o) const {
        Polynomial r(nvars_);
        for (const auto& [ea, ca] : terms_)
            for (const auto& [eb, cb] : o.terms_) {
                Exponents e(nvars_);
                for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    Polynomial operator*(const Rational& c) const {
        Polynomial r(nvars_);
        if (koszul::is_zero(c)) return r;
        for (const auto& [e, k] : terms_) r.terms_[e] = k * c;
        return r;
    }

    bool operator==(const Polynomial& o) const {
        if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
        auto it = terms_.begin();
        auto jt = o.terms_.begin();
        for (; it != terms_.end(); ++it, ++jt)
            if (it->first != jt->first || it->second != jt->second) return false;
        return true;
    }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial pow(unsigned k) const {
        Polynomial r = constant(nvars_, 1);
        Polynomial base = *this;
        while (k > 0) {
            if (k & 1u) r = r * base;
            base = base * base;
            k >>= 1u;
        }
        return r;
    }

    Polynomial derivative(int var) const {
        Polynomial r(nvars_);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0) continue;
            Exponents d = e;
            d[var] -= 1;
            r.add_term(d, c * static_cast<long>(e[var]));
        }
        return r;
    }

    Rational evaluate(const std::vector<Rational>& point) const {
        Rational acc = 0;
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (int i = 0; i < nvars_; ++i)
                for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
            acc += t;
        }
        return acc;
    }

    // Exact single-divisor division; nullopt when the remainder is nonzero.
    std::optional<Polynomial> divide_exact(const Polynomial& g) const {
        if (g.is_zero()) return std::nullopt;
        Polynomial f = *this;
        Polynomial q(nvars_);
        const auto& [lg, cg] = *g.terms_.rbegin();
        while (!f.is_zero()) {
            const auto& [lf, cf] = *f.terms_.rbegin();
            Exponents e(nvars_);
            for (int i = 0; i < nvars_; ++i) {
                if (lf[i] < lg[i]) return std::nullopt;
                e[i] = lf[i] - lg[i];
            }
            Rational c = cf / cg;
            Polynomial t(nvars_);
            t.terms_[e] = c;
            q.add_term(e, c);
            f = f - t * g;
        }
        return q;
    }

    // gcd of coefficients with the sign of the leading (grlex-max) one.
    Rational content() const {
        if (terms_.empty()) return 0;
        mpz_class num_gcd = 0, den_lcm = 1;
        for (const auto& [e, c] : terms_) {
            mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(),
                    mpq_class(abs(c)).get_num_mpz_t());
            mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
                    c.get_den_mpz_t());
        }
        Rational c(num_gcd, den_lcm);
        c.canonicalize();
        if (sgn(terms_.rbegin()->second) < 0) c = -c;
        return c;
    }
    Polynomial primitive_part() const {
        if (terms_.empty()) return *this;
        Rational c = content();
        Polynomial r(nvars_);
        for (const auto& [e, k] : terms_) r.terms_[e] = k / c;
        return r;
    }

    // Total order usable as a map key (not the grlex term order).
    int compare(const Polynomial& o) const {
        if (nvars_ != o.nvars_) return nvars_ < o.nvars_ ? -1 : 1;
        auto it = terms_.begin();
        auto jt = o.terms_.begin();
        for (; it != terms_.end() && jt != o.terms_.end(); ++it, ++jt) {
            if (GrlexLess{}(it->first, jt->first)) return -1;
            if (GrlexLess{}(jt->first, it->first)) return 1;
            int c = cmp(it->second, jt->second);
            if (c != 0) return c;
        }
        if (it != terms_.end()) return 1;
        if (jt != o.terms_.end()) return -1;
        return 0;
    }

  private:
    int nvars_;
    TermMap terms_;
};

struct PolynomialLess {
    bool operator()(const Polynomial& a, const Polynomial& b) const {
        return a.compare(b) < 0;
    }
};

}  // namespace koszul
