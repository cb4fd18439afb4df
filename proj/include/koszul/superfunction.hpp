// Superfunctions: polynomials in the nonzero-degree coordinates with Scalar
// coefficients, stored in canonical (chart) order. All reordering picks up
// the Koszul sign: swapping generators of degrees |a|,|b| costs (-1)^{|a||b|}.
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "koszul/chart.hpp"
#include "koszul/scalar.hpp"

namespace koszul {

// Exponents over the nonzero-degree coordinates, total degree cached.
struct MonoKey {
    int degree = 0;
    Exponents e;

    bool trivial() const { return degree == 0; }
    bool operator<(const MonoKey& o) const {
        if (degree != o.degree) return degree < o.degree;
        return e < o.e;
    }
    bool operator==(const MonoKey& o) const {
        return degree == o.degree && e == o.e;
    }
};

class Superfunction {
  public:
    using TermMap = std::map<MonoKey, Scalar>;

    Superfunction() = default;
    explicit Superfunction(const Chart& chart) : chart_(chart) {}

    static Superfunction zero(const Chart& chart) { return Superfunction(chart); }
    static Superfunction constant(const Chart& chart, const Rational& c) {
        return from_scalar(chart, Scalar(chart.base_count(), c));
    }
    static Superfunction unit(const Chart& chart) { return constant(chart, 1); }
    static Superfunction from_scalar(const Chart& chart, const Scalar& s) {
        Superfunction f(chart);
        f.add_term(MonoKey{0, Exponents(chart.fiber_count(), 0)}, s);
        return f;
    }
    static Superfunction coordinate(const Chart& chart, int index) {
        if (index < chart.base_count())
            return from_scalar(chart,
                               Scalar::variable(chart.base_count(), index));
        Superfunction f(chart);
        Exponents e(chart.fiber_count(), 0);
        e[index - chart.base_count()] = 1;
        f.add_term(MonoKey{chart.degree(index), e},
                   Scalar(chart.base_count(), 1));
        return f;
    }

    const Chart& chart() const { return chart_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Scalar coefficient(const MonoKey& k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Scalar(chart_.base_count()) : it->second;
    }
    Scalar scalar_part() const {
        return coefficient(MonoKey{0, Exponents(chart_.fiber_count(), 0)});
    }

    void add_term(const MonoKey& k, const Scalar& s) {
        if (s.is_zero()) return;
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, s);
        } else {
            it->second = it->second + s;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Superfunction operator-() const {
        Superfunction r(chart_);
        for (const auto& [k, s] : terms_) r.terms_[k] = -s;
        return r;
    }
    Superfunction operator+(const Superfunction& o) const {
        chart_.require_same(o.chart_, "add");
        Superfunction r = *this;
        for (const auto& [k, s] : o.terms_) r.add_term(k, s);
        return r;
    }
    Superfunction operator-(const Superfunction& o) const {
        chart_.require_same(o.chart_, "subtract");
        Superfunction r = *this;
        for (const auto& [k, s] : o.terms_) r.add_term(k, -s);
        return r;
    }

    Superfunction operator*(const Superfunction& o) const {
        chart_.require_same(o.chart_, "multiply");
        Superfunction r(chart_);
        for (const auto& [ka, sa] : terms_)
            for (const auto& [kb, sb] : o.terms_) {
                int sign = 0;
                MonoKey k;
                if (!mul_mono(ka, kb, k, sign)) continue;
                Scalar c = sa * sb;
                if (sign < 0) c = -c;
                r.add_term(k, c);
            }
        return r;
    }
    Superfunction operator*(const Scalar& s) const {
        Superfunction r(chart_);
        for (const auto& [k, c] : terms_) r.add_term(k, c * s);
        return r;
    }
    Superfunction operator*(const Rational& c) const {
        return *this * Scalar(chart_.base_count(), c);
    }

    // Division by a degree-0 superfunction.
    Superfunction operator/(const Superfunction& o) const {
        chart_.require_same(o.chart_, "divide");
        auto d = o.degree();
        if (!o.is_zero() && (!d || *d != 0))
            throw DegreeError("division by a superfunction of nonzero degree");
        Scalar s = o.scalar_part();
        if (s.is_zero()) throw ZeroDivisor();
        Superfunction r(chart_);
        for (const auto& [k, c] : terms_) r.add_term(k, c / s);
        return r;
    }

    Superfunction pow(unsigned k) const {
        Superfunction r = unit(chart_);
        Superfunction base = *this;
        while (k > 0) {
            if (k & 1u) r = r * base;
            base = base * base;
            k >>= 1u;
        }
        return r;
    }

    bool operator==(const Superfunction& o) const {
        if (!chart_.same(o.chart_)) return false;
        if (terms_.size() != o.terms_.size()) return false;
        auto it = terms_.begin();
        auto jt = o.terms_.begin();
        for (; it != terms_.end(); ++it, ++jt) {
            if (!(it->first == jt->first)) return false;
            if (!it->second.equals(jt->second)) return false;
        }
        return true;
    }
    bool operator!=(const Superfunction& o) const { return !(*this == o); }

    // Total degree when homogeneous; nullopt otherwise. Zero counts as
    // homogeneous of every degree and reports 0.
    std::optional<int> degree() const {
        std::optional<int> d;
        for (const auto& [k, s] : terms_) {
            if (!d)
                d = k.degree;
            else if (*d != k.degree)
                return std::nullopt;
        }
        return d ? d : std::optional<int>(0);
    }
    bool is_homogeneous(int deg) const {
        for (const auto& [k, s] : terms_)
            if (k.degree != deg) return false;
        return true;
    }

    // Left partial derivative along the chart coordinate `index`.
    Superfunction partial_left(int index) const {
        return partial(index, /*from_left=*/true);
    }
    // Right partial derivative (used by graded Poisson brackets).
    Superfunction partial_right(int index) const {
        return partial(index, /*from_left=*/false);
    }

    // Algebra morphism determined by coordinate images. `base_images` must
    // be degree-0; positive-degree images may live on any single chart.
    Superfunction substitute(
        const Chart& target,
        const std::function<Superfunction(int)>& image) const {
        const int n0 = chart_.base_count();
        std::vector<Scalar> base_vals;
        base_vals.reserve(n0);
        for (int i = 0; i < n0; ++i) {
            Superfunction im = image(i);
            auto d = im.degree();
            if (!d || *d != 0)
                throw DegreeError("image of degree-0 coordinate '" +
                                  chart_.name(i) + "' is not degree 0");
            base_vals.push_back(im.scalar_part());
        }
        Superfunction out(target);
        for (const auto& [k, s] : terms_) {
            Superfunction term =
                from_scalar(target, substitute_scalar(s, base_vals));
            for (int j = 0; j < chart_.fiber_count(); ++j)
                for (unsigned p = 0; p < k.e[j]; ++p)
                    term = term * image(n0 + j);
            out = out + term;
        }
        return out;
    }

  private:
    static Scalar substitute_scalar(const Scalar& s,
                                    const std::vector<Scalar>& vals) {
        const int nv = vals.empty() ? s.nvars() : vals[0].nvars();
        auto eval_poly = [&](const Polynomial& p) {
            Scalar acc(nv);
            for (const auto& [e, c] : p.terms()) {
                Scalar t(nv, c);
                for (std::size_t i = 0; i < e.size(); ++i)
                    if (e[i] > 0) t = t * vals[i].pow(e[i]);
                acc = acc + t;
            }
            return acc;
        };
        Scalar out = eval_poly(s.numerator());
        for (const auto& [f, k] : s.denominator_factors()) {
            Scalar fv = eval_poly(f);
            if (fv.is_zero())
                throw ZeroDivisor();
            out = out / fv.pow(k);
        }
        return out;
    }

    // Koszul sign of placing the canonical-order monomial b after a.
    bool mul_mono(const MonoKey& a, const MonoKey& b, MonoKey& out,
                  int& sign) const {
        const int n0 = chart_.base_count();
        const int m = chart_.fiber_count();
        out.e.assign(m, 0);
        out.degree = a.degree + b.degree;
        unsigned swaps = 0;
        unsigned odd_tail = 0;  // odd generators of `a` with index > j
        for (int j = m - 1; j >= 0; --j) {
            const bool odd = chart_.odd(n0 + j);
            if (b.e[j] > 0) {
                if (odd) {
                    if (a.e[j] > 0) return false;  // odd square
                    swaps += odd_tail;
                }
                out.e[j] = a.e[j] + b.e[j];
            } else {
                out.e[j] = a.e[j];
            }
            if (odd) odd_tail += a.e[j];
        }
        sign = (swaps % 2 == 0) ? 1 : -1;
        return true;
    }

    Superfunction partial(int index, bool from_left) const {
        Superfunction r(chart_);
        const int n0 = chart_.base_count();
        if (index < n0) {
            for (const auto& [k, s] : terms_)
                r.add_term(k, s.derivative(index));
            return r;
        }
        const int j = index - n0;
        const bool odd = chart_.odd(index);
        for (const auto& [k, s] : terms_) {
            if (k.e[j] == 0) continue;
            MonoKey d = k;
            d.e[j] -= 1;
            d.degree -= chart_.degree(index);
            Scalar c = s * Rational(static_cast<long>(k.e[j]));
            if (odd) {
                unsigned crossings = 0;
                if (from_left) {
                    for (int i = 0; i < j; ++i)
                        if (chart_.odd(n0 + i)) crossings += k.e[i];
                } else {
                    for (int i = j + 1; i < chart_.fiber_count(); ++i)
                        if (chart_.odd(n0 + i)) crossings += k.e[i];
                }
                if (crossings % 2 != 0) c = -c;
            }
            r.add_term(d, c);
        }
        return r;
    }

    Chart chart_;
    TermMap terms_;
};

inline Superfunction operator*(const Scalar& s, const Superfunction& f) {
    return f * s;
}
inline Superfunction operator*(const Rational& c, const Superfunction& f) {
    return f * c;
}

}  // namespace koszul
