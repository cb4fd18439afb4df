// Rational functions of the degree-0 coordinates: a polynomial numerator
// over a denominator kept as a product of primitive factors as encountered.
// The zero test reduces to the numerator; equality is decided by
// cross-multiplication, so cancellation is an optimization, not a need.
#pragma once

#include <map>
#include <utility>
#include <vector>

#include "koszul/polynomial.hpp"

namespace koszul {

class Scalar {
  public:
    using Factors = std::map<Polynomial, unsigned, PolynomialLess>;

    Scalar() : nvars_(0), num_(0) {}
    explicit Scalar(int nvars) : nvars_(nvars), num_(nvars) {}
    Scalar(int nvars, const Rational& c)
        : nvars_(nvars), num_(Polynomial::constant(nvars, c)) {}
    explicit Scalar(Polynomial p) : nvars_(p.nvars()), num_(std::move(p)) {}

    static Scalar variable(int nvars, int index) {
        return Scalar(Polynomial::variable(nvars, index));
    }

    int nvars() const { return nvars_; }
    const Polynomial& numerator() const { return num_; }
    const Factors& denominator_factors() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.empty(); }
    bool is_constant() const { return den_.empty() && num_.is_constant(); }
    Rational constant_value() const { return num_.constant_value(); }

    Polynomial denominator() const {
        Polynomial d = Polynomial::constant(nvars_, 1);
        for (const auto& [f, k] : den_) d = d * f.pow(k);
        return d;
    }

    Scalar operator-() const {
        Scalar r = *this;
        r.num_ = -r.num_;
        return r;
    }

    Scalar operator+(const Scalar& o) const {
        Scalar r(nvars_);
        Polynomial lhs = num_, rhs = o.num_;
        for (const auto& [f, k] : den_) {
            unsigned ko = power_of(o.den_, f);
            r.den_[f] = std::max(k, ko);
            if (ko < k) rhs = rhs * f.pow(k - ko);
        }
        for (const auto& [f, k] : o.den_) {
            unsigned ks = power_of(den_, f);
            if (ks == 0) {
                r.den_[f] = k;
                lhs = lhs * f.pow(k);
            } else if (ks < k) {
                r.den_[f] = k;
                lhs = lhs * f.pow(k - ks);
            }
        }
        r.num_ = lhs + rhs;
        r.normalize();
        return r;
    }
    Scalar operator-(const Scalar& o) const { return *this + (-o); }

    Scalar operator*(const Scalar& o) const {
        Scalar r(nvars_);
        r.num_ = num_ * o.num_;
        r.den_ = den_;
        for (const auto& [f, k] : o.den_) r.den_[f] += k;
        r.normalize();
        return r;
    }
    Scalar operator*(const Rational& c) const {
        Scalar r = *this;
        r.num_ = r.num_ * c;
        if (r.num_.is_zero()) r.den_.clear();
        return r;
    }

    Scalar operator/(const Scalar& o) const {
        if (o.is_zero()) throw ZeroDivisor();
        Scalar r(nvars_);
        r.num_ = num_;
        for (const auto& [f, k] : o.den_) r.num_ = r.num_ * f.pow(k);
        r.den_ = den_;
        Rational c = o.num_.content();
        Polynomial prim = o.num_.primitive_part();
        r.num_ = r.num_ * (1 / c);
        if (!prim.is_constant()) r.den_[prim] += 1;
        r.normalize();
        return r;
    }

    Scalar pow(unsigned k) const {
        Scalar r(nvars_, 1);
        Scalar base = *this;
        while (k > 0) {
            if (k & 1u) r = r * base;
            base = base * base;
            k >>= 1u;
        }
        return r;
    }

    bool equals(const Scalar& o) const {
        if (num_.is_zero()) return o.num_.is_zero();
        if (o.num_.is_zero()) return false;
        return num_ * o.denominator() == o.num_ * denominator();
    }
    bool operator==(const Scalar& o) const { return equals(o); }
    bool operator!=(const Scalar& o) const { return !equals(o); }

    Scalar derivative(int var) const {
        Scalar r(nvars_);
        r.num_ = num_.derivative(var);
        r.den_ = den_;
        r.normalize();
        for (const auto& [f, k] : den_) {
            Polynomial fd = f.derivative(var);
            if (fd.is_zero()) continue;
            Scalar t(nvars_);
            t.num_ = num_ * fd * Rational(-static_cast<long>(k));
            t.den_ = den_;
            t.den_[f] += 1;
            t.normalize();
            r = r + t;
        }
        return r;
    }

    Rational evaluate(const std::vector<Rational>& point) const {
        Rational d = 1;
        for (const auto& [f, k] : den_) {
            Rational v = f.evaluate(point);
            if (koszul::is_zero(v)) throw PoleError();
            for (unsigned i = 0; i < k; ++i) d *= v;
        }
        return num_.evaluate(point) / d;
    }

  private:
    static unsigned power_of(const Factors& fs, const Polynomial& f) {
        auto it = fs.find(f);
        return it == fs.end() ? 0u : it->second;
    }

    void normalize() {
        if (num_.is_zero()) {
            den_.clear();
            return;
        }
        for (auto it = den_.begin(); it != den_.end();) {
            while (it->second > 0) {
                auto q = num_.divide_exact(it->first);
                if (!q) break;
                num_ = *q;
                it->second -= 1;
            }
            it = it->second == 0 ? den_.erase(it) : std::next(it);
        }
    }

    int nvars_;
    Polynomial num_;
    Factors den_;
};

inline Scalar operator*(const Rational& c, const Scalar& s) { return s * c; }

}  // namespace koszul
