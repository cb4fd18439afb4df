// Graded derivations of the superfunction algebra: D = sum f_a d/dq^a,
// acting by the graded Leibniz rule. Commutators are computed through the
// action on coordinate generators.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "koszul/superfunction.hpp"

namespace koszul {

class Derivation {
  public:
    Derivation() = default;
    Derivation(const Chart& chart, std::optional<int> degree)
        : chart_(chart), degree_(degree) {}

    static Derivation zero(const Chart& chart, int degree) {
        return Derivation(chart, degree);
    }
    // d/dq^a as a derivation (degree -deg q^a).
    static Derivation coordinate_partial(const Chart& chart, int index) {
        Derivation d(chart, -chart.degree(index));
        d.set_component(index, Superfunction::unit(chart));
        return d;
    }

    const Chart& chart() const { return chart_; }
    std::optional<int> degree() const { return degree_; }
    bool is_zero() const { return comps_.empty(); }
    const std::map<int, Superfunction>& components() const { return comps_; }

    Superfunction component(int index) const {
        auto it = comps_.find(index);
        return it == comps_.end() ? Superfunction::zero(chart_) : it->second;
    }

    void set_component(int index, const Superfunction& f) {
        chart_.require_same(f.chart(), "derivation component");
        if (f.is_zero())
            comps_.erase(index);
        else
            comps_[index] = f;
    }

    // Components of a homogeneous degree-k derivation must be homogeneous of
    // degree k + deg q^a.
    bool components_consistent() const {
        if (!degree_) return true;
        for (const auto& [i, f] : comps_)
            if (!f.is_homogeneous(*degree_ + chart_.degree(i))) return false;
        return true;
    }

    Superfunction apply(const Superfunction& f) const {
        chart_.require_same(f.chart(), "derivation application");
        Superfunction r(chart_);
        for (const auto& [i, c] : comps_) r = r + c * f.partial_left(i);
        return r;
    }

    Derivation operator+(const Derivation& o) const {
        chart_.require_same(o.chart_, "derivation sum");
        std::optional<int> deg;
        if (is_zero())
            deg = o.degree_;
        else if (o.is_zero())
            deg = degree_;
        else if (degree_ && o.degree_ && *degree_ == *o.degree_)
            deg = degree_;
        Derivation r(chart_, deg);
        r.comps_ = comps_;
        for (const auto& [i, f] : o.comps_)
            r.set_component(i, r.component(i) + f);
        return r;
    }
    Derivation operator-() const {
        Derivation r(chart_, degree_);
        for (const auto& [i, f] : comps_) r.comps_[i] = -f;
        return r;
    }
    Derivation operator-(const Derivation& o) const { return *this + (-o); }
    Derivation operator*(const Rational& c) const {
        Derivation r(chart_, degree_);
        if (koszul::is_zero(c)) return r;
        for (const auto& [i, f] : comps_) r.comps_[i] = f * c;
        return r;
    }
    // Left multiplication by a superfunction (g*D is again a derivation).
    Derivation scaled_by(const Superfunction& g) const {
        std::optional<int> deg;
        auto gd = g.degree();
        if (degree_ && gd) deg = *degree_ + *gd;
        Derivation r(chart_, deg);
        for (const auto& [i, f] : comps_) r.set_component(i, g * f);
        return r;
    }

    bool operator==(const Derivation& o) const {
        if (!chart_.same(o.chart_)) return false;
        if (comps_.size() != o.comps_.size()) return false;
        auto it = comps_.begin();
        auto jt = o.comps_.begin();
        for (; it != comps_.end(); ++it, ++jt)
            if (it->first != jt->first || it->second != jt->second)
                return false;
        return true;
    }
    bool operator!=(const Derivation& o) const { return !(*this == o); }

  private:
    Chart chart_;
    std::optional<int> degree_;
    std::map<int, Superfunction> comps_;
};

// [D1, D2] = D1 D2 - (-1)^{|D1||D2|} D2 D1, evaluated on generators.
inline Derivation commutator(const Derivation& d1, const Derivation& d2) {
    d1.chart().require_same(d2.chart(), "commutator");
    if (!d1.degree() || !d2.degree())
        throw DegreeError("commutator of inhomogeneous derivations");
    const int deg1 = *d1.degree(), deg2 = *d2.degree();
    const bool flip = (deg1 % 2 != 0) && (deg2 % 2 != 0);
    Derivation r(d1.chart(), deg1 + deg2);
    for (const auto& [i, f] : d2.components())
        r.set_component(i, r.component(i) + d1.apply(f));
    for (const auto& [i, f] : d1.components()) {
        Superfunction t = d2.apply(f);
        r.set_component(i, flip ? r.component(i) + t : r.component(i) - t);
    }
    return r;
}

// [E1, E2]_Q = [E1, [Q, E2]] on degree -1 fields for a degree 1 Q.
inline Derivation derived_bracket(const Derivation& q, const Derivation& e1,
                                  const Derivation& e2) {
    if (!q.degree() || *q.degree() != 1)
        throw DegreeError("derived bracket needs a degree 1 structure field");
    if (!e1.degree() || *e1.degree() != -1 || !e2.degree() ||
        *e2.degree() != -1)
        throw DegreeError("derived bracket arguments must have degree -1");
    return commutator(e1, commutator(q, e2));
}

struct QCheck {
    bool ok = false;
    // Coordinate index and value of a nonzero component of [Q, Q]/2.
    std::optional<std::pair<int, Superfunction>> certificate;
};

inline QCheck is_q_structure(const Derivation& d) {
    QCheck r;
    if (!d.degree() || *d.degree() != 1) {
        r.ok = false;
        return r;
    }
    // For odd D, [D, D](q^a) = 2 D(D q^a).
    for (const auto& [i, f] : d.components()) {
        Superfunction sq = d.apply(f);
        if (!sq.is_zero()) {
            r.certificate = {i, sq};
            return r;
        }
    }
    r.ok = true;
    return r;
}

}  // namespace koszul
