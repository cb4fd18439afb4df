// Tangent prolongation T[1]M of a graded chart: adjoined coordinates dq^a
// of degree deg q^a + 1, the formal differential d, contractions, complete
// (Lie-derivative) lifts, the prolonged structure field Qt = d + L_Q, the
// basis change to the generators (q^a, Qt q^a) and pullback maps along
// degree-preserving assignments.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "koszul/derivation.hpp"

namespace koszul {

class ProlongedChart {
  public:
    ProlongedChart() = default;

    // Adjoins dq^a for every coordinate of `base` and forms Qt = d + L_Q.
    ProlongedChart(const Chart& base, const Derivation& q) : base_(base) {
        base.require_same(q.chart(), "prolongation");
        if (!q.degree() || *q.degree() != 1)
            throw DegreeError("prolongation needs a degree 1 field");
        const int n = base.size();
        std::vector<Coordinate> coords;
        coords.reserve(2 * n);
        for (int i = 0; i < base.base_count(); ++i) coords.push_back(base.coord(i));
        for (int i = base.base_count(); i < n; ++i) coords.push_back(base.coord(i));
        for (int i = 0; i < n; ++i)
            coords.push_back({"d" + base.name(i), base.degree(i) + 1});
        big_ = Chart::make("T[1]" + base.label(), coords);

        d_ = Derivation(big_, 1);
        for (int i = 0; i < n; ++i)
            d_.set_component(i, Superfunction::coordinate(big_, n + i));

        Derivation lq = complete_lift(include(q));
        qt_ = d_ + lq;
        lift_q_ = lq;

        // The q-generated basis: coordinates q^a and Qq^a := Qt q^a.
        std::vector<Coordinate> qcoords;
        qcoords.reserve(2 * n);
        for (int i = 0; i < n; ++i) qcoords.push_back(base.coord(i));
        for (int i = 0; i < n; ++i)
            qcoords.push_back({"Q" + base.name(i), base.degree(i) + 1});
        qbasis_ = Chart::make("Q-basis " + base.label(), qcoords);
        qt_qbasis_ = Derivation(qbasis_, 1);
        for (int i = 0; i < n; ++i)
            qt_qbasis_.set_component(i,
                                     Superfunction::coordinate(qbasis_, n + i));
    }

    const Chart& base() const { return base_; }
    const Chart& chart() const { return big_; }
    const Chart& qbasis_chart() const { return qbasis_; }
    const Derivation& differential() const { return d_; }
    const Derivation& qt() const { return qt_; }
    const Derivation& lifted_q() const { return lift_q_; }
    // Qt expressed in the (q, Qq) generators: q^a -> Qq^a, Qq^a -> 0.
    const Derivation& qt_on_qbasis() const { return qt_qbasis_; }

    int dq_index(int base_index) const { return base_.size() + base_index; }

    // Superfunctions of the base become superfunctions of the prolongation.
    Superfunction include(const Superfunction& f) const {
        base_.require_same(f.chart(), "inclusion");
        return f.substitute(big_, [&](int i) {
            return Superfunction::coordinate(big_, i);
        });
    }
    // Vertical-component transport of a base derivation.
    Derivation include(const Derivation& e) const {
        base_.require_same(e.chart(), "inclusion");
        Derivation r(big_, e.degree());
        for (const auto& [i, f] : e.components())
            r.set_component(i, include(f));
        return r;
    }

    // iota_E = E^a d/d(dq^a); annihilates functions of the base.
    Derivation contraction(const Derivation& e) const {
        Derivation src = e.chart().same(base_) ? include(e) : e;
        big_.require_same(src.chart(), "contraction");
        if (!src.degree()) throw DegreeError("contraction needs homogeneous input");
        Derivation r(big_, *src.degree() - 1);
        for (const auto& [i, f] : src.components()) {
            if (i >= base_.size())
                throw Error("contraction of a field with d-components");
            r.set_component(dq_index(i), f);
        }
        return r;
    }

    // Complete lift: L_E = E^a d/dq^a + (-1)^{|E|} d(E^a) d/d(dq^a); the
    // unique lift of E with [d, L_E] = 0. Coincides with [d, iota_E] for
    // even E (the classical Cartan relation).
    Derivation complete_lift(const Derivation& e) const {
        Derivation src = e.chart().same(base_) ? include(e) : e;
        big_.require_same(src.chart(), "complete lift");
        if (!src.degree()) throw DegreeError("lift needs homogeneous input");
        const bool odd = *src.degree() % 2 != 0;
        Derivation r(big_, *src.degree());
        for (const auto& [i, f] : src.components()) {
            if (i >= base_.size())
                throw Error("lift of a field with d-components");
            r.set_component(i, f);
            Superfunction df = d_.apply(f);
            r.set_component(dq_index(i), odd ? -df : df);
        }
        return r;
    }

    // Rewriting through dq^a = Qq^a - Q^a (triangular, hence invertible).
    Superfunction to_qbasis(const Superfunction& f) const {
        big_.require_same(f.chart(), "basis change");
        const int n = base_.size();
        return f.substitute(qbasis_, [&](int i) {
            if (i < n) return Superfunction::coordinate(qbasis_, i);
            int a = i - n;
            Superfunction qa = Superfunction::coordinate(qbasis_, n + a);
            Superfunction comp = qt_.component(a);  // dq^a + Q^a
            comp.add_term(
                MonoKey{base_.degree(a) + 1, unit_exponents(big_, n + a)},
                Scalar(big_.base_count(), -1));
            // comp now equals Q^a viewed on the big chart; push it down.
            return qa - project_q_part(comp);
        });
    }
    Superfunction from_qbasis(const Superfunction& f) const {
        qbasis_.require_same(f.chart(), "basis change");
        const int n = base_.size();
        return f.substitute(big_, [&](int i) {
            if (i < n) return Superfunction::coordinate(big_, i);
            return qt_.component(i - n);  // Qq^a = dq^a + Q^a
        });
    }

    // Conjugates a derivation on the prolongation into the q-basis chart.
    Derivation to_qbasis(const Derivation& dd) const {
        big_.require_same(dd.chart(), "basis change");
        const int n = base_.size();
        Derivation r(qbasis_, dd.degree());
        for (int i = 0; i < 2 * n; ++i) {
            Superfunction gen = i < n
                                    ? Superfunction::coordinate(big_, i)
                                    : from_qbasis(Superfunction::coordinate(
                                          qbasis_, i));
            Superfunction img = dd.apply(gen);
            r.set_component(i, to_qbasis(img));
        }
        return r;
    }

  private:
    static Exponents unit_exponents(const Chart& chart, int index) {
        Exponents e(chart.fiber_count(), 0);
        e[index - chart.base_count()] = 1;
        return e;
    }

    // A superfunction of the big chart that only involves base generators is
    // re-read on the q-basis chart (their first blocks agree).
    Superfunction project_q_part(const Superfunction& f) const {
        const int n = base_.size();
        return f.substitute(qbasis_, [&](int i) {
            if (i >= n) throw Error("unexpected d-generator in base image");
            return Superfunction::coordinate(qbasis_, i);
        });
    }

    Chart base_;
    Chart big_;
    Chart qbasis_;
    Derivation d_;
    Derivation lift_q_;
    Derivation qt_;
    Derivation qt_qbasis_;
};

// A degree-preserving assignment of source superfunctions to the target's
// base coordinates, completed to a morphism intertwining the structure
// fields: f*(dq^a) := Q1 f*(q^a) - f*(Q^a).
class PullbackMap {
  public:
    PullbackMap(const Chart& source, const Derivation& q1,
                const ProlongedChart& target,
                std::vector<Superfunction> base_images)
        : source_(source), q1_(q1), target_(&target) {
        const Chart& base = target.base();
        if (static_cast<int>(base_images.size()) != base.size())
            throw Error("assignment must cover every target base coordinate");
        images_.resize(2 * base.size());
        for (int a = 0; a < base.size(); ++a) {
            const Superfunction& img = base_images[a];
            source_.require_same(img.chart(), "pullback image");
            if (!img.is_homogeneous(base.degree(a)))
                throw DegreeError("image of '" + base.name(a) +
                                  "' is not degree " +
                                  std::to_string(base.degree(a)));
            images_[a] = img;
        }
        for (int a = 0; a < base.size(); ++a) {
            Superfunction qa = q1_.apply(images_[a]);
            Superfunction q_comp = pull_base(target.qt().component(a) -
                                             Superfunction::coordinate(
                                                 target.chart(),
                                                 target.dq_index(a)));
            images_[base.size() + a] = qa - q_comp;
        }
    }

    const Chart& source() const { return source_; }
    const Derivation& source_q() const { return q1_; }
    const ProlongedChart& target() const { return *target_; }

    Superfunction operator()(const Superfunction& u) const {
        target_->chart().require_same(u.chart(), "pullback");
        return u.substitute(source_, [&](int i) { return images_[i]; });
    }

    // Q-morphism property Q1 f* = f* Qt, checked on every generator.
    bool is_q_morphism() const {
        const Chart& big = target_->chart();
        for (int i = 0; i < big.size(); ++i) {
            Superfunction gen = Superfunction::coordinate(big, i);
            Superfunction lhs = q1_.apply((*this)(gen));
            Superfunction rhs = (*this)(target_->qt().apply(gen));
            if (lhs != rhs) return false;
        }
        return true;
    }

  private:
    // Pull back a big-chart superfunction that involves only base
    // generators, bypassing the (not yet defined) dq images.
    Superfunction pull_base(const Superfunction& u) const {
        return u.substitute(source_, [&](int i) -> Superfunction {
            if (i >= target_->base().size())
                throw Error("base component involves a d-generator");
            return images_[i];
        });
    }

    Chart source_;
    Derivation q1_;
    const ProlongedChart* target_;
    std::vector<Superfunction> images_;
};

// delta_e (f* u) = f*([Qt, e] u) for a vertical degree -1 field on the
// target. Passing a field on any other chart is rejected.
inline Superfunction gauge_variation(const PullbackMap& f, const Derivation& e,
                                     const Superfunction& u) {
    if (!f.target().chart().same(e.chart()))
        throw Error("gauge parameter is not vertical over the source");
    if (!e.degree() || *e.degree() != -1)
        throw DegreeError("gauge parameter must have total degree -1");
    return f(commutator(f.target().qt(), e).apply(u));
}

}  // namespace koszul
