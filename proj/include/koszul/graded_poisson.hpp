// Canonical graded Poisson brackets in Darboux coordinates. A bracket is
// determined by its list of conjugate pairs (q, p), normalized so that
// {p, q} = +1, and acts through hamiltonian derivations
//   X_f = sum_a (d^R f/dp_a) d/dq_a - (-1)^{|q_a||p_a|} (d^R f/dq_a) d/dp_a.
#pragma once

#include <vector>

#include "koszul/derivation.hpp"

namespace koszul {

struct ConjugatePair {
    int position;  // chart index of q
    int momentum;  // chart index of p
};

class PoissonStructure {
  public:
    PoissonStructure() = default;
    PoissonStructure(const Chart& chart, std::vector<ConjugatePair> pairs)
        : chart_(chart), pairs_(std::move(pairs)) {
        if (pairs_.empty()) throw Error("Poisson structure with no pairs");
        degree_ = -(chart_.degree(pairs_[0].position) +
                    chart_.degree(pairs_[0].momentum));
        for (const auto& pr : pairs_)
            if (-(chart_.degree(pr.position) + chart_.degree(pr.momentum)) !=
                degree_)
                throw DegreeError("conjugate pairs of mixed bracket degree");
    }

    const Chart& chart() const { return chart_; }
    int bracket_degree() const { return degree_; }

    Derivation hamiltonian(const Superfunction& f) const {
        chart_.require_same(f.chart(), "hamiltonian field");
        auto fd = f.degree();
        std::optional<int> deg;
        if (fd) deg = *fd + degree_;
        Derivation x(chart_, deg);
        for (const auto& pr : pairs_) {
            x.set_component(pr.position, f.partial_right(pr.momentum));
            Superfunction t = f.partial_right(pr.position);
            if (chart_.odd(pr.position) && chart_.odd(pr.momentum))
                x.set_component(pr.momentum, t);
            else
                x.set_component(pr.momentum, -t);
        }
        return x;
    }

    Superfunction bracket(const Superfunction& f,
                          const Superfunction& g) const {
        return hamiltonian(f).apply(g);
    }

  private:
    Chart chart_;
    std::vector<ConjugatePair> pairs_;
    int degree_ = 0;
};

}  // namespace koszul
