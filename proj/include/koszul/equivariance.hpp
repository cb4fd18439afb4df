// Equivariant Q-cohomology predicates (horizontal / equivariant / basic
// with respect to a declared generating family of degree -1 fields), the
// twisted Poisson one-form bracket and its semidirect-product companions,
// and the lifted symmetry generators on T[1]T*[1]M.
#pragma once

#include <string>
#include <vector>

#include "koszul/ansatz.hpp"
#include "koszul/prolong.hpp"
#include "koszul/tensor.hpp"

namespace koszul {

struct NamedDerivation {
    std::string name;
    Derivation field;
};

struct PredicateResult {
    bool ok = true;
    // Generator name and the nonzero superfunction it produced.
    std::optional<std::pair<std::string, Superfunction>> certificate;
};

inline PredicateResult is_horizontal(const Superfunction& w,
                                     const std::vector<NamedDerivation>& gens) {
    for (const auto& [name, g] : gens) {
        if (!g.degree() || *g.degree() != -1)
            throw DegreeError("generator '" + name + "' must have degree -1");
        Superfunction r = g.apply(w);
        if (!r.is_zero()) return {false, {{name, r}}};
    }
    return {};
}

inline PredicateResult is_equivariant(const Superfunction& w,
                                      const Derivation& q,
                                      const std::vector<NamedDerivation>& gens) {
    for (const auto& [name, g] : gens) {
        if (!g.degree() || *g.degree() != -1)
            throw DegreeError("generator '" + name + "' must have degree -1");
        Superfunction r = commutator(q, g).apply(w);
        if (!r.is_zero()) return {false, {{name, r}}};
    }
    return {};
}

inline PredicateResult is_basic(const Superfunction& w, const Derivation& q,
                                const std::vector<NamedDerivation>& gens) {
    PredicateResult hor = is_horizontal(w, gens);
    if (!hor.ok) return hor;
    return is_equivariant(w, q, gens);
}

// d_eps = Q + E; inhomogeneous, squares to zero on basic superfunctions.
inline Derivation equivariant_differential(const Derivation& q,
                                           const Derivation& e) {
    if (!e.degree() || *e.degree() != -1)
        throw DegreeError("equivariant differential needs a degree -1 field");
    return q + e;
}

// ---------------------------------------------------------------------------
// Twisted Poisson one-form calculus.

// [e1, e2] = L_{pi#e1} e2 - L_{pi#e2} e1 - d(pi(e1,e2)) + i_{pi#e1} i_{pi#e2} H
// with the contraction convention (i_u i_w H)_k = w^j u^i H_{ijk}, fixed by
// the dual-path equality against the derived bracket of the lifted fields.
inline OneForm one_form_bracket(const PoissonData& p, const OneForm& e1,
                                const OneForm& e2) {
    VectorField v1 = p.sharp(e1), v2 = p.sharp(e2);
    OneForm r = lie_oneform(v1, e2);
    OneForm l2 = lie_oneform(v2, e1);
    OneForm dp = d_scalar(p.pi_pair(e1, e2), p.n);
    OneForm hh = iota_twoform(v2, iota_threeform(v1, p.h));
    for (int i = 0; i < p.n; ++i) r[i] = r[i] - l2[i] - dp[i] + hh[i];
    return r;
}

// D_H e = de + i_{pi#e} H, an antisymmetric 2-tensor.
inline TwoTensor dh_operator(const PoissonData& p, const OneForm& e) {
    TwoTensor r = d_oneform(e);
    TwoTensor hpart = iota_threeform(p.sharp(e), p.h);
    for (int i = 0; i < p.n; ++i)
        for (int j = 0; j < p.n; ++j)
            r.at(i, j) = r.at(i, j) + hpart.at(i, j);
    return r;
}

// [a, b]_{ij} = a_{ik} pi^{kl} b_{lj} - b_{ik} pi^{kl} a_{lj}
inline TwoTensor alpha_bracket(const PoissonData& p, const TwoTensor& a,
                               const TwoTensor& b) {
    TwoTensor r(p.n, p.n);
    for (int i = 0; i < p.n; ++i)
        for (int j = 0; j < p.n; ++j) {
            Scalar s(p.n);
            for (int k = 0; k < p.n; ++k)
                for (int l = 0; l < p.n; ++l)
                    s = s + a.at(i, k) * p.pi.at(k, l) * b.at(l, j) -
                        b.at(i, k) * p.pi.at(k, l) * a.at(l, j);
            r.at(i, j) = s;
        }
    return r;
}

// rho(e)(a) = L_{pi#e}(a) - <pi^{23}, D_H e (x) a>
inline TwoTensor g_action(const PoissonData& p, const OneForm& e,
                          const TwoTensor& a) {
    TwoTensor r = lie_twotensor(p.sharp(e), a);
    TwoTensor dh = dh_operator(p, e);
    for (int i = 0; i < p.n; ++i)
        for (int j = 0; j < p.n; ++j) {
            Scalar s(p.n);
            for (int k = 0; k < p.n; ++k)
                for (int l = 0; l < p.n; ++l)
                    s = s + dh.at(i, k) * p.pi.at(k, l) * a.at(l, j);
            r.at(i, j) = r.at(i, j) - s;
        }
    return r;
}

// ---------------------------------------------------------------------------
// Lifted symmetry generators on T[1]T*[1]M.

struct GTElement {
    OneForm eps;
    TwoTensor alpha;  // coordinate representative
};

// The tensorial representative: abar_{ij} = alpha_{ij} - eps_{i,j}.
inline TwoTensor gt_alpha_bar(const GTElement& g) {
    TwoTensor r = g.alpha;
    for (int i = 0; i < r.n; ++i)
        for (int j = 0; j < r.n; ++j)
            r.at(i, j) = r.at(i, j) - g.eps[i].derivative(j);
    return r;
}

// Membership: D_H eps = 0 and the antisymmetric part of abar vanishes.
inline bool gt_member(const PoissonData& p, const GTElement& g) {
    if (!dh_operator(p, g.eps).is_zero()) return false;
    return gt_alpha_bar(g).antisymmetric_part(p.n).is_zero();
}

// eps~ = eps_i d/dp_i + alpha_{ij} dx^j d/d(dp_i) on T[1]T*[1]M.
inline Derivation gt_lift(const ProlongedChart& pc, const GTElement& g) {
    const Chart& big = pc.chart();
    const int n = pc.base().base_count();
    Derivation r(big, -1);
    for (int i = 0; i < n; ++i) {
        r.set_component(n + i, Superfunction::from_scalar(big, g.eps[i]));
        Superfunction comp(big);
        for (int j = 0; j < n; ++j)
            comp = comp + Superfunction::from_scalar(big, g.alpha.at(i, j)) *
                              Superfunction::coordinate(big, pc.dq_index(j));
        r.set_component(pc.dq_index(n + i), comp);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Generating families for the GT predicates. The symmetry algebra is
// infinite dimensional; predicates are decided against a finite declared
// family: symmetric alpha-type generators with polynomial entries up to a
// degree bound, plus a basis of polynomial solutions of D_H e = 0.

inline std::vector<NamedDerivation> gt_alpha_generators(
    const PoissonData& p, const ProlongedChart& pc, int degree_bound) {
    std::vector<NamedDerivation> out;
    CoefficientBasis basis = make_coefficient_basis(pc.base(), degree_bound);
    for (int i = 0; i < p.n; ++i)
        for (int j = i; j < p.n; ++j)
            for (const auto& [bname, b] : basis.elements) {
                GTElement g;
                g.eps.assign(p.n, Scalar(p.n));
                g.alpha = TwoTensor(p.n, p.n);
                g.alpha.at(i, j) = b;
                g.alpha.at(j, i) = g.alpha.at(j, i) + b;
                std::string name = "alpha[" + std::to_string(i + 1) + "," +
                                   std::to_string(j + 1) + "]*" + bname;
                out.push_back({name, gt_lift(pc, g)});
            }
    return out;
}

// Polynomial solutions of D_H e = 0 with entries of degree <= bound.
inline std::vector<std::pair<std::string, OneForm>> dh_kernel_basis(
    const PoissonData& p, const Chart& base, int degree_bound,
    const SolverOptions& opts = {}) {
    CoefficientBasis basis = make_coefficient_basis(base, degree_bound);
    const int nb = basis.size();
    ScalarLinearSystem sys(p.n * nb, p.n);

    // Columns are (component i, basis element a); assemble D_H of each
    // basis one-form and read off the (j<k) entries.
    std::vector<TwoTensor> images;
    images.reserve(static_cast<std::size_t>(p.n) * nb);
    for (int i = 0; i < p.n; ++i)
        for (int a = 0; a < nb; ++a) {
            OneForm e(p.n, Scalar(p.n));
            e[i] = basis.elements[a].second;
            images.push_back(dh_operator(p, e));
        }
    for (int j = 0; j < p.n; ++j)
        for (int k = j + 1; k < p.n; ++k) {
            ScalarLinearSystem::Equation eq;
            eq.name = "DH[" + std::to_string(j + 1) + "," +
                      std::to_string(k + 1) + "]";
            eq.rhs = Scalar(p.n);
            for (int c = 0; c < p.n * nb; ++c) {
                const Scalar& s = images[c].at(j, k);
                if (!s.is_zero()) eq.coeffs.emplace_back(c, s);
            }
            sys.add_equation(std::move(eq));
        }

    auto res = sys.solve(opts);
    std::vector<std::pair<std::string, OneForm>> out;
    for (std::size_t v = 0; v < res.space.null_basis.size(); ++v) {
        OneForm e(p.n, Scalar(p.n));
        for (int i = 0; i < p.n; ++i)
            for (int a = 0; a < nb; ++a) {
                const Rational& c = res.space.null_basis[v][i * nb + a];
                if (is_zero(c)) continue;
                e[i] = e[i] + basis.elements[a].second * c;
            }
        out.emplace_back("dhker" + std::to_string(v + 1), e);
    }
    return out;
}

// Lift a D_H-kernel one-form with alpha = (eps_{i,j}) so abar = 0.
inline NamedDerivation gt_eps_generator(const ProlongedChart& pc,
                                        const std::string& name,
                                        const OneForm& e) {
    const int n = static_cast<int>(e.size());
    GTElement g;
    g.eps = e;
    g.alpha = TwoTensor(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.alpha.at(i, j) = e[i].derivative(j);
    return {name, gt_lift(pc, g)};
}

struct GTFamily {
    std::vector<NamedDerivation> generators;
    std::vector<std::pair<std::string, OneForm>> eps_solutions;
    int degree_bound = 0;
};

inline GTFamily gt_generating_family(const PoissonData& p,
                                     const ProlongedChart& pc,
                                     int degree_bound,
                                     const SolverOptions& opts = {}) {
    GTFamily fam;
    fam.degree_bound = degree_bound;
    fam.generators = gt_alpha_generators(p, pc, degree_bound);
    fam.eps_solutions = dh_kernel_basis(p, pc.base(), degree_bound, opts);
    for (const auto& [name, e] : fam.eps_solutions)
        fam.generators.push_back(gt_eps_generator(pc, name, e));
    return fam;
}

}  // namespace koszul
