// End-to-end workflows: minimal coupling of a 2-form, gauging of a closed
// 3-form over an action algebroid (existence/obstruction of the invariant
// extension), the twisted Poisson extension problem with its uniqueness
// report, and the worldsheet pullback identity of the resulting integrand.
#pragma once

#include <string>
#include <vector>

#include "koszul/catalog.hpp"
#include "koszul/courant.hpp"
#include "koszul/equivariance.hpp"

namespace koszul::sigma {

// ---------------------------------------------------------------------------
// Formal worldsheet charts: scalar-field symbols X^i of degree 0 and gauge
// symbols of degree 1, prolonged by the formal differential (Q = 0 base).

struct Worldsheet {
    ProlongedChart chart;  // X, A, dX, dA with Qt = d
    int n_scalars = 0;
    int n_gauge = 0;

    int x_index(int i) const { return i; }
    int a_index(int a) const { return n_scalars + a; }
    int dx_index(int i) const { return chart.dq_index(i); }
    int da_index(int a) const { return chart.dq_index(n_scalars + a); }
};

inline Worldsheet make_worldsheet(int n_scalars, int n_gauge,
                                  const std::string& gauge_stem = "A") {
    auto coords = catalog::numbered("X", n_scalars, 0);
    auto gauge = catalog::numbered(gauge_stem, n_gauge, 1);
    coords.insert(coords.end(), gauge.begin(), gauge.end());
    Chart base = Chart::make("worldsheet", coords);
    Derivation q0(base, 1);
    Worldsheet ws;
    ws.chart = ProlongedChart(base, q0);
    ws.n_scalars = n_scalars;
    ws.n_gauge = n_gauge;
    return ws;
}

inline Superfunction set_gauge_fields_zero(const Worldsheet& ws,
                                           const Superfunction& f) {
    const Chart& big = ws.chart.chart();
    return f.substitute(big, [&](int i) {
        int n = ws.n_scalars, m = ws.n_gauge;
        bool gauge = (i >= n && i < n + m) || (i >= 2 * n + m);
        return gauge ? Superfunction::zero(big)
                     : Superfunction::coordinate(big, i);
    });
}

// ---------------------------------------------------------------------------
// Minimal coupling of a 2-form: X*B - A^a X*(i_{v_a} B)
//                                + 1/2 A^a A^b X*(i_{v_a} i_{v_b} B).

struct MinimalCoupling {
    Worldsheet ws;
    Superfunction integrand;
};

inline MinimalCoupling minimal_coupling(const TwoTensor& b,
                                        const std::vector<VectorField>& v) {
    const int n = b.n;
    const int m = static_cast<int>(v.size());
    MinimalCoupling mc;
    mc.ws = make_worldsheet(n, m);
    const Chart& big = mc.ws.chart.chart();
    auto dX = [&](int i) {
        return Superfunction::coordinate(big, mc.ws.dx_index(i));
    };
    auto A = [&](int a) {
        return Superfunction::coordinate(big, mc.ws.a_index(a));
    };
    Superfunction out(big);
    Rational half(1, 2);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (b.at(i, j).is_zero()) continue;
            out = out + Superfunction::from_scalar(big, b.at(i, j) * half) *
                            dX(i) * dX(j);
        }
    for (int a = 0; a < m; ++a) {
        OneForm ib = iota_twoform(v[a], b);
        for (int i = 0; i < n; ++i) {
            if (ib[i].is_zero()) continue;
            out = out - A(a) * Superfunction::from_scalar(big, ib[i]) * dX(i);
        }
    }
    for (int a = 0; a < m; ++a)
        for (int bb = 0; bb < m; ++bb) {
            Scalar c = pair_form_vector(iota_twoform(v[bb], b), v[a]);
            if (c.is_zero()) continue;
            out = out + A(a) * A(bb) * Superfunction::from_scalar(big, c * half);
        }
    mc.integrand = out;
    return mc;
}

// ---------------------------------------------------------------------------
// Coefficient read-off: the Scalar c with f ⊇ c * (q_{i1} ... q_{ik}) for
// the product taken in the order given.

inline Scalar extract_coefficient(const Superfunction& f,
                                  const std::vector<int>& chart_indices) {
    const Chart& chart = f.chart();
    Superfunction mono = Superfunction::unit(chart);
    for (int idx : chart_indices)
        mono = mono * Superfunction::coordinate(chart, idx);
    if (mono.is_zero()) throw Error("vanishing reference monomial");
    const auto& [key, lead] = *mono.terms().begin();
    Scalar stored = f.coefficient(key);
    return stored * (Rational(1) / lead.constant_value());
}

// ---------------------------------------------------------------------------
// Twisted Poisson extension problem.

struct TpsmSetup {
    PoissonData data;
    catalog::Instance cotangent;  // (T*[1]M, Q_{pi,H})
    ProlongedChart prolonged;     // T[1]T*[1]M with Qt and the Q-basis
    GTFamily family;              // declared generating family
    int coefficient_degree = 0;
    std::optional<Polynomial> den;
    unsigned pole_power = 0;
};

// Collects the denominator content of the prolonged structure field so the
// unknown-coefficient space can represent the instance's rational data.
inline void derive_coefficient_space(TpsmSetup& s, int extra_degree) {
    Polynomial den = Polynomial::constant(s.data.n, 1);
    unsigned max_power = 0;
    std::vector<Polynomial> factors;
    for (const auto& [i, comp] : s.prolonged.qt().components())
        for (const auto& [mono, sc] : comp.terms())
            for (const auto& [f, k] : sc.denominator_factors()) {
                bool seen = false;
                for (const auto& g : factors)
                    if (g == f) seen = true;
                if (!seen) factors.push_back(f);
                max_power = std::max(max_power, k);
            }
    for (const auto& f : factors) den = den * f;
    if (!factors.empty()) {
        s.den = den;
        s.pole_power = max_power;
        s.coefficient_degree =
            static_cast<int>(max_power * den.degree()) + extra_degree;
    } else {
        s.den = std::nullopt;
        s.pole_power = 0;
        s.coefficient_degree = extra_degree;
    }
}

inline TpsmSetup make_tpsm_setup(const PoissonData& data, int gt_degree_bound,
                                 int extra_coefficient_degree = 0,
                                 const SolverOptions& opts = {}) {
    TpsmSetup s;
    s.data = data;
    s.cotangent = catalog::build_twisted_cotangent(data);
    if (!s.cotangent.valid)
        throw Error("instance data is not twisted Poisson");
    s.prolonged = ProlongedChart(s.cotangent.chart, s.cotangent.q);
    s.family = gt_generating_family(data, s.prolonged, gt_degree_bound, opts);
    derive_coefficient_space(s, extra_coefficient_degree);
    return s;
}

inline Scalar scalar_determinant(const TwoTensor& m) {
    const int n = m.n;
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    Scalar det(n);
    do {
        int sign = 1;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) sign = -sign;
        Scalar term(n, sign);
        for (int i = 0; i < n; ++i) term = term * m.at(i, perm[i]);
        det = det + term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

// D_H e = 0 is the symmetry condition for a section of T*M.
inline bool tpsm_symmetry_check(const PoissonData& p, const OneForm& e) {
    return dh_operator(p, e).is_zero();
}

struct ExtensionReport {
    AnsatzSolution solution;        // over the Q-basis chart
    bool anchored = true;
    Superfunction h_tilde_qbasis;   // representative extension, Q-basis
    Superfunction h_tilde;          // the same in the (dq) coordinates
    int nullspace_dim = 0;
    bool hypothesis_checked = false;  // nondegeneracy hypothesis verified
    bool hypothesis_holds = false;
    PredicateResult basic_horizontal;
    PredicateResult basic_equivariant;
};

// The anchored generators: every degree 3 monomial that is not a pure
// product of the Qx's (those belong to the fixed leading part).
inline std::vector<std::pair<std::string, Superfunction>>
extension_generators(const TpsmSetup& s, bool anchored) {
    const Chart& qb = s.prolonged.qbasis_chart();
    const int n = s.data.n;
    auto all = degree_monomials(qb, 3);
    if (!anchored) return all;
    std::vector<std::pair<std::string, Superfunction>> out;
    for (auto& [name, f] : all) {
        const auto& e = f.terms().begin()->first.e;
        unsigned qx_total = 0, rest = 0;
        for (int j = 0; j < qb.fiber_count(); ++j) {
            int idx = qb.base_count() + j;
            // Q-basis fiber layout: p_1..p_n, Qx_1..Qx_n, Qp_1..Qp_n.
            if (idx >= 2 * n && idx < 3 * n)
                qx_total += e[j];
            else
                rest += e[j];
        }
        if (qx_total == 3 && rest == 0) continue;
        out.emplace_back(name, f);
    }
    return out;
}

inline Superfunction leading_anchor(const TpsmSetup& s) {
    const Chart& qb = s.prolonged.qbasis_chart();
    const int n = s.data.n;
    Superfunction anchor(qb);
    Rational sixth(1, 6);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Scalar c = s.data.h.at(i, j, k);
                if (c.is_zero()) continue;
                anchor = anchor +
                         Superfunction::from_scalar(qb, c * sixth) *
                             Superfunction::coordinate(qb, 2 * n + i) *
                             Superfunction::coordinate(qb, 2 * n + j) *
                             Superfunction::coordinate(qb, 2 * n + k);
            }
    return anchor;
}

inline AnsatzProblem extension_problem(const TpsmSetup& s, bool anchored) {
    const Chart& qb = s.prolonged.qbasis_chart();
    AnsatzProblem prob(qb, anchored ? leading_anchor(s)
                                    : Superfunction::zero(qb));
    prob.generators = extension_generators(s, anchored);
    prob.basis = make_coefficient_basis(qb, s.coefficient_degree, s.den,
                                        s.pole_power);
    impose_closed(prob, s.prolonged.qt_on_qbasis());
    std::vector<std::pair<std::string, Derivation>> gens;
    for (const auto& g : s.family.generators)
        gens.emplace_back(g.name, s.prolonged.to_qbasis(g.field));
    impose_horizontal(prob, gens);
    return prob;
}

inline ExtensionReport tpsm_extension(const TpsmSetup& s, bool anchored = true,
                                      const SolverOptions& opts = {}) {
    ExtensionReport rep;
    rep.anchored = anchored;
    AnsatzProblem prob = extension_problem(s, anchored);
    rep.solution = solve(prob, opts);
    rep.nullspace_dim = rep.solution.space.dimension();
    Scalar det = scalar_determinant(s.data.pi);
    if (!det.is_zero()) {
        rep.hypothesis_checked = true;
        rep.hypothesis_holds = !s.data.h.is_zero();
    }
    if (rep.solution.space.consistent) {
        rep.h_tilde_qbasis = rep.solution.particular;
        if (!anchored && rep.nullspace_dim > 0 &&
            rep.h_tilde_qbasis.is_zero())
            rep.h_tilde_qbasis = rep.solution.null_superfunctions.front();
        rep.h_tilde = s.prolonged.from_qbasis(rep.h_tilde_qbasis);
        rep.basic_horizontal = is_horizontal(rep.h_tilde, s.family.generators);
        rep.basic_equivariant =
            is_equivariant(rep.h_tilde, s.prolonged.qt(), s.family.generators);
    } else {
        rep.h_tilde_qbasis = Superfunction::zero(s.prolonged.qbasis_chart());
        rep.h_tilde = Superfunction::zero(s.prolonged.chart());
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Worldsheet pullback of the extension and the sigma-model identity.

struct PullbackIdentity {
    Worldsheet ws;
    Superfunction pulled;    // f*(H~)
    Superfunction reference; // d(A_i dX^i + 1/2 pi A A) + 1/6 H dX dX dX
    Superfunction residual;  // pulled - reference
    bool holds = false;
};

inline PullbackMap tpsm_pullback(const TpsmSetup& s, const Worldsheet& ws) {
    const int n = s.data.n;
    std::vector<Superfunction> images;
    const Chart& big = ws.chart.chart();
    for (int i = 0; i < n; ++i)
        images.push_back(Superfunction::coordinate(big, ws.x_index(i)));
    for (int i = 0; i < n; ++i)
        images.push_back(Superfunction::coordinate(big, ws.a_index(i)));
    return PullbackMap(big, ws.chart.qt(), s.prolonged, std::move(images));
}

// d(A_i dX^i + (pi_sign/2) pi^{ij} A_i A_j) + 1/6 H_{ijk} dX^i dX^j dX^k
inline Superfunction psm_reference(const TpsmSetup& s, const Worldsheet& ws,
                                   const Rational& pi_sign) {
    const int n = s.data.n;
    const Chart& big = ws.chart.chart();
    auto A = [&](int i) {
        return Superfunction::coordinate(big, ws.a_index(i));
    };
    auto dX = [&](int i) {
        return Superfunction::coordinate(big, ws.dx_index(i));
    };
    Superfunction two_form(big);
    for (int i = 0; i < n; ++i) two_form = two_form + A(i) * dX(i);
    Rational half = pi_sign / 2;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (s.data.pi.at(i, j).is_zero()) continue;
            two_form = two_form +
                       Superfunction::from_scalar(big, s.data.pi.at(i, j) * half) *
                           A(i) * A(j);
        }
    Superfunction ref = ws.chart.qt().apply(two_form);
    Rational sixth(1, 6);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Scalar c = s.data.h.at(i, j, k);
                if (c.is_zero()) continue;
                ref = ref + Superfunction::from_scalar(big, c * sixth) *
                                dX(i) * dX(j) * dX(k);
            }
    return ref;
}

inline PullbackIdentity worldsheet_pullback_identity(
    const TpsmSetup& s, const Superfunction& h_tilde,
    const Rational& pi_sign = 1) {
    PullbackIdentity out;
    out.ws = make_worldsheet(s.data.n, s.data.n);
    PullbackMap f = tpsm_pullback(s, out.ws);
    out.pulled = f(h_tilde);
    out.reference = psm_reference(s, out.ws, pi_sign);
    out.residual = out.pulled - out.reference;
    out.holds = out.residual.is_zero();
    return out;
}

// ---------------------------------------------------------------------------
// Gauging of a closed invariant 3-form over an action algebroid.

struct WZData {
    Antisym3 h;             // closed 3-form on M
    catalog::LieData lie;   // structure constants and the action on M

    bool valid(std::string* why = nullptr) const {
        if (!closed3(h)) {
            if (why) *why = "3-form is not closed";
            return false;
        }
        for (std::size_t a = 0; a < lie.rho.size(); ++a)
            if (!lie_threeform(lie.rho[a], h).is_zero()) {
                if (why)
                    *why = "3-form is not invariant under generator " +
                           std::to_string(a + 1);
                return false;
            }
        return true;
    }
};

struct StanciuReport {
    bool data_valid = false;
    std::string note;
    ProlongedChart prolonged;  // T[1]E[1]
    AnsatzSolution solution;
    bool solvable = false;
    // Obstruction data of the representative solution: F_ab = E_{ia} rho_b^i
    // must be antisymmetric.
    std::vector<std::vector<Scalar>> e_rep;   // E_{ia}
    std::vector<std::vector<Scalar>> f_ab;    // E_{ia} rho_b^i
    bool obstruction_clear = false;
};

// Lifted gauge parameters eps^a(x) d/dxi^a with monomial coefficients.
inline std::vector<std::pair<std::string, Derivation>>
stanciu_horizontal_generators(const ProlongedChart& pc, int gauge_dim,
                              int degree_bound) {
    const Chart& base = pc.base();
    const int nx = base.base_count();
    CoefficientBasis basis = make_coefficient_basis(base, degree_bound);
    std::vector<std::pair<std::string, Derivation>> out;
    for (int a = 0; a < gauge_dim; ++a)
        for (const auto& [bname, b] : basis.elements) {
            Derivation e(base, -1);
            e.set_component(nx + a, Superfunction::from_scalar(base, b));
            Derivation lifted = pc.complete_lift(e);
            out.emplace_back(
                "eps[" + std::to_string(a + 1) + "]*" + bname,
                pc.to_qbasis(lifted));
        }
    return out;
}

inline StanciuReport stanciu_gauging(const WZData& w, int degree_bound,
                                     const SolverOptions& opts = {}) {
    StanciuReport rep;
    rep.data_valid = w.valid(&rep.note);
    if (!rep.data_valid) throw Error("invalid gauging data: " + rep.note);

    catalog::Instance inst = catalog::build_action_algebroid(w.lie);
    if (!inst.valid) throw Error("action data does not define a Q-structure");
    rep.prolonged = ProlongedChart(inst.chart, inst.q);
    const Chart& qb = rep.prolonged.qbasis_chart();
    const int nx = w.lie.base_dim;
    const int ng = w.lie.dim;

    // Anchor 1/6 H_{ijk} Qx^i Qx^j Qx^k; unknowns over the remaining
    // degree 3 monomials.
    Superfunction anchor(qb);
    Rational sixth(1, 6);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < nx; ++j)
            for (int k = 0; k < nx; ++k) {
                Scalar c = w.h.at(i, j, k);
                if (c.is_zero()) continue;
                anchor = anchor +
                         Superfunction::from_scalar(qb, c * sixth) *
                             Superfunction::coordinate(qb, nx + ng + i) *
                             Superfunction::coordinate(qb, nx + ng + j) *
                             Superfunction::coordinate(qb, nx + ng + k);
            }
    AnsatzProblem prob(qb, anchor);
    for (auto& [name, f] : degree_monomials(qb, 3)) {
        const auto& e = f.terms().begin()->first.e;
        unsigned qx = 0, rest = 0;
        for (int j = 0; j < qb.fiber_count(); ++j) {
            int idx = qb.base_count() + j;
            bool is_qx = idx >= nx + ng && idx < 2 * nx + ng;
            (is_qx ? qx : rest) += e[j];
        }
        if (qx == 3 && rest == 0) continue;
        prob.generators.emplace_back(name, f);
    }
    prob.basis = make_coefficient_basis(qb, degree_bound);
    impose_closed(prob, rep.prolonged.qt_on_qbasis());
    impose_horizontal(prob,
                      stanciu_horizontal_generators(rep.prolonged, ng,
                                                    degree_bound));
    rep.solution = solve(prob, opts);
    rep.solvable = rep.solution.space.consistent;
    if (!rep.solvable) return rep;

    // Read E_{ia} = coeff(Qx^i Qxi^a) and form F_ab = E_{ia} rho_b^i.
    const Superfunction& sol = rep.solution.particular;
    rep.e_rep.assign(nx, std::vector<Scalar>(ng, Scalar(nx)));
    for (int i = 0; i < nx; ++i)
        for (int a = 0; a < ng; ++a)
            rep.e_rep[i][a] = extract_coefficient(
                sol, {nx + ng + i, 2 * nx + ng + a});
    rep.f_ab.assign(ng, std::vector<Scalar>(ng, Scalar(nx)));
    bool sym_zero = true;
    for (int a = 0; a < ng; ++a)
        for (int b = 0; b < ng; ++b) {
            Scalar f(nx);
            for (int i = 0; i < nx; ++i)
                f = f + rep.e_rep[i][a] * w.lie.rho[b][i];
            rep.f_ab[a][b] = f;
        }
    for (int a = 0; a < ng; ++a)
        for (int b = 0; b < ng; ++b)
            if (!(rep.f_ab[a][b] + rep.f_ab[b][a]).is_zero()) sym_zero = false;
    rep.obstruction_clear = sym_zero;
    return rep;
}

}  // namespace koszul::sigma
