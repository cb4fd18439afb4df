// Constructors for the Q-manifolds the kernel works with: shifted tangent
// and cotangent bundles, degree-1 Lie algebra charts, action algebroids and
// the degree-2 symplectic phase space of exact Courant algebroids. Every
// builder returns the chart, the candidate Q and a validity verdict with a
// certificate when the structure equations fail.
#pragma once

#include <string>
#include <vector>

#include "koszul/derivation.hpp"
#include "koszul/graded_poisson.hpp"
#include "koszul/tensor.hpp"

namespace koszul::catalog {

struct Instance {
    Chart chart;
    Derivation q;
    bool valid = false;
    std::optional<std::pair<int, Superfunction>> certificate;
};

inline Instance finish(const Chart& chart, const Derivation& q) {
    Instance inst{chart, q, false, std::nullopt};
    QCheck check = is_q_structure(q);
    inst.valid = check.ok;
    inst.certificate = check.certificate;
    return inst;
}

inline std::vector<Coordinate> numbered(const std::string& stem, int n,
                                        int degree) {
    std::vector<Coordinate> v;
    v.reserve(n);
    for (int i = 1; i <= n; ++i)
        v.push_back({stem + std::to_string(i), degree});
    return v;
}

// T[1]M with the de Rham field theta^i d/dx^i.
inline Instance build_t1m(int n) {
    if (n < 1) throw Error("build_t1m needs n >= 1");
    auto coords = numbered("x", n, 0);
    auto thetas = numbered("th", n, 1);
    coords.insert(coords.end(), thetas.begin(), thetas.end());
    Chart chart = Chart::make("T[1]R^" + std::to_string(n), coords);
    Derivation q(chart, 1);
    for (int i = 0; i < n; ++i)
        q.set_component(i, Superfunction::coordinate(chart, n + i));
    return finish(chart, q);
}

struct LieData {
    int dim = 0;                    // dim g
    std::vector<Rational> c;       // C^a_{bc}, flattened a*dim^2 + b*dim + c
    int base_dim = 0;              // dim M when an action is present
    std::vector<VectorField> rho;  // rho_a^i, one vector field per basis index

    const Rational& c_at(int a, int b, int cc) const {
        return c[static_cast<std::size_t>(a) * dim * dim + b * dim + cc];
    }
    bool antisymmetric() const {
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b)
                for (int cc = 0; cc < dim; ++cc)
                    if (c_at(a, b, cc) != -c_at(a, cc, b)) return false;
        return true;
    }
    // sum_cyc(b,c,m) sum_d C^d_{cm} C^a_{bd} = 0 (scale-invariant Jacobi).
    bool jacobi_holds() const {
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b)
                for (int cc = 0; cc < dim; ++cc)
                    for (int m = 0; m < dim; ++m) {
                        Rational s = 0;
                        for (int d = 0; d < dim; ++d)
                            s += c_at(d, cc, m) * c_at(a, b, d) +
                                 c_at(d, m, b) * c_at(a, cc, d) +
                                 c_at(d, b, cc) * c_at(a, m, d);
                        if (!koszul::is_zero(s)) return false;
                    }
        return true;
    }
    // [rho_b, rho_c] = 2 C^a_{bc} rho_a, the normalization induced by
    // Q_g = xi^a rho_a - C^a_{bc} xi^b xi^c d/dxi^a.
    bool action_property_holds() const {
        if (rho.empty()) return false;
        for (int b = 0; b < dim; ++b)
            for (int cc = b + 1; cc < dim; ++cc) {
                VectorField lhs = lie_bracket(rho[b], rho[cc]);
                for (int i = 0; i < base_dim; ++i) {
                    Scalar rhs(base_dim);
                    for (int a = 0; a < dim; ++a)
                        rhs = rhs + rho[a][i] * (c_at(a, b, cc) * 2);
                    if (!(lhs[i] - rhs).is_zero()) return false;
                }
            }
        return true;
    }
};

inline LieData so3() {
    LieData l;
    l.dim = 3;
    l.c.assign(27, 0);
    auto set = [&](int a, int b, int cc, int v) {
        l.c[static_cast<std::size_t>(a) * 9 + b * 3 + cc] = v;
    };
    set(0, 1, 2, 1);
    set(0, 2, 1, -1);
    set(1, 2, 0, 1);
    set(1, 0, 2, -1);
    set(2, 0, 1, 1);
    set(2, 1, 0, -1);
    return l;
}

// g[1] with Q_CE = C^a_{bc} xi^b xi^c d/dxi^a (no 1/2 factor).
inline Instance build_g1(const LieData& l) {
    if (!l.antisymmetric()) throw Error("structure constants not antisymmetric");
    Chart chart = Chart::make("g[1]", numbered("xi", l.dim, 1));
    Derivation q(chart, 1);
    for (int a = 0; a < l.dim; ++a) {
        Superfunction comp(chart);
        for (int b = 0; b < l.dim; ++b)
            for (int cc = 0; cc < l.dim; ++cc) {
                if (koszul::is_zero(l.c_at(a, b, cc))) continue;
                comp = comp + Superfunction::coordinate(chart, b) *
                                  Superfunction::coordinate(chart, cc) *
                                  l.c_at(a, b, cc);
            }
        q.set_component(a, comp);
    }
    return finish(chart, q);
}

// Action algebroid chart M x g[1] with Q_g = xi^a rho_a^i d/dx^i
// - C^a_{bc} xi^b xi^c d/dxi^a.
inline Instance build_action_algebroid(const LieData& l) {
    if (!l.antisymmetric()) throw Error("structure constants not antisymmetric");
    if (l.rho.size() != static_cast<std::size_t>(l.dim))
        throw Error("action algebroid needs one vector field per basis index");
    auto coords = numbered("x", l.base_dim, 0);
    auto xis = numbered("xi", l.dim, 1);
    coords.insert(coords.end(), xis.begin(), xis.end());
    Chart chart = Chart::make("E[1]", coords);
    Derivation q(chart, 1);
    for (int i = 0; i < l.base_dim; ++i) {
        Superfunction comp(chart);
        for (int a = 0; a < l.dim; ++a)
            comp = comp + Superfunction::coordinate(chart, l.base_dim + a) *
                              Superfunction::from_scalar(chart, l.rho[a][i]);
        q.set_component(i, comp);
    }
    for (int a = 0; a < l.dim; ++a) {
        Superfunction comp(chart);
        for (int b = 0; b < l.dim; ++b)
            for (int cc = 0; cc < l.dim; ++cc) {
                if (koszul::is_zero(l.c_at(a, b, cc))) continue;
                comp = comp -
                       Superfunction::coordinate(chart, l.base_dim + b) *
                           Superfunction::coordinate(chart, l.base_dim + cc) *
                           l.c_at(a, b, cc);
            }
        q.set_component(l.base_dim + a, comp);
    }
    return finish(chart, q);
}

// T*[1]M with Q_{pi,H} = pi^{i'i} p_{i'} d/dx^i - 1/2 C_i^{jk} p_j p_k d/dp_i,
// C_i^{jk} = pi^{jk}_{,i} + H_{ij'k'} pi^{jj'} pi^{kk'}; the x-component
// contracts the first index. Q^2 = 0 is equivalent to the twisted Jacobi
// identity, and for H = 0 this Q is the hamiltonian field of
// 1/2 pi^{ij} p_i p_j under the canonical degree -1 bracket.
inline Instance build_twisted_cotangent(const PoissonData& p) {
    if (!p.shapes_ok()) throw Error("twisted Poisson data malformed");
    const int n = p.n;
    auto coords = numbered("x", n, 0);
    auto ps = numbered("p", n, 1);
    coords.insert(coords.end(), ps.begin(), ps.end());
    Chart chart = Chart::make("T*[1]R^" + std::to_string(n), coords);
    Derivation q(chart, 1);
    for (int i = 0; i < n; ++i) {
        Superfunction comp(chart);
        for (int j = 0; j < n; ++j)
            comp = comp + Superfunction::from_scalar(chart, p.pi.at(j, i)) *
                              Superfunction::coordinate(chart, n + j);
        q.set_component(i, comp);
    }
    Rational half(1, 2);
    for (int i = 0; i < n; ++i) {
        Superfunction comp(chart);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Scalar cjk = p.pi.at(j, k).derivative(i);
                for (int jp = 0; jp < n; ++jp)
                    for (int kp = 0; kp < n; ++kp)
                        cjk = cjk + p.h.at(i, jp, kp) * p.pi.at(j, jp) *
                                        p.pi.at(k, kp);
                if (cjk.is_zero()) continue;
                comp = comp - Superfunction::from_scalar(chart, cjk * half) *
                                  Superfunction::coordinate(chart, n + j) *
                                  Superfunction::coordinate(chart, n + k);
            }
        q.set_component(n + i, comp);
    }
    return finish(chart, q);
}

// The canonical degree -1 bracket of T*[1]M, normalized by {p_i, x^j} = d.
inline PoissonStructure cotangent_shift_bracket(const Chart& chart, int n) {
    std::vector<ConjugatePair> pairs;
    pairs.reserve(n);
    for (int i = 0; i < n; ++i) pairs.push_back({i, n + i});
    return PoissonStructure(chart, pairs);
}

struct CourantInstance {
    Chart chart;
    Superfunction generator;  // psi_i th^i + 1/6 H_{ijk} th^i th^j th^k
    Derivation q;             // {generator, .}
    PoissonStructure bracket;
    bool valid = false;
    std::optional<std::pair<int, Superfunction>> certificate;
};

// T*[2]T[1]M with coordinates x^i(0), th^i(1), p_i(1), psi_i(2) and the
// canonical degree -2 bracket {psi_i, x^j} = d, {p_i, th^j} = d.
inline CourantInstance build_courant_phase(int n, const Antisym3& h) {
    if (h.dim() != n || h.nvars() != n) throw Error("3-form dimension mismatch");
    std::vector<Coordinate> coords = numbered("x", n, 0);
    auto th = numbered("th", n, 1);
    auto ps = numbered("p", n, 1);
    auto psi = numbered("psi", n, 2);
    coords.insert(coords.end(), th.begin(), th.end());
    coords.insert(coords.end(), ps.begin(), ps.end());
    coords.insert(coords.end(), psi.begin(), psi.end());
    Chart chart = Chart::make("T*[2]T[1]R^" + std::to_string(n), coords);

    std::vector<ConjugatePair> pairs;
    for (int i = 0; i < n; ++i) pairs.push_back({i, 3 * n + i});        // (x, psi)
    for (int i = 0; i < n; ++i) pairs.push_back({n + i, 2 * n + i});    // (th, p)
    PoissonStructure bracket(chart, pairs);

    Superfunction gen(chart);
    for (int i = 0; i < n; ++i)
        gen = gen + Superfunction::coordinate(chart, 3 * n + i) *
                        Superfunction::coordinate(chart, n + i);
    Rational sixth(1, 6);
    for (const auto& [key, val] : h.entries()) {
        // 1/6 sum over all orders of an increasing triple = sum over the
        // increasing triple itself; keep the 1/6 times the 6 signed orders.
        Superfunction mono = Superfunction::coordinate(chart, n + key[0]) *
                             Superfunction::coordinate(chart, n + key[1]) *
                             Superfunction::coordinate(chart, n + key[2]);
        gen = gen + mono * Superfunction::from_scalar(chart, val);
    }

    CourantInstance inst{chart, gen, bracket.hamiltonian(gen), bracket, false,
                         std::nullopt};
    QCheck check = is_q_structure(inst.q);
    inst.valid = check.ok;
    inst.certificate = check.certificate;
    return inst;
}

// Nondegenerate quadratic-form instance: omega = dx1^dx2 + (1+x1) dx3^dx4
// on x1 > -1, pi the matrix inverse of omega and H = sign * d(omega). The
// Q^2 test fixes the workable sign; -1 is the one this kernel resolves.
inline PoissonData wz4_data(int h_sign) {
    PoissonData p;
    p.n = 4;
    p.pi = TwoTensor(4, 4);
    p.h = Antisym3(4, 4);
    Scalar one(4, 1);
    Polynomial dpoly =
        Polynomial::constant(4, 1) + Polynomial::variable(4, 0);
    Scalar inv_d = one / Scalar(dpoly);
    p.pi.at(0, 1) = -one;
    p.pi.at(1, 0) = one;
    p.pi.at(2, 3) = -inv_d;
    p.pi.at(3, 2) = inv_d;
    p.h.set(0, 2, 3, Scalar(4, h_sign));
    return p;
}

inline int wz4_resolved_sign() {
    for (int s : {1, -1})
        if (build_twisted_cotangent(wz4_data(s)).valid) return s;
    throw Error("no sign makes the quadratic instance a Q-structure");
}

}  // namespace koszul::catalog
