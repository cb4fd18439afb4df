// Classical tensor calculus over the exact Scalar ring: vector fields,
// 1-forms, covariant 2-tensors and antisymmetric 3-/4-forms with the usual
// d, Lie derivative and contraction operations. This is the independent
// "component" route used to cross-check the graded machinery.
#pragma once

#include <array>
#include <map>
#include <vector>

#include "koszul/scalar.hpp"

namespace koszul {

using VectorField = std::vector<Scalar>;  // v^i
using OneForm = std::vector<Scalar>;      // e_i

struct TwoTensor {
    int n = 0;
    std::vector<Scalar> a;  // row-major a_{ij}

    TwoTensor() = default;
    TwoTensor(int dim, int nvars)
        : n(dim), a(static_cast<std::size_t>(dim) * dim, Scalar(nvars)) {}

    Scalar& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    const Scalar& at(int i, int j) const {
        return a[static_cast<std::size_t>(i) * n + j];
    }

    bool is_zero() const {
        for (const auto& s : a)
            if (!s.is_zero()) return false;
        return true;
    }
    bool is_antisymmetric() const {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j)
                if (!(at(i, j) + at(j, i)).is_zero()) return false;
        return true;
    }
    TwoTensor symmetric_part(int nvars) const {
        TwoTensor r(n, nvars);
        Rational half(1, 2);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                r.at(i, j) = (at(i, j) + at(j, i)) * half;
        return r;
    }
    TwoTensor antisymmetric_part(int nvars) const {
        TwoTensor r(n, nvars);
        Rational half(1, 2);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                r.at(i, j) = (at(i, j) - at(j, i)) * half;
        return r;
    }
    TwoTensor operator+(const TwoTensor& o) const {
        TwoTensor r = *this;
        for (std::size_t k = 0; k < a.size(); ++k) r.a[k] = r.a[k] + o.a[k];
        return r;
    }
    TwoTensor operator-(const TwoTensor& o) const {
        TwoTensor r = *this;
        for (std::size_t k = 0; k < a.size(); ++k) r.a[k] = r.a[k] - o.a[k];
        return r;
    }
    bool equals(const TwoTensor& o) const {
        for (std::size_t k = 0; k < a.size(); ++k)
            if (!a[k].equals(o.a[k])) return false;
        return true;
    }
};

// Totally antisymmetric 3-index arrays, stored on strictly increasing keys.
class Antisym3 {
  public:
    Antisym3() = default;
    Antisym3(int dim, int nvars) : n_(dim), nvars_(nvars) {}

    int dim() const { return n_; }
    int nvars() const { return nvars_; }
    const std::map<std::array<int, 3>, Scalar>& entries() const {
        return vals_;
    }

    void set(int i, int j, int k, const Scalar& s) {
        auto [key, sign] = sort_key(i, j, k);
        if (sign == 0) {
            if (!s.is_zero()) throw Error("repeated antisymmetric index");
            return;
        }
        Scalar v = sign < 0 ? -s : s;
        if (v.is_zero())
            vals_.erase(key);
        else
            vals_[key] = v;
    }

    Scalar at(int i, int j, int k) const {
        auto [key, sign] = sort_key(i, j, k);
        if (sign == 0) return Scalar(nvars_);
        auto it = vals_.find(key);
        if (it == vals_.end()) return Scalar(nvars_);
        return sign < 0 ? -it->second : it->second;
    }

    bool is_zero() const { return vals_.empty(); }

  private:
    static std::pair<std::array<int, 3>, int> sort_key(int i, int j, int k) {
        std::array<int, 3> key{i, j, k};
        int sign = 1;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2 - a; ++b)
                if (key[b] > key[b + 1]) {
                    std::swap(key[b], key[b + 1]);
                    sign = -sign;
                }
        if (key[0] == key[1] || key[1] == key[2]) return {key, 0};
        return {key, sign};
    }

    int n_ = 0;
    int nvars_ = 0;
    std::map<std::array<int, 3>, Scalar> vals_;
};

// (dH)_{ijkl} for i<j<k<l; H closed iff all components vanish.
inline bool closed3(const Antisym3& h, std::array<int, 4>* witness = nullptr) {
    const int n = h.dim();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                for (int l = k + 1; l < n; ++l) {
                    Scalar c = h.at(j, k, l).derivative(i) -
                               h.at(i, k, l).derivative(j) +
                               h.at(i, j, l).derivative(k) -
                               h.at(i, j, k).derivative(l);
                    if (!c.is_zero()) {
                        if (witness) *witness = {i, j, k, l};
                        return false;
                    }
                }
    return true;
}

inline Scalar pair_form_vector(const OneForm& e, const VectorField& v) {
    Scalar r(e.empty() ? 0 : e[0].nvars());
    for (std::size_t i = 0; i < e.size(); ++i) r = r + e[i] * v[i];
    return r;
}

inline OneForm d_scalar(const Scalar& s, int n) {
    OneForm r;
    r.reserve(n);
    for (int i = 0; i < n; ++i) r.push_back(s.derivative(i));
    return r;
}

// (de)_{ij} = e_{j,i} - e_{i,j}
inline TwoTensor d_oneform(const OneForm& e) {
    const int n = static_cast<int>(e.size());
    const int nv = e.empty() ? 0 : e[0].nvars();
    TwoTensor r(n, nv);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r.at(i, j) = e[j].derivative(i) - e[i].derivative(j);
    return r;
}

inline VectorField lie_bracket(const VectorField& v, const VectorField& w) {
    const int n = static_cast<int>(v.size());
    const int nv = v.empty() ? 0 : v[0].nvars();
    VectorField r(n, Scalar(nv));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r[i] = r[i] + v[j] * w[i].derivative(j) - w[j] * v[i].derivative(j);
    return r;
}

// (L_v e)_i = v^j e_{i,j} + e_j v^j_{,i}
inline OneForm lie_oneform(const VectorField& v, const OneForm& e) {
    const int n = static_cast<int>(e.size());
    const int nv = e.empty() ? 0 : e[0].nvars();
    OneForm r(n, Scalar(nv));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            r[i] = r[i] + v[j] * e[i].derivative(j) + e[j] * v[j].derivative(i);
    return r;
}

// (L_v a)_{ij} = v^k a_{ij,k} + a_{kj} v^k_{,i} + a_{ik} v^k_{,j}
inline TwoTensor lie_twotensor(const VectorField& v, const TwoTensor& a) {
    const int n = a.n;
    const int nv = v.empty() ? 0 : v[0].nvars();
    TwoTensor r(n, nv);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Scalar s(nv);
            for (int k = 0; k < n; ++k)
                s = s + v[k] * a.at(i, j).derivative(k) +
                    a.at(k, j) * v[k].derivative(i) +
                    a.at(i, k) * v[k].derivative(j);
            r.at(i, j) = s;
        }
    return r;
}

inline Antisym3 lie_threeform(const VectorField& v, const Antisym3& h) {
    const int n = h.dim();
    Antisym3 r(n, h.nvars());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                Scalar s(h.nvars());
                for (int l = 0; l < n; ++l)
                    s = s + v[l] * h.at(i, j, k).derivative(l) +
                        h.at(l, j, k) * v[l].derivative(i) +
                        h.at(i, l, k) * v[l].derivative(j) +
                        h.at(i, j, l) * v[l].derivative(k);
                r.set(i, j, k, s);
            }
    return r;
}

// (iota_v H)_{jk} = v^i H_{ijk}
inline TwoTensor iota_threeform(const VectorField& v, const Antisym3& h) {
    const int n = h.dim();
    TwoTensor r(n, h.nvars());
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            Scalar s(h.nvars());
            for (int i = 0; i < n; ++i) s = s + v[i] * h.at(i, j, k);
            r.at(j, k) = s;
        }
    return r;
}

// (iota_v B)_j = v^i B_{ij}
inline OneForm iota_twoform(const VectorField& v, const TwoTensor& b) {
    const int n = b.n;
    const int nv = v.empty() ? 0 : v[0].nvars();
    OneForm r(n, Scalar(nv));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) r[j] = r[j] + v[i] * b.at(i, j);
    return r;
}

// Twisted Poisson instance data: an antisymmetric bivector and a closed
// 3-form, entries exact rational functions of the base coordinates.
struct PoissonData {
    int n = 0;
    TwoTensor pi;
    Antisym3 h;

    bool shapes_ok() const {
        return pi.n == n && h.dim() == n && pi.is_antisymmetric();
    }

    // (pi# e)^i = e_j pi^{ji}, the anchor contraction on the first index,
    // matching the x-component pi^{i'i} p_{i'} of the cotangent Q.
    VectorField sharp(const OneForm& e) const {
        VectorField v(n, Scalar(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) v[i] = v[i] + e[j] * pi.at(j, i);
        return v;
    }
    // pi(e1, e2) = pi^{ij} e1_i e2_j
    Scalar pi_pair(const OneForm& e1, const OneForm& e2) const {
        Scalar s(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                s = s + pi.at(i, j) * e1[i] * e2[j];
        return s;
    }
};

// The Schouten half-bracket sum_l pi^{il} pi^{jk}_{,l} + cyclic, and the
// full contraction pi ox pi ox pi of H; the twisted Jacobi identity equates
// them with the relative factor fixed by the Q-structure convention.
inline Scalar schouten_cyclic(const PoissonData& p, int i, int j, int k) {
    Scalar s(p.n);
    for (int l = 0; l < p.n; ++l)
        s = s + p.pi.at(i, l) * p.pi.at(j, k).derivative(l) +
            p.pi.at(j, l) * p.pi.at(k, i).derivative(l) +
            p.pi.at(k, l) * p.pi.at(i, j).derivative(l);
    return s;
}

inline Scalar pi_cubed_h(const PoissonData& p, int i, int j, int k) {
    Scalar s(p.n);
    for (const auto& [key, val] : p.h.entries()) {
        // Expand the antisymmetric entry over all 6 index orders.
        const std::array<std::array<int, 3>, 6> perms = {{{key[0], key[1], key[2]},
                                                          {key[1], key[2], key[0]},
                                                          {key[2], key[0], key[1]},
                                                          {key[1], key[0], key[2]},
                                                          {key[0], key[2], key[1]},
                                                          {key[2], key[1], key[0]}}};
        for (int t = 0; t < 6; ++t) {
            const auto& q = perms[t];
            Scalar term = p.pi.at(i, q[0]) * p.pi.at(j, q[1]) *
                          p.pi.at(k, q[2]) * val;
            s = t < 3 ? s + term : s - term;
        }
    }
    return s;
}

// Twisted Jacobi as a classical tensor identity,
//   sum_cyc pi^{il} pi^{jk}_{,l} + pi^{il} pi^{jm} pi^{kn} H_{lmn} = 0,
// the relative factor matching the C^{jk}_i convention of the twisted
// cotangent Q-structure (both routes are cross-checked in the suite).
inline bool twisted_jacobi_holds(const PoissonData& p) {
    for (int i = 0; i < p.n; ++i)
        for (int j = i + 1; j < p.n; ++j)
            for (int k = j + 1; k < p.n; ++k) {
                Scalar lhs = schouten_cyclic(p, i, j, k);
                Scalar rhs = pi_cubed_h(p, i, j, k);
                if (!(lhs + rhs).is_zero()) return false;
            }
    return true;
}

}  // namespace koszul
