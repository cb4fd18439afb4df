// Finite-dimensional linear ansatz solving. Unknown coefficient functions
// are spanned by a declared Scalar basis (monomials over an optional fixed
// denominator power), constraints are derivations that must annihilate the
// ansatz, and systems are solved by sampling at random rational points to
// get an exact rational system, then re-verified symbolically: sampling
// discovers the constraints, the verification is exact.
#pragma once

#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "koszul/derivation.hpp"
#include "koszul/linalg.hpp"
#include "koszul/print.hpp"
#include "koszul/rng.hpp"

namespace koszul {

struct SolverOptions {
    std::uint64_t seed = 1;
    int batch_points = 3;
    int max_rounds = 60;
    bool verbose = false;
};

// A linear system whose coefficients are Scalars: for rational unknowns
// c_k, sum_k coeff_k(x) c_k + rhs(x) = 0 identically in x.
class ScalarLinearSystem {
  public:
    struct Equation {
        std::string name;
        std::vector<std::pair<int, Scalar>> coeffs;  // sorted by column
        Scalar rhs;
    };

    ScalarLinearSystem(int ncols, int nvars) : ncols_(ncols), nvars_(nvars) {
        rhs_zero_ = Scalar(nvars);
    }

    int ncols() const { return ncols_; }
    int nvars() const { return nvars_; }

    void add_equation(Equation eq) {
        std::sort(eq.coeffs.begin(), eq.coeffs.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        note_denominators(eq.rhs);
        for (const auto& [c, s] : eq.coeffs) note_denominators(s);
        eqs_.push_back(std::move(eq));
    }
    const std::vector<Equation>& equations() const { return eqs_; }

    struct Result {
        SolutionSpace space;
        bool verified = false;
        int points_used = 0;
        std::optional<std::string> witness;  // name of a conflicting equation
    };

    Result solve(const SolverOptions& opts) const {
        Rng rng(opts.seed);
        RowReducer global(ncols_);
        std::vector<RowReducer> locals;
        std::vector<std::map<int, int>> col_maps(eqs_.size());
        locals.reserve(eqs_.size());
        for (std::size_t e = 0; e < eqs_.size(); ++e) {
            int idx = 0;
            for (const auto& [c, s] : eqs_[e].coeffs) col_maps[e].emplace(c, idx++);
            locals.emplace_back(idx);
        }

        Result res;
        bool verified_once = false;
        SolutionSpace prev;
        std::optional<int> conflict;
        for (int round = 0; round < opts.max_rounds; ++round) {
            for (int b = 0; b < opts.batch_points && !conflict; ++b) {
                auto point = draw_point(rng);
                if (!point) continue;
                res.points_used += 1;
                for (std::size_t e = 0; e < eqs_.size() && !conflict; ++e) {
                    SparseRow local, full;
                    for (const auto& [c, s] : eqs_[e].coeffs) {
                        Rational v = s.evaluate(*point);
                        if (is_zero(v)) continue;
                        local.emplace_back(col_maps[e].at(c), v);
                        full.emplace_back(c, v);
                    }
                    // The equation is sum coeff*c + rhs = 0, so the
                    // augmented column carries -rhs.
                    Rational rv = -eqs_[e].rhs.evaluate(*point);
                    if (!is_zero(rv)) {
                        local.emplace_back(static_cast<int>(col_maps[e].size()), rv);
                        full.emplace_back(ncols_, rv);
                    }
                    if (local.empty()) continue;
                    int before = locals[e].rank();
                    bool local_ok = locals[e].add_row(local, static_cast<int>(e));
                    if (!local_ok || locals[e].rank() > before) {
                        if (!global.add_row(full, static_cast<int>(e)))
                            conflict = static_cast<int>(e);
                    }
                }
            }
            SolutionSpace space = solve_from_echelon(global.finish());
            if (!space.consistent || conflict) {
                res.space = space;
                res.space.consistent = false;
                int tag = space.conflict_tag ? *space.conflict_tag : *conflict;
                res.witness = eqs_[tag].name;
                return res;
            }
            bool ok = verify(space);
            if (opts.verbose)
                std::fprintf(stderr,
                             "[solver] round %d: points=%d rank=%d dim=%d "
                             "verified=%d\n",
                             round, res.points_used, global.rank(),
                             space.dimension(), ok ? 1 : 0);
            if (ok) {
                if (verified_once && space_equal(space, prev)) {
                    res.space = space;
                    res.verified = true;
                    return res;
                }
                verified_once = true;
                prev = space;
            } else {
                verified_once = false;
            }
        }
        throw Error("ansatz solver did not stabilize; raise max_rounds");
    }

    // Exact check that a coefficient vector solves every equation
    // identically in x.
    bool satisfies(const std::vector<Rational>& c, bool homogeneous) const {
        for (const auto& eq : eqs_) {
            Scalar acc = homogeneous ? rhs_zero_ : eq.rhs;
            for (const auto& [col, s] : eq.coeffs) {
                if (is_zero(c[col])) continue;
                acc = acc + s * c[col];
            }
            if (!acc.is_zero()) return false;
        }
        return true;
    }

  private:
    bool verify(const SolutionSpace& s) const {
        if (!satisfies(s.particular, /*homogeneous=*/false)) return false;
        for (const auto& v : s.null_basis)
            if (!satisfies(v, /*homogeneous=*/true)) return false;
        return true;
    }

    static bool space_equal(const SolutionSpace& a, const SolutionSpace& b) {
        return a.consistent == b.consistent && a.particular == b.particular &&
               a.free_cols == b.free_cols && a.null_basis == b.null_basis;
    }

    void note_denominators(const Scalar& s) {
        for (const auto& [f, k] : s.denominator_factors()) {
            bool seen = false;
            for (const auto& g : dens_)
                if (g == f) {
                    seen = true;
                    break;
                }
            if (!seen) dens_.push_back(f);
        }
    }

    std::optional<std::vector<Rational>> draw_point(Rng& rng) const {
        for (int attempt = 0; attempt < 64; ++attempt) {
            std::vector<Rational> pt;
            pt.reserve(nvars_);
            for (int i = 0; i < nvars_; ++i) pt.push_back(rng.rational(12, 3));
            bool pole = false;
            for (const auto& f : dens_)
                if (is_zero(f.evaluate(pt))) {
                    pole = true;
                    break;
                }
            if (!pole) return pt;
        }
        return std::nullopt;
    }

    int ncols_;
    int nvars_;
    Scalar rhs_zero_;
    std::vector<Equation> eqs_;
    std::vector<Polynomial> dens_;
};

// ---------------------------------------------------------------------------
// Coefficient bases and graded-monomial ansatz generators.

struct CoefficientBasis {
    std::vector<std::pair<std::string, Scalar>> elements;
    int size() const { return static_cast<int>(elements.size()); }
};

// Monomials x^alpha with |alpha| <= max_degree, over den^pole_power when a
// denominator is given. With the denominator power fixed the set stays
// linearly independent and spans every p/den^pole_power, deg p <= max_degree.
inline CoefficientBasis make_coefficient_basis(
    const Chart& chart, int max_degree,
    std::optional<Polynomial> den = std::nullopt, unsigned pole_power = 0) {
    const int n = chart.base_count();
    Scalar den_scalar(n, 1);
    std::string den_suffix;
    if (den && pole_power > 0 && !den->is_constant()) {
        den_scalar = Scalar(den->pow(pole_power));
        den_suffix = "/(" + to_string(*den, base_names(chart)) + ")";
        if (pole_power > 1) den_suffix += "^" + std::to_string(pole_power);
    }

    CoefficientBasis basis;
    std::vector<unsigned> e(n, 0);
    std::function<void(int, int)> rec = [&](int var, int remaining) {
        if (var == n) {
            Polynomial mono(n);
            Exponents exps(e.begin(), e.end());
            mono.add_term(exps, 1);
            std::string name;
            for (int i = 0; i < n; ++i) {
                if (e[i] == 0) continue;
                if (!name.empty()) name += "*";
                name += chart.name(i);
                if (e[i] > 1) name += "^" + std::to_string(e[i]);
            }
            if (name.empty()) name = "1";
            basis.elements.emplace_back(name + den_suffix,
                                        Scalar(mono) / den_scalar);
            return;
        }
        for (int k = 0; k <= remaining; ++k) {
            e[var] = static_cast<unsigned>(k);
            rec(var + 1, remaining - k);
        }
        e[var] = 0;
    };
    rec(0, max_degree);
    return basis;
}

// All graded monomials of the given total degree in the chart's
// nonzero-degree coordinates (unit Scalar coefficient).
inline std::vector<std::pair<std::string, Superfunction>>
degree_monomials(const Chart& chart, int degree) {
    std::vector<std::pair<std::string, Superfunction>> out;
    const int m = chart.fiber_count();
    Exponents e(m, 0);
    std::function<void(int, int)> rec = [&](int slot, int remaining) {
        if (remaining == 0) {
            Superfunction f(chart);
            std::string name;
            for (int j = 0; j < m; ++j) {
                if (e[j] == 0) continue;
                if (!name.empty()) name += "*";
                name += chart.name(chart.base_count() + j);
                if (e[j] > 1) name += "^" + std::to_string(e[j]);
            }
            f.add_term(MonoKey{degree, e}, Scalar(chart.base_count(), 1));
            out.emplace_back(name.empty() ? "1" : name, f);
            return;
        }
        if (slot >= m) return;
        const int d = chart.degree(chart.base_count() + slot);
        const bool odd = chart.odd(chart.base_count() + slot);
        int max_e = odd ? 1 : (d > 0 ? remaining / d : 0);
        for (int k = 0; k <= max_e; ++k) {
            if (k * d > remaining) break;
            e[slot] = static_cast<unsigned>(k);
            rec(slot + 1, remaining - k * d);
            e[slot] = 0;
        }
    };
    rec(0, degree);
    return out;
}

// ---------------------------------------------------------------------------

struct AnsatzProblem {
    Chart chart;
    Superfunction anchor;  // fixed part of the ansatz (may be zero)
    std::vector<std::pair<std::string, Superfunction>> generators;
    CoefficientBasis basis;
    std::vector<std::pair<std::string, Derivation>> constraints;

    AnsatzProblem(const Chart& c, Superfunction anchor_part)
        : chart(c), anchor(std::move(anchor_part)) {}

    int ncols() const {
        return static_cast<int>(generators.size()) * basis.size();
    }
    int col(int k, int a) const { return k * basis.size() + a; }
    std::string col_name(int c) const {
        int k = c / basis.size(), a = c % basis.size();
        const std::string& b = basis.elements[a].first;
        return b == "1" ? generators[k].first : b + "*" + generators[k].first;
    }

    Superfunction term(int c) const {
        int k = c / basis.size(), a = c % basis.size();
        return generators[k].second *
               Superfunction::from_scalar(chart, basis.elements[a].second);
    }
    Superfunction combine(const std::vector<Rational>& coeffs,
                          bool with_anchor) const {
        Superfunction f = with_anchor ? anchor : Superfunction::zero(chart);
        for (int c = 0; c < ncols(); ++c) {
            if (is_zero(coeffs[c])) continue;
            f = f + term(c) * coeffs[c];
        }
        return f;
    }
};

inline void impose_closed(AnsatzProblem& p, const Derivation& qt) {
    p.chart.require_same(qt.chart(), "closedness constraint");
    p.constraints.emplace_back("closed", qt);
}

inline void impose_horizontal(
    AnsatzProblem& p,
    const std::vector<std::pair<std::string, Derivation>>& gens) {
    for (const auto& [name, g] : gens) {
        p.chart.require_same(g.chart(), "horizontality constraint");
        if (!g.degree() || *g.degree() != -1)
            throw DegreeError("horizontality generator '" + name +
                              "' must have degree -1");
        p.constraints.emplace_back("horizontal:" + name, g);
    }
}

struct AnsatzSolution {
    SolutionSpace space;
    bool verified = false;
    int points_used = 0;
    std::optional<std::string> witness;
    Superfunction particular;  // anchor + particular coefficients
    std::vector<Superfunction> null_superfunctions;
};

inline ScalarLinearSystem build_system(const AnsatzProblem& p) {
    const int nvars = p.chart.base_count();
    ScalarLinearSystem sys(p.ncols(), nvars);
    for (std::size_t ci = 0; ci < p.constraints.size(); ++ci) {
        const auto& [cname, op] = p.constraints[ci];
        std::map<MonoKey, ScalarLinearSystem::Equation> groups;
        auto add = [&](const Superfunction& img, int colv) {
            for (const auto& [mono, s] : img.terms()) {
                auto it = groups.find(mono);
                if (it == groups.end()) {
                    ScalarLinearSystem::Equation eq;
                    eq.name = cname;
                    eq.rhs = Scalar(nvars);
                    it = groups.emplace(mono, std::move(eq)).first;
                }
                if (colv < 0)
                    it->second.rhs = it->second.rhs + s;
                else
                    it->second.coeffs.emplace_back(colv, s);
            }
        };
        add(op.apply(p.anchor), -1);
        for (int c = 0; c < p.ncols(); ++c) add(op.apply(p.term(c)), c);
        for (auto& [mono, eq] : groups) sys.add_equation(std::move(eq));
    }
    return sys;
}

inline AnsatzSolution solve(const AnsatzProblem& p,
                            const SolverOptions& opts = {}) {
    ScalarLinearSystem sys = build_system(p);
    auto res = sys.solve(opts);
    AnsatzSolution sol;
    sol.space = res.space;
    sol.verified = res.verified;
    sol.points_used = res.points_used;
    sol.witness = res.witness;
    if (res.space.consistent) {
        sol.particular = p.combine(res.space.particular, /*with_anchor=*/true);
        for (const auto& v : res.space.null_basis)
            sol.null_superfunctions.push_back(
                p.combine(v, /*with_anchor=*/false));
    } else {
        sol.particular = Superfunction::zero(p.chart);
    }
    return sol;
}

}  // namespace koszul
