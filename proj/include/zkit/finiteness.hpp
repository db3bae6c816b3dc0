#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "zkit/errors.hpp"
#include "zkit/ns_lattice.hpp"
#include "zkit/zariski.hpp"

namespace zkit {

// The reduced divisor E = sum of distinct declared curves whose complement
// U = X \ E carries the section spaces under study.
struct BoundaryDivisor {
    std::vector<CurveGenerator> components;
    NSClass total;

    static BoundaryDivisor from_names(const SurfaceModel& model,
                                      const std::vector<std::string>& names) {
        if (names.empty()) fail(errc::input_error, "boundary divisor needs at least one component");
        BoundaryDivisor e;
        e.total = NSClass::zero(model.rank);
        std::set<std::string> seen;
        for (const auto& name : names) {
            if (!seen.insert(name).second)
                fail(errc::input_error, "boundary component '" + name + "' repeated");
            const auto& c = model.curve(name); // rejects classes that are not declared curves
            e.components.push_back(c);
            e.total += c.cls;
        }
        return e;
    }
};

enum class FinitenessStatus { finite, infinite, inconclusive };

inline std::string finiteness_status_name(FinitenessStatus s) {
    switch (s) {
        case FinitenessStatus::finite:       return "Finite";
        case FinitenessStatus::infinite:     return "Infinite";
        case FinitenessStatus::inconclusive: return "Inconclusive";
    }
    return "?";
}

enum class TrichotomyCase { I, II, III };

inline std::string trichotomy_case_name(TrichotomyCase c) {
    switch (c) {
        case TrichotomyCase::I:   return "I";
        case TrichotomyCase::II:  return "II";
        case TrichotomyCase::III: return "III";
    }
    return "?";
}

enum class CaseEval { holds, fails, unknown };

struct ADiagnostics {
    int a = 0;
    bool bplus_holds = false;
    bool nsigma_holds = false;
    std::map<std::string, Rational> nsigma_coefficients;
};

struct FinitenessVerdict {
    FinitenessStatus status = FinitenessStatus::inconclusive;
    std::set<TrichotomyCase> satisfied_cases;
    std::optional<int> a_min_bplus;
    std::optional<int> a_min_nsigma;
    std::string witness;
    std::map<TrichotomyCase, CaseEval> case_eval; // populated in trichotomy mode
    int scanned_a_max = 0;
    std::vector<ADiagnostics> trace; // populated when requested
};

namespace detail {

inline bool bplus_criterion_at(const SurfaceModel& model, const NSClass& d_a,
                               const BoundaryDivisor& e) {
    auto zd = zariski_decompose(model, d_a);
    for (const auto& comp : e.components)
        if (pair(model, zd.positive, comp.cls) != 0) return false;
    return true;
}

inline bool nsigma_criterion_at(const SurfaceModel& model, const NSClass& d_a,
                                const BoundaryDivisor& e,
                                std::map<std::string, Rational>* coeffs_out = nullptr) {
    auto zd = zariski_decompose(model, d_a);
    bool holds = true;
    for (const auto& comp : e.components) {
        auto c = zd.coefficient_of(comp.name);
        Rational value = c ? *c : Rational(0);
        if (coeffs_out) (*coeffs_out)[comp.name] = value;
        if (value < 1) holds = false;
    }
    return holds;
}

} // namespace detail

// Least integer a in [0, a_max] with supp(E) inside B_+(D + aE): every
// component meets the positive part of D + aE in zero.
inline std::optional<int> minimal_a_bplus(const SurfaceModel& model, const NSClass& d,
                                          const BoundaryDivisor& e, int a_max) {
    if (volume(model, d) <= 0) fail(errc::not_big, "minimal_a_bplus needs a big divisor");
    for (int a = 0; a <= a_max; ++a) {
        NSClass d_a = d + Rational(a) * e.total;
        if (detail::bplus_criterion_at(model, d_a, e)) return a;
    }
    return std::nullopt;
}

// Least integer a in [0, a_max] with E <= N_sigma(D + aE): every component
// appears in the negative part with coefficient at least one.
inline std::optional<int> minimal_a_nsigma(const SurfaceModel& model, const NSClass& d,
                                           const BoundaryDivisor& e, int a_max) {
    if (volume(model, d) <= 0) fail(errc::not_big, "minimal_a_nsigma needs a big divisor");
    for (int a = 0; a <= a_max; ++a) {
        NSClass d_a = d + Rational(a) * e.total;
        if (detail::nsigma_criterion_at(model, d_a, e)) return a;
    }
    return std::nullopt;
}

// Finiteness of h^0(U, mD|_U) for big D. A component (or the total boundary)
// of positive numerical dimension forces infinite growth; otherwise the two
// equivalent criteria are scanned over integer a. Theory guarantees the scan
// succeeds over a genuine model, so exhausting the cap is reported as
// Inconclusive with a suspected model inconsistency rather than as Infinite.
inline FinitenessVerdict classify_big(const SurfaceModel& model, const NSClass& d,
                                      const BoundaryDivisor& e, int a_max = 64,
                                      bool want_trace = false) {
    if (volume(model, d) <= 0) fail(errc::not_big, "classify_big needs a big divisor");

    FinitenessVerdict verdict;
    verdict.scanned_a_max = a_max;

    for (const auto& comp : e.components) {
        KappaSigma ks = kappa_sigma(model, comp.cls);
        if (ks != KappaSigma::zero) {
            verdict.status = FinitenessStatus::infinite;
            verdict.witness =
                "kappa_sigma(component '" + comp.name + "') = " + kappa_sigma_name(ks);
            return verdict;
        }
    }
    KappaSigma ks_total = kappa_sigma(model, e.total);
    if (ks_total != KappaSigma::zero) {
        verdict.status = FinitenessStatus::infinite;
        verdict.witness = "kappa_sigma(E) = " + kappa_sigma_name(ks_total);
        return verdict;
    }

    for (int a = 0; a <= a_max; ++a) {
        NSClass d_a = d + Rational(a) * e.total;
        ADiagnostics diag;
        diag.a = a;
        diag.bplus_holds = detail::bplus_criterion_at(model, d_a, e);
        diag.nsigma_holds = detail::nsigma_criterion_at(
            model, d_a, e, want_trace ? &diag.nsigma_coefficients : nullptr);
        if (diag.bplus_holds && !verdict.a_min_bplus) verdict.a_min_bplus = a;
        if (diag.nsigma_holds && !verdict.a_min_nsigma) verdict.a_min_nsigma = a;
        if (want_trace) verdict.trace.push_back(std::move(diag));
        if (verdict.a_min_bplus && verdict.a_min_nsigma && !want_trace) break;
    }
    // E <= N_sigma(D + aE) is guaranteed one step past the B_+ index.
    if (verdict.a_min_bplus && !verdict.a_min_nsigma) {
        int a = *verdict.a_min_bplus + 1;
        NSClass d_a = d + Rational(a) * e.total;
        if (detail::nsigma_criterion_at(model, d_a, e)) verdict.a_min_nsigma = a;
    }

    if (verdict.a_min_bplus || verdict.a_min_nsigma) {
        verdict.status = FinitenessStatus::finite;
    } else {
        verdict.status = FinitenessStatus::inconclusive;
        verdict.witness = "scan exhausted at a_max = " + std::to_string(a_max) +
                          " with kappa_sigma(E) = 0; suspected model inconsistency";
    }
    return verdict;
}

// Surface trichotomy for pseudo-effective D. Big divisors delegate to
// classify_big. Kodaira dimensions are only evaluated on models declaring
// kappa = kappa_sigma; otherwise a case whose numerical part holds but whose
// hypothesis needs kappa is left unknown and the verdict degrades to
// Inconclusive instead of guessing.
inline FinitenessVerdict classify_pseff(const SurfaceModel& model, const NSClass& d,
                                        const BoundaryDivisor& e, int a_max = 64,
                                        bool want_trace = false) {
    if (!is_pseudo_effective(model, d))
        fail(errc::not_pseudo_effective, "classify_pseff needs a pseudo-effective divisor");
    if (volume(model, d) > 0) return classify_big(model, d, e, a_max, want_trace);

    FinitenessVerdict verdict;
    verdict.scanned_a_max = a_max;

    // case I: E <= N_sigma(D + aE) for some a >= 0
    CaseEval eval1 = CaseEval::fails;
    std::optional<int> case1_a;
    bool e_has_nef_component = false;
    for (const auto& comp : e.components)
        if (is_nef(model, comp.cls).nef) e_has_nef_component = true;
    for (int a = 0; a <= a_max && !case1_a; ++a) {
        NSClass d_a = d + Rational(a) * e.total;
        ADiagnostics diag;
        diag.a = a;
        diag.nsigma_holds = detail::nsigma_criterion_at(
            model, d_a, e, want_trace ? &diag.nsigma_coefficients : nullptr);
        if (diag.nsigma_holds) case1_a = a;
        if (want_trace) verdict.trace.push_back(std::move(diag));
    }
    if (case1_a) {
        eval1 = CaseEval::holds;
        verdict.a_min_nsigma = case1_a;
    } else if (!e_has_nef_component) {
        // a nef component can never enter a negative part, which refutes the
        // case outright; without one the integer cap leaves it open
        eval1 = CaseEval::unknown;
    }

    auto zd_d = zariski_decompose(model, d);
    auto zd_e = zariski_decompose(model, e.total);

    // case II: kappa(D) = 0 and P_sigma(D) proportional to P_sigma(E)
    CaseEval eval2 = CaseEval::fails;
    if (is_proportional(zd_d.positive, zd_e.positive)) {
        if (model.kodaira_equals_numerical)
            eval2 = (kappa_sigma(model, d) == KappaSigma::zero) ? CaseEval::holds : CaseEval::fails;
        else
            eval2 = CaseEval::unknown;
    }

    // case III: D = N_sigma(D) and kappa(E) = 0
    CaseEval eval3 = CaseEval::fails;
    if (zd_d.positive.is_zero()) {
        if (model.kodaira_equals_numerical)
            eval3 = (kappa_sigma(model, e.total) == KappaSigma::zero) ? CaseEval::holds
                                                                      : CaseEval::fails;
        else
            eval3 = CaseEval::unknown;
    }

    verdict.case_eval[TrichotomyCase::I] = eval1;
    verdict.case_eval[TrichotomyCase::II] = eval2;
    verdict.case_eval[TrichotomyCase::III] = eval3;
    if (eval1 == CaseEval::holds) verdict.satisfied_cases.insert(TrichotomyCase::I);
    if (eval2 == CaseEval::holds) verdict.satisfied_cases.insert(TrichotomyCase::II);
    if (eval3 == CaseEval::holds) verdict.satisfied_cases.insert(TrichotomyCase::III);

    if (!verdict.satisfied_cases.empty()) {
        verdict.status = FinitenessStatus::finite;
    } else if (eval1 == CaseEval::unknown || eval2 == CaseEval::unknown ||
               eval3 == CaseEval::unknown) {
        verdict.status = FinitenessStatus::inconclusive;
        verdict.witness = model.kodaira_equals_numerical
                              ? "case I scan exhausted at a_max = " + std::to_string(a_max)
                              : "model does not declare kappa = kappa_sigma";
    } else {
        verdict.status = FinitenessStatus::infinite;
        verdict.witness = "all trichotomy cases fail";
    }
    return verdict;
}

// Exact Riemann-Roch + Serre duality lower bound for h^0(mD + kE):
//   k^2 E^2/2 + k (m D.E - E.K/2) + (m^2 D^2 - m D.K)/2 + chi - pg.
inline Rational rr_lower_bound(const SurfaceModel& model, const NSClass& d,
                               const BoundaryDivisor& e, long long m, long long k) {
    Rational e2 = pair(model, e.total, e.total);
    Rational de = pair(model, d, e.total);
    Rational ek = pair(model, e.total, model.canonical);
    Rational d2 = pair(model, d, d);
    Rational dk = pair(model, d, model.canonical);
    Rational km(k), mm(m);
    return km * km * e2 / 2 + km * (mm * de - ek / 2) + (mm * mm * d2 - mm * dk) / 2 +
           Rational(model.chi) - Rational(model.pg);
}

// The section spaces on U are infinite dimensional from m_0 on when E^2 > 0,
// or when E^2 = 0 and D.E >= 1 (then m_0 D.E - E.K/2 > 0 picks m_0). Returns
// nothing when those hypotheses fail; the test is then inapplicable.
inline std::optional<long long> rr_infiniteness_test(const SurfaceModel& model, const NSClass& d,
                                                     const BoundaryDivisor& e) {
    Rational e2 = pair(model, e.total, e.total);
    if (e2 > 0) return 1;
    if (e2 != 0) return std::nullopt;
    Rational de = pair(model, d, e.total);
    if (de < 1) return std::nullopt;
    Rational ek = pair(model, e.total, model.canonical);
    // least positive integer with m0 * de > ek/2
    Rational threshold = ek / (2 * de);
    Integer m0 = rat_floor(threshold) + 1;
    if (m0 < 1) m0 = 1;
    return m0.convert_to<long long>();
}

// Growth data for a Finite verdict: h^0(U, mD|_U) = h^0(X, m(D + aE)) for
// a = a_min_bplus grows like vol(D + aE)/2 * m^2 with pole order k(m) <= ma.
struct GrowthEstimate {
    int degree = 2;
    Rational leading;
    int slope_bound = 0;
};

inline GrowthEstimate growth_estimate(const SurfaceModel& model, const NSClass& d,
                                      const BoundaryDivisor& e, int a_max = 64) {
    auto verdict = classify_big(model, d, e, a_max);
    if (verdict.status != FinitenessStatus::finite || !verdict.a_min_bplus)
        fail(errc::not_finite, "growth estimate needs a Finite classification");
    int a = *verdict.a_min_bplus;
    GrowthEstimate g;
    g.degree = 2;
    g.slope_bound = a;
    g.leading = volume(model, d + Rational(a) * e.total) / 2;
    return g;
}

// Optional diagnostic: the exact rational threshold in a at which
// E <= N_sigma(D + aE) first holds, recovered from the piecewise-linear
// coefficient functions when the negative-part support is stable across the
// bracketing interval. Returns nothing when the structure is not locked.
inline std::optional<Rational> nsigma_threshold(const SurfaceModel& model, const NSClass& d,
                                                const BoundaryDivisor& e, int a_min) {
    if (a_min == 0) return Rational(0);
    auto coeffs_at = [&](const Rational& a) {
        auto zd = zariski_decompose(model, d + a * e.total);
        std::map<std::string, Rational> out;
        for (const auto& comp : e.components) {
            auto c = zd.coefficient_of(comp.name);
            out[comp.name] = c ? *c : Rational(0);
        }
        return out;
    };
    Rational lo(a_min - 1), hi(a_min);
    Rational mid = (lo + hi) / 2;
    auto at_hi = coeffs_at(hi);
    auto at_mid = coeffs_at(mid);

    // linear interpolation per component through (mid, hi), checked at a
    // third point before trusting it
    Rational probe = (mid + hi) / 2;
    auto at_probe = coeffs_at(probe);
    Rational threshold = lo;
    for (const auto& comp : e.components) {
        Rational c_hi = at_hi[comp.name], c_mid = at_mid[comp.name];
        Rational slope = (c_hi - c_mid) / (hi - mid);
        Rational intercept = c_hi - slope * hi;
        if (intercept + slope * probe != at_probe[comp.name]) return std::nullopt;
        Rational t;
        if (slope == 0) {
            if (c_hi < 1) return std::nullopt; // never reaches 1 on this piece
            t = lo;
        } else {
            t = (Rational(1) - intercept) / slope;
        }
        threshold = std::max(threshold, t);
    }
    if (threshold < lo || threshold > hi) return std::nullopt;
    // confirm the criterion holds exactly at the computed threshold
    for (const auto& [name, value] : coeffs_at(threshold))
        if (value < 1) return std::nullopt;
    return threshold;
}

} // namespace zkit
