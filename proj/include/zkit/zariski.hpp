#pragma once

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "zkit/errors.hpp"
#include "zkit/ns_lattice.hpp"

namespace zkit {

// D = positive + sum(coeff_i * curve_i) with: positive nef, positive
// orthogonal to every support curve, support Gram matrix negative definite,
// all coefficients > 0. On a surface this is the sigma-decomposition
// P_sigma(D) + N_sigma(D).
struct ZariskiDecomposition {
    NSClass positive;
    std::vector<std::pair<CurveGenerator, Rational>> negative;

    NSClass negative_class(std::size_t rank) const {
        NSClass n = NSClass::zero(rank);
        for (const auto& [curve, coeff] : negative) n += coeff * curve.cls;
        return n;
    }

    std::optional<Rational> coefficient_of(const std::string& name) const {
        for (const auto& [curve, coeff] : negative)
            if (curve.name == name) return coeff;
        return std::nullopt;
    }
};

// Classical iterative construction of the Zariski decomposition: start from
// the curves D meets negatively, solve (D - N)*C_j = 0 exactly over the
// current support, and grow the support while the candidate positive part
// still meets some generator negatively. The support only grows, so the loop
// ends after at most #generators rounds. A support Gram that is not negative
// definite, or a negative solved coefficient, cannot happen over a genuine
// effective-cone generator list and is reported as ModelInconsistent.
inline ZariskiDecomposition zariski_decompose(const SurfaceModel& model, const NSClass& d) {
    if (d.rank() != model.rank) fail(errc::dimension_mismatch, "zariski_decompose rank");
    if (!is_pseudo_effective(model, d))
        fail(errc::not_pseudo_effective, "zariski_decompose requires a pseudo-effective class");

    std::set<std::size_t> support;
    for (std::size_t i = 0; i < model.curves.size(); ++i)
        if (pair(model, d, model.curves[i].cls) < 0) support.insert(i);

    std::vector<Rational> coeffs;
    std::size_t rounds = 0;
    for (;;) {
        if (++rounds > model.curves.size() + 1)
            fail(errc::model_inconsistent, "zariski loop exceeded the generator count");

        std::vector<std::size_t> s(support.begin(), support.end());
        std::size_t k = s.size();
        Matrix<Rational> gram(k, k);
        std::vector<Rational> rhs(k);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j)
                gram(i, j) = pair(model, model.curves[s[i]].cls, model.curves[s[j]].cls);
            rhs[i] = pair(model, d, model.curves[s[i]].cls);
        }
        if (!is_negative_definite(gram))
            fail(errc::model_inconsistent,
                 "support Gram matrix is not negative definite; the declared generators "
                 "cannot span the effective cone");
        auto solved = solve_square(gram, rhs);
        if (!solved) fail(errc::model_inconsistent, "singular support system");
        for (const auto& c : *solved)
            if (c < 0)
                fail(errc::model_inconsistent,
                     "negative Zariski coefficient; the declared generators cannot span "
                     "the effective cone");

        NSClass p = d;
        for (std::size_t i = 0; i < k; ++i) p -= (*solved)[i] * model.curves[s[i]].cls;

        bool grew = false;
        for (std::size_t i = 0; i < model.curves.size(); ++i) {
            if (support.count(i)) continue;
            if (pair(model, p, model.curves[i].cls) < 0) {
                support.insert(i);
                grew = true;
            }
        }
        if (!grew) {
            ZariskiDecomposition zd;
            zd.positive = p;
            for (std::size_t i = 0; i < k; ++i)
                if ((*solved)[i] != 0) zd.negative.emplace_back(model.curves[s[i]], (*solved)[i]);
            return zd;
        }
    }
}

// vol(D) = P_sigma(D)^2 on a surface; 0 off the pseudo-effective cone.
inline Rational volume(const SurfaceModel& model, const NSClass& d) {
    if (d.rank() != model.rank) fail(errc::dimension_mismatch, "volume rank");
    if (!is_pseudo_effective(model, d)) return Rational(0);
    auto zd = zariski_decompose(model, d);
    return pair(model, zd.positive, zd.positive);
}

enum class KappaSigma { not_pseudo_effective, zero, one, two };

inline std::string kappa_sigma_name(KappaSigma k) {
    switch (k) {
        case KappaSigma::not_pseudo_effective: return "NotPseudoEffective";
        case KappaSigma::zero: return "0";
        case KappaSigma::one:  return "1";
        case KappaSigma::two:  return "2";
    }
    return "?";
}

// Numerical dimension on a surface, read off the Zariski decomposition:
// 0 when D = N_sigma(D), 2 when the positive part has positive square,
// 1 in between.
inline KappaSigma kappa_sigma(const SurfaceModel& model, const NSClass& d) {
    if (d.rank() != model.rank) fail(errc::dimension_mismatch, "kappa_sigma rank");
    if (!is_pseudo_effective(model, d)) return KappaSigma::not_pseudo_effective;
    auto zd = zariski_decompose(model, d);
    if (zd.positive.is_zero()) return KappaSigma::zero;
    if (pair(model, zd.positive, zd.positive) > 0) return KappaSigma::two;
    return KappaSigma::one;
}

// Divisorial part of the diminished base locus: the support of N_sigma(D).
inline std::vector<CurveGenerator> diminished_divisorial(const SurfaceModel& model,
                                                         const NSClass& d) {
    auto zd = zariski_decompose(model, d);
    std::vector<CurveGenerator> out;
    out.reserve(zd.negative.size());
    for (const auto& [curve, coeff] : zd.negative) out.push_back(curve);
    return out;
}

// Divisorial membership in the augmented base locus of a big divisor,
// decided by the vanishing of P_sigma(D).C.
inline bool augmented_contains_curve(const SurfaceModel& model, const NSClass& d,
                                     const CurveGenerator& c) {
    auto zd_volume = volume(model, d);
    if (zd_volume <= 0) fail(errc::not_big, "augmented base locus needs a big divisor");
    auto zd = zariski_decompose(model, d);
    return pair(model, zd.positive, c.cls) == 0;
}

// Restricted volume along a curve outside the augmented base locus:
// vol_{X|C}(D) = P_sigma(D).C there. Inside B_+ the surface formula is not
// valid, so the query is rejected rather than answered with 0.
inline Rational restricted_volume(const SurfaceModel& model, const NSClass& d,
                                  const CurveGenerator& c) {
    auto zd_volume = volume(model, d);
    if (zd_volume <= 0) fail(errc::not_big, "restricted volume needs a big divisor");
    auto zd = zariski_decompose(model, d);
    Rational v = pair(model, zd.positive, c.cls);
    if (v == 0)
        fail(errc::curve_in_augmented_locus,
             "curve '" + c.name + "' lies in the augmented base locus");
    return v;
}

} // namespace zkit
