#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "zkit/errors.hpp"
#include "zkit/linalg.hpp"
#include "zkit/rational.hpp"

namespace zkit {

// A divisor class in the Neron-Severi lattice: exact rational coordinates in
// the basis fixed by the owning SurfaceModel. Numerical equivalence is
// coordinate equality.
struct NSClass {
    std::vector<Rational> coords;

    NSClass() = default;
    explicit NSClass(std::vector<Rational> c) : coords(std::move(c)) {}

    static NSClass zero(std::size_t rank) { return NSClass(std::vector<Rational>(rank, Rational(0))); }

    std::size_t rank() const { return coords.size(); }
    bool is_zero() const {
        return std::all_of(coords.begin(), coords.end(), [](const Rational& c) { return c == 0; });
    }

    bool operator==(const NSClass& o) const { return coords == o.coords; }

    NSClass& operator+=(const NSClass& o) {
        if (coords.size() != o.coords.size()) fail(errc::dimension_mismatch, "class addition");
        for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += o.coords[i];
        return *this;
    }
    NSClass& operator-=(const NSClass& o) {
        if (coords.size() != o.coords.size()) fail(errc::dimension_mismatch, "class subtraction");
        for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= o.coords[i];
        return *this;
    }
    NSClass& operator*=(const Rational& t) {
        for (auto& c : coords) c *= t;
        return *this;
    }

    friend NSClass operator+(NSClass a, const NSClass& b) { return a += b; }
    friend NSClass operator-(NSClass a, const NSClass& b) { return a -= b; }
    friend NSClass operator*(const Rational& t, NSClass a) { return a *= t; }
};

// A declared irreducible curve: a named generator of the effective cone.
struct CurveGenerator {
    std::string name;
    NSClass cls;
};

// Exact model of a projective surface's numerical lattice. The curve list is
// declared to generate the full effective cone (true for the toric surfaces
// this ships with); every cone answer is relative to that axiom.
struct SurfaceModel {
    std::size_t rank = 0;
    Matrix<Rational> gram;
    NSClass canonical;
    long long chi = 0; // chi(O_X)
    long long pg = 0;  // h^0(K_X)
    std::vector<CurveGenerator> curves;
    bool kodaira_equals_numerical = false;
    std::optional<NSClass> ample;
    std::vector<std::string> basis_names;

    std::optional<std::size_t> curve_index(const std::string& name) const {
        for (std::size_t i = 0; i < curves.size(); ++i)
            if (curves[i].name == name) return i;
        return std::nullopt;
    }

    const CurveGenerator& curve(const std::string& name) const {
        auto i = curve_index(name);
        if (!i) fail(errc::input_error, "unknown curve '" + name + "'");
        return curves[*i];
    }
};

// Witness of pseudo-effectivity: nonnegative weights on generators whose
// weighted sum reconstructs the queried class exactly. Zero weights are
// dropped.
struct ConeCertificate {
    std::map<std::string, Rational> coefficients;
};

inline Rational pair(const SurfaceModel& model, const NSClass& a, const NSClass& b) {
    if (a.rank() != model.rank || b.rank() != model.rank)
        fail(errc::dimension_mismatch, "pairing classes of wrong rank");
    Rational s(0);
    for (std::size_t i = 0; i < model.rank; ++i) {
        if (a.coords[i] == 0) continue;
        Rational row(0);
        for (std::size_t j = 0; j < model.rank; ++j) row += model.gram(i, j) * b.coords[j];
        s += a.coords[i] * row;
    }
    return s;
}

struct ValidationReport {
    bool pass = false;
    Signature signature;
    std::vector<std::string> failures;
};

// Checks the model invariants; most importantly the Hodge index condition
// signature(gram) = (1, rank-1). Failures are collected, not thrown.
inline ValidationReport validate_model(const SurfaceModel& model,
                                       long long self_intersection_bound = 64) {
    ValidationReport report;
    auto& bad = report.failures;

    if (model.rank == 0) bad.push_back("rank must be positive");
    if (model.gram.rows() != model.rank || model.gram.cols() != model.rank)
        bad.push_back("gram matrix shape does not match rank");

    bool symmetric = model.gram.rows() == model.gram.cols();
    if (symmetric) {
        for (std::size_t i = 0; i < model.gram.rows() && symmetric; ++i)
            for (std::size_t j = i + 1; j < model.gram.cols() && symmetric; ++j)
                if (model.gram(i, j) != model.gram(j, i)) symmetric = false;
        if (!symmetric) bad.push_back("gram matrix is not symmetric");
    }

    if (symmetric && model.gram.rows() == model.rank && model.rank > 0) {
        report.signature = signature_of_symmetric(model.gram);
        if (report.signature.zero > 0)
            bad.push_back("gram matrix is degenerate (radical of dimension " +
                          std::to_string(report.signature.zero) + ")");
        if (!(report.signature.pos == 1 && report.signature.neg == static_cast<int>(model.rank) - 1))
            bad.push_back("signature (" + std::to_string(report.signature.pos) + "," +
                          std::to_string(report.signature.neg) +
                          ") violates the Hodge index condition (1," +
                          std::to_string(model.rank - 1) + ")");
    }

    if (model.canonical.rank() != model.rank) bad.push_back("canonical class has wrong rank");
    if (model.pg < 0) bad.push_back("pg must be nonnegative");

    std::set<std::string> names;
    for (const auto& c : model.curves) {
        if (c.name.empty()) bad.push_back("curve with empty name");
        if (!names.insert(c.name).second) bad.push_back("duplicate curve name '" + c.name + "'");
        if (c.cls.rank() != model.rank) {
            bad.push_back("curve '" + c.name + "' has wrong rank");
            continue;
        }
        if (c.cls.is_zero()) bad.push_back("curve '" + c.name + "' is the zero class");
        if (symmetric && model.gram.rows() == model.rank) {
            Rational self = pair(model, c.cls, c.cls);
            if (self < -Rational(self_intersection_bound))
                bad.push_back("curve '" + c.name + "' has self-intersection below -" +
                              std::to_string(self_intersection_bound));
        }
    }

    if (model.ample) {
        if (model.ample->rank() != model.rank) {
            bad.push_back("ample class has wrong rank");
        } else if (symmetric && model.gram.rows() == model.rank) {
            if (pair(model, *model.ample, *model.ample) <= 0)
                bad.push_back("declared ample class has non-positive self-intersection");
            for (const auto& c : model.curves)
                if (c.cls.rank() == model.rank && pair(model, *model.ample, c.cls) <= 0)
                    bad.push_back("declared ample class meets curve '" + c.name +
                                  "' non-positively");
        }
    }

    report.pass = bad.empty();
    return report;
}

namespace detail {

// Enumerates k-subsets of {0..n-1} in lexicographic order.
inline bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

} // namespace detail

// Exact membership test for the cone spanned by the declared generators.
// Any feasible point has a basic representation supported on linearly
// independent generators, so enumerating independent subsets of size
// rank(generator matrix) is complete. Counts are small by design.
inline std::optional<ConeCertificate> is_pseudo_effective(const SurfaceModel& model,
                                                          const NSClass& d) {
    if (d.rank() != model.rank) fail(errc::dimension_mismatch, "is_pseudo_effective rank");
    std::size_t g = model.curves.size();

    Matrix<Rational> gens(model.rank, g);
    for (std::size_t j = 0; j < g; ++j)
        for (std::size_t i = 0; i < model.rank; ++i) gens(i, j) = model.curves[j].cls.coords[i];

    std::size_t r = rank(gens);

    Matrix<Rational> aug(model.rank, g + 1);
    for (std::size_t j = 0; j < g; ++j)
        for (std::size_t i = 0; i < model.rank; ++i) aug(i, j) = gens(i, j);
    for (std::size_t i = 0; i < model.rank; ++i) aug(i, g) = d.coords[i];
    if (rank(aug) != r) return std::nullopt; // d outside the generator span

    std::vector<std::size_t> idx(r);
    for (std::size_t i = 0; i < r; ++i) idx[i] = i;

    do {
        Matrix<Rational> sub(model.rank, r);
        for (std::size_t c = 0; c < r; ++c)
            for (std::size_t i = 0; i < model.rank; ++i) sub(i, c) = gens(i, idx[c]);
        auto x = solve_full_column_rank(sub, d.coords);
        if (!x) continue;
        bool nonneg = std::all_of(x->begin(), x->end(), [](const Rational& v) { return v >= 0; });
        if (!nonneg) continue;
        ConeCertificate cert;
        for (std::size_t c = 0; c < r; ++c)
            if ((*x)[c] != 0) cert.coefficients[model.curves[idx[c]].name] = (*x)[c];
        return cert;
    } while (r > 0 && detail::next_combination(idx, g));

    return std::nullopt;
}

struct NefCheck {
    bool nef = false;
    std::optional<std::size_t> violator; // index into model.curves
};

inline NefCheck is_nef(const SurfaceModel& model, const NSClass& d) {
    if (d.rank() != model.rank) fail(errc::dimension_mismatch, "is_nef rank");
    for (std::size_t i = 0; i < model.curves.size(); ++i)
        if (pair(model, d, model.curves[i].cls) < 0) return {false, i};
    return {true, std::nullopt};
}

// Returns t > 0 with a = t*b when it exists. Zero classes never count as
// proportional; a vanishing positive part is routed through the trichotomy's
// rigid case instead.
inline std::optional<Rational> is_proportional(const NSClass& a, const NSClass& b) {
    if (a.rank() != b.rank()) return std::nullopt;
    if (a.is_zero() || b.is_zero()) return std::nullopt;
    std::size_t i = 0;
    while (i < b.coords.size() && b.coords[i] == 0) ++i;
    if (i == b.coords.size()) return std::nullopt;
    Rational t = a.coords[i] / b.coords[i];
    if (t <= 0) return std::nullopt;
    for (std::size_t j = 0; j < a.coords.size(); ++j)
        if (a.coords[j] != t * b.coords[j]) return std::nullopt;
    return t;
}

} // namespace zkit
