#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "zkit/errors.hpp"
#include "zkit/ns_lattice.hpp"
#include "zkit/rational.hpp"

namespace zkit {

// Smooth complete toric surface, given by the counterclockwise-ordered
// primitive rays of its fan. Validated on construction via build_fan.
struct ToricFan {
    std::vector<std::array<long long, 2>> rays;

    std::size_t size() const { return rays.size(); }
};

// Torus-invariant divisor sum(coeffs[i] * D_i), one coefficient per ray.
struct ToricDivisor {
    std::vector<long long> coeffs;

    friend ToricDivisor operator+(ToricDivisor a, const ToricDivisor& b) {
        for (std::size_t i = 0; i < a.coeffs.size(); ++i) a.coeffs[i] += b.coeffs[i];
        return a;
    }
    friend ToricDivisor operator*(long long t, ToricDivisor a) {
        for (auto& c : a.coeffs) c *= t;
        return a;
    }
};

namespace detail {

inline long long det2(const std::array<long long, 2>& a, const std::array<long long, 2>& b) {
    return a[0] * b[1] - a[1] * b[0];
}

// Ample divisor coefficients for a smooth complete fan, by the structure
// theorem: P^2 and the Hirzebruch fans are handled directly, and any larger
// fan contains a ray with self-intersection -1 whose contraction stays
// smooth and complete. The pullback of an ample class (doubled) minus the
// exceptional ray is strictly convex again.
inline std::vector<long long> ample_coefficients(const std::vector<std::array<long long, 2>>& rays) {
    std::size_t n = rays.size();
    auto wall = [&](std::size_t i) {
        // c_i with v_{i-1} + v_{i+1} = c_i v_i
        return det2(rays[(i + n - 1) % n], rays[(i + 1) % n]);
    };
    if (n == 3) return {1, 1, 1};
    if (n == 4) {
        std::size_t imax = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (wall(i) > wall(imax)) imax = i;
        long long c = wall(imax);
        std::vector<long long> a(4, 0);
        a[imax] = 1;
        a[(imax + 1) % 4] = c + 1;
        a[(imax + 3) % 4] = c + 1;
        return a;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (wall(i) != 1) continue;
        std::vector<std::array<long long, 2>> contracted;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) contracted.push_back(rays[j]);
        auto inner = ample_coefficients(contracted);
        std::vector<long long> a(n);
        std::size_t k = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) a[j] = 2 * inner[k++];
        a[i] = a[(i + n - 1) % n] + a[(i + 1) % n] - 1;
        return a;
    }
    return {}; // no contractible ray: not a smooth complete surface fan
}

// Strict angular order on nonzero integer vectors, starting from the
// positive x-axis and running counterclockwise.
inline bool angle_less(const std::array<long long, 2>& a, const std::array<long long, 2>& b) {
    auto half = [](const std::array<long long, 2>& v) {
        return (v[1] < 0 || (v[1] == 0 && v[0] < 0)) ? 1 : 0;
    };
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    return det2(a, b) > 0;
}

} // namespace detail

// Validates: primitive rays, at least three of them, cyclically adjacent
// determinants exactly +1, and a single counterclockwise sweep. The
// determinant condition alone does not force completeness (there are
// unimodular cyclic sequences that wind around the origin twice), so the
// rays are additionally required to be a rotation of their angular sort.
inline ToricFan build_fan(const std::vector<std::array<long long, 2>>& rays) {
    for (const auto& v : rays) {
        if (v[0] == 0 && v[1] == 0) fail(errc::non_primitive_ray, "zero ray");
        if (std::gcd(v[0] < 0 ? -v[0] : v[0], v[1] < 0 ? -v[1] : v[1]) != 1)
            fail(errc::non_primitive_ray,
                 "ray (" + std::to_string(v[0]) + "," + std::to_string(v[1]) + ") is not primitive");
    }
    std::size_t n = rays.size();
    if (n < 3) fail(errc::not_complete, "a complete fan needs at least three rays");

    for (std::size_t i = 0; i < n; ++i) {
        long long d = detail::det2(rays[i], rays[(i + 1) % n]);
        if (d <= 0)
            fail(errc::not_complete, "rays " + std::to_string(i) + "," +
                                         std::to_string((i + 1) % n) +
                                         " are not positively oriented");
        if (d != 1)
            fail(errc::not_smooth, "adjacent rays " + std::to_string(i) + "," +
                                       std::to_string((i + 1) % n) + " span a cone of index " +
                                       std::to_string(d));
    }

    std::vector<std::array<long long, 2>> sorted = rays;
    std::sort(sorted.begin(), sorted.end(), detail::angle_less);
    std::size_t start = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (detail::angle_less(rays[i], rays[start])) start = i;
    for (std::size_t i = 0; i < n; ++i)
        if (rays[(start + i) % n] != sorted[i])
            fail(errc::not_complete, "rays wind around the origin more than once");

    return ToricFan{rays};
}

// Exact rational vertices of the section polygon { u : <u, v_i> >= -d_i },
// deduplicated and sorted counterclockwise. Complete fans make the polygon
// bounded, so its extreme points all arise as intersections of two facets.
inline std::vector<std::array<Rational, 2>> polygon_vertices(const ToricFan& fan,
                                                             const ToricDivisor& t) {
    std::size_t n = fan.size();
    if (t.coeffs.size() != n) fail(errc::dimension_mismatch, "divisor/ray count mismatch");

    std::vector<std::array<Rational, 2>> verts;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            long long den = detail::det2(fan.rays[i], fan.rays[j]);
            if (den == 0) continue;
            // solve <u,v_i> = -d_i, <u,v_j> = -d_j
            Rational x = Rational(Integer(-t.coeffs[i]) * fan.rays[j][1] -
                                  Integer(-t.coeffs[j]) * fan.rays[i][1]) /
                         Rational(den);
            Rational y = Rational(Integer(-t.coeffs[j]) * fan.rays[i][0] -
                                  Integer(-t.coeffs[i]) * fan.rays[j][0]) /
                         Rational(den);
            bool feasible = true;
            for (std::size_t k = 0; k < n && feasible; ++k)
                if (fan.rays[k][0] * x + fan.rays[k][1] * y < -t.coeffs[k]) feasible = false;
            if (feasible) verts.push_back({x, y});
        }
    }

    auto lex = [](const std::array<Rational, 2>& a, const std::array<Rational, 2>& b) {
        return a[0] != b[0] ? a[0] < b[0] : a[1] < b[1];
    };
    std::sort(verts.begin(), verts.end(), lex);
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    if (verts.size() < 3) return verts;

    Rational cx(0), cy(0);
    for (const auto& v : verts) { cx += v[0]; cy += v[1]; }
    cx /= Rational(static_cast<long long>(verts.size()));
    cy /= Rational(static_cast<long long>(verts.size()));
    std::sort(verts.begin(), verts.end(),
              [&](const std::array<Rational, 2>& a, const std::array<Rational, 2>& b) {
                  auto half = [&](const std::array<Rational, 2>& v) {
                      Rational dy = v[1] - cy, dx = v[0] - cx;
                      return (dy < 0 || (dy == 0 && dx < 0)) ? 1 : 0;
                  };
                  int ha = half(a), hb = half(b);
                  if (ha != hb) return ha < hb;
                  return (a[0] - cx) * (b[1] - cy) - (a[1] - cy) * (b[0] - cx) > 0;
              });
    auto first = std::min_element(verts.begin(), verts.end(), lex);
    std::rotate(verts.begin(), first, verts.end());
    return verts;
}

// Exact count of lattice points in the section polygon: h^0(X, O_X(T)) for a
// torus-invariant divisor on a smooth complete toric surface. Sweeps integer
// columns of the bounding box and counts each column's exact y-interval.
inline long long count_h0(const ToricFan& fan, const ToricDivisor& t) {
    std::size_t n = fan.size();
    if (t.coeffs.size() != n) fail(errc::dimension_mismatch, "divisor/ray count mismatch");

    auto verts = polygon_vertices(fan, t);
    if (verts.empty()) return 0;

    Rational xmin = verts[0][0], xmax = verts[0][0];
    for (const auto& v : verts) {
        xmin = std::min(xmin, v[0]);
        xmax = std::max(xmax, v[0]);
    }
    long long x0 = rat_ceil(xmin).convert_to<long long>();
    long long x1 = rat_floor(xmax).convert_to<long long>();

    long long count = 0;
    for (long long x = x0; x <= x1; ++x) {
        bool empty = false;
        bool has_lo = false, has_hi = false;
        long long ylo = 0, yhi = 0;
        for (std::size_t i = 0; i < n; ++i) {
            long long a = fan.rays[i][0], b = fan.rays[i][1], d = t.coeffs[i];
            long long rest = -d - a * x; // need b*y >= rest
            if (b > 0) {
                long long bound = rest >= 0 ? (rest + b - 1) / b : -((-rest) / b);
                if (!has_lo || bound > ylo) { ylo = bound; has_lo = true; }
            } else if (b < 0) {
                long long nb = -b; // y <= -rest/nb
                long long bound = rest <= 0 ? (-rest) / nb : -((rest + nb - 1) / nb);
                if (!has_hi || bound < yhi) { yhi = bound; has_hi = true; }
            } else if (rest > 0) {
                empty = true;
                break;
            }
        }
        if (empty || !has_lo || !has_hi) continue;
        if (yhi >= ylo) count += yhi - ylo + 1;
    }
    return count;
}

// 2 * area of the section polygon by the shoelace formula: the leading
// Ehrhart coefficient of h^0(mT) normalized by m^2/2, i.e. vol of the class.
inline Rational oracle_volume(const ToricFan& fan, const ToricDivisor& t) {
    auto verts = polygon_vertices(fan, t);
    if (verts.size() < 3) return Rational(0);
    Rational twice_area(0);
    for (std::size_t i = 0; i < verts.size(); ++i) {
        const auto& a = verts[i];
        const auto& b = verts[(i + 1) % verts.size()];
        twice_area += a[0] * b[1] - b[0] * a[1];
    }
    return abs(twice_area);
}

// Derived lattice model of the fan's surface, plus the class of every ray in
// the chosen basis. Basis rays default to rays 2..n-1 (their classes are a
// lattice basis because rays 0,1 are a unimodular pair); any other choice of
// ray indices whose classes form a lattice basis may be requested.
struct ToricModelExport {
    SurfaceModel model;
    std::vector<NSClass> ray_classes;
    std::vector<std::size_t> basis_rays;

    NSClass class_of(const ToricDivisor& t) const {
        NSClass c = NSClass::zero(model.rank);
        for (std::size_t i = 0; i < ray_classes.size(); ++i)
            if (t.coeffs[i] != 0) c += Rational(t.coeffs[i]) * ray_classes[i];
        return c;
    }
};

inline ToricModelExport fan_to_surface_model(
    const ToricFan& fan, std::optional<std::vector<std::size_t>> basis_rays = std::nullopt,
    std::optional<std::vector<std::string>> basis_names = std::nullopt) {
    std::size_t n = fan.size();
    std::size_t rank = n - 2;

    // Ray classes in the canonical coordinates obtained by using the two
    // linear relations sum(<u, v_i>) D_i ~ 0 to eliminate rays 0 and 1.
    // det(v_0, v_1) = 1 makes that elimination integral.
    auto canonical_class = [&](const std::vector<long long>& d) {
        const auto& v0 = fan.rays[0];
        const auto& v1 = fan.rays[1];
        long long alpha = d[0] * v1[1] - d[1] * v0[1];
        long long beta = v0[0] * d[1] - v1[0] * d[0];
        NSClass c = NSClass::zero(rank);
        for (std::size_t j = 2; j < n; ++j)
            c.coords[j - 2] = Rational(d[j] - alpha * fan.rays[j][0] - beta * fan.rays[j][1]);
        return c;
    };

    std::vector<NSClass> canon(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<long long> d(n, 0);
        d[i] = 1;
        canon[i] = canonical_class(d);
    }

    // Intersection numbers of ray divisors: adjacent pairs meet once,
    // D_i^2 = -det(v_{i-1}, v_{i+1}), everything else is disjoint.
    auto ray_pairing = [&](std::size_t i, std::size_t j) -> Rational {
        if (i == j) {
            const auto& prev = fan.rays[(i + n - 1) % n];
            const auto& next = fan.rays[(i + 1) % n];
            return Rational(-detail::det2(prev, next));
        }
        std::size_t lo = std::min(i, j), hi = std::max(i, j);
        if (hi - lo == 1 || (lo == 0 && hi == n - 1)) return Rational(1);
        return Rational(0);
    };

    std::vector<std::size_t> basis;
    if (basis_rays) {
        basis = *basis_rays;
        if (basis.size() != rank) fail(errc::input_error, "basis needs exactly rank ray indices");
        for (auto b : basis)
            if (b >= n) fail(errc::input_error, "basis ray index out of range");
    } else {
        for (std::size_t j = 2; j < n; ++j) basis.push_back(j);
    }

    Matrix<Rational> change(rank, rank);
    for (std::size_t c = 0; c < rank; ++c)
        for (std::size_t r = 0; r < rank; ++r) change(r, c) = canon[basis[c]].coords[r];
    Rational bdet = det(change);
    if (bdet != 1 && bdet != -1)
        fail(errc::input_error, "chosen rays do not form a basis of the class lattice");

    std::vector<NSClass> ray_classes(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto x = solve_square(change, canon[i].coords);
        ray_classes[i] = NSClass(std::move(*x));
    }

    SurfaceModel model;
    model.rank = rank;
    model.gram = Matrix<Rational>(rank, rank);
    for (std::size_t a = 0; a < rank; ++a)
        for (std::size_t b = 0; b < rank; ++b) model.gram(a, b) = ray_pairing(basis[a], basis[b]);

    model.canonical = NSClass::zero(rank);
    for (std::size_t i = 0; i < n; ++i) model.canonical -= ray_classes[i];

    model.chi = 1;
    model.pg = 0;
    model.kodaira_equals_numerical = true;

    for (std::size_t i = 0; i < n; ++i)
        model.curves.push_back({"D" + std::to_string(i), ray_classes[i]});

    auto ample_coeffs = detail::ample_coefficients(fan.rays);
    if (!ample_coeffs.empty()) {
        NSClass ample = NSClass::zero(rank);
        for (std::size_t i = 0; i < n; ++i) ample += Rational(ample_coeffs[i]) * ray_classes[i];
        bool strict = true;
        for (std::size_t i = 0; i < n && strict; ++i)
            if (pair(model, ample, ray_classes[i]) <= 0) strict = false;
        if (strict) model.ample = ample;
    }

    if (basis_names) {
        if (basis_names->size() != rank) fail(errc::input_error, "need one name per basis class");
        model.basis_names = *basis_names;
    } else {
        for (auto b : basis) model.basis_names.push_back("D" + std::to_string(b));
    }

    return ToricModelExport{std::move(model), std::move(ray_classes), std::move(basis)};
}

} // namespace zkit
