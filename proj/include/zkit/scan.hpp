#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zkit/errors.hpp"
#include "zkit/toric.hpp"

namespace zkit {

// Realizes the direct-limit model of sections on U = X \ E: for each m the
// row h^0(mD + kE), k = 0..k_cap, together with the stabilization index k(m)
// when the limit is reached inside the cap.
enum class ScanRowStatus {
    stabilized,
    unbounded,
    inconclusive,        // cap reached without a confident verdict
    prediction_exceeded, // values passed the supplied limit: prediction wrong
};

inline std::string scan_row_status_name(ScanRowStatus s) {
    switch (s) {
        case ScanRowStatus::stabilized:          return "stabilized";
        case ScanRowStatus::unbounded:           return "unbounded";
        case ScanRowStatus::inconclusive:        return "inconclusive";
        case ScanRowStatus::prediction_exceeded: return "prediction_exceeded";
    }
    return "?";
}

struct ScanRow {
    int m = 0;
    long long k_cap = 0;
    long long window = 0;
    std::vector<long long> values; // h^0(mD + kE), k = 0..k_cap
    ScanRowStatus status = ScanRowStatus::inconclusive;
    std::optional<long long> k_of_m;
    std::optional<long long> stabilized_value;
};

struct ScanReport {
    std::vector<ScanRow> rows;

    bool all_stabilized() const {
        for (const auto& r : rows)
            if (r.status != ScanRowStatus::stabilized) return false;
        return !rows.empty();
    }
    bool any_unbounded() const {
        for (const auto& r : rows)
            if (r.status == ScanRowStatus::unbounded) return true;
        return false;
    }
    bool any_inconclusive() const {
        for (const auto& r : rows)
            if (r.status == ScanRowStatus::inconclusive ||
                r.status == ScanRowStatus::prediction_exceeded)
                return true;
        return false;
    }
};

struct ScanOptions {
    int m_max = 12;
    std::optional<long long> k_cap;  // default 16*m + 64
    std::optional<long long> window; // default max(4, m)
    // Predicted limit values per m (e.g. h^0(m(D+aE)) from the classifier).
    // An exact match overrides the window heuristic.
    std::map<int, long long> predictions;
};

inline ScanReport h0_limit_scan(const ToricFan& fan, const ToricDivisor& d,
                                const ToricDivisor& e, const ScanOptions& opts = {}) {
    if (d.coeffs.size() != fan.size() || e.coeffs.size() != fan.size())
        fail(errc::dimension_mismatch, "divisor/ray count mismatch");
    bool has_component = false;
    for (auto c : e.coeffs) {
        if (c != 0 && c != 1) fail(errc::input_error, "E must be a reduced sum of distinct rays");
        if (c == 1) has_component = true;
    }
    if (!has_component) fail(errc::input_error, "E must have at least one component");

    ScanReport report;
    for (int m = 1; m <= opts.m_max; ++m) {
        ScanRow row;
        row.m = m;
        row.k_cap = opts.k_cap ? *opts.k_cap : 16LL * m + 64;
        row.window = opts.window ? *opts.window : std::max<long long>(4, m);

        ToricDivisor md = m * d;
        row.values.reserve(static_cast<std::size_t>(row.k_cap) + 1);
        for (long long k = 0; k <= row.k_cap; ++k) {
            ToricDivisor t = md + k * e;
            long long h0 = count_h0(fan, t);
            if (!row.values.empty() && h0 < row.values.back())
                fail(errc::model_inconsistent, "h^0 decreased along an effective direction");
            row.values.push_back(h0);
        }

        auto pred = opts.predictions.find(m);
        if (pred != opts.predictions.end()) {
            long long target = pred->second;
            std::optional<long long> hit;
            for (long long k = 0; k <= row.k_cap; ++k) {
                if (row.values[static_cast<std::size_t>(k)] == target) { hit = k; break; }
                if (row.values[static_cast<std::size_t>(k)] > target) break;
            }
            if (hit) {
                row.status = ScanRowStatus::stabilized;
                row.k_of_m = *hit;
                row.stabilized_value = target;
            } else if (row.values.back() > target) {
                row.status = ScanRowStatus::prediction_exceeded;
            } else {
                row.status = ScanRowStatus::inconclusive;
            }
        } else {
            // least k with values constant from k through the cap
            long long k0 = row.k_cap;
            while (k0 > 0 && row.values[static_cast<std::size_t>(k0 - 1)] ==
                                 row.values[static_cast<std::size_t>(row.k_cap)])
                --k0;
            long long tail = row.k_cap - k0 + 1;
            bool strictly_increasing_tail = row.window >= 2;
            for (long long k = row.k_cap - row.window + 1; k < row.k_cap && strictly_increasing_tail;
                 ++k)
                if (k < 0 || row.values[static_cast<std::size_t>(k + 1)] <=
                                 row.values[static_cast<std::size_t>(k)])
                    strictly_increasing_tail = false;

            if (tail >= row.window) {
                row.status = ScanRowStatus::stabilized;
                row.k_of_m = k0;
                row.stabilized_value = row.values[static_cast<std::size_t>(k0)];
            } else if (strictly_increasing_tail) {
                row.status = ScanRowStatus::unbounded;
            } else {
                row.status = ScanRowStatus::inconclusive;
            }
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace zkit
