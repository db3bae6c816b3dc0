// zkit: exact Zariski decompositions, volumes and section-growth
// classification on projective surfaces, cross-checked against a toric
// lattice-point oracle. All reported numbers are exact rationals.

#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zkit/finiteness.hpp"
#include "zkit/io.hpp"
#include "zkit/ns_lattice.hpp"
#include "zkit/scan.hpp"
#include "zkit/toric.hpp"
#include "zkit/verify.hpp"
#include "zkit/zariski.hpp"

namespace {

using zkit::json;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::vector<zkit::Rational> parse_rational_list(const std::string& s) {
    std::vector<zkit::Rational> out;
    for (const auto& p : split(s, ',')) out.push_back(zkit::parse_rational(p));
    return out;
}

std::vector<long long> parse_int_list(const std::string& s) {
    std::vector<long long> out;
    for (const auto& p : split(s, ',')) {
        auto q = zkit::parse_rational(p);
        if (!zkit::is_integer(q)) zkit::fail(zkit::errc::input_error, "expected integer '" + p + "'");
        out.push_back(zkit::rat_num(q).convert_to<long long>());
    }
    return out;
}

zkit::NSClass parse_divisor(const zkit::SurfaceModel& model, const std::string& s) {
    auto coords = parse_rational_list(s);
    if (coords.size() != model.rank)
        zkit::fail(zkit::errc::input_error,
                   "divisor needs " + std::to_string(model.rank) + " coordinates");
    return zkit::NSClass(std::move(coords));
}

zkit::ToricDivisor parse_toric_divisor(const zkit::ToricFan& fan, const std::string& s) {
    auto coeffs = parse_int_list(s);
    if (coeffs.size() != fan.size())
        zkit::fail(zkit::errc::input_error,
                   "divisor needs " + std::to_string(fan.size()) + " ray coefficients");
    return zkit::ToricDivisor{std::move(coeffs)};
}

void emit(const json& report, const std::string& out_path, bool pretty = false) {
    std::string text = (pretty ? report.dump(2) : report.dump()) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path);
        if (!f) zkit::fail(zkit::errc::input_error, "cannot open '" + out_path + "' for writing");
        f << text;
    }
}

json verdict_to_json(const zkit::FinitenessVerdict& v, bool trace) {
    json out;
    out["status"] = zkit::finiteness_status_name(v.status);
    if (v.a_min_bplus) out["a_min_bplus"] = *v.a_min_bplus;
    if (v.a_min_nsigma) out["a_min_nsigma"] = *v.a_min_nsigma;
    if (!v.satisfied_cases.empty()) {
        json cases = json::array();
        for (auto c : v.satisfied_cases) cases.push_back(zkit::trichotomy_case_name(c));
        out["satisfied_cases"] = std::move(cases);
    }
    if (!v.witness.empty()) out["witness"] = v.witness;
    if (trace) {
        out["scanned_a_max"] = v.scanned_a_max;
        json rows = json::array();
        for (const auto& t : v.trace) {
            json row;
            row["a"] = t.a;
            row["bplus_holds"] = t.bplus_holds;
            row["nsigma_holds"] = t.nsigma_holds;
            json coeffs;
            for (const auto& [name, value] : t.nsigma_coefficients)
                coeffs[name] = zkit::rational_to_json(value);
            row["nsigma_coefficients"] = std::move(coeffs);
            rows.push_back(std::move(row));
        }
        out["trace"] = std::move(rows);
    }
    return out;
}

json scan_to_json(const zkit::ScanReport& report) {
    json out;
    json rows = json::array();
    for (const auto& r : report.rows) {
        json row;
        row["m"] = r.m;
        row["k_cap"] = r.k_cap;
        row["window"] = r.window;
        row["status"] = zkit::scan_row_status_name(r.status);
        if (r.k_of_m) row["k"] = *r.k_of_m;
        if (r.stabilized_value) row["value"] = *r.stabilized_value;
        row["values"] = r.values;
        rows.push_back(std::move(row));
    }
    out["rows"] = std::move(rows);
    return out;
}

json verification_to_json(const zkit::VerificationReport& report) {
    json out;
    out["suite"] = report.suite;
    out["pass"] = report.pass();
    json checks = json::array();
    for (const auto& c : report.checks) {
        json cj;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        cj["detail"] = c.detail;
        checks.push_back(std::move(cj));
    }
    out["checks"] = std::move(checks);
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Zariski decompositions and section growth on surfaces"};
    app.require_subcommand(1);

    std::string model_path, fan_path, divisor_str, boundary_str, coeffs_str, out_path;
    std::string basis_str, names_str, suite_str, mode = "auto";
    int a_max = 64;
    int m_max = 12;
    std::optional<long long> k_cap, window;
    bool trace = false;

    std::function<int()> run;

    auto add_out = [&](CLI::App* cmd) { cmd->add_option("--out", out_path, "write the JSON report here instead of stdout"); };

    // model validate
    auto* model_cmd = app.add_subcommand("model", "surface model operations");
    model_cmd->require_subcommand(1);
    auto* validate_cmd = model_cmd->add_subcommand("validate", "check model invariants (Hodge index signature)");
    validate_cmd->add_option("--model", model_path, "surface model JSON file")->required();
    add_out(validate_cmd);
    validate_cmd->callback([&] {
        run = [&]() -> int {
            auto model = zkit::load_model_file(model_path);
            auto report = zkit::validate_model(model);
            json out;
            out["pass"] = report.pass;
            out["signature"] = json::array({report.signature.pos, report.signature.neg});
            out["failures"] = report.failures;
            emit(out, out_path);
            return report.pass ? 0 : 3;
        };
    });

    // zariski
    auto* zariski_cmd = app.add_subcommand("zariski", "Zariski decomposition D = P + N");
    zariski_cmd->add_option("--model", model_path)->required();
    zariski_cmd->add_option("--divisor", divisor_str, "rational coordinates, e.g. 1,1/2")->required();
    add_out(zariski_cmd);
    zariski_cmd->callback([&] {
        run = [&]() -> int {
            auto model = zkit::load_model_file(model_path);
            auto d = parse_divisor(model, divisor_str);
            auto zd = zkit::zariski_decompose(model, d);
            json out;
            out["positive"] = zkit::class_to_json(zd.positive);
            json neg = json::array();
            for (const auto& [curve, coeff] : zd.negative) {
                json entry;
                entry["curve"] = curve.name;
                entry["coeff"] = zkit::rational_to_json(coeff);
                neg.push_back(std::move(entry));
            }
            out["negative"] = std::move(neg);
            emit(out, out_path);
            return 0;
        };
    });

    // volume
    auto* volume_cmd = app.add_subcommand("volume", "volume of a divisor class");
    volume_cmd->add_option("--model", model_path)->required();
    volume_cmd->add_option("--divisor", divisor_str)->required();
    add_out(volume_cmd);
    volume_cmd->callback([&] {
        run = [&]() -> int {
            auto model = zkit::load_model_file(model_path);
            auto d = parse_divisor(model, divisor_str);
            json out;
            out["volume"] = zkit::rational_to_json(zkit::volume(model, d));
            emit(out, out_path);
            return 0;
        };
    });

    // kappa-sigma
    auto* kappa_cmd = app.add_subcommand("kappa-sigma", "numerical dimension of a divisor class");
    kappa_cmd->add_option("--model", model_path)->required();
    kappa_cmd->add_option("--divisor", divisor_str)->required();
    add_out(kappa_cmd);
    kappa_cmd->callback([&] {
        run = [&]() -> int {
            auto model = zkit::load_model_file(model_path);
            auto d = parse_divisor(model, divisor_str);
            auto k = zkit::kappa_sigma(model, d);
            json out;
            if (k == zkit::KappaSigma::not_pseudo_effective)
                out["kappa_sigma"] = "NotPseudoEffective";
            else
                out["kappa_sigma"] = k == zkit::KappaSigma::zero ? 0 : k == zkit::KappaSigma::one ? 1 : 2;
            emit(out, out_path);
            return 0;
        };
    });

    // classify
    auto* classify_cmd = app.add_subcommand("classify", "finiteness of sections on X minus the boundary");
    classify_cmd->add_option("--model", model_path)->required();
    classify_cmd->add_option("--divisor", divisor_str)->required();
    classify_cmd->add_option("--boundary", boundary_str, "comma-separated curve names")->required();
    classify_cmd->add_option("--a-max", a_max, "scan cap for the twist a (default 64)");
    classify_cmd->add_option("--mode", mode, "auto|big|pseff (default auto)");
    classify_cmd->add_flag("--trace", trace, "include per-a diagnostics");
    add_out(classify_cmd);
    classify_cmd->callback([&] {
        run = [&]() -> int {
            auto model = zkit::load_model_file(model_path);
            auto d = parse_divisor(model, divisor_str);
            auto e = zkit::BoundaryDivisor::from_names(model, split(boundary_str, ','));
            zkit::FinitenessVerdict verdict;
            if (mode == "big")
                verdict = zkit::classify_big(model, d, e, a_max, trace);
            else if (mode == "pseff" || mode == "auto")
                verdict = zkit::classify_pseff(model, d, e, a_max, trace);
            else
                zkit::fail(zkit::errc::input_error, "unknown mode '" + mode + "'");
            json out = verdict_to_json(verdict, trace);
            if (trace && verdict.a_min_nsigma) {
                auto threshold = zkit::nsigma_threshold(model, d, e, *verdict.a_min_nsigma);
                if (threshold) out["nsigma_threshold"] = zkit::rational_to_json(*threshold);
            }
            emit(out, out_path);
            return verdict.status == zkit::FinitenessStatus::inconclusive ? 3 : 0;
        };
    });

    // growth
    auto* growth_cmd = app.add_subcommand("growth", "quadratic growth estimate for a Finite case");
    growth_cmd->add_option("--model", model_path)->required();
    growth_cmd->add_option("--divisor", divisor_str)->required();
    growth_cmd->add_option("--boundary", boundary_str)->required();
    growth_cmd->add_option("--a-max", a_max);
    add_out(growth_cmd);
    growth_cmd->callback([&] {
        run = [&]() -> int {
            auto model = zkit::load_model_file(model_path);
            auto d = parse_divisor(model, divisor_str);
            auto e = zkit::BoundaryDivisor::from_names(model, split(boundary_str, ','));
            auto est = zkit::growth_estimate(model, d, e, a_max);
            json out;
            out["degree"] = est.degree;
            out["leading"] = zkit::rational_to_json(est.leading);
            out["slope_bound"] = est.slope_bound;
            emit(out, out_path);
            return 0;
        };
    });

    // toric {model, h0, scan}
    auto* toric_cmd = app.add_subcommand("toric", "exact toric oracle");
    toric_cmd->require_subcommand(1);

    auto* toric_model_cmd = toric_cmd->add_subcommand("model", "export the surface model of a fan");
    toric_model_cmd->add_option("--fan", fan_path, "fan JSON file")->required();
    toric_model_cmd->add_option("--basis", basis_str, "ray indices (0-based) whose classes form the basis");
    toric_model_cmd->add_option("--names", names_str, "names for the basis classes");
    add_out(toric_model_cmd);
    toric_model_cmd->callback([&] {
        run = [&]() -> int {
            auto fan = zkit::load_fan_file(fan_path);
            std::optional<std::vector<std::size_t>> basis;
            if (!basis_str.empty()) {
                std::vector<std::size_t> idx;
                for (auto v : parse_int_list(basis_str)) {
                    if (v < 0) zkit::fail(zkit::errc::input_error, "negative ray index");
                    idx.push_back(static_cast<std::size_t>(v));
                }
                basis = std::move(idx);
            }
            std::optional<std::vector<std::string>> names;
            if (!names_str.empty()) names = split(names_str, ',');
            auto exp = zkit::fan_to_surface_model(fan, basis, names);
            emit(zkit::model_to_json(exp.model), out_path, /*pretty=*/true);
            return 0;
        };
    });

    auto* toric_h0_cmd = toric_cmd->add_subcommand("h0", "count sections of a torus-invariant divisor");
    toric_h0_cmd->add_option("--fan", fan_path)->required();
    toric_h0_cmd->add_option("--coeffs", coeffs_str, "integer ray coefficients")->required();
    add_out(toric_h0_cmd);
    toric_h0_cmd->callback([&] {
        run = [&]() -> int {
            auto fan = zkit::load_fan_file(fan_path);
            auto t = parse_toric_divisor(fan, coeffs_str);
            json out;
            out["h0"] = zkit::count_h0(fan, t);
            emit(out, out_path);
            return 0;
        };
    });

    auto* toric_scan_cmd = toric_cmd->add_subcommand("scan", "direct-limit scan of h0(mD + kE)");
    toric_scan_cmd->add_option("--fan", fan_path)->required();
    toric_scan_cmd->add_option("--coeffs", coeffs_str, "ray coefficients of D")->required();
    toric_scan_cmd->add_option("--boundary", boundary_str, "ray indices of the reduced divisor E")->required();
    toric_scan_cmd->add_option("--m-max", m_max, "largest m (default 12)");
    long long k_cap_opt = -1, window_opt = -1;
    toric_scan_cmd->add_option("--k-cap", k_cap_opt, "pole-order cap (default 16m+64)");
    toric_scan_cmd->add_option("--window", window_opt, "stabilization window (default max(4,m))");
    add_out(toric_scan_cmd);
    toric_scan_cmd->callback([&] {
        run = [&]() -> int {
            auto fan = zkit::load_fan_file(fan_path);
            auto d = parse_toric_divisor(fan, coeffs_str);
            zkit::ToricDivisor e{std::vector<long long>(fan.size(), 0)};
            for (auto idx : parse_int_list(boundary_str)) {
                if (idx < 0 || idx >= static_cast<long long>(fan.size()))
                    zkit::fail(zkit::errc::input_error, "ray index out of range");
                if (e.coeffs[static_cast<std::size_t>(idx)] != 0)
                    zkit::fail(zkit::errc::input_error, "boundary ray repeated");
                e.coeffs[static_cast<std::size_t>(idx)] = 1;
            }
            zkit::ScanOptions opts;
            opts.m_max = m_max;
            if (k_cap_opt >= 0) opts.k_cap = k_cap_opt;
            if (window_opt >= 0) opts.window = window_opt;
            auto report = zkit::h0_limit_scan(fan, d, e, opts);
            json out = scan_to_json(report);

            // unbounded verdicts at a finite cap are empirical unless a
            // theorem certifies the growth: the Riemann-Roch test, or a
            // boundary of positive numerical dimension under a big divisor
            if (report.any_unbounded()) {
                auto exp = zkit::fan_to_surface_model(fan);
                std::vector<std::string> names;
                for (std::size_t i = 0; i < fan.size(); ++i)
                    if (e.coeffs[i] == 1) names.push_back(exp.model.curves[i].name);
                auto boundary = zkit::BoundaryDivisor::from_names(exp.model, names);
                auto d_cls = exp.class_of(d);
                auto m0 = zkit::rr_infiniteness_test(exp.model, d_cls, boundary);
                bool big = zkit::volume(exp.model, d_cls) > 0;
                bool kappa_positive =
                    zkit::kappa_sigma(exp.model, boundary.total) != zkit::KappaSigma::zero;
                for (auto& row : out["rows"]) {
                    if (row["status"] != "unbounded") continue;
                    if (m0 && row["m"].get<long long>() >= *m0)
                        row["unbounded_certificate"] = "riemann-roch";
                    else if (big && kappa_positive)
                        row["unbounded_certificate"] = "kappa-sigma";
                    else
                        row["unbounded_certificate"] = "empirical";
                }
            }
            emit(out, out_path);
            return report.any_inconclusive() ? 3 : 0;
        };
    });

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "cross-verification suites against the oracle");
    verify_cmd->add_option("--fan", fan_path)->required();
    verify_cmd->add_option("--suite", suite_str, "fkl|okounkov|growth|rr|scan")->required();
    verify_cmd->add_option("--m-max", m_max);
    verify_cmd->add_option("--a-max", a_max);
    add_out(verify_cmd);
    verify_cmd->callback([&] {
        run = [&]() -> int {
            auto fan = zkit::load_fan_file(fan_path);
            auto suite = zkit::suite_from_name(suite_str);
            if (!suite) zkit::fail(zkit::errc::input_error, "unknown suite '" + suite_str + "'");
            zkit::VerifyOptions opts;
            opts.m_max = m_max;
            opts.a_max = a_max;
            auto report = zkit::verify_suite(fan, *suite, opts);
            emit(verification_to_json(report), out_path);
            return report.pass() ? 0 : 3;
        };
    });

    try {
        app.parse(argc, argv);
        if (run) return run();
        return 0;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const zkit::error& e) {
        std::cerr << e.what() << "\n";
        return e.exit_class();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
