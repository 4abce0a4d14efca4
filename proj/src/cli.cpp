#include "mixcast/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "mixcast/analysis.hpp"
#include "mixcast/broadcasting.hpp"
#include "mixcast/decomposition.hpp"
#include "mixcast/errors.hpp"
#include "mixcast/report.hpp"
#include "mixcast/verification.hpp"

namespace mixcast::cli {

namespace {

std::string fmt(double v) { return format_double(v); }

std::vector<double> default_c0_grid() { return parse_grid("0:1:0.1"); }

Variant parse_variant(const std::string& name) {
    if (name == "tag-preserving") return Variant::kTagPreserving;
    if (name == "symmetrized") return Variant::kSymmetrized;
    throw std::invalid_argument("unknown variant '" + name + "'");
}

double parse_c0(const std::string& text) {
    const Rational r = Rational::parse(text);
    const double v = r.to_double();
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("c0 must lie in [0,1]");
    return v;
}

struct Check {
    std::string name;
    double observed = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    bool boolean_check = false;  // observed/tolerance not meaningful
};

void append_checks_json(JsonWriter& w, const std::vector<Check>& checks) {
    w.begin_array("checks");
    for (const Check& c : checks) {
        w.begin_object_in_array();
        w.field("name", c.name);
        if (!c.boolean_check) {
            w.field("observed", c.observed);
            w.field("tolerance", c.tolerance);
        }
        w.field("pass", c.pass);
        w.end_object();
    }
    w.end_array();
}

bool all_pass(const std::vector<Check>& checks) {
    for (const Check& c : checks) {
        if (!c.pass) return false;
    }
    return true;
}

// ---------------------------------------------------------------- decompose

int run_decompose(const RunConfig& config, std::ostream& out) {
    const int n = config.n;
    if (config.exact) {
        const Rational c0 = Rational::parse(config.c0_text.empty() ? "1" : config.c0_text);
        const ExactDecomposition dec = decompose_tensor_power_exact(c0, n, config.max_qubits);
        const bool sum_ok = dec.weight_sum().is_one();
        const bool rebuilt_ok = verification::exact_reconstruction_identity(c0, n);
        if (config.format == Format::kCsv) {
            CsvWriter csv({"m", "alpha", "weight"});
            for (const auto& [w, label] : dec.terms) {
                csv.row({std::to_string(label.m), std::to_string(label.alpha), w.to_string()});
            }
            out << csv.str();
        } else {
            JsonWriter w;
            w.begin_object();
            w.field("command", "decompose");
            w.raw_field("parameters", [&] {
                JsonWriter p;
                p.begin_object();
                p.field("n", static_cast<std::int64_t>(n));
                p.field("c0", c0.to_string());
                p.field("exact", true);
                p.end_object();
                return p.str();
            }());
            w.begin_array("results");
            for (const auto& [weight, label] : dec.terms) {
                w.begin_object_in_array();
                w.field("m", static_cast<std::int64_t>(label.m));
                w.field("alpha", static_cast<std::int64_t>(label.alpha));
                w.field("weight", weight.to_string());
                w.end_object();
            }
            w.end_array();
            w.begin_array("checks");
            w.begin_object_in_array().field("name", "weight_sum_is_one").field("pass", sum_ok).end_object();
            w.begin_object_in_array()
                .field("name", "exact_reconstruction_identity")
                .field("pass", rebuilt_ok)
                .end_object();
            w.end_array();
            w.field("tool_version", kToolVersion);
            w.end_object();
            out << w.str() << "\n";
        }
        return (sum_ok && rebuilt_ok) ? 0 : 1;
    }

    const double c0 = parse_c0(config.c0_text.empty() ? "1" : config.c0_text);
    const MixedQubit q(c0);
    const Decomposition dec = decompose_tensor_power(q, n, config.max_qubits);
    std::vector<Check> checks;
    checks.push_back({"weight_sum", std::abs(dec.weight_sum() - 1.0), 1e-12,
                      std::abs(dec.weight_sum() - 1.0) <= 1e-12});
    if (n <= 8) {
        const double frob = frobenius_distance(tensor_power(q, n), reconstruct(dec));
        checks.push_back({"reconstruction_frobenius", frob, 1e-12, frob <= 1e-12});
    }

    if (config.format == Format::kCsv) {
        CsvWriter csv({"m", "alpha", "weight"});
        for (const auto& [weight, label] : dec.terms) {
            csv.row({std::to_string(label.m), std::to_string(label.alpha), fmt(weight)});
        }
        out << csv.str();
    } else {
        JsonWriter w;
        w.begin_object();
        w.field("command", "decompose");
        w.raw_field("parameters", [&] {
            JsonWriter p;
            p.begin_object();
            p.field("n", static_cast<std::int64_t>(n));
            p.field("c0", c0);
            p.field("exact", false);
            p.end_object();
            return p.str();
        }());
        w.begin_array("results");
        for (const auto& [weight, label] : dec.terms) {
            w.begin_object_in_array();
            w.field("m", static_cast<std::int64_t>(label.m));
            w.field("alpha", static_cast<std::int64_t>(label.alpha));
            w.field("weight", weight);
            w.end_object();
        }
        w.end_array();
        append_checks_json(w, checks);
        w.field("tool_version", kToolVersion);
        w.end_object();
        out << w.str() << "\n";
    }
    return all_pass(checks) ? 0 : 1;
}

// ---------------------------------------------------------------- broadcast

int run_broadcast(const RunConfig& config, std::ostream& out) {
    const double c0 = parse_c0(config.c0_text.empty() ? "1" : config.c0_text);
    const MixedQubit q(c0);
    const Variant variant = parse_variant(config.variant);
    const BranchEnsemble ensemble = broadcast_density(q, config.n, config.m_out, variant);
    const DensityOperator marginal = ensemble.single_marginal(0);

    std::vector<Check> checks;
    const double prob_defect = std::abs(ensemble.probability_sum() - 1.0);
    checks.push_back({"probability_sum", prob_defect, 1e-12, prob_defect <= 1e-12});
    const double trace_defect = std::abs(marginal.trace() - cplx{1.0, 0.0});
    checks.push_back({"marginal_trace", trace_defect, 1e-12, trace_defect <= 1e-12});

    if (config.format == Format::kCsv) {
        CsvWriter csv({"input_m", "k", "out_weight", "out_alpha", "probability"});
        for (const Branch& b : ensemble.branches) {
            csv.row({std::to_string(b.state_label.m - b.ancilla.k), std::to_string(b.ancilla.k),
                     std::to_string(b.state_label.m), std::to_string(b.state_label.alpha),
                     fmt(b.probability)});
        }
        out << csv.str();
        return all_pass(checks) ? 0 : 1;
    }

    JsonWriter v;
    v.begin_object();
    v.field("command", "broadcast");
    v.raw_field("parameters", [&] {
        JsonWriter p;
        p.begin_object();
        p.field("n", static_cast<std::int64_t>(config.n));
        p.field("m_out", static_cast<std::int64_t>(config.m_out));
        p.field("c0", c0);
        p.field("variant", config.variant);
        p.end_object();
        return p.str();
    }());
    v.raw_field("results", [&] {
        JsonWriter r;
        r.begin_object();
        r.field("branch_count", static_cast<std::int64_t>(ensemble.branches.size()));
        r.begin_array("branches");
        for (const Branch& b : ensemble.branches) {
            r.begin_object_in_array();
            r.field("input_m", static_cast<std::int64_t>(b.state_label.m - b.ancilla.k));
            r.field("k", static_cast<std::int64_t>(b.ancilla.k));
            r.field("out_weight", static_cast<std::int64_t>(b.state_label.m));
            r.field("out_alpha", static_cast<std::int64_t>(b.state_label.alpha));
            r.field("ancilla_alpha", static_cast<std::int64_t>(b.ancilla.alpha));
            r.field("probability", b.probability);
            r.end_object();
        }
        r.end_array();
        r.raw_field("marginal", [&] {
            JsonWriter m;
            m.begin_object();
            m.field("up_up", marginal.matrix[0].real());
            m.field("up_down_re", marginal.matrix[1].real());
            m.field("up_down_im", marginal.matrix[1].imag());
            m.field("down_down", marginal.matrix[3].real());
            m.end_object();
            return m.str();
        }());
        r.end_object();
        return r.str();
    }());
    append_checks_json(v, checks);
    v.field("tool_version", kToolVersion);
    v.end_object();
    out << v.str() << "\n";
    return all_pass(checks) ? 0 : 1;
}

// ------------------------------------------------------------------- shrink

int run_shrink(const RunConfig& config, std::ostream& out) {
    const Variant variant = parse_variant(config.variant);

    if (config.exact) {
        const Rational c0 = Rational::parse(config.c0_text.empty() ? "1" : config.c0_text);
        const bool identity_ok = verification::exact_shrink_identity(c0, config.n, config.m_out);
        const Rational eta = optimal_eta_exact(config.n, config.m_out);
        if (config.format == Format::kCsv) {
            CsvWriter csv({"n", "m_out", "c0", "eta", "identity_pass"});
            csv.row({std::to_string(config.n), std::to_string(config.m_out), c0.to_string(),
                     eta.to_string(), identity_ok ? "true" : "false"});
            out << csv.str();
        } else {
            JsonWriter w;
            w.begin_object();
            w.field("command", "shrink");
            w.raw_field("parameters", [&] {
                JsonWriter p;
                p.begin_object();
                p.field("n", static_cast<std::int64_t>(config.n));
                p.field("m_out", static_cast<std::int64_t>(config.m_out));
                p.field("c0", c0.to_string());
                p.field("variant", config.variant);
                p.field("exact", true);
                p.end_object();
                return p.str();
            }());
            w.raw_field("results", [&] {
                JsonWriter r;
                r.begin_object();
                r.field("eta", eta.to_string());
                r.field("eta_double", eta.to_double());
                r.end_object();
                return r.str();
            }());
            w.begin_array("checks");
            w.begin_object_in_array()
                .field("name", "exact_scalar_relation")
                .field("pass", identity_ok)
                .end_object();
            w.end_array();
            w.field("tool_version", kToolVersion);
            w.end_object();
            out << w.str() << "\n";
        }
        return identity_ok ? 0 : 1;
    }

    const double c0 = parse_c0(config.c0_text.empty() ? "1" : config.c0_text);
    const MixedQubit q(c0);
    const bool degenerate = std::abs(q.bloch_r()) <= 1e-9;

    double eta = std::numeric_limits<double>::quiet_NaN();
    double residual = 0.0;
    double i2_deviation = 0.0;
    if (degenerate) {
        // eta is unidentifiable at r = 0; check the scalar form directly.
        const DensityOperator marginal =
            broadcast_density(q, config.n, config.m_out, variant).single_marginal(0);
        i2_deviation = std::abs(marginal.matrix[0] - cplx{0.5, 0.0});
        i2_deviation = std::max(i2_deviation, std::abs(marginal.matrix[3] - cplx{0.5, 0.0}));
        i2_deviation = std::max(i2_deviation, std::abs(marginal.matrix[1]));
        i2_deviation = std::max(i2_deviation, std::abs(marginal.matrix[2]));
    } else {
        const ShrinkReport report = shrink_via_pipeline(q, config.n, config.m_out, variant);
        eta = report.eta;
        residual = report.residual;
    }
    const double bound = optimal_eta(config.n, config.m_out);

    std::vector<Check> checks;
    if (degenerate) {
        checks.push_back({"marginal_is_maximally_mixed", i2_deviation, 1e-12, i2_deviation <= 1e-12});
    } else {
        checks.push_back({"eta_matches_optimal", std::abs(eta - bound), config.tolerance,
                          std::abs(eta - bound) <= config.tolerance});
        checks.push_back({"scalar_form_residual", residual, config.tolerance,
                          residual <= config.tolerance});
    }

    if (config.format == Format::kCsv) {
        CsvWriter csv({"n", "m_out", "c0", "variant", "eta", "optimal_eta", "residual"});
        csv.row({std::to_string(config.n), std::to_string(config.m_out), fmt(c0), config.variant,
                 fmt(eta), fmt(bound), fmt(residual)});
        out << csv.str();
        return all_pass(checks) ? 0 : 1;
    }

    JsonWriter w;
    w.begin_object();
    w.field("command", "shrink");
    w.raw_field("parameters", [&] {
        JsonWriter p;
        p.begin_object();
        p.field("n", static_cast<std::int64_t>(config.n));
        p.field("m_out", static_cast<std::int64_t>(config.m_out));
        p.field("c0", c0);
        p.field("variant", config.variant);
        p.field("exact", false);
        p.end_object();
        return p.str();
    }());
    w.raw_field("results", [&] {
        JsonWriter r;
        r.begin_object();
        r.field("degenerate", degenerate);
        r.field("eta", eta);
        r.field("optimal_eta", bound);
        r.field("residual", residual);
        if (degenerate) r.field("i2_deviation", i2_deviation);
        r.end_object();
        return r.str();
    }());
    append_checks_json(w, checks);
    w.field("tool_version", kToolVersion);
    w.end_object();
    out << w.str() << "\n";
    return all_pass(checks) ? 0 : 1;
}

// ---------------------------------------------------------- superbroadcast

int run_superbroadcast(const RunConfig& config, std::ostream& out) {
    const SuperbroadcastReport report = superbroadcast_eta(config.r, config.n, config.m_out);
    const double route_gap = std::abs(
        report.eta_double_prime -
        verification::superbroadcast_eta_triple_sum(config.r, config.n, config.m_out));

    std::vector<Check> checks;
    const double prob_defect = std::abs(report.c0pp + report.c1pp - 1.0);
    checks.push_back({"c0pp_plus_c1pp", prob_defect, 1e-12, prob_defect <= 1e-12});
    checks.push_back({"summation_route_gap", route_gap, 1e-12, route_gap <= 1e-12});

    if (config.format == Format::kCsv) {
        CsvWriter csv({"n", "m_out", "r", "eta", "eta_pure_bound", "c0pp", "c1pp", "r_double_prime"});
        csv.row({std::to_string(config.n), std::to_string(config.m_out), fmt(report.r),
                 fmt(report.eta_double_prime), fmt(report.eta_pure_bound), fmt(report.c0pp),
                 fmt(report.c1pp), fmt(report.r_double_prime)});
        out << csv.str();
        return all_pass(checks) ? 0 : 1;
    }

    JsonWriter w;
    w.begin_object();
    w.field("command", "superbroadcast");
    w.raw_field("parameters", [&] {
        JsonWriter p;
        p.begin_object();
        p.field("n", static_cast<std::int64_t>(config.n));
        p.field("m_out", static_cast<std::int64_t>(config.m_out));
        p.field("r", config.r);
        p.end_object();
        return p.str();
    }());
    w.raw_field("results", [&] {
        JsonWriter r;
        r.begin_object();
        r.field("eta", report.eta_double_prime);
        r.field("eta_pure_bound", report.eta_pure_bound);
        r.field("c0pp", report.c0pp);
        r.field("c1pp", report.c1pp);
        r.field("r_double_prime", report.r_double_prime);
        r.end_object();
        return r.str();
    }());
    append_checks_json(w, checks);
    w.field("tool_version", kToolVersion);
    w.end_object();
    out << w.str() << "\n";
    return all_pass(checks) ? 0 : 1;
}

// ------------------------------------------------------------------ compare

int run_compare(const RunConfig& config, std::ostream& out) {
    const std::vector<double> c0_grid =
        config.c0_grid.empty() ? default_c0_grid() : config.c0_grid;
    const std::vector<double> r_grid =
        config.r_grid.empty() ? parse_grid("0.1:1:0.1") : config.r_grid;
    const auto rows = compare_schemes(config.n, config.m_out, c0_grid, r_grid);

    if (config.format == Format::kCsv) {
        CsvWriter csv({"scheme", "parameter", "value", "eta", "residual"});
        for (const SchemeRow& row : rows) {
            csv.row({row.scheme, row.parameter, fmt(row.value), fmt(row.eta), fmt(row.residual)});
        }
        out << csv.str();
        return 0;
    }

    JsonWriter w;
    w.begin_object();
    w.field("command", "compare");
    w.raw_field("parameters", [&] {
        JsonWriter p;
        p.begin_object();
        p.field("n", static_cast<std::int64_t>(config.n));
        p.field("m_out", static_cast<std::int64_t>(config.m_out));
        p.field("optimal_eta", optimal_eta(config.n, config.m_out));
        p.end_object();
        return p.str();
    }());
    w.begin_array("results");
    for (const SchemeRow& row : rows) {
        w.begin_object_in_array();
        w.field("scheme", row.scheme);
        w.field("parameter", row.parameter);
        w.field("value", row.value);
        w.field("eta", row.eta);
        w.field("residual", row.residual);
        w.end_object();
    }
    w.end_array();
    w.begin_array("checks");
    w.end_array();
    w.field("tool_version", kToolVersion);
    w.end_object();
    out << w.str() << "\n";
    return 0;
}

// ------------------------------------------------------------------- verify

int run_verify(const RunConfig& config, std::ostream& out) {
    const int n = config.n;
    const int m_out = config.m_out;
    if (n > 6 || m_out > 10) {
        throw std::invalid_argument(
            "verify: the dense double-route checks are limited to n <= 6, m-out <= 10");
    }
    const double tol = config.tolerance;
    std::vector<Check> checks;
    const auto push = [&](const std::string& name, double observed, double tolerance) {
        checks.push_back({name, observed, tolerance, observed <= tolerance});
    };
    const auto push_bool = [&](const std::string& name, bool ok) {
        checks.push_back({name, 0.0, 0.0, ok, true});
    };

    push("tagged_gram_identity", verification::tagged_gram_deviation(n), 1e-12);
    push("reconstruction", verification::reconstruction_deviation(n, default_c0_grid()), 1e-12);
    push("orthogonality_audit", orthogonality_audit(n).max_violation, 1e-12);

    const BetaTable beta(n, m_out);
    double beta_defect = 0.0;
    for (int m = 0; m <= n; ++m) {
        beta_defect = std::max(beta_defect, std::abs(beta.row_square_sum(m) - 1.0));
    }
    push("beta_row_normalization", beta_defect, 1e-12);

    const UpsilonTable upsilon(n, m_out);
    double upsilon_defect = 0.0;
    for (int two_m = -n; two_m <= n; two_m += 2) {
        upsilon_defect = std::max(upsilon_defect, std::abs(upsilon.row_square_sum(two_m) - 1.0));
    }
    push("upsilon_row_normalization", upsilon_defect, 1e-12);

    push("isometry_gram_identity", verification::isometry_gram_deviation(n, m_out), 1e-12);
    push("marginal_alpha_independence", verification::marginal_alpha_independence_deviation(n),
         1e-12);
    push("variant_marginal_equality",
         verification::variant_marginal_gap(n, m_out, {0.0, 0.3, 0.7, 1.0}), 1e-12);
    push("channel_consistency",
         verification::channel_consistency_deviation(MixedQubit(0.7), n, m_out), 1e-12);

    const UniversalityScan scan = universality_scan(n, m_out, default_c0_grid());
    push("universality_eta_deviation", scan.max_eta_deviation, tol);
    push("universality_residual", scan.max_residual, tol);
    push("universality_degenerate_marginal", scan.max_degenerate_deviation, 1e-12);

    const SuperbroadcastReport pure = superbroadcast_eta(1.0, n, m_out);
    push("superbroadcast_pure_limit", std::abs(pure.eta_double_prime - pure.eta_pure_bound), 1e-12);
    double route_gap = 0.0;
    for (int i = 1; i <= 9; ++i) {
        const double r = i / 10.0;
        route_gap = std::max(route_gap,
                             std::abs(superbroadcast_eta(r, n, m_out).eta_double_prime -
                                      verification::superbroadcast_eta_triple_sum(r, n, m_out)));
    }
    push("superbroadcast_route_gap", route_gap, 1e-12);
    push_bool("sector_dimension_checksum", verification::sector_dimension_checksum(n));

    if (config.exact) {
        bool recon_ok = true;
        bool shrink_ok = true;
        for (int i = 0; i <= 10; ++i) {
            const Rational c0(i, 10);
            recon_ok = recon_ok && verification::exact_reconstruction_identity(c0, n);
            shrink_ok = shrink_ok && verification::exact_shrink_identity(c0, n, m_out);
        }
        push_bool("exact_reconstruction_identity", recon_ok);
        push_bool("exact_scalar_relation", shrink_ok);
        push_bool("exact_beta_row_normalization", verification::exact_beta_rows_normalized(n, m_out));
        push_bool("exact_upsilon_row_normalization",
                  verification::exact_upsilon_rows_normalized(n, m_out));
    }

    if (config.format == Format::kCsv) {
        CsvWriter csv({"check", "observed", "tolerance", "pass"});
        for (const Check& c : checks) {
            csv.row({c.name, c.boolean_check ? "" : fmt(c.observed),
                     c.boolean_check ? "" : fmt(c.tolerance), c.pass ? "true" : "false"});
        }
        out << csv.str();
        return all_pass(checks) ? 0 : 1;
    }

    JsonWriter w;
    w.begin_object();
    w.field("command", "verify");
    w.raw_field("parameters", [&] {
        JsonWriter p;
        p.begin_object();
        p.field("n", static_cast<std::int64_t>(n));
        p.field("m_out", static_cast<std::int64_t>(m_out));
        p.field("tolerance", tol);
        p.field("exact", config.exact);
        p.end_object();
        return p.str();
    }());
    w.raw_field("results", [&] {
        JsonWriter r;
        r.begin_object();
        r.field("all_pass", all_pass(checks));
        r.field("check_count", static_cast<std::int64_t>(checks.size()));
        r.end_object();
        return r.str();
    }());
    append_checks_json(w, checks);
    w.field("tool_version", kToolVersion);
    w.end_object();
    out << w.str() << "\n";
    return all_pass(checks) ? 0 : 1;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> values;
    if (text.empty()) return values;
    if (text.find(':') != std::string::npos) {
        std::istringstream in(text);
        std::string a, b, s;
        std::getline(in, a, ':');
        std::getline(in, b, ':');
        std::getline(in, s, ':');
        if (s.empty()) throw std::invalid_argument("grid range needs start:end:step");
        const double start = std::stod(a);
        const double end = std::stod(b);
        const double step = std::stod(s);
        if (step <= 0.0) throw std::invalid_argument("grid step must be positive");
        for (int i = 0;; ++i) {
            const double v = start + i * step;
            if (v > end + step * 1e-9) break;
            values.push_back(v);
        }
        return values;
    }
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) values.push_back(std::stod(item));
    }
    return values;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        switch (config.command) {
            case Command::kDecompose: return run_decompose(config, out);
            case Command::kBroadcast: return run_broadcast(config, out);
            case Command::kShrink: return run_shrink(config, out);
            case Command::kSuperbroadcast: return run_superbroadcast(config, out);
            case Command::kCompare: return run_compare(config, out);
            case Command::kVerify: return run_verify(config, out);
        }
        err << "error: unknown command\n";
        return 2;
    } catch (const SizeLimitError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const DegenerateInputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::overflow_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"N-to-M universal broadcasting of identical mixed qubits"};
    app.require_subcommand(1);

    RunConfig config;
    if (const char* env = std::getenv("MIXCAST_MAX_QUBITS")) {
        try {
            config.max_qubits = std::stoi(env);
        } catch (const std::exception&) {
            err << "error: MIXCAST_MAX_QUBITS is not an integer\n";
            return 2;
        }
    }

    std::string format = "json";
    std::string c0_grid_text;
    std::string r_grid_text;

    const auto add_common = [&](CLI::App* sub, bool needs_m_out) {
        sub->add_option("--n", config.n, "number of identical input qubits")->required();
        if (needs_m_out) {
            sub->add_option("--m-out", config.m_out, "number of output qubits")->required();
        }
        sub->add_option("--format", format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--max-qubits", config.max_qubits, "dense-operator ceiling");
    };

    CLI::App* decompose = app.add_subcommand("decompose", "phase-tagged decomposition of rho^N");
    add_common(decompose, false);
    decompose->add_option("--c0", config.c0_text, "up probability (decimal or p/q)")->required();
    decompose->add_flag("--exact", config.exact, "exact rational arithmetic");

    CLI::App* broadcast = app.add_subcommand("broadcast", "apply the N->M broadcasting channel");
    add_common(broadcast, true);
    broadcast->add_option("--c0", config.c0_text)->required();
    broadcast->add_option("--variant", config.variant)
        ->check(CLI::IsMember({"tag-preserving", "symmetrized"}));

    CLI::App* shrink = app.add_subcommand("shrink", "extract the shrinking factor");
    add_common(shrink, true);
    shrink->add_option("--c0", config.c0_text)->required();
    shrink->add_option("--variant", config.variant)
        ->check(CLI::IsMember({"tag-preserving", "symmetrized"}));
    shrink->add_option("--tolerance", config.tolerance);
    shrink->add_flag("--exact", config.exact);

    CLI::App* super = app.add_subcommand("superbroadcast", "closed-form superbroadcasting curve");
    add_common(super, true);
    super->add_option("--r", config.r, "input Bloch parameter in (0,1]")->required();

    CLI::App* compare = app.add_subcommand("compare", "tabulate all schemes");
    add_common(compare, true);
    compare->add_option("--c0-grid", c0_grid_text, "range a:b:s or comma list");
    compare->add_option("--r-grid", r_grid_text, "range a:b:s or comma list");

    CLI::App* verify = app.add_subcommand("verify", "run the invariant suite");
    add_common(verify, true);
    verify->add_option("--tolerance", config.tolerance);
    verify->add_flag("--exact", config.exact);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    if (decompose->parsed()) config.command = Command::kDecompose;
    if (broadcast->parsed()) config.command = Command::kBroadcast;
    if (shrink->parsed()) config.command = Command::kShrink;
    if (super->parsed()) config.command = Command::kSuperbroadcast;
    if (compare->parsed()) config.command = Command::kCompare;
    if (verify->parsed()) config.command = Command::kVerify;
    config.format = (format == "csv") ? Format::kCsv : Format::kJson;
    try {
        if (!c0_grid_text.empty()) config.c0_grid = parse_grid(c0_grid_text);
        if (!r_grid_text.empty()) config.r_grid = parse_grid(r_grid_text);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    return run(config, out, err);
}

}  // namespace mixcast::cli
