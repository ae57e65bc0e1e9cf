#pragma once

// Command-line front end. All work happens through run_cli so tests can
// drive the tool in process with captured streams.
//
// Exit codes: 0 success, 1 usage or input errors, 2 when the majorant fails
// the log-log integrability gate, 3 when no certificate exists below the
// representable cap, 4 when the verification harness finds a sample whose
// measured sup exceeds its certified bound.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "levcert/domar.hpp"
#include "levcert/grid.hpp"
#include "levcert/harness.hpp"
#include "levcert/majorant.hpp"
#include "levcert/pipeline.hpp"

namespace levcert {

namespace cli_detail {

inline int write_or_stream(const std::string& payload, const std::string& out_path,
                           std::ostream& out, std::ostream& err) {
    if (out_path.empty()) {
        out << payload;
        return 0;
    }
    std::ofstream f(out_path);
    if (!f) {
        err << "error: cannot open output file '" << out_path << "'\n";
        return 1;
    }
    f << payload;
    return 0;
}

inline std::string certificate_csv(const BoundCertificate& c) {
    std::ostringstream os;
    auto row = [&](const std::string& key, double v) {
        os << key << "," << format_sig(v, 12) << "\n";
    };
    os << "key,value\n";
    row("n", static_cast<double>(c.spec.n));
    row("R", c.spec.R);
    row("H", c.spec.H);
    row("eps", c.spec.eps);
    row("stage_count", static_cast<double>(c.stages.size()));
    row("domar_C", c.domar.C);
    row("domar_sum_value", c.domar.sum_value);
    row("domar_tail_bound", c.domar.tail_bound);
    row("domar_i_max", static_cast<double>(c.domar.i_max));
    row("domar_distance", c.domar.distance);
    row("log_bound", c.log_bound);
    os << "final_bound," << (c.overflow ? "inf" : format_sig(c.final_bound, 12)) << "\n";
    return os.str();
}

struct RegistryError {
    std::string message;
};

inline std::vector<HarnessSample> load_registry(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw RegistryError{"cannot open registry file '" + path + "'"};
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw RegistryError{std::string("registry parse failed: ") + e.what()};
    }
    std::vector<HarnessSample> reg;
    try {
        for (const auto& entry : doc.at("samples")) {
            CylinderSpec spec;
            spec.n = entry.at("n").get<int>();
            spec.R = entry.value("R", 1.0);
            spec.H = entry.value("H", 1.0);
            spec.eps = entry.value("eps", 0.5);
            std::map<std::string, double> params;
            if (entry.contains("params"))
                for (const auto& [k, v] : entry.at("params").items())
                    params[k] = v.get<double>();
            HarnessSample s = make_sample(entry.at("family").get<std::string>(), spec, params);
            if (entry.contains("majorant"))
                s.majorant = parse_majorant(entry.at("majorant").get<std::string>(),
                                            s.majorant.height());
            if (entry.contains("name")) s.name = entry.at("name").get<std::string>();
            reg.push_back(std::move(s));
        }
    } catch (const nlohmann::json::exception& e) {
        throw RegistryError{std::string("registry field error: ") + e.what()};
    } catch (const std::invalid_argument& e) {
        throw RegistryError{std::string("registry sample invalid: ") + e.what()};
    }
    if (reg.empty()) throw RegistryError{"registry holds no samples"};
    return reg;
}

inline int cmd_bound(int n, double R, double H, double eps, const std::string& majorant_text,
                     const std::string& format, const std::string& out_path,
                     std::ostream& out, std::ostream& err) {
    CylinderSpec spec{n, R, H, eps};
    Majorant m = parse_majorant(majorant_text, H);
    const BoundCertificate cert = certify_bound(spec, m);
    const std::string payload =
        format == "csv" ? certificate_csv(cert) : certificate_json(cert) + "\n";
    return write_or_stream(payload, out_path, out, err);
}

inline int cmd_check(const std::string& registry_path, int grid_nodes, double tol,
                     std::ostream& out, std::ostream& err) {
    std::vector<HarnessSample> reg =
        registry_path.empty() ? default_registry() : load_registry(registry_path);
    int violations = 0;
    for (const HarnessSample& s : reg) {
        const MembershipReport mem = verify_membership(s);
        const SupEstimate sup = measured_sup(s, grid_nodes);
        const SampleCertificate cert = certificate_for(s);
        const double log_sup = std::log(sup.estimate);
        const double slack = cert.log_bound - log_sup;
        const bool sound = log_sup <= cert.log_bound + tol * std::max(1.0, std::fabs(cert.log_bound));
        const bool pass = mem.ok && sound;
        if (!pass) ++violations;
        out << s.name << ": membership " << (mem.ok ? "ok" : "FAIL")
            << " (residual=" << format_sig(mem.residual_max, 3)
            << ", ratio=" << format_sig(mem.domination_ratio, 12) << ")"
            << ", measured_sup=" << format_sig(sup.estimate, 12)
            << ", log_bound=" << format_sig(cert.log_bound, 12)
            << ", slack=" << format_sig(slack, 6) << ", "
            << (pass ? "sound" : "VIOLATION") << "\n";
    }
    out << "check: " << (reg.size() - violations) << "/" << reg.size() << " sound\n";
    if (violations > 0) {
        err << "error: " << violations << " sample(s) violate their certificates\n";
        return 4;
    }
    return 0;
}

inline int cmd_trace(double c, double b, double C, double x0, double y0, int grid_nodes,
                     const std::string& out_path, std::ostream& out, std::ostream& err) {
    if (!(c > 0.0) || !(b > 0.0) || !(C > 0.0)) {
        err << "error: trace requires c > 0, b > 0, C > 0\n";
        return 1;
    }
    // v = log|f| for the boundary blowup field, in closed form to stay finite
    // arbitrarily close to the singular edge.
    const Grid2D grid = Grid2D::sample(
        [c, b](double x, double y) {
            const double s = b - y;
            return c * s / (x * x + s * s);
        },
        -b, b, -b * (1.0 - 1e-3), b * (1.0 - 1e-3), grid_nodes, grid_nodes, "log_modulus");
    if (!grid.contains(x0, y0)) {
        err << "error: start point lies outside the trace grid\n";
        return 1;
    }
    const Majorant m = Majorant::exp_blowup(1.0, 2.0 * b, c);
    EscapeTrace tr;
    try {
        tr = domar_escape_trace(grid, x0, y0, C, m, b);
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "trace: " << tr.points.size() << " point(s), "
        << (tr.terminated ? "terminated" : (tr.escaped_domain ? "escaped domain" : "halted"))
        << "\n";
    return write_or_stream(trace_csv(tr), out_path, out, err);
}

inline int cmd_curves(const std::string& majorant_text, int n, double R, double H, double eps,
                      const std::string& out_path, std::ostream& out, std::ostream& err) {
    CylinderSpec spec{n, R, H, eps};
    spec.validate();
    Majorant m = parse_majorant(majorant_text, H);
    const LogLogIntegral gate = loglog_integral(m);
    if (!gate.finite) {
        err << "error: no certificate: majorant fails the log-log integrability gate\n";
        return 2;
    }
    std::ostringstream os;
    const Majorant derived = derived_majorant(m, eps);
    const double halfwidth = H - 0.5 * eps;

    os << "t,F\n";
    for (int i = 0; i <= 120; ++i) {
        const double t = 1e-2 * std::pow(10.0, 6.0 * i / 120.0);
        os << format_sig(t, 12) << ","
           << format_sig(distribution(derived, {t, halfwidth}), 12) << "\n";
    }
    os << "\nC,S\n";
    for (int i = 0; i <= 120; ++i) {
        const double C = 1e-2 * std::pow(10.0, 6.0 * i / 120.0);
        const DomarSumResult s = domar_sum(derived, C, halfwidth);
        os << format_sig(C, 12) << "," << format_sig(s.value, 12) << "\n";
    }
    os << "\neps,log_bound\n";
    const double eps_cap = 0.8 * std::min(R, H);
    for (int i = 0; i <= 24; ++i) {
        const double e = eps_cap * std::pow(0.025, 1.0 - i / 24.0);
        CylinderSpec varied = spec;
        varied.eps = e;
        std::string value;
        try {
            value = format_sig(certify_bound(varied, m).log_bound, 12);
        } catch (const no_certificate&) {
            value = "inf";
        }
        os << format_sig(e, 12) << "," << value << "\n";
    }
    return write_or_stream(os.str(), out_path, out, err);
}

inline void append_invocation_log(const std::vector<std::string>& args, int code) {
    const char* path = std::getenv("LEVINSON_CERT_LOG");
    if (path == nullptr || path[0] == '\0') return;
    std::ofstream f(path, std::ios::app);
    if (!f) return;
    f << "levcert";
    for (const std::string& a : args) f << " " << a;
    f << " exit=" << code << "\n";
}

}  // namespace cli_detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"certified sup-norm bounds for majorant-dominated harmonic functions"};
    app.require_subcommand(1);

    int n = 4;
    double R = 1.0, H = 1.0, eps = 0.5;
    std::string majorant_text, format = "json", out_path, registry_path;
    int grid_nodes = 501;
    double tol = 1e-9;

    CLI::App* bound = app.add_subcommand("bound", "compute a bound certificate");
    bound->add_option("--n", n, "ambient dimension")->check(CLI::Range(2, 64));
    bound->add_option("--R", R, "cylinder radius");
    bound->add_option("--H", H, "cylinder half-height");
    bound->add_option("--eps", eps, "margin of the compact target");
    bound->add_option("--majorant", majorant_text, "majorant description")->required();
    bound->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    bound->add_option("--out", out_path, "write output to file");

    CLI::App* check = app.add_subcommand("check", "verify sample certificates");
    check->add_option("--registry", registry_path, "sample registry JSON file");
    check->add_option("--grid", grid_nodes, "sup grid nodes per axis")->check(CLI::Range(11, 20001));
    check->add_option("--tol", tol, "soundness comparison slack");

    double trace_c = 1.0, trace_b = 1.0, trace_C = 6.0, trace_x0 = 0.0, trace_y0 = 0.0;
    int trace_grid = 1001;
    CLI::App* trace = app.add_subcommand("trace", "level-doubling escape trace");
    trace->add_option("--c", trace_c, "blowup field constant");
    trace->add_option("--b", trace_b, "strip halfwidth");
    trace->add_option("--C", trace_C, "starting level")->required();
    trace->add_option("--x0", trace_x0, "start x")->required();
    trace->add_option("--y0", trace_y0, "start y")->required();
    trace->add_option("--grid", trace_grid, "grid nodes per axis")->check(CLI::Range(11, 20001));
    trace->add_option("--out", out_path, "write output to file");

    CLI::App* curves = app.add_subcommand("curves", "distribution, sum, and bound curves");
    curves->add_option("--n", n, "ambient dimension")->check(CLI::Range(2, 64));
    curves->add_option("--R", R, "cylinder radius");
    curves->add_option("--H", H, "cylinder half-height");
    curves->add_option("--eps", eps, "margin of the compact target");
    curves->add_option("--majorant", majorant_text, "majorant description")->required();
    curves->add_option("--out", out_path, "write output to file");

    std::vector<const char*> argv;
    argv.push_back("levcert");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            const int code = app.exit(e, out, err);
            cli_detail::append_invocation_log(args, code);
            return code;
        }
        err << "error: " << e.what() << "\n";
        cli_detail::append_invocation_log(args, 1);
        return 1;
    }

    int code = 0;
    try {
        if (bound->parsed()) {
            code = cli_detail::cmd_bound(n, R, H, eps, majorant_text, format, out_path, out, err);
        } else if (check->parsed()) {
            code = cli_detail::cmd_check(registry_path, grid_nodes, tol, out, err);
        } else if (trace->parsed()) {
            code = cli_detail::cmd_trace(trace_c, trace_b, trace_C, trace_x0, trace_y0,
                                         trace_grid, out_path, out, err);
        } else if (curves->parsed()) {
            code = cli_detail::cmd_curves(majorant_text, n, R, H, eps, out_path, out, err);
        }
    } catch (const levinson_condition_error& e) {
        err << "error: " << e.what() << "\n";
        code = 2;
    } catch (const no_certificate& e) {
        err << "error: " << e.what() << "\n";
        code = 3;
    } catch (const non_summable_tail& e) {
        err << "error: no certificate: " << e.what() << "\n";
        code = 3;
    } catch (const cli_detail::RegistryError& e) {
        err << "error: " << e.message << "\n";
        code = 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        code = 1;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        code = 1;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        code = 1;
    }
    cli_detail::append_invocation_log(args, code);
    return code;
}

}  // namespace levcert
