// covosc: covariant oscillator toolkit.
//
// Subcommands:
//   sample     density of a state on a centered grid
//   verify     run the full consistency battery with pinned tolerances
//   scan       width laws over a rapidity ladder
//   decompose  rest-frame mode content of a squeezed state
//   parton     longitudinal momentum curve
//
// Exit codes: 0 success, 1 failed checks or numerical guards, 2 usage or
// configuration errors. Output is byte-deterministic for a fixed command
// line: floats are printed with the shortest round-trip representation and
// every computation runs serially in a fixed order.

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "covosc/verify.hpp"

using nlohmann::ordered_json;

namespace {

using namespace covosc;

std::string fmt(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

int ceil_even(double x) {
    int n = static_cast<int>(std::ceil(x));
    return n + (n % 2);
}

struct RunConfig {
    std::string command;
    double eta = 1.0;
    bool eta_set = false;
    std::vector<double> eta_list;
    int n_u = 0;
    int n_t = 0;
    int grid_n = 0;      // 0 = auto
    double extent = 0.0; // 0 = auto
    std::string metric = "mink";
    std::string format = "csv";
    std::string out;
    bool momentum = false;
    int order = 40;
    int x_nodes = 801;
};

ordered_json config_json(const RunConfig& cfg) {
    ordered_json j;
    j["command"] = cfg.command;
    j["eta"] = cfg.eta;
    j["eta_list"] = cfg.eta_list;
    j["n_u"] = cfg.n_u;
    j["n_t"] = cfg.n_t;
    j["grid"] = cfg.grid_n;
    j["extent"] = cfg.extent;
    j["metric"] = cfg.metric;
    j["format"] = cfg.format;
    j["momentum"] = cfg.momentum;
    j["order"] = cfg.order;
    j["x_nodes"] = cfg.x_nodes;
    return j;
}

ordered_json metadata_json() {
    ordered_json j;
    j["version"] = kVersion;
    j["convention_signs"] = {kFourierConvention.s_z, kFourierConvention.s_t};
    return j;
}

int write_output(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
        std::cerr << "error: cannot open output path: " << cfg.out << "\n";
        return 2;
    }
    f << text;
    f.flush();
    if (!f.good()) {
        std::cerr << "error: failed writing output path: " << cfg.out << "\n";
        return 2;
    }
    return 0;
}

std::string csv_safe(std::string s) {
    for (char& c : s) {
        if (c == ',' || c == '\n') c = ';';
    }
    return s;
}

// ---------------------------------------------------------------- sample --

int cmd_sample(const RunConfig& cfg) {
    if (cfg.n_u < 0 || cfg.n_t < 0) {
        std::cerr << "error: invalid state spec: quantum numbers must be non-negative\n";
        return 2;
    }
    const Rapidity eta{cfg.eta};
    require_rapidity_in_range(eta);
    const OscillatorState st{cfg.n_u, cfg.n_t, eta};
    const MomentumState ms{cfg.n_u, cfg.n_t, eta};

    const double wf = std::sqrt(2.0 * std::max(cfg.n_u, cfg.n_t) + 1.0);
    const double c2 = std::cosh(2.0 * cfg.eta);
    // Margin covers the low excited modes too, so a report's grid can seed
    // the full verify battery.
    const double span = (5.26 + wf + 2.5) * std::sqrt(c2);
    const double feature = 1.0 / (std::sqrt(2.0 * c2) * wf);
    const double extent = cfg.extent > 0.0 ? cfg.extent : span;
    int n = cfg.grid_n > 0 ? cfg.grid_n
                           : std::max(256, ceil_even(2.0 * extent / (0.8 * feature)));
    if (cfg.grid_n == 0 && n > 2048) n = 2048;

    GridSpec spec{n, n, extent, extent, cfg.momentum ? Frame::Momentum : Frame::SpaceTime};
    const bool ground = cfg.n_u == 0 && cfg.n_t == 0;
    const Grid2D g = sample(
        [&](double a, double b) {
            double amp;
            if (cfg.momentum) {
                amp = eval_momentum(ms, {a, b});
            } else if (ground) {
                amp = eval_boosted({a, b}, eta);
            } else {
                amp = eval_excited(st, {a, b});
            }
            return amp * amp;
        },
        spec);

    double peak = 0.0, edge = 0.0;
    for (int i = 0; i < g.n_z; ++i) {
        for (int j = 0; j < g.n_t; ++j) {
            const double v = g.at(i, j);
            peak = std::max(peak, v);
            if (i == 0 || j == 0 || i == g.n_z - 1 || j == g.n_t - 1) {
                edge = std::max(edge, v);
            }
        }
    }
    double mass;
    try {
        mass = integrate2d(g);
    } catch (const NumericsError&) {
        // Boundary guard tripped; report the raw sum anyway.
        double s = 0.0, carry = 0.0;
        for (double v : g.values) {
            const double y = v - carry;
            const double t = s + y;
            carry = (t - s) - y;
            s = t;
        }
        mass = s * g.spacing_z() * g.spacing_t();
    }
    const double boundary_ratio = peak > 0.0 ? edge / peak : 0.0;
    const bool resolved =
        g.spacing_z() <= 0.9 * feature && g.spacing_t() <= 0.9 * feature &&
        boundary_ratio <= 1e-10;

    const char* a0 = cfg.momentum ? "q_z" : "z";
    const char* a1 = cfg.momentum ? "q_0" : "t";

    // Echo the grid actually used so the report can seed a later run.
    RunConfig used = cfg;
    used.grid_n = n;
    used.extent = extent;

    ordered_json meta = metadata_json();
    meta["axes"] = {a0, a1};
    meta["mass"] = mass;
    meta["peak_density"] = peak;
    meta["boundary_ratio"] = boundary_ratio;
    meta["resolved"] = resolved;
    meta["quadrant_mass"] = quadrant_concentration(eta);

    if (cfg.format == "json") {
        ordered_json j;
        j["command"] = "sample";
        j["config"] = config_json(used);
        j["grid"] = {{"n_z", g.n_z},
                     {"n_t", g.n_t},
                     {"extent_z", g.extent_z},
                     {"extent_t", g.extent_t},
                     {"frame", frame_name(g.frame)}};
        j["values"] = g.values;
        j["metadata"] = meta;
        return write_output(cfg, j.dump(2) + "\n");
    }
    std::ostringstream os;
    os << a0 << ',' << a1 << ",density\n";
    for (int i = 0; i < g.n_z; ++i) {
        for (int j = 0; j < g.n_t; ++j) {
            os << fmt(g.coord_z(i)) << ',' << fmt(g.coord_t(j)) << ',' << fmt(g.at(i, j))
               << '\n';
        }
    }
    if (!resolved) {
        std::cerr << "warning: grid does not fully resolve the state "
                  << "(boundary ratio " << fmt(boundary_ratio) << ")\n";
    }
    return write_output(cfg, os.str());
}

// ---------------------------------------------------------------- verify --

int cmd_verify(const RunConfig& cfg) {
    VerifyOptions vo;
    vo.metric = (cfg.metric == "pp") ? Metric::PlusPlus : Metric::Minkowski;
    if (!cfg.eta_list.empty()) {
        vo.etas = cfg.eta_list;
    } else if (cfg.eta_set) {
        vo.etas = {cfg.eta};
    }
    if (cfg.grid_n > 0 || cfg.extent > 0.0) {
        const int n = cfg.grid_n > 0 ? cfg.grid_n : 256;
        const double ext = cfg.extent > 0.0 ? cfg.extent : 6.0;
        vo.grid = GridSpec{n, n, ext, ext, Frame::SpaceTime};
    }

    const std::vector<CheckResult> checks = run_verify(vo);
    int failed = 0;
    for (const auto& c : checks) {
        if (!c.pass) {
            ++failed;
            std::cerr << "FAIL " << c.name << " value=" << fmt(c.value)
                      << " tolerance=" << fmt(c.tolerance);
            if (!c.error.empty()) std::cerr << " (" << c.error << ")";
            std::cerr << "\n";
        }
    }

    int rc = 0;
    if (cfg.format == "json") {
        ordered_json j;
        j["command"] = "verify";
        j["config"] = config_json(cfg);
        j["checks"] = ordered_json::array();
        for (const auto& c : checks) {
            ordered_json e;
            e["name"] = c.name;
            e["value"] = c.value;
            e["tolerance"] = c.tolerance;
            e["comparison"] = c.comparison;
            e["pass"] = c.pass;
            if (!c.error.empty()) e["error"] = c.error;
            j["checks"].push_back(std::move(e));
        }
        j["summary"] = {{"total", checks.size()},
                        {"passed", checks.size() - failed},
                        {"failed", failed}};
        ordered_json meta = metadata_json();
        meta["metric"] = cfg.metric;
        j["metadata"] = meta;
        rc = write_output(cfg, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "name,value,tolerance,comparison,pass,error\n";
        for (const auto& c : checks) {
            os << c.name << ',' << fmt(c.value) << ',' << fmt(c.tolerance) << ','
               << (c.comparison == ">=" ? ">=" : "<=") << ',' << (c.pass ? "1" : "0") << ','
               << csv_safe(c.error) << '\n';
        }
        rc = write_output(cfg, os.str());
    }
    if (rc != 0) return rc;
    return failed == 0 ? 0 : 1;
}

// ------------------------------------------------------------------ scan --

int cmd_scan(const RunConfig& cfg) {
    std::vector<double> etas = cfg.eta_list;
    if (etas.empty()) {
        if (cfg.eta_set) {
            etas = {cfg.eta};
        } else {
            etas = {0.0, 0.5, 1.0, 1.5, 2.0};
        }
    }
    const auto rows = width_scan(etas);

    if (cfg.format == "json") {
        ordered_json j;
        j["command"] = "scan";
        j["config"] = config_json(cfg);
        j["rows"] = ordered_json::array();
        for (const auto& r : rows) {
            j["rows"].push_back({{"eta", r.eta},
                                 {"sigma_z", r.sigma_z},
                                 {"sigma_q_z", r.sigma_q_z},
                                 {"sigma_u", r.sigma_u},
                                 {"sigma_v", r.sigma_v},
                                 {"quadrant_mass", r.quadrant_mass}});
        }
        j["metadata"] = metadata_json();
        return write_output(cfg, j.dump(2) + "\n");
    }
    std::ostringstream os;
    os << "eta,sigma_z,sigma_q_z,sigma_u,sigma_v,quadrant_mass\n";
    for (const auto& r : rows) {
        os << fmt(r.eta) << ',' << fmt(r.sigma_z) << ',' << fmt(r.sigma_q_z) << ','
           << fmt(r.sigma_u) << ',' << fmt(r.sigma_v) << ',' << fmt(r.quadrant_mass) << '\n';
    }
    return write_output(cfg, os.str());
}

// ------------------------------------------------------------- decompose --

int cmd_decompose(const RunConfig& cfg) {
    const DecompositionReport rep = decompose(Rapidity{cfg.eta}, cfg.order);
    if (rep.defect_warning) {
        std::cerr << "warning: completeness defect " << fmt(rep.defect) << " at order "
                  << rep.order << "; raise --order\n";
    }

    if (cfg.format == "json") {
        ordered_json j;
        j["command"] = "decompose";
        j["config"] = config_json(cfg);
        j["decomposition"] = {{"eta", rep.eta},
                              {"order", rep.order},
                              {"coefficients", rep.coefficients},
                              {"completeness", rep.completeness},
                              {"defect", rep.defect},
                              {"defect_warning", rep.defect_warning}};
        j["metadata"] = metadata_json();
        return write_output(cfg, j.dump(2) + "\n");
    }
    std::ostringstream os;
    os << "n,coefficient,probability,cumulative\n";
    double cum = 0.0, carry = 0.0;
    for (size_t k = 0; k < rep.coefficients.size(); ++k) {
        const double c = rep.coefficients[k];
        const double y = c * c - carry;
        const double t = cum + y;
        carry = (t - cum) - y;
        cum = t;
        os << k << ',' << fmt(c) << ',' << fmt(c * c) << ',' << fmt(cum) << '\n';
        // Everything after machine-complete cumulative mass is noise.
        if (cum >= 1.0 - 1e-15) break;
    }
    return write_output(cfg, os.str());
}

// ---------------------------------------------------------------- parton --

int cmd_parton(const RunConfig& cfg) {
    const Distribution1D curve = parton_curve(Rapidity{cfg.eta}, cfg.x_nodes);
    const double kurt = excess_kurtosis(curve);

    if (cfg.format == "json") {
        ordered_json j;
        j["command"] = "parton";
        j["config"] = config_json(cfg);
        j["curve"] = {{"axis", curve.axis},
                      {"nodes", curve.nodes},
                      {"density", curve.density}};
        ordered_json meta = metadata_json();
        meta["mean"] = curve.mean;
        meta["variance"] = curve.variance;
        meta["excess_kurtosis"] = kurt;
        meta["window_sigmas"] = 8.0;
        j["metadata"] = meta;
        return write_output(cfg, j.dump(2) + "\n");
    }
    std::ostringstream os;
    os << "x,density\n";
    for (size_t k = 0; k < curve.nodes.size(); ++k) {
        os << fmt(curve.nodes[k]) << ',' << fmt(curve.density[k]) << '\n';
    }
    return write_output(cfg, os.str());
}

// ------------------------------------------------------------------ main --

void apply_config_file(CLI::App* sub, RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw CLI::FileError("config: cannot read " + path);
    }
    nlohmann::json j = nlohmann::json::parse(in);
    // A previous report is itself a valid config carrier.
    if (j.contains("config") && j["config"].is_object()) j = j["config"];

    auto given = [&](const char* flag) {
        return sub->get_option(flag)->count() > 0;
    };
    if (!given("--eta") && j.contains("eta")) {
        cfg.eta = j["eta"].get<double>();
        cfg.eta_set = true;
    }
    if (sub->get_option_no_throw("--eta-list") != nullptr && !given("--eta-list") &&
        j.contains("eta_list")) {
        cfg.eta_list = j["eta_list"].get<std::vector<double>>();
    }
    auto set_int = [&](const char* flag, const char* key, int& target) {
        if (sub->get_option_no_throw(flag) != nullptr && !given(flag) && j.contains(key)) {
            target = j[key].get<int>();
        }
    };
    auto set_double = [&](const char* flag, const char* key, double& target) {
        if (sub->get_option_no_throw(flag) != nullptr && !given(flag) && j.contains(key)) {
            target = j[key].get<double>();
        }
    };
    auto set_string = [&](const char* flag, const char* key, std::string& target) {
        if (sub->get_option_no_throw(flag) != nullptr && !given(flag) && j.contains(key)) {
            target = j[key].get<std::string>();
        }
    };
    set_int("--n-u", "n_u", cfg.n_u);
    set_int("--n-t", "n_t", cfg.n_t);
    set_int("--grid", "grid", cfg.grid_n);
    set_int("--order", "order", cfg.order);
    set_int("--x-nodes", "x_nodes", cfg.x_nodes);
    set_double("--extent", "extent", cfg.extent);
    set_string("--metric", "metric", cfg.metric);
    set_string("--format", "format", cfg.format);
    if (sub->get_option_no_throw("--momentum") != nullptr && !given("--momentum") &&
        j.contains("momentum")) {
        cfg.momentum = j["momentum"].get<bool>();
    }
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    std::string config_path;

    CLI::App app{"covariant oscillator toolkit"};
    app.set_version_flag("--version", std::string("covosc ") + kVersion);
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--eta", cfg.eta, "rapidity of the boost");
        sub->add_option("--format", cfg.format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", cfg.out, "output path (default: stdout)");
        sub->add_option("--config", config_path,
                        "JSON config file; flags take precedence. A previous JSON "
                        "report is accepted (its config member is used)");
        return sub;
    };

    CLI::App* s_sample = add_common(app.add_subcommand("sample", "sample a state's density"));
    s_sample->add_option("--n-u", cfg.n_u, "excitation of the rest-frame z mode");
    s_sample->add_option("--n-t", cfg.n_t, "excitation of the rest-frame t mode");
    s_sample->add_option("--grid", cfg.grid_n, "nodes per axis (even, >= 8)");
    s_sample->add_option("--extent", cfg.extent, "half-width of the grid");
    s_sample->add_flag("--momentum", cfg.momentum, "sample the momentum-space density");

    CLI::App* s_verify = add_common(app.add_subcommand("verify", "run the consistency battery"));
    s_verify->add_option("--eta-list", cfg.eta_list, "rapidities to verify at")
        ->delimiter(',');
    s_verify->add_option("--grid", cfg.grid_n, "explicit grid for the grid-based checks");
    s_verify->add_option("--extent", cfg.extent, "explicit half-width for those grids");
    s_verify->add_option("--metric", cfg.metric, "operator reading: mink or pp")
        ->check(CLI::IsMember({"mink", "pp", "++"}));

    CLI::App* s_scan = add_common(app.add_subcommand("scan", "width laws over rapidities"));
    s_scan->add_option("--eta-list", cfg.eta_list, "rapidity ladder")->delimiter(',');

    CLI::App* s_decompose =
        add_common(app.add_subcommand("decompose", "rest-frame mode content"));
    s_decompose->add_option("--order", cfg.order, "highest mode kept");

    CLI::App* s_parton =
        add_common(app.add_subcommand("parton", "longitudinal momentum curve"));
    s_parton->add_option("--x-nodes", cfg.x_nodes, "points across [-1, 1]");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    cfg.eta_set = sub->get_option("--eta")->count() > 0;

    try {
        if (!config_path.empty()) apply_config_file(sub, cfg, config_path);
        if (cfg.metric == "++") cfg.metric = "pp";
        if (cfg.metric != "mink" && cfg.metric != "pp") {
            std::cerr << "error: metric must be mink or pp\n";
            return 2;
        }
        if (cfg.format != "csv" && cfg.format != "json") {
            std::cerr << "error: format must be csv or json\n";
            return 2;
        }

        if (cfg.command == "sample") return cmd_sample(cfg);
        if (cfg.command == "verify") return cmd_verify(cfg);
        if (cfg.command == "scan") return cmd_scan(cfg);
        if (cfg.command == "decompose") return cmd_decompose(cfg);
        if (cfg.command == "parton") return cmd_parton(cfg);
        std::cerr << "error: unknown command\n";
        return 2;
    } catch (const CLI::FileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericsError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
