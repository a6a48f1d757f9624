// Command-line runner for the extension / trace toolkit.
//
// Subcommands: extend, extend-jet, trace-norm, verify-metric, whitney,
// dd1d, suite. Each takes a JSON config (--config) overridable by flags.
// Exit codes: 0 pass, 1 assertion failure, 2 config error.

#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "sptk/fixtures.hpp"
#include "sptk/pipeline.hpp"

namespace fs = std::filesystem;
using namespace sptk;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir = "out";
    int seed = -1;
    int hop_radius = -1;
    int grid = -1;
    int refine = 0;
};

ExperimentConfig load_config(const CommonOpts& opt) {
    ExperimentConfig cfg;
    if (!opt.config_path.empty()) {
        std::string base = fs::path(opt.config_path).parent_path().string();
        cfg = ExperimentConfig::from_json(json::parse(read_text_file(opt.config_path)), base);
    } else {
        // a minimal default: the canonical two-point problem
        cfg.n = 1;
        cfg.E = PointSet({{0.0}, {1.0}});
        cfg.f = {0.0, 1.0};
    }
    if (opt.seed >= 0) cfg.seed = (unsigned)opt.seed;
    if (opt.hop_radius >= 1) cfg.hop_radius = opt.hop_radius;
    if (opt.grid >= 8) cfg.grid_nodes = opt.grid;
    for (int k = 0; k < opt.refine; ++k) cfg.grid_nodes *= 2;
    if (!opt.out_dir.empty()) cfg.out_dir = opt.out_dir;
    fs::create_directories(cfg.out_dir);
    return cfg;
}

void add_common(CLI::App* sub, CommonOpts& opt) {
    sub->add_option("--config", opt.config_path, "JSON config file");
    sub->add_option("--out", opt.out_dir, "output directory");
    sub->add_option("--seed", opt.seed, "RNG seed");
    sub->add_option("--hop-radius", opt.hop_radius, "geodesic graph hop radius");
    sub->add_option("--grid", opt.grid, "grid nodes per axis");
    sub->add_option("--refine", opt.refine, "double the grid this many times");
}

json pipeline_summary(const PipelineResult& r) {
    json j{{"provenance", r.provenance},
           {"q", r.q},
           {"theta", r.theta},
           {"grid_nodes", r.grid.extents},
           {"restriction_err", r.restriction_err},
           {"mcshane_L", r.mcshane_L},
           {"wg_ratio", r.wg_ratio},
           {"lip_max_ratio", r.lip_max_ratio},
           {"lip_ok", r.lip_ok},
           {"weight_zero", r.weight_zero},
           {"trace_functional", r.trace.functional_value},
           {"trace_tail_bound", r.trace.tail_bound},
           {"seminorm", r.seminorm.seminorm},
           {"ratio_seminorm_over_trace", r.ratio_seminorm_over_trace},
           {"a1_norm", r.a1.norm_estimate},
           {"jet_restriction_err", r.jet_restriction_err},
           {"boundary_gap", r.boundary_gap},
           {"whitney_cubes", r.whitney_cubes}};
    return j;
}

int run_extend(const CommonOpts& opt, bool jet) {
    ExperimentConfig cfg = load_config(opt);
    PipelineResult r = jet ? run_jet_pipeline(cfg) : run_l1p_pipeline(cfg);
    fs::path out(cfg.out_dir);
    write_field_csv(r.F, (out / "extension.csv").string());
    write_field_binary(r.F, (out / "extension.f64").string(), (out / "extension.grid.json").string());
    write_field_csv(r.sharp_field, (out / "sharp.csv").string());
    write_text_file((out / "summary.json").string(), pipeline_summary(r).dump(2));
    std::cout << pipeline_summary(r).dump(2) << "\n";
    bool ok = r.lip_ok && r.restriction_err <= 1e-12 &&
              (jet ? r.jet_restriction_err <= 1e-9 * (1.0 + r.sharp_field.max_abs()) : true);
    return ok ? 0 : 1;
}

int run_trace_norm(const CommonOpts& opt) {
    ExperimentConfig cfg = load_config(opt);
    Grid g = aligned_grid(cfg.E, cfg.effective_box(), cfg.grid_nodes);
    TraceReport rep = cfg.jet ? jet_trace_norm(*cfg.jet, cfg.p, g)
                              : trace_norm_L1p(cfg.f, cfg.E, cfg.p, g);
    fs::path out(cfg.out_dir);
    write_field_csv(rep.sharp_field, (out / "sharp.csv").string());
    json j = to_json(rep, "cli", cfg.seed);
    write_text_file((out / "trace.json").string(), j.dump(2));
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_verify_metric(const CommonOpts& opt) {
    ExperimentConfig cfg = load_config(opt);
    Cube box(Vec(cfg.n, 0.0), 1.0);
    Grid g = Grid::cover(box, cfg.grid_nodes > 256 ? 65 : cfg.grid_nodes);
    double q = cfg.n;
    std::vector<DistanceRow> rows;
    int exit_code = 0;
    for (const auto& nw : a1_weight_fixtures(g)) {
        QuasiMetricSpec spec(nw.w, q);
        GeodesicMetric geo(spec, cfg.hop_radius);
        double worst = 0.0;
        for (std::size_t s = 0; s < g.node_count(); ++s) {
            auto drow = geo.distances_from(s);
            for (std::size_t t = 0; t < g.node_count(); ++t) {
                if (s == t) continue;
                double delta = spec.delta_nodes(s, t);
                if (drow[t] > 0.0) worst = std::max(worst, delta / drow[t]);
                if (rows.size() < 200000) rows.push_back({s, t, delta, drow[t]});
            }
        }
        std::cout << nw.name << ": max delta/d = " << worst << "\n";
        if (!std::isfinite(worst)) exit_code = 1;
    }
    write_distance_csv(rows, (fs::path(cfg.out_dir) / "metric_table.csv").string());
    return exit_code;
}

int run_whitney(const CommonOpts& opt) {
    ExperimentConfig cfg = load_config(opt);
    Cube box = cfg.effective_box();
    int depth = 10;
    WhitneyDecomposition W = whitney_decompose(cfg.E, box, depth);
    write_whitney_csv(W, (fs::path(cfg.out_dir) / "whitney.csv").string());
    bool ok = true;
    for (const auto& q : W.cubes) {
        double d = dist_cube_set(q, cfg.E).dist;
        if (!(q.diam() <= d + kGeomTol && d <= 4.0 * q.diam() + kGeomTol)) ok = false;
    }
    std::cout << "cubes: " << W.cubes.size() << ", collar: " << W.collar.size()
              << ", predicate " << (ok ? "ok" : "VIOLATED") << "\n";
    return ok ? 0 : 1;
}

int run_dd1d(const CommonOpts& opt, int m) {
    ExperimentConfig cfg = load_config(opt);
    if (cfg.n != 1) {
        std::cerr << "dd1d requires n = 1\n";
        return 2;
    }
    std::vector<double> xs;
    for (const auto& p : cfg.E.points) xs.push_back(p[0]);
    auto sup = trace_1d_linf(cfg.f, xs, m, cfg.seed);
    Grid g = aligned_grid(cfg.E, cfg.effective_box(), cfg.grid_nodes);
    auto [fa, fb] = trace_1d_lp(cfg.f, xs, m, cfg.p, g);
    json j{{"sup_linf", sup.value},
           {"sup_windows", sup.window_value},
           {"sup_sampled", sup.sampled_value},
           {"exhaustive", sup.exhaustive},
           {"lp_divided_difference_form", fa},
           {"lp_consecutive_form", fb}};
    write_text_file((fs::path(cfg.out_dir) / "dd1d.json").string(), j.dump(2));
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_suite(const CommonOpts& opt) {
    ExperimentConfig cfg = load_config(opt);
    SuiteResult res = run_verification_suite(cfg);
    write_suite_csv(res, (fs::path(cfg.out_dir) / "suite.csv").string());
    for (const auto& r : res.rows)
        std::cout << r.status << "  " << r.name << "  measured=" << r.measured
                  << " bound=" << r.bound << "\n";
    std::cout << (res.exit_code == 0 ? "suite: all assertions passed\n"
                                     : "suite: FAILURES present\n");
    return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sobolev extension and trace-norm toolkit"};
    app.require_subcommand(1);

    CommonOpts o_extend, o_jet, o_trace, o_metric, o_whitney, o_dd, o_suite;
    int dd_m = 2;

    add_common(app.add_subcommand("extend", "McShane extension pipeline"), o_extend);
    add_common(app.add_subcommand("extend-jet", "Whitney jet extension pipeline"), o_jet);
    add_common(app.add_subcommand("trace-norm", "sharp-maximal trace functionals"), o_trace);
    add_common(app.add_subcommand("verify-metric", "geodesic equivalence tables"), o_metric);
    add_common(app.add_subcommand("whitney", "Whitney decomposition export"), o_whitney);
    auto* dd = app.add_subcommand("dd1d", "1-D divided-difference functionals");
    add_common(dd, o_dd);
    dd->add_option("--m", dd_m, "divided difference order");
    add_common(app.add_subcommand("suite", "batch property verification"), o_suite);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("extend")) return run_extend(o_extend, false);
        if (app.got_subcommand("extend-jet")) return run_extend(o_jet, true);
        if (app.got_subcommand("trace-norm")) return run_trace_norm(o_trace);
        if (app.got_subcommand("verify-metric")) return run_verify_metric(o_metric);
        if (app.got_subcommand("whitney")) return run_whitney(o_whitney);
        if (app.got_subcommand("dd1d")) return run_dd1d(o_dd, dd_m);
        if (app.got_subcommand("suite")) return run_suite(o_suite);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
