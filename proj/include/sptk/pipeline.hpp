#pragma once

#include <optional>

#include "sptk/extension.hpp"
#include "sptk/io.hpp"
#include "sptk/metrics.hpp"
#include "sptk/sobolev.hpp"
#include "sptk/trace.hpp"

namespace sptk {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    int n = 1;
    int m = 1;
    double p = 2.0;
    int grid_nodes = 4096;      // nodes per axis
    double box_factor = 10.0;   // truncation box = box_factor * hull(E)
    std::optional<Cube> box;    // explicit box overrides box_factor
    PointSet E;
    std::vector<double> f;      // m = 1 source
    std::optional<JetField> jet;
    int hop_radius = 3;
    unsigned seed = 42;
    std::string out_dir;
    bool inject_negative_weight = false;  // designed-failure hook for the suite

    static ExperimentConfig from_json(const json& j, const std::string& base_dir = "");
    json to_json_obj() const;
    Cube effective_box() const;
};

struct PipelineResult {
    ExperimentConfig cfg;
    Grid grid;
    ScalarField F;
    ScalarField sharp_field;
    ScalarField weight_h;
    bool weight_zero = false;
    double q = 0.0, theta = 0.0;
    double mcshane_L = 0.0;       // Lipschitz constant used in step 4
    double wg_ratio = 0.0;        // measured max delta_q / d_q over checked pairs
    double lip_max_ratio = 0.0;   // max |F(x)-F(y)| / (L d(x,y)) over checked pairs
    bool lip_ok = true;
    double restriction_err = 0.0; // max |F - f| on E
    A1Report a1;
    TraceReport trace;            // I_p(f;E) or N_{m,p}(J)
    SeminormReport seminorm;      // discrete ||F||
    double ratio_seminorm_over_trace = 0.0;
    // jet pipeline extras
    double jet_restriction_err = 0.0;  // max |D^b F - D^b P_x| over E nodes
    double boundary_gap = 0.0;         // max mismatch at the nearest covered nodes
    std::size_t whitney_cubes = 0;
    std::string provenance;
};

PipelineResult run_l1p_pipeline(const ExperimentConfig& cfg);
PipelineResult run_jet_pipeline(const ExperimentConfig& cfg);

struct SuiteRow {
    std::string name;
    std::string status;  // PASS / FAIL / EXPECTED-DIVERGENT
    double measured = 0.0;
    double bound = 0.0;
};

struct SuiteResult {
    std::vector<SuiteRow> rows;
    int exit_code = 0;
};

// Batch property runner: one CSV row per assertion; exit 0 iff no FAIL row.
SuiteResult run_verification_suite(const ExperimentConfig& cfg);
void write_suite_csv(const SuiteResult& res, const std::string& path);

}  // namespace sptk
