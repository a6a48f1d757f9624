#pragma once

#include <string>

#include <json.hpp>

#include "sptk/polynomial.hpp"
#include "sptk/sobolev.hpp"
#include "sptk/trace.hpp"

namespace sptk {

using json = nlohmann::json;

json to_json(const Cube& c);
Cube cube_from_json(const json& j);

json to_json(const PointSet& E);
PointSet pointset_from_json(const json& j);

json to_json(const Grid& g);
Grid grid_from_json(const json& j);

json to_json(const JetField& J);
JetField jetfield_from_json(const json& j);

json to_json(const TraceReport& r, const std::string& corpus_id, unsigned seed);
json to_json(const SeminormReport& r);

// ScalarField: CSV (node index, value), or binary row-major dump with a
// JSON sidecar describing the grid.
void write_field_csv(const ScalarField& f, const std::string& path);
void write_field_binary(const ScalarField& f, const std::string& data_path,
                        const std::string& sidecar_path);
ScalarField read_field_binary(const std::string& data_path, const std::string& sidecar_path);

// WhitneyDecomposition: one cube per row (center coords, half_side, dist to E).
void write_whitney_csv(const WhitneyDecomposition& W, const std::string& path);

// Distance table rows (i, j, delta, d, ratio).
struct DistanceRow {
    std::size_t i, j;
    double delta, d;
};
void write_distance_csv(const std::vector<DistanceRow>& rows, const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace sptk
