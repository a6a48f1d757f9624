#include "sptk/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace sptk {

json to_json(const Cube& c) { return json{{"center", c.center}, {"half_side", c.half_side}}; }

Cube cube_from_json(const json& j) {
    return Cube(j.at("center").get<Vec>(), j.at("half_side").get<double>());
}

json to_json(const PointSet& E) { return json{{"points", E.points}}; }

PointSet pointset_from_json(const json& j) {
    return PointSet(j.at("points").get<std::vector<Vec>>());
}

json to_json(const Grid& g) {
    return json{{"origin", g.origin}, {"spacing", g.spacing}, {"extents", g.extents}};
}

Grid grid_from_json(const json& j) {
    return Grid(j.at("origin").get<Vec>(), j.at("spacing").get<double>(),
                j.at("extents").get<std::vector<int>>());
}

json to_json(const JetField& J) {
    json entries = json::array();
    for (std::size_t i = 0; i < J.E.points.size(); ++i) {
        json coeffs = json::object();
        for (const auto& [a, c] : J.polys[i].coeffs())
            if (c != 0.0) coeffs[mi_to_string(a)] = c;
        entries.push_back({{"point", J.E.points[i]}, {"coeffs", coeffs}});
    }
    return json{{"m", J.m}, {"entries", entries}};
}

JetField jetfield_from_json(const json& j) {
    int m = j.at("m").get<int>();
    std::vector<Vec> pts;
    std::vector<Polynomial> polys;
    for (const auto& e : j.at("entries")) {
        Vec p = e.at("point").get<Vec>();
        Polynomial poly((int)p.size(), m - 1, p);
        for (const auto& [key, val] : e.at("coeffs").items())
            poly.coeff(mi_from_string(key)) = val.get<double>();
        pts.push_back(std::move(p));
        polys.push_back(std::move(poly));
    }
    return JetField(PointSet(pts), m, std::move(polys));
}

json to_json(const TraceReport& r, const std::string& corpus_id, unsigned seed) {
    return json{{"functional", r.functional_value}, {"value", r.functional_value},
                {"alt_value", r.alt_value},         {"p", r.p},
                {"tail_bound", r.tail_bound},       {"corpus_id", corpus_id},
                {"seed", seed},                     {"box", to_json(r.truncation_box)}};
}

json to_json(const SeminormReport& r) {
    return json{{"m", r.m},
                {"p", r.p},
                {"seminorm", r.seminorm},
                {"boundary_margin", r.boundary_margin}};
}

void write_field_csv(const ScalarField& f, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os << "node,value\n" << std::setprecision(17);
    for (std::size_t i = 0; i < f.values.size(); ++i) os << i << "," << f.values[i] << "\n";
}

void write_field_binary(const ScalarField& f, const std::string& data_path,
                        const std::string& sidecar_path) {
    std::ofstream os(data_path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + data_path);
    os.write(reinterpret_cast<const char*>(f.values.data()),
             (std::streamsize)(f.values.size() * sizeof(double)));
    write_text_file(sidecar_path, to_json(f.grid).dump(2));
}

ScalarField read_field_binary(const std::string& data_path, const std::string& sidecar_path) {
    Grid g = grid_from_json(json::parse(read_text_file(sidecar_path)));
    std::ifstream is(data_path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + data_path);
    std::vector<double> v(g.node_count());
    is.read(reinterpret_cast<char*>(v.data()), (std::streamsize)(v.size() * sizeof(double)));
    if (!is) throw std::runtime_error("truncated field dump: " + data_path);
    return ScalarField(g, std::move(v));
}

void write_whitney_csv(const WhitneyDecomposition& W, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    int n = W.truncation_box.dim();
    for (int i = 0; i < n; ++i) os << "c" << i << ",";
    os << "half_side,dist_to_E\n" << std::setprecision(17);
    for (const auto& q : W.cubes) {
        for (int i = 0; i < n; ++i) os << q.center[i] << ",";
        os << q.half_side << "," << dist_cube_set(q, W.source_set).dist << "\n";
    }
}

void write_distance_csv(const std::vector<DistanceRow>& rows, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os << "i,j,delta_q,d_q,ratio\n" << std::setprecision(17);
    for (const auto& r : rows)
        os << r.i << "," << r.j << "," << r.delta << "," << r.d << ","
           << (r.d > 0.0 ? r.delta / r.d : 0.0) << "\n";
}

std::string read_text_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os << content;
}

}  // namespace sptk
