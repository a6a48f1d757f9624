#pragma once

#include <functional>

#include "sptk/field.hpp"
#include "sptk/maximal.hpp"

namespace sptk {

struct DeltaResult {
    double value = 0.0;
    bool truncated = false;  // Q_xy was clipped at the box boundary
};

// delta_q(x,y:h) = ||x-y|| (avg over Q(x,||x-y||) of h^q)^(1/q). The raw
// form is x-centered and not symmetric; graph edges use the max
// symmetrization.
class QuasiMetricSpec {
  public:
    QuasiMetricSpec(WeightField h, double q);

    double q() const { return q_; }
    const WeightField& weight() const { return h_; }
    const Grid& grid() const { return h_.grid(); }
    const PrefixSums& power_sums() const { return ps_; }  // sums of h^q

    DeltaResult delta_full(const Vec& x, const Vec& y) const;
    double delta(const Vec& x, const Vec& y) const { return delta_full(x, y).value; }
    double delta_sym(const Vec& x, const Vec& y) const;
    double delta_nodes(std::size_t i, std::size_t j) const;
    double delta_sym_nodes(std::size_t i, std::size_t j) const;

  private:
    WeightField h_;
    double q_;
    ScalarField wq_;  // h^q samples
    PrefixSums ps_;
};

// phi_q(x,y:w) = ||x-y|| sup over cubes containing x and y of (avg w)^(1/q).
// The sup runs over the shared candidate family plus the two query cubes
// Q(x,||x-y||) and Q(y,||x-y||), so phi >= delta holds for every pair.
class SupForm {
  public:
    SupForm(WeightField w, double q);

    double phi(const Vec& x, const Vec& y) const;
    double q() const { return q_; }
    const Grid& grid() const { return w_.grid(); }

  private:
    WeightField w_;
    double q_;
    PrefixSums ps_;
    std::vector<double> ladder_;
};

double phi_q(const WeightField& w, double q, const Vec& x, const Vec& y);

struct ChainCheck {
    double lhs = 0.0;      // phi(x_0, x_m)
    double rhs_sum = 0.0;  // sum of phi over consecutive pairs
    bool ok = false;       // lhs <= 16 rhs_sum within 1e-12
};

// The 16-constant chain inequality, evaluated against one shared family.
ChainCheck chain_inequality_check(const SupForm& sf, const std::vector<Vec>& chain);
ChainCheck chain_inequality_check(const WeightField& w, double q, const std::vector<Vec>& chain);

// Geodesic regularization of delta_q on the grid graph: nodes are grid
// nodes, edges join pairs within `hop_radius` hops (Chebyshev), weighted by
// the symmetrized delta_q.
class GeodesicMetric {
  public:
    GeodesicMetric(const QuasiMetricSpec& spec, int hop_radius);

    // Dijkstra; distances from one node to all nodes.
    std::vector<double> distances_from(std::size_t source) const;
    double distance(std::size_t a, std::size_t b) const;
    double distance(const Vec& x, const Vec& y) const;

    int hop_radius() const { return hop_radius_; }
    const QuasiMetricSpec& spec() const { return spec_; }
    const Grid& grid() const { return spec_.grid(); }

  private:
    const QuasiMetricSpec& spec_;
    int hop_radius_;
    // CSR adjacency with symmetrized-delta edge weights
    std::vector<std::size_t> row_;
    std::vector<std::size_t> col_;
    std::vector<double> wgt_;
};

double geodesic_dq(const QuasiMetricSpec& spec, const Vec& x, const Vec& y, int hop_radius);

// (delta_s, delta_q) pair for the two-exponent comparison, s <= q.
std::pair<double, double> exponent_comparison(const WeightField& h, double q, double s,
                                              const Vec& x, const Vec& y);

// inf over candidate cubes containing x,y of diam Q (avg h^s)^(1/s).
double inf_cube_distance(const WeightField& h, double q, double s, const Vec& x, const Vec& y);

// Growth profile v_x(t) = t (avg over Q(x,t) h^q)^(1/q) on the radius
// ladder, its monotonicity / doubling flags, and the least concave majorant
// of the sampled knots.
struct ConcaveProfile {
    Vec anchor;
    std::vector<double> t;
    std::vector<double> v;       // sampled v_x
    std::vector<double> omega;   // least concave majorant at the knots
    std::vector<bool> truncatedtag;
    bool monotone = false;
    bool doubling_checked = false;
    bool doubling_ok = false;
    double eta = 0.0;  // A1 norm of h^q used in the doubling bound
};

ConcaveProfile metric_profile(const QuasiMetricSpec& spec, const Vec& x, double eta = -1.0);

// (d(x,z)+d(z,y))/d(x,y) with z snapped to the nearest node of the segment.
using DistanceOracle = std::function<double(const Vec&, const Vec&)>;
double pseudoconvexity_check(const DistanceOracle& d, const Grid& grid, const Vec& x,
                             const Vec& y, const Vec& z);

}  // namespace sptk
