#pragma once

#include <map>

#include "sptk/field.hpp"
#include "sptk/metrics.hpp"
#include "sptk/polynomial.hpp"

namespace sptk {

// McShane inf-convolution: F(x) = min over y in E of f(y) + L d(x,y).
// dist_from_E[i] holds the distances from E.points[i] to every grid node
// (E points must sit on grid nodes so that F|_E = f exactly). Throws when f
// is not L-Lipschitz on E, naming the violating pair.
ScalarField mcshane_extend(const std::vector<double>& f, const PointSet& E,
                           const std::vector<std::vector<double>>& dist_from_E,
                           const Grid& grid, double L);

// Convenience wrapper evaluating an arbitrary distance oracle.
ScalarField mcshane_extend(const std::vector<double>& f, const PointSet& E, const Grid& grid,
                           const DistanceOracle& d, double L);

// Lipschitz seminorm of f on E with respect to the tabulated distances.
double lipschitz_seminorm_on_E(const std::vector<double>& f, const PointSet& E,
                               const std::vector<std::vector<double>>& dist_from_E,
                               const Grid& grid);

// Smooth partition of unity subordinate to a Whitney decomposition:
// phi_Q = psi_Q / sum psi, psi_Q the tensor exp-cutoff supported on
// Q* = (9/8) Q.
class PartitionOfUnity {
  public:
    explicit PartitionOfUnity(const WhitneyDecomposition& W);

    const WhitneyDecomposition& decomposition() const { return *W_; }
    std::size_t cube_count() const { return W_->cubes.size(); }

    // cubes whose Q* may contain x
    std::vector<std::size_t> active_cubes(const Vec& x) const;
    bool covered(const Vec& x) const;

    double bump(std::size_t q, const Vec& x) const;        // psi_Q
    double value(std::size_t q, const Vec& x) const;       // phi_Q
    double sum_at(const Vec& x) const;                     // sum phi_Q (1 when covered)
    MultiJet value_jet(std::size_t q, const Vec& x, int order) const;

    // all nonzero bumps at x (cube index, psi-jet) plus their sum
    struct BumpEval {
        std::vector<std::size_t> cubes;
        std::vector<MultiJet> jets;
        MultiJet sum;
    };
    BumpEval bumps_at(const Vec& x, int order) const;

  private:
    const WhitneyDecomposition* W_;
    MultiJet bump_jet(std::size_t q, const Vec& x, int order) const;
};

// Whitney extension of a jet: value plus analytic derivative fields, and a
// per-node tag (0: on E, 1: covered by the partition, 2: collar).
struct WhitneyField {
    ScalarField F;
    std::map<MultiIndex, ScalarField> derivs;
    std::vector<int> tag;
    std::vector<std::size_t> e_node;  // node index of each E point
};

WhitneyField whitney_extend_jet(const JetField& J, const WhitneyDecomposition& W,
                                const PartitionOfUnity& P, const Grid& grid, int deriv_order);

// |D^beta F(x) - D^beta T^m_y[F](x)| / (||x-y||^(m-|beta|) d(x,y));
// 0 at x == y.
double taylor_remainder_check(const SmoothFn& F, const DistanceOracle& d, int m,
                              const MultiIndex& beta, const Vec& x, const Vec& y);

}  // namespace sptk
