#pragma once

#include "sptk/field.hpp"
#include "sptk/polynomial.hpp"

namespace sptk {

// f#(x) = sup over pairs y,z in E of |f(y)-f(z)| / (||x-y|| + ||x-z||);
// exact (E is finite).
double sharp_max_function(const std::vector<double>& f, const PointSet& E, const Vec& x);

struct TraceReport {
    ScalarField sharp_field;
    double functional_value = 0.0;  // I_p or N_{m,p}
    double alt_value = 0.0;         // single-integral variant for jets, else 0
    double p = 0.0;
    Cube truncation_box;
    double tail_bound = 0.0;  // analytic bound on the integral outside the box
};

// I_p(f;E) by midpoint rule over the grid, p > n.
TraceReport trace_norm_L1p(const std::vector<double>& f, const PointSet& E, double p,
                           const Grid& grid);

// J#_E(x): sum over |beta| <= m-1 of the exact pair sup of
// |D^b P_y(y) - D^b P_z(y)| / (||x-y||^(m-|b|) + ||x-z||^(m-|b|)).
double jet_sharp_max(const JetField& J, const Vec& x);

// N_{m,p}(J): sums per-beta L_p norms (the displayed form); alt_value keeps
// the single integral of J#_E. The two differ by at most the number of
// beta terms in either direction.
TraceReport jet_trace_norm(const JetField& J, double p, const Grid& grid);

// sum_i |D^b P_{x_i}(x_i) - D^b P_{y_i}(x_i)|^p / (diam Q_i)^((m-|b|)p-n)
// over pairwise disjoint cubes with x_i, y_i in (gamma Q_i) cap E.
constexpr double kVariationalGamma = 1e4;
double variational_sum(const JetField& J, const std::vector<Cube>& cubes,
                       const std::vector<std::pair<Vec, Vec>>& pairs, const MultiIndex& beta,
                       double p);

// randomized disjoint-packing search maximizing the sum (seeded; a lower
// bound for the true sup)
double variational_search(const JetField& J, const MultiIndex& beta, double p, const Cube& box,
                          Rng& rng, int trials);

// sum_i |G(x_i)-G(y_i)|^p / (diam Q_i)^(p-n) over equal disjoint cubes.
double brudnyi_sum(const ScalarField& G, const std::vector<Cube>& cubes,
                   const std::vector<std::pair<Vec, Vec>>& pairs, double p);

double brudnyi_search(const ScalarField& G, double p, Rng& rng, int trials);

// Divided differences on the real line.
double divided_difference(const std::vector<double>& f, const std::vector<double>& S);
// the symmetric form sum f(x_i) / omega'(x_i)
double divided_difference_omega(const std::vector<double>& f, const std::vector<double>& S);

// Full table over consecutive windows plus an evaluator for arbitrary
// subsets of a sorted 1-D set.
class DividedDifferenceTable {
  public:
    DividedDifferenceTable(std::vector<double> xs, std::vector<double> fs, int m);

    // Delta^k f over the window starting at i (consecutive points)
    double window(int k, std::size_t i) const;
    double subset(const std::vector<std::size_t>& idx) const;
    int order() const { return m_; }
    std::size_t size() const { return xs_.size(); }
    const std::vector<double>& xs() const { return xs_; }
    const std::vector<double>& fs() const { return fs_; }

  private:
    std::vector<double> xs_, fs_;
    int m_;
    std::vector<std::vector<double>> table_;
};

struct Sup1D {
    double value = 0.0;        // best found (exact when exhaustive)
    double window_value = 0.0; // best over consecutive windows
    double sampled_value = 0.0;
    bool exhaustive = false;
};

// sup over (m+1)-subsets of |Delta^m f[S]|; exhaustive for |E| <= 25.
Sup1D trace_1d_linf(const std::vector<double>& f, const std::vector<double>& E, int m,
                    unsigned seed = 42);

// The two displayed 1-D L_p trace functionals (divided-difference form and
// consecutive-difference form), both with exact inner sups.
std::pair<double, double> trace_1d_lp(const std::vector<double>& f, const std::vector<double>& E,
                                      int m, double p, const Grid& grid);

}  // namespace sptk
