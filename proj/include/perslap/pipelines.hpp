#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "perslap/complex.hpp"
#include "perslap/point_cloud.hpp"
#include "perslap/spectral.hpp"

namespace perslap {

// Spectral summary statistics taken over the full eigenvalue list of one
// Laplacian (zeros included). Sec is the smallest nonzero eigenvalue.
enum class Stat { Sum, Avg, Max, Std, Var, Sec };

Stat parse_stat(const std::string& name); // case-insensitive; throws input_error
std::string stat_name(Stat alpha);
const std::vector<Stat>& all_stats();
double stat_value(const SpectralStats& st, Stat alpha); // missing Sec -> 0

// r_min, r_min + dr, ... up to r_max (inclusive, with float slack of dr/2)
std::vector<double> uniform_schedule(double r_min, double r_max, double dr);

struct SpectralCurve {
    Stat alpha = Stat::Sum;
    int q = 0;
    double dr = 0.0;
    std::vector<double> radii;
    std::vector<double> values;
};

// One statistic of the q-Laplacian spectrum per radius. Radii where the
// complex has no q-simplices (or the statistic is undefined) record 0.
SpectralCurve spectral_curve(const DistanceMatrix& d, const std::vector<double>& schedule,
                             int q, Stat alpha, WeightMode mode = {},
                             bool strict_overlap = false);

struct BettiCurve {
    int q = 0;
    std::vector<double> radii;
    std::vector<int> values;
};

// Nullity of the q-Laplacian per radius (0 where the complex has no
// q-simplices).
BettiCurve betti_curve(const DistanceMatrix& d, const std::vector<double>& schedule,
                       int q, bool strict_overlap = false);

// Negative Riemann sum: -sum_i value_i * dr.
double area_under_curve(const SpectralCurve& c);

// Pearson correlation coefficient; throws domain_error when either input has
// zero variance.
double pearson(const std::vector<double>& x, const std::vector<double>& y);

// Ordinary least squares via the pseudoinverse of the normal matrix, so
// rank-deficient systems still get the minimum-norm solution. X carries its
// own intercept column if one is wanted.
Eigen::VectorXd linear_least_squares(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

struct Structure {
    std::string name;
    PointCloud cloud;
};

struct StabilityModel {
    Stat alpha = Stat::Sum;
    double dr = 0.0;
    std::vector<std::string> names;
    std::vector<double> areas;      // curve area per structure
    std::vector<double> energies;   // targets, aligned with names
    std::vector<double> predictions;
    double intercept = 0.0;
    double slope = 0.0;
    double pearson_r = 0.0; // correlation of areas against energies
};

// Heat-of-formation regression: per structure, integrate the chosen
// statistic of the vertex Laplacian spectrum over a radius grid, then fit
// energies against the areas. When no explicit schedule is given each
// structure uses 0..(diameter/2 + dr) with spacing dr.
StabilityModel fullerene_pipeline(const std::vector<Structure>& structures,
                                  const std::vector<double>& energies, Stat alpha,
                                  double dr = 0.01,
                                  const std::vector<double>* schedule = nullptr);

std::vector<double> default_bfactor_schedule(); // 2, 3, ..., 12

struct BFactorFeatures {
    std::vector<double> radii;
    Eigen::MatrixXd raw;    // one row per point; column r = diag of pinv(L_0 at r)
    Eigen::MatrixXd scaled; // per-column z-score of raw (constant columns -> 0)
    Eigen::VectorXd mean;   // per-column scaling parameters
    Eigen::VectorXd stddev;
};

BFactorFeatures bfactor_features(const PointCloud& cloud,
                                 const std::vector<double>& schedule = default_bfactor_schedule());

struct BFactorModel {
    std::vector<double> radii;
    Eigen::VectorXd mean;    // scaling recorded so predictions are reproducible
    Eigen::VectorXd stddev;
    Eigen::VectorXd weights; // intercept first, then one weight per radius
    Eigen::VectorXd predictions;
    double pearson_r = 0.0;  // predictions vs the experimental targets
};

BFactorModel bfactor_fit(const BFactorFeatures& f, const std::vector<double>& b_exp);

// Applies the model's stored scaling to fresh raw features, then the linear
// combination -- so a fitted model transfers to new clouds unchanged.
Eigen::VectorXd bfactor_predict(const BFactorModel& m, const BFactorFeatures& f);

// Parallelism helpers: worker count from PERSLAP_THREADS (falling back to the
// hardware), and an index-sharded parallel map whose results land in caller
// slots so reductions stay deterministic.
int thread_budget();
void parallel_for(int n, const std::function<void(int)>& fn);

} // namespace perslap
