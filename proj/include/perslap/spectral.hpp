#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "perslap/boundary.hpp"
#include "perslap/complex.hpp"

namespace perslap {

inline constexpr double kDefaultZeroTau = 1e-9;

// Relative zero-eigenvalue rule: lambda counts as zero iff
// lambda <= tau * max(1, lambda_max).
struct ZeroTolerance {
    double tau = kDefaultZeroTau;
    double threshold(double lambda_max) const {
        return tau * (lambda_max > 1.0 ? lambda_max : 1.0);
    }
};

struct SpectralStats {
    double sum = 0, avg = 0, max = 0, std_dev = 0, var = 0;
    std::optional<double> sec; // smallest nonzero eigenvalue; absent for zero spectra
};

// Sorted eigenvalue list of a (persistent) Laplacian with its zero rule and
// the derived harmonic/non-harmonic quantities. The nullity of a Laplacian
// is the (persistent) Betti number; the nonzero part carries the geometry.
class Spectrum {
public:
    Spectrum(Eigen::VectorXd ascending, double tau = kDefaultZeroTau);

    const Eigen::VectorXd& eigenvalues() const { return eig_; }
    int size() const { return static_cast<int>(eig_.size()); }
    double tau() const { return tol_.tau; }
    double zero_threshold() const;

    int nullity() const;
    std::optional<double> smallest_nonzero() const;
    // Statistics over the full eigenvalue list, zeros included; variance is
    // the population variance; sec is the smallest nonzero eigenvalue.
    SpectralStats stats() const;

private:
    Eigen::VectorXd eig_;
    ZeroTolerance tol_;
};

// Full ascending spectrum of a symmetric matrix (orthogonal-similarity
// tridiagonal reduction). Rejects inputs that are asymmetric beyond 1e-9
// relative to their magnitude.
Eigen::VectorXd eigvalsh(const Eigen::MatrixXd& m);

// How the upper product term of a persistent Laplacian treats the later
// snapshot's extra (q+1)-simplices. Truncated keeps one column per
// (q+1)-simplex of K_{t+p} with rows outside K_t dropped -- this is the
// construction all reference table spectra follow. Kernel first restricts to
// the subspace of chains whose boundary stays in K_t (the operator-level
// definition); its nullity provably equals the persistent Betti number,
// which the truncated variant can undercount on adversarial geometries.
enum class PersistenceRule { Truncated, Kernel };

struct Laplacian {
    Eigen::MatrixXd m;
    std::vector<Simplex> basis; // the q-simplices of K_t, matrix order
    int q = 0;
};

// L_q = B_{q+1} B_{q+1}^T + B_q^T B_q over a single complex.
Laplacian laplacian_q(const SimplicialComplex& K, int q, WeightMode mode = {},
                      const DistanceMatrix* d = nullptr);

// Independent assembly of the unweighted L_q from upper/lower adjacency
// rules, entry by entry, with no matrix product. Cross-check route for the
// product assembly.
Eigen::MatrixXd laplacian_q_entrywise(const SimplicialComplex& K, int q);

// Persistent Laplacian coupling snapshot K_t with the later K_tp.
// Dimension = number of q-simplices of K_t; throws domain_error when K_t has
// no q-simplices (the Laplacian is "absent" at that scale).
Laplacian persistent_laplacian(const SimplicialComplex& K_t,
                               const SimplicialComplex& K_tp, int q,
                               WeightMode mode = {},
                               PersistenceRule rule = PersistenceRule::Truncated,
                               const DistanceMatrix* d = nullptr);

Laplacian persistent_laplacian(const Filtration& f, double t, double p, int q,
                               WeightMode mode = {},
                               PersistenceRule rule = PersistenceRule::Truncated);

Spectrum spectrum_of(const Laplacian& L, double tau = kDefaultZeroTau);

// Harmonic dimension = number of zero eigenvalues = (persistent) Betti number.
inline int persistent_betti(const Spectrum& s) { return s.nullity(); }

// Weighted 0-Laplacian on the radius-r proximity graph, assembled directly:
// off-diagonal -1 / -d_ij / -1/d_ij for present edges, diagonal = negative
// row sum.
Eigen::MatrixXd weighted_laplacian0(const DistanceMatrix& d, double r,
                                    WeightKind kind, bool strict_overlap = false);

// Moore-Penrose pseudoinverse of a symmetric PSD matrix via its spectral
// decomposition, skipping eigenvalues under the zero threshold.
Eigen::MatrixXd pseudoinverse(const Eigen::MatrixXd& sym, double tau = kDefaultZeroTau);

} // namespace perslap
