#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <vector>

#include "perslap/complex.hpp"
#include "perslap/exact.hpp"
#include "perslap/simplex.hpp"

namespace perslap {

enum class WeightKind { Unweighted, Volume, InverseVolume };

// Column-scaling convention for weighted boundary operators. Consistent
// scales by sqrt(weight) so that the induced weighted 0-Laplacian has
// off-diagonal entries -d_ij (volume) or -1/d_ij (inverse volume), matching
// the displayed weighted Laplacians; Literal scales by the weight itself as
// the boundary formula reads. Both have the same rank as the unweighted
// operator.
enum class WeightConvention { Consistent, Literal };

struct WeightMode {
    WeightKind kind = WeightKind::Unweighted;
    WeightConvention convention = WeightConvention::Consistent;
};

struct BoundaryMatrix {
    Eigen::MatrixXd m;              // rows: (q-1)-simplices, cols: q-simplices
    std::vector<Simplex> row_basis; // empty for q = 0 (the 1 x N zero matrix)
    std::vector<Simplex> col_basis;
    int q = 0;
};

// Sparse integer triplet form shared by the float and exact-rational paths.
struct IntTriplets {
    int rows = 0, cols = 0;
    std::vector<std::array<int, 3>> entries; // (row, col, sign)
};

// Boundary of the q-chains of K: column j holds the alternating-sign face
// incidences of the j-th q-simplex, (-1)^i on its i-th codim-1 face. For
// q = 0 this is the 1 x N zero matrix.
IntTriplets boundary_triplets(const SimplicialComplex& K, int q);

// Persistent boundary rows split against the earlier snapshot: `old_rows`
// keeps only the (q-1)-faces that already exist in K_t (this is the
// truncation used by all table spectra), `new_rows` keeps the rest (its
// kernel is the subspace of q-chains of K_{t+p} whose boundary stays inside
// the chain space of K_t).
struct PersistentSplit {
    IntTriplets old_rows; // rows: (q-1)-simplices of K_t, cols: q-simplices of K_{t+p}
    IntTriplets new_rows; // rows: (q-1)-simplices of K_{t+p} absent from K_t
};

PersistentSplit persistent_boundary_split(const SimplicialComplex& K_t,
                                          const SimplicialComplex& K_tp, int q);

BoundaryMatrix boundary_matrix(const SimplicialComplex& K, int q,
                               WeightMode mode = {},
                               const DistanceMatrix* d = nullptr);

// Truncated persistent boundary: rows are the (q-1)-simplices of K_t, one
// column for every q-simplex of K_{t+p}; face entries outside K_t are
// dropped. At p = 0 (K_t == K_{t+p}) this is boundary_matrix bit for bit.
BoundaryMatrix persistent_boundary_matrix(const SimplicialComplex& K_t,
                                          const SimplicialComplex& K_tp, int q,
                                          WeightMode mode = {},
                                          const DistanceMatrix* d = nullptr);

BoundaryMatrix persistent_boundary_matrix(const Filtration& f, double t, double p,
                                          int q, WeightMode mode = {});

// Orthonormal (columns) basis of the admissible subspace of q-chains of
// K_{t+p} -- those whose boundary lies in the chain space of K_t. Computed
// exactly over the rationals, then orthonormalized in floating point. The
// matrix has count_q(K_{t+p}) rows; zero columns when the subspace is {0}.
Eigen::MatrixXd admissible_subspace_basis(const SimplicialComplex& K_t,
                                          const SimplicialComplex& K_tp, int q);

// Exact-rational view of a triplet matrix.
exact::Mat to_rational(const IntTriplets& t);
// GF(2) view.
std::vector<std::vector<std::uint8_t>> to_z2(const IntTriplets& t);
// Dense float view.
Eigen::MatrixXd to_dense(const IntTriplets& t);

// q-dimensional volume of the simplex spanned by the given points, via the
// Cayley-Menger determinant. Vol = 1 for a single point; edge length for a
// segment. Throws domain_error when the radicand is negative beyond the
// floating-point guard (distances not embeddable).
double cayley_menger_volume(const std::vector<Eigen::VectorXd>& points);

// Same volume from pairwise distances only.
double simplex_volume(const DistanceMatrix& d, const Simplex& s);

} // namespace perslap
