#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "perslap/complex.hpp"
#include "perslap/point_cloud.hpp"
#include "perslap/spectral.hpp"

namespace fixtures {

using perslap::PointCloud;
using perslap::Simplex;
using perslap::SimplicialComplex;

// Six nested snapshots over five vertices, growing from isolated points to a
// solid tetrahedron with a pendant edge:
//   [0] five vertices            [3] + edge 24
//   [1] + edge 01                [4] + edge 02, triangles 012, 023
//   [2] + edges 12, 23, 03       [5] + edge 13, triangles 013, 123, tetra 0123
// Betti numbers per snapshot: b0 = 5,4,2,1,1,1; b1 = 0,0,1,1,0,0; b2 = 0.
std::vector<SimplicialComplex> five_point_filtration();

// Complete graph on four vertices, then with all triangles filled, then solid.
SimplicialComplex tetra_skeleton();
SimplicialComplex tetra_shell();
SimplicialComplex tetra_solid();

// Five vertices, edges 01,12,23,13,34, triangle 123: a filled triangle with
// two pendant edges. Its edge Laplacian has spectrum
// {(5-sqrt13)/2, (5-sqrt5)/2, 3, (5+sqrt5)/2, (5+sqrt13)/2}.
SimplicialComplex fan_complex();

// Planar benzene: carbon hexagon with C-C 1.39 A and radial hydrogens at
// C-H 1.09 A. The ten distinct pairwise distances / 2 are the radii where
// its filtration changes.
PointCloud benzene();
std::vector<double> benzene_event_radii(); // ascending, 10 values

// Vertex sets of the regular polyhedra (exact coordinates, edge = shortest
// pairwise distance).
PointCloud tetrahedron_cloud();
PointCloud octahedron_cloud();
PointCloud cube_cloud();
PointCloud dodecahedron_cloud();
PointCloud icosahedron_cloud();

// Radius that captures exactly the nearest-neighbour graph of a cloud.
double edge_radius(const PointCloud& cloud);

// Regular octagon sized so that at t = 0.5 only the sides are present while
// at t + p = 0.9 the skip-one chords and their triangles appear. Between
// those radii the truncated-column persistent Laplacian undercounts the
// surviving 1-cycle (nullity 0) while the kernel rule reports 1.
PointCloud octagon_cloud();
inline constexpr double kOctagonT = 0.5;
inline constexpr double kOctagonTp = 0.9;

// Minimal 6-vertex triangulation of the real projective plane: homology has
// 2-torsion, so rational and mod-2 Betti numbers disagree in dims 1 and 2.
SimplicialComplex projective_plane();

// Deterministic uniform cloud in [0,1]^dim.
PointCloud random_cloud(unsigned seed, int n, int dim);

// ---- helpers for golden-value comparisons ----

// Symmetric permutation of a Laplacian into a stated basis order (for
// comparing matrix entries against tables printed in a different order).
Eigen::MatrixXd reorder(const perslap::Laplacian& L, const std::vector<Simplex>& order);

// Ascending comparison of a computed spectrum against expected values;
// returns an empty string on success, else a diagnostic.
std::string compare_spectrum(const Eigen::VectorXd& actual,
                             const std::vector<double>& expected, double tol);

PointCloud cloud_from_rows(const std::vector<std::vector<double>>& rows);

} // namespace fixtures
