// Reference values for the complete-graph family, the five-point filtration
// and its pairwise persistent operators, and the platonic graphs. Matrices
// are compared entry by entry in the basis order stated next to each case;
// spectra are compared sorted ascending. Integer spectra are pinned at 1e-9,
// decimal prints at 1e-3.
#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "perslap/complex.hpp"
#include "perslap/homology.hpp"
#include "perslap/spectral.hpp"

using namespace perslap;

namespace {

Eigen::MatrixXd mat(const std::vector<std::vector<double>>& rows) {
    Eigen::MatrixXd m(static_cast<int>(rows.size()),
                      rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    return m;
}

void expect_spectrum(const Laplacian& L, const std::vector<double>& expected, double tol,
                     int nullity) {
    const auto diag = fixtures::compare_spectrum(eigvalsh(L.m), expected, tol);
    CHECK_MESSAGE(diag.empty(), "q=" << L.q << ": " << diag);
    CHECK(spectrum_of(L).nullity() == nullity);
}

void expect_matrix(const Eigen::MatrixXd& actual, const Eigen::MatrixXd& expected) {
    REQUIRE(actual.rows() == expected.rows());
    REQUIRE(actual.cols() == expected.cols());
    CHECK_MESSAGE((actual - expected).cwiseAbs().maxCoeff() < 1e-12,
                  "matrix mismatch:\n" << actual << "\nexpected:\n" << expected);
}

const double kS3 = std::sqrt(3.0);

} // namespace

// ---------------------------------------------------------------------------
// complete-graph family: skeleton, filled shell, solid tetrahedron
// ---------------------------------------------------------------------------

TEST_CASE("golden: vertex Laplacian of the four-vertex skeleton") {
    const auto L = laplacian_q(fixtures::tetra_skeleton(), 0);
    expect_matrix(L.m, mat({{3, -1, -1, -1}, {-1, 3, -1, -1}, {-1, -1, 3, -1}, {-1, -1, -1, 3}}));
    expect_spectrum(L, {0, 4, 4, 4}, 1e-9, 1);
}

TEST_CASE("golden: edge Laplacian of the four-vertex skeleton") {
    const auto L = laplacian_q(fixtures::tetra_skeleton(), 1);
    // basis order 01, 02, 03, 12, 13, 23
    expect_matrix(L.m, mat({{2, 1, 1, -1, -1, 0},
                            {1, 2, 1, 1, 0, -1},
                            {1, 1, 2, 0, 1, 1},
                            {-1, 1, 0, 2, 1, -1},
                            {-1, 0, 1, 1, 2, 1},
                            {0, -1, 1, -1, 1, 2}}));
    expect_spectrum(L, {0, 0, 0, 4, 4, 4}, 1e-9, 3);
}

TEST_CASE("golden: triangle boundary and Laplacians of the filled shell") {
    const auto shell = fixtures::tetra_shell();
    const auto B2 = boundary_matrix(shell, 2);
    // rows 01, 02, 03, 12, 13, 23; columns 012, 013, 023, 123
    expect_matrix(B2.m, mat({{1, 1, 0, 0},
                             {-1, 0, 1, 0},
                             {0, -1, -1, 0},
                             {1, 0, 0, 1},
                             {0, 1, 0, -1},
                             {0, 0, 1, 1}}));

    const auto L2 = laplacian_q(shell, 2);
    expect_matrix(L2.m, mat({{3, 1, -1, 1}, {1, 3, 1, -1}, {-1, 1, 3, 1}, {1, -1, 1, 3}}));
    expect_spectrum(L2, {0, 4, 4, 4}, 1e-9, 1);

    const auto L1 = laplacian_q(shell, 1);
    expect_matrix(L1.m, 4.0 * Eigen::MatrixXd::Identity(6, 6));
    expect_spectrum(L1, {4, 4, 4, 4, 4, 4}, 1e-9, 0);

    // the shell shares the skeleton's graph, hence its vertex Laplacian
    expect_matrix(laplacian_q(shell, 0).m, laplacian_q(fixtures::tetra_skeleton(), 0).m);
}

TEST_CASE("golden: solid tetrahedron tops out the family") {
    const auto solid = fixtures::tetra_solid();
    const auto B3 = boundary_matrix(solid, 3);
    // rows 012, 013, 023, 123
    expect_matrix(B3.m, mat({{-1}, {1}, {-1}, {1}}));

    const auto L2 = laplacian_q(solid, 2);
    expect_matrix(L2.m, 4.0 * Eigen::MatrixXd::Identity(4, 4));
    expect_spectrum(L2, {4, 4, 4, 4}, 1e-9, 0);
}

TEST_CASE("golden: Betti numbers across the family") {
    CHECK(betti_numbers(fixtures::tetra_skeleton(), 2) == std::vector<int>{1, 3, 0});
    CHECK(betti_numbers(fixtures::tetra_shell(), 2) == std::vector<int>{1, 0, 1});
    CHECK(betti_numbers(fixtures::tetra_solid(), 2) == std::vector<int>{1, 0, 0});
}

// ---------------------------------------------------------------------------
// persistent operators along the five-point filtration
// snapshots[0..5]: growing from isolated vertices to a solid tetrahedron
// with a pendant edge. Matrices print in insertion order where stated.
// ---------------------------------------------------------------------------

TEST_CASE("golden: five merging components two steps later") {
    const auto s = fixtures::five_point_filtration();
    expect_spectrum(persistent_laplacian(s[0], s[2], 0), {0, 0, 2, 2, 4}, 1e-9, 2);
}

TEST_CASE("golden: square plus pendant edge, one step") {
    const auto s = fixtures::five_point_filtration();
    // the pendant edge joins the two components: one persistent component
    expect_spectrum(persistent_laplacian(s[2], s[3], 0),
                    {0, 0.8299, 2, 2.6889, 4.4812}, 1e-3, 1);
    // no triangle arrives, so the square's cycle persists
    expect_spectrum(persistent_laplacian(s[2], s[3], 1), {0, 2, 2, 4}, 1e-9, 1);
}

TEST_CASE("golden: triangles kill the square cycle one step later") {
    const auto s = fixtures::five_point_filtration();
    expect_spectrum(persistent_laplacian(s[3], s[4], 0), {0, 1, 2, 4, 5}, 1e-9, 1);

    const auto L1 = persistent_laplacian(s[3], s[4], 1);
    const std::vector<Simplex> order{{0, 1}, {1, 2}, {2, 3}, {0, 3}, {2, 4}};
    expect_matrix(fixtures::reorder(L1, order), mat({{3, 0, 0, 1, 0},
                                                     {0, 3, -1, 0, -1},
                                                     {0, -1, 3, 0, 1},
                                                     {1, 0, 0, 3, 0},
                                                     {0, -1, 1, 0, 2}}));
    expect_spectrum(L1, {3 - kS3, 2, 2, 4, 3 + kS3}, 1e-9, 0);
    // the same smallest eigenvalue against its two decimal prints
    const double lo = eigvalsh(L1.m)[0];
    CHECK(std::abs(lo - 1.2677) <= 1e-3);
    CHECK(std::abs(lo - 1.2679) <= 1e-3);
}

TEST_CASE("golden: filling toward the solid tetrahedron") {
    const auto s = fixtures::five_point_filtration();
    expect_spectrum(persistent_laplacian(s[4], s[5], 0), {0, 1, 4, 4, 5}, 1e-9, 1);
    expect_spectrum(persistent_laplacian(s[4], s[5], 1), {1, 4, 4, 4, 4, 5}, 1e-9, 0);
    const auto L2 = persistent_laplacian(s[4], s[5], 2);
    expect_matrix(L2.m, 4.0 * Eigen::MatrixXd::Identity(2, 2));
    expect_spectrum(L2, {4, 4}, 1e-9, 0);
}

TEST_CASE("golden: final snapshot at zero offset") {
    const auto s = fixtures::five_point_filtration();
    expect_spectrum(persistent_laplacian(s[5], s[5], 0), {0, 1, 4, 4, 5}, 1e-9, 1);
    expect_spectrum(persistent_laplacian(s[5], s[5], 1), {1, 4, 4, 4, 4, 4, 5}, 1e-9, 0);
    expect_spectrum(persistent_laplacian(s[5], s[5], 2), {4, 4, 4, 4}, 1e-9, 0);

    // the tetrahedron's boundary column over triangle rows 012, 013, 023, 123
    const auto B3 = persistent_boundary_matrix(s[5], s[5], 3);
    expect_matrix(B3.m, mat({{-1}, {1}, {-1}, {1}}));
}

// ---------------------------------------------------------------------------
// all pairwise persistent vertex/edge operators of the same filtration
// ---------------------------------------------------------------------------

TEST_CASE("golden: pairwise operators from the first snapshot") {
    const auto s = fixtures::five_point_filtration();
    expect_spectrum(persistent_laplacian(s[0], s[0], 0), {0, 0, 0, 0, 0}, 1e-9, 5);
    expect_spectrum(persistent_laplacian(s[0], s[1], 0), {0, 0, 0, 0, 2}, 1e-9, 4);
    expect_spectrum(persistent_laplacian(s[0], s[3], 0),
                    {0, 0.8299, 2, 2.6889, 4.4812}, 1e-3, 1);
    expect_spectrum(persistent_laplacian(s[0], s[4], 0), {0, 1, 2, 4, 5}, 1e-9, 1);

    const auto L = persistent_laplacian(s[0], s[5], 0);
    expect_matrix(L.m, mat({{3, -1, -1, -1, 0},
                            {-1, 3, -1, -1, 0},
                            {-1, -1, 4, -1, -1},
                            {-1, -1, -1, 3, 0},
                            {0, 0, -1, 0, 1}}));
    expect_spectrum(L, {0, 1, 4, 4, 5}, 1e-9, 1);
}

TEST_CASE("golden: pairwise operators from the single-edge snapshot") {
    const auto s = fixtures::five_point_filtration();
    expect_spectrum(persistent_laplacian(s[1], s[1], 0), {0, 0, 0, 0, 2}, 1e-9, 4);
    expect_spectrum(persistent_laplacian(s[1], s[1], 1), {2}, 1e-9, 0);

    expect_spectrum(persistent_laplacian(s[1], s[2], 0), {0, 0, 2, 2, 4}, 1e-9, 2);
    expect_spectrum(persistent_laplacian(s[1], s[2], 1), {2}, 1e-9, 0);

    expect_spectrum(persistent_laplacian(s[1], s[3], 0),
                    {0, 0.8299, 2, 2.6889, 4.4812}, 1e-3, 1);
    expect_spectrum(persistent_laplacian(s[1], s[3], 1), {2}, 1e-9, 0);

    // two later triangles, but only one writes on the surviving edge
    const auto B = persistent_boundary_matrix(s[1], s[4], 2);
    expect_matrix(B.m, mat({{1, 0}}));
    expect_spectrum(persistent_laplacian(s[1], s[4], 1), {3}, 1e-9, 0);
    expect_spectrum(persistent_laplacian(s[1], s[4], 0), {0, 1, 2, 4, 5}, 1e-9, 1);

    // four later triangles: columns 012, 013, 023, 123 over the edge row 01
    const auto B6 = persistent_boundary_matrix(s[1], s[5], 2);
    expect_matrix(B6.m, mat({{1, 1, 0, 0}}));
    expect_spectrum(persistent_laplacian(s[1], s[5], 1), {4}, 1e-9, 0);
    expect_spectrum(persistent_laplacian(s[1], s[5], 0), {0, 1, 4, 4, 5}, 1e-9, 1);
}

TEST_CASE("golden: pairwise operators from the square snapshot") {
    const auto s = fixtures::five_point_filtration();
    const std::vector<Simplex> order{{0, 1}, {1, 2}, {2, 3}, {0, 3}};

    expect_spectrum(persistent_laplacian(s[2], s[2], 0), {0, 0, 2, 2, 4}, 1e-9, 2);
    const auto L1_self = persistent_laplacian(s[2], s[2], 1);
    expect_matrix(fixtures::reorder(L1_self, order),
                  mat({{2, -1, 0, 1}, {-1, 2, -1, 0}, {0, -1, 2, 1}, {1, 0, 1, 2}}));
    expect_spectrum(L1_self, {0, 2, 2, 4}, 1e-9, 1);

    const auto L1_two = persistent_laplacian(s[2], s[4], 1);
    expect_matrix(fixtures::reorder(L1_two, order),
                  mat({{3, 0, 0, 1}, {0, 3, -1, 0}, {0, -1, 3, 0}, {1, 0, 0, 3}}));
    expect_spectrum(L1_two, {2, 2, 4, 4}, 1e-9, 0);
    expect_spectrum(persistent_laplacian(s[2], s[4], 0), {0, 1, 2, 4, 5}, 1e-9, 1);

    const auto L1_three = persistent_laplacian(s[2], s[5], 1);
    expect_matrix(L1_three.m, 4.0 * Eigen::MatrixXd::Identity(4, 4));
    expect_spectrum(L1_three, {4, 4, 4, 4}, 1e-9, 0);
    expect_spectrum(persistent_laplacian(s[2], s[5], 0), {0, 1, 4, 4, 5}, 1e-9, 1);
}

TEST_CASE("golden: pairwise operators from the pendant-edge snapshot") {
    const auto s = fixtures::five_point_filtration();
    const std::vector<Simplex> order{{0, 1}, {1, 2}, {2, 3}, {0, 3}, {2, 4}};

    const auto L1 = persistent_laplacian(s[3], s[5], 1);
    expect_matrix(fixtures::reorder(L1, order), mat({{4, 0, 0, 0, 0},
                                                     {0, 4, 0, 0, -1},
                                                     {0, 0, 4, 0, 1},
                                                     {0, 0, 0, 4, 0},
                                                     {0, -1, 1, 0, 2}}));
    expect_spectrum(L1, {3 - kS3, 4, 4, 4, 3 + kS3}, 1e-9, 0);
    expect_spectrum(persistent_laplacian(s[3], s[5], 0), {0, 1, 4, 4, 5}, 1e-9, 1);
}

TEST_CASE("golden: pairwise operators at the two-triangle snapshot") {
    const auto s = fixtures::five_point_filtration();
    const std::vector<Simplex> edge_order{{0, 1}, {1, 2}, {2, 3}, {0, 3}, {2, 4}, {0, 2}};

    const auto L0 = persistent_laplacian(s[4], s[4], 0);
    expect_matrix(L0.m, mat({{3, -1, -1, -1, 0},
                             {-1, 2, -1, 0, 0},
                             {-1, -1, 4, -1, -1},
                             {-1, 0, -1, 2, 0},
                             {0, 0, -1, 0, 1}}));
    expect_spectrum(L0, {0, 1, 2, 4, 5}, 1e-9, 1);

    const auto L1 = persistent_laplacian(s[4], s[4], 1);
    expect_matrix(fixtures::reorder(L1, edge_order), mat({{3, 0, 0, 1, 0, 0},
                                                          {0, 3, -1, 0, -1, 0},
                                                          {0, -1, 3, 0, 1, 0},
                                                          {1, 0, 0, 3, 0, 0},
                                                          {0, -1, 1, 0, 2, -1},
                                                          {0, 0, 0, 0, -1, 4}}));
    expect_spectrum(L1, {1, 2, 2, 4, 4, 5}, 1e-9, 0);

    const auto L2 = persistent_laplacian(s[4], s[4], 2);
    expect_matrix(L2.m, mat({{3, -1}, {-1, 3}}));
    expect_spectrum(L2, {2, 4}, 1e-9, 0);
}

// ---------------------------------------------------------------------------
// platonic graphs: component count and smallest nonzero eigenvalue
// ---------------------------------------------------------------------------

namespace {

void platonic_case(const PointCloud& cloud, int vertices, int edges, double lambda2,
                   double tol) {
    const DistanceMatrix d = build_distance_matrix(cloud);
    const auto K = rips_complex(d, fixtures::edge_radius(cloud), 1);
    REQUIRE(K.count(0) == vertices);
    REQUIRE(K.count(1) == edges);
    const auto spectrum = spectrum_of(laplacian_q(K, 0));
    CHECK(spectrum.nullity() == 1);
    REQUIRE(spectrum.smallest_nonzero().has_value());
    CHECK_MESSAGE(std::abs(*spectrum.smallest_nonzero() - lambda2) <= tol,
                  "smallest nonzero " << *spectrum.smallest_nonzero() << " vs " << lambda2);
}

} // namespace

TEST_CASE("golden: platonic graph connectivity spectrum") {
    platonic_case(fixtures::tetrahedron_cloud(), 4, 6, 4.00, 1e-3);
    platonic_case(fixtures::octahedron_cloud(), 6, 12, 4.00, 1e-3);
    platonic_case(fixtures::cube_cloud(), 8, 12, 2.00, 1e-3);
    platonic_case(fixtures::dodecahedron_cloud(), 20, 30, 0.7639, 1e-3);
    platonic_case(fixtures::icosahedron_cloud(), 12, 30, 2.76, 1e-2);
    // closed forms for the two irrational entries
    const double phi_gap = 3.0 - std::sqrt(5.0); // dodecahedral graph
    const double ico_gap = 5.0 - std::sqrt(5.0); // icosahedral graph
    platonic_case(fixtures::dodecahedron_cloud(), 20, 30, phi_gap, 1e-9);
    platonic_case(fixtures::icosahedron_cloud(), 12, 30, ico_gap, 1e-9);
}
