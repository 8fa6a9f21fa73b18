#include "fixtures.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "perslap/error.hpp"

namespace fixtures {

namespace {

SimplicialComplex closed(std::vector<Simplex> simplices) {
    return SimplicialComplex::from_simplices(std::move(simplices),
                                             SimplicialComplex::FaceRule::Close);
}

} // namespace

std::vector<SimplicialComplex> five_point_filtration() {
    std::vector<Simplex> acc{{0}, {1}, {2}, {3}, {4}};
    std::vector<SimplicialComplex> snapshots;
    auto push = [&](std::vector<Simplex> added) {
        for (auto& s : added) acc.push_back(std::move(s));
        snapshots.push_back(closed(acc));
    };
    push({});
    push({{0, 1}});
    push({{1, 2}, {2, 3}, {0, 3}});
    push({{2, 4}});
    push({{0, 2}, {0, 1, 2}, {0, 2, 3}});
    push({{1, 3}, {0, 1, 3}, {1, 2, 3}, {0, 1, 2, 3}});
    return snapshots;
}

SimplicialComplex tetra_skeleton() {
    return closed({{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

SimplicialComplex tetra_shell() {
    return closed({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

SimplicialComplex tetra_solid() { return closed({{0, 1, 2, 3}}); }

SimplicialComplex fan_complex() {
    return closed({{0, 1}, {1, 2}, {2, 3}, {1, 3}, {3, 4}, {1, 2, 3}});
}

PointCloud cloud_from_rows(const std::vector<std::vector<double>>& rows) {
    PointCloud cloud;
    for (const auto& row : rows) {
        perslap::Point p;
        p.coords.resize(static_cast<int>(row.size()));
        for (std::size_t k = 0; k < row.size(); ++k) p.coords[static_cast<int>(k)] = row[k];
        cloud.points.push_back(std::move(p));
    }
    return cloud;
}

PointCloud benzene() {
    const double rc = 1.39;        // carbon ring radius = C-C bond length
    const double rh = 1.39 + 1.09; // hydrogens on the same rays
    PointCloud cloud;
    for (int k = 0; k < 6; ++k) {
        const double a = k * M_PI / 3.0;
        perslap::Point c;
        c.coords.resize(3);
        c.coords << rc * std::cos(a), rc * std::sin(a), 0.0;
        c.element = "C";
        cloud.points.push_back(std::move(c));
    }
    for (int k = 0; k < 6; ++k) {
        const double a = k * M_PI / 3.0;
        perslap::Point h;
        h.coords.resize(3);
        h.coords << rh * std::cos(a), rh * std::sin(a), 0.0;
        h.element = "H";
        cloud.points.push_back(std::move(h));
    }
    return cloud;
}

std::vector<double> benzene_event_radii() {
    const double rc = 1.39, rh = 2.48, ch = 1.09;
    auto chord = [](double radius, int steps) {
        return 2.0 * radius * std::sin(steps * M_PI / 6.0);
    };
    auto mixed = [&](int steps) { // carbon-hydrogen distance `steps` rays apart
        const double a = steps * M_PI / 3.0;
        return std::sqrt(rc * rc + rh * rh - 2.0 * rc * rh * std::cos(a));
    };
    std::vector<double> distances{
        ch,           // C-H on the same ray                     1.09
        chord(rc, 1), // adjacent C-C                            1.39
        mixed(1),     // C to neighbouring H                     2.15
        chord(rc, 2), // meta C-C                                2.41
        chord(rh, 1), // adjacent H-H                            2.48
        chord(rc, 3), // para C-C                                2.78
        mixed(2),     // C to meta H                             3.39
        mixed(3),     // C to para H                             3.87
        chord(rh, 2), // meta H-H                                4.30
        chord(rh, 3), // para H-H                                4.96
    };
    for (double& d : distances) d /= 2.0;
    return distances;
}

PointCloud tetrahedron_cloud() {
    return cloud_from_rows({{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}});
}

PointCloud octahedron_cloud() {
    return cloud_from_rows(
        {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}});
}

PointCloud cube_cloud() {
    std::vector<std::vector<double>> rows;
    for (int sx : {-1, 1})
        for (int sy : {-1, 1})
            for (int sz : {-1, 1}) rows.push_back({double(sx), double(sy), double(sz)});
    return cloud_from_rows(rows);
}

PointCloud dodecahedron_cloud() {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    const double inv = 1.0 / phi;
    std::vector<std::vector<double>> rows;
    for (int sx : {-1, 1})
        for (int sy : {-1, 1})
            for (int sz : {-1, 1}) rows.push_back({double(sx), double(sy), double(sz)});
    for (int a : {-1, 1})
        for (int b : {-1, 1}) {
            rows.push_back({0.0, a * inv, b * phi});
            rows.push_back({a * inv, b * phi, 0.0});
            rows.push_back({a * phi, 0.0, b * inv});
        }
    return cloud_from_rows(rows);
}

PointCloud icosahedron_cloud() {
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    std::vector<std::vector<double>> rows;
    for (int a : {-1, 1})
        for (int b : {-1, 1}) {
            rows.push_back({0.0, a * 1.0, b * phi});
            rows.push_back({a * 1.0, b * phi, 0.0});
            rows.push_back({a * phi, 0.0, b * 1.0});
        }
    return cloud_from_rows(rows);
}

double edge_radius(const PointCloud& cloud) {
    const perslap::DistanceMatrix d = perslap::build_distance_matrix(cloud);
    double min_d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < d.rows(); ++i)
        for (int j = i + 1; j < d.cols(); ++j) min_d = std::min(min_d, d(i, j));
    // halfway between the edge ball radius and the next event, so exactly the
    // nearest-neighbour graph is captured regardless of rounding
    return min_d / 2.0 * 1.005;
}

PointCloud octagon_cloud() {
    const double side = 0.95;
    const double R = side / (2.0 * std::sin(M_PI / 8.0));
    std::vector<std::vector<double>> rows;
    for (int k = 0; k < 8; ++k) {
        const double a = k * M_PI / 4.0;
        rows.push_back({R * std::cos(a), R * std::sin(a)});
    }
    return cloud_from_rows(rows);
}

SimplicialComplex projective_plane() {
    return closed({{0, 1, 2},
                   {0, 1, 3},
                   {0, 2, 4},
                   {0, 3, 5},
                   {0, 4, 5},
                   {1, 2, 5},
                   {1, 3, 4},
                   {1, 4, 5},
                   {2, 3, 4},
                   {2, 3, 5}});
}

PointCloud random_cloud(unsigned seed, int n, int dim) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    PointCloud cloud;
    for (int i = 0; i < n; ++i) {
        perslap::Point p;
        p.coords.resize(dim);
        for (int k = 0; k < dim; ++k) p.coords[k] = coord(rng);
        cloud.points.push_back(std::move(p));
    }
    return cloud;
}

Eigen::MatrixXd reorder(const perslap::Laplacian& L, const std::vector<Simplex>& order) {
    if (static_cast<int>(order.size()) != L.m.rows())
        throw perslap::input_error("reorder: basis size mismatch");
    std::vector<int> idx;
    for (const auto& s : order) {
        int found = -1;
        for (std::size_t i = 0; i < L.basis.size(); ++i)
            if (L.basis[i] == s) {
                found = static_cast<int>(i);
                break;
            }
        if (found < 0) throw perslap::input_error("reorder: simplex not in basis");
        idx.push_back(found);
    }
    Eigen::MatrixXd out(L.m.rows(), L.m.cols());
    for (int i = 0; i < out.rows(); ++i)
        for (int j = 0; j < out.cols(); ++j) out(i, j) = L.m(idx[static_cast<std::size_t>(i)],
                                                            idx[static_cast<std::size_t>(j)]);
    return out;
}

std::string compare_spectrum(const Eigen::VectorXd& actual,
                             const std::vector<double>& expected, double tol) {
    std::ostringstream msg;
    if (actual.size() != static_cast<int>(expected.size())) {
        msg << "size mismatch: got " << actual.size() << " eigenvalues, expected "
            << expected.size();
        return msg.str();
    }
    std::vector<double> exp_sorted = expected;
    std::sort(exp_sorted.begin(), exp_sorted.end());
    for (int i = 0; i < actual.size(); ++i) {
        if (std::abs(actual[i] - exp_sorted[static_cast<std::size_t>(i)]) > tol) {
            msg << "eigenvalue " << i << ": got " << actual[i] << ", expected "
                << exp_sorted[static_cast<std::size_t>(i)] << " (tol " << tol << ")";
            return msg.str();
        }
    }
    return {};
}

} // namespace fixtures
