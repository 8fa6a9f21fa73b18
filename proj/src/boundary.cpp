#include "perslap/boundary.hpp"

#include <cmath>
#include <sstream>

#include "perslap/error.hpp"

namespace perslap {

IntTriplets boundary_triplets(const SimplicialComplex& K, int q) {
    if (q < 0 || q > K.dim()) {
        std::ostringstream msg;
        msg << "boundary operator requested for q = " << q
            << " but the complex has dimension " << K.dim();
        throw domain_error(msg.str());
    }
    IntTriplets t;
    if (q == 0) {
        // the boundary of a vertex is the zero map; by convention a 1 x N
        // zero matrix so that the lower product term of L_0 vanishes
        t.rows = 1;
        t.cols = K.count(0);
        return t;
    }
    t.rows = K.count(q - 1);
    t.cols = K.count(q);
    const auto& cols = K.simplices(q);
    for (int j = 0; j < static_cast<int>(cols.size()); ++j) {
        const auto fs = simplex_faces(cols[static_cast<std::size_t>(j)]);
        for (std::size_t i = 0; i < fs.size(); ++i) {
            const int row = K.index_of(fs[i]);
            const int sign = (i % 2 == 0) ? 1 : -1;
            t.entries.push_back({row, j, sign});
        }
    }
    return t;
}

PersistentSplit persistent_boundary_split(const SimplicialComplex& K_t,
                                          const SimplicialComplex& K_tp, int q) {
    if (q < 0) throw domain_error("boundary dimension must be non-negative");
    if (!K_tp.contains_all_of(K_t))
        throw input_error("persistent boundary requires nested snapshots (K_t within K_t+p)");

    PersistentSplit split;
    const int n_cols = K_tp.count(q);

    if (q == 0) {
        split.old_rows.rows = 1;
        split.old_rows.cols = n_cols;
        split.new_rows.rows = 0;
        split.new_rows.cols = n_cols;
        return split;
    }

    // map the (q-1)-simplices of K_tp that are new (absent from K_t) to
    // compact row indices
    std::vector<int> new_row_of(static_cast<std::size_t>(K_tp.count(q - 1)), -1);
    int n_new = 0;
    {
        const auto& lower = K_tp.simplices(q - 1);
        for (int i = 0; i < static_cast<int>(lower.size()); ++i)
            if (!K_t.contains(lower[static_cast<std::size_t>(i)]))
                new_row_of[static_cast<std::size_t>(i)] = n_new++;
    }

    split.old_rows.rows = K_t.count(q - 1);
    split.old_rows.cols = n_cols;
    split.new_rows.rows = n_new;
    split.new_rows.cols = n_cols;

    const auto& cols = K_tp.simplices(q);
    for (int j = 0; j < n_cols; ++j) {
        const auto fs = simplex_faces(cols[static_cast<std::size_t>(j)]);
        for (std::size_t i = 0; i < fs.size(); ++i) {
            const int sign = (i % 2 == 0) ? 1 : -1;
            const int row_t = K_t.index_of(fs[i]);
            if (row_t >= 0) {
                split.old_rows.entries.push_back({row_t, j, sign});
            } else {
                const int row_tp = K_tp.index_of(fs[i]);
                split.new_rows.entries.push_back(
                    {new_row_of[static_cast<std::size_t>(row_tp)], j, sign});
            }
        }
    }
    return split;
}

exact::Mat to_rational(const IntTriplets& t) {
    exact::Mat m(static_cast<std::size_t>(t.rows),
                 std::vector<exact::Rational>(static_cast<std::size_t>(t.cols), 0));
    for (const auto& [r, c, s] : t.entries)
        m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = s;
    return m;
}

std::vector<std::vector<std::uint8_t>> to_z2(const IntTriplets& t) {
    std::vector<std::vector<std::uint8_t>> m(
        static_cast<std::size_t>(t.rows),
        std::vector<std::uint8_t>(static_cast<std::size_t>(t.cols), 0));
    for (const auto& [r, c, s] : t.entries)
        m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] ^=
            static_cast<std::uint8_t>(s & 1);
    return m;
}

Eigen::MatrixXd to_dense(const IntTriplets& t) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(t.rows, t.cols);
    for (const auto& [r, c, s] : t.entries) m(r, c) = s;
    return m;
}

namespace {

// Column scale factor for a weighted boundary operator.
double column_weight(double vol, WeightMode mode) {
    switch (mode.kind) {
    case WeightKind::Unweighted:
        return 1.0;
    case WeightKind::Volume:
        return mode.convention == WeightConvention::Consistent ? std::sqrt(vol) : vol;
    case WeightKind::InverseVolume:
        if (vol <= 0.0)
            throw domain_error("inverse-volume weight requires strictly positive simplex volumes");
        return mode.convention == WeightConvention::Consistent ? 1.0 / std::sqrt(vol)
                                                               : 1.0 / vol;
    }
    return 1.0;
}

void apply_weights(Eigen::MatrixXd& m, const std::vector<Simplex>& col_basis,
                   WeightMode mode, const DistanceMatrix* d) {
    if (mode.kind == WeightKind::Unweighted) return;
    if (d == nullptr)
        throw input_error("weighted boundary matrices need the distance matrix for volumes");
    for (int j = 0; j < static_cast<int>(col_basis.size()); ++j)
        m.col(j) *= column_weight(simplex_volume(*d, col_basis[static_cast<std::size_t>(j)]), mode);
}

} // namespace

BoundaryMatrix boundary_matrix(const SimplicialComplex& K, int q, WeightMode mode,
                               const DistanceMatrix* d) {
    const IntTriplets t = boundary_triplets(K, q);
    BoundaryMatrix b;
    b.q = q;
    b.m = to_dense(t);
    if (q > 0) b.row_basis = K.simplices(q - 1);
    b.col_basis = K.simplices(q);
    apply_weights(b.m, b.col_basis, mode, d);
    return b;
}

BoundaryMatrix persistent_boundary_matrix(const SimplicialComplex& K_t,
                                          const SimplicialComplex& K_tp, int q,
                                          WeightMode mode, const DistanceMatrix* d) {
    if (q > K_tp.dim() || q < 0) {
        std::ostringstream msg;
        msg << "persistent boundary requested for q = " << q
            << " but the later snapshot has dimension " << K_tp.dim();
        throw domain_error(msg.str());
    }
    const PersistentSplit split = persistent_boundary_split(K_t, K_tp, q);
    BoundaryMatrix b;
    b.q = q;
    b.m = to_dense(split.old_rows);
    if (q > 0) b.row_basis = K_t.simplices(q - 1);
    b.col_basis = K_tp.simplices(q);
    apply_weights(b.m, b.col_basis, mode, d);
    return b;
}

BoundaryMatrix persistent_boundary_matrix(const Filtration& f, double t, double p,
                                          int q, WeightMode mode) {
    if (p < 0) throw input_error("persistence offset p must be non-negative");
    const SimplicialComplex K_t = f.snapshot(t);
    const SimplicialComplex K_tp = f.snapshot(t + p);
    const DistanceMatrix& d = f.distances();
    return persistent_boundary_matrix(K_t, K_tp, q, mode, &d);
}

Eigen::MatrixXd admissible_subspace_basis(const SimplicialComplex& K_t,
                                          const SimplicialComplex& K_tp, int q) {
    const int n_cols = K_tp.count(q);
    if (n_cols == 0) return Eigen::MatrixXd::Zero(0, 0);

    const PersistentSplit split = persistent_boundary_split(K_t, K_tp, q);
    std::vector<std::vector<exact::Rational>> basis;
    if (split.new_rows.rows == 0) {
        // every boundary already lands in K_t: the subspace is everything
        basis.resize(static_cast<std::size_t>(n_cols));
        for (int j = 0; j < n_cols; ++j) {
            basis[static_cast<std::size_t>(j)].assign(static_cast<std::size_t>(n_cols), 0);
            basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)] = 1;
        }
    } else {
        basis = exact::kernel_basis(to_rational(split.new_rows));
    }
    if (basis.empty()) return Eigen::MatrixXd::Zero(n_cols, 0);

    Eigen::MatrixXd v(n_cols, static_cast<int>(basis.size()));
    for (int j = 0; j < static_cast<int>(basis.size()); ++j)
        for (int i = 0; i < n_cols; ++i)
            v(i, j) = static_cast<double>(basis[static_cast<std::size_t>(j)]
                                               [static_cast<std::size_t>(i)]);

    // the exact basis has full column rank; a thin QR orthonormalizes it
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(v);
    Eigen::MatrixXd thin_q = qr.householderQ() * Eigen::MatrixXd::Identity(n_cols, v.cols());
    return thin_q;
}

namespace {

// Cayley-Menger determinant from squared distances; vol^2 of a q-simplex is
// (-1)^(q+1) / (2^q (q!)^2) times the determinant of the bordered matrix.
double cm_volume_from_squared(const Eigen::MatrixXd& d2) {
    const int m = static_cast<int>(d2.rows()); // q+1 points
    const int q = m - 1;
    if (q == 0) return 1.0;

    Eigen::MatrixXd cm = Eigen::MatrixXd::Ones(m + 1, m + 1);
    cm(0, 0) = 0.0;
    cm.block(1, 1, m, m) = d2;

    const double det = cm.determinant();
    double factor = 1.0;
    for (int i = 2; i <= q; ++i) factor *= i; // q!
    factor = factor * factor * std::pow(2.0, q);
    double radicand = ((q % 2 == 0) ? -det : det) / factor;

    // degenerate simplices may land a hair below zero in floating point
    const double scale = std::max(1.0, d2.maxCoeff());
    const double guard = 1e-12 * std::pow(scale, q);
    if (radicand < 0.0) {
        if (radicand > -guard) return 0.0;
        std::ostringstream msg;
        msg << "Cayley-Menger radicand is negative (" << radicand
            << "): distances are not embeddable";
        throw domain_error(msg.str());
    }
    return std::sqrt(radicand);
}

} // namespace

double cayley_menger_volume(const std::vector<Eigen::VectorXd>& points) {
    if (points.empty()) throw input_error("volume of an empty point list is undefined");
    const int m = static_cast<int>(points.size());
    Eigen::MatrixXd d2 = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            if (points[static_cast<std::size_t>(i)].size() !=
                points[static_cast<std::size_t>(j)].size())
                throw input_error("volume points must share one coordinate dimension");
            const double dist2 = (points[static_cast<std::size_t>(i)] -
                                  points[static_cast<std::size_t>(j)]).squaredNorm();
            d2(i, j) = dist2;
            d2(j, i) = dist2;
        }
    return cm_volume_from_squared(d2);
}

double simplex_volume(const DistanceMatrix& d, const Simplex& s) {
    const int m = static_cast<int>(s.size());
    Eigen::MatrixXd d2 = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const double dist = d(s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(j)]);
            d2(i, j) = dist * dist;
            d2(j, i) = dist * dist;
        }
    return cm_volume_from_squared(d2);
}

} // namespace perslap
