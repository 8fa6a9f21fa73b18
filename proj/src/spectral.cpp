#include "perslap/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "perslap/error.hpp"

namespace perslap {

Spectrum::Spectrum(Eigen::VectorXd ascending, double tau) : eig_(std::move(ascending)) {
    if (tau <= 0) throw input_error("zero tolerance must be positive");
    tol_.tau = tau;
    for (int i = 0; i + 1 < eig_.size(); ++i)
        if (eig_[i] > eig_[i + 1]) {
            std::sort(eig_.data(), eig_.data() + eig_.size());
            break;
        }
}

double Spectrum::zero_threshold() const {
    const double lambda_max = eig_.size() ? eig_[eig_.size() - 1] : 0.0;
    return tol_.threshold(lambda_max);
}

int Spectrum::nullity() const {
    const double thr = zero_threshold();
    int n = 0;
    while (n < eig_.size() && eig_[n] <= thr) ++n;
    return n;
}

std::optional<double> Spectrum::smallest_nonzero() const {
    const int z = nullity();
    if (z >= eig_.size()) return std::nullopt;
    return eig_[z];
}

SpectralStats Spectrum::stats() const {
    SpectralStats st;
    const int n = size();
    if (n == 0) return st;
    st.sum = eig_.sum();
    st.avg = st.sum / n;
    st.max = eig_[n - 1];
    const double mean = st.avg;
    double acc = 0;
    for (int i = 0; i < n; ++i) acc += (eig_[i] - mean) * (eig_[i] - mean);
    st.var = acc / n;
    st.std_dev = std::sqrt(st.var);
    st.sec = smallest_nonzero();
    return st;
}

Eigen::VectorXd eigvalsh(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw input_error("eigvalsh needs a square matrix");
    if (m.size() == 0) return Eigen::VectorXd();
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-9 * scale) {
        std::ostringstream msg;
        msg << "matrix is not symmetric: max |M - M^T| = " << asym;
        throw input_error(msg.str());
    }
    const Eigen::MatrixXd sym = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw domain_error("symmetric eigensolver failed to converge");
    return solver.eigenvalues();
}

Laplacian laplacian_q(const SimplicialComplex& K, int q, WeightMode mode,
                      const DistanceMatrix* d) {
    if (q < 0 || q > K.dim()) {
        std::ostringstream msg;
        msg << "Laplacian requested for q = " << q << " but the complex has dimension "
            << K.dim();
        throw domain_error(msg.str());
    }
    const BoundaryMatrix down = boundary_matrix(K, q, mode, d);
    Laplacian L;
    L.q = q;
    L.basis = K.simplices(q);
    const int n = K.count(q);
    L.m = Eigen::MatrixXd::Zero(n, n);
    if (q < K.dim()) {
        const BoundaryMatrix up = boundary_matrix(K, q + 1, mode, d);
        L.m += up.m * up.m.transpose();
    }
    L.m += down.m.transpose() * down.m;
    return L;
}

namespace {

// Sign of tau inside the boundary of sigma, where tau = sigma minus one
// vertex: (-1)^(position of the dropped vertex).
int face_sign(const Simplex& sigma, int dropped_vertex) {
    for (std::size_t i = 0; i < sigma.size(); ++i)
        if (sigma[i] == dropped_vertex) return (i % 2 == 0) ? 1 : -1;
    return 0;
}

Simplex merge_vertices(const Simplex& a, const Simplex& b) {
    Simplex u;
    u.reserve(a.size() + 1);
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(u));
    return u;
}

std::vector<int> difference(const Simplex& a, const Simplex& b) {
    std::vector<int> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

} // namespace

Eigen::MatrixXd laplacian_q_entrywise(const SimplicialComplex& K, int q) {
    if (q < 0 || q > K.dim())
        throw domain_error("entrywise Laplacian: q out of range");
    const auto& simplices = K.simplices(q);
    const int n = static_cast<int>(simplices.size());
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);

    // upper degree: number of (q+1)-cofaces containing the simplex
    std::vector<int> upper_deg(static_cast<std::size_t>(n), 0);
    for (const auto& coface : K.simplices(q + 1))
        for (const auto& f : simplex_faces(coface))
            ++upper_deg[static_cast<std::size_t>(K.index_of(f))];

    for (int i = 0; i < n; ++i) {
        // lower degree is q+1 (every q-simplex has q+1 faces); B_0 is the
        // zero matrix so vertices get no lower contribution
        L(i, i) = upper_deg[static_cast<std::size_t>(i)] + (q >= 1 ? q + 1 : 0);
    }

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const Simplex& a = simplices[static_cast<std::size_t>(i)];
            const Simplex& b = simplices[static_cast<std::size_t>(j)];
            const Simplex u = merge_vertices(a, b);
            if (static_cast<int>(u.size()) != q + 2) continue; // neither upper nor lower adjacent

            double entry = 0.0;
            // shared coface contribution: u itself, when present
            if (K.contains(u)) {
                const int sa = face_sign(u, difference(u, a).front());
                const int sb = face_sign(u, difference(u, b).front());
                entry += sa * sb;
            }
            // shared face contribution: the common (q-1)-face (unique here)
            if (q >= 1) {
                const int va = difference(a, b).front(); // vertex of a not in b
                const int vb = difference(b, a).front();
                const int sa = face_sign(a, va); // a minus va = common face
                const int sb = face_sign(b, vb);
                entry += sa * sb;
            }
            L(i, j) = entry;
            L(j, i) = entry;
        }
    }
    return L;
}

Laplacian persistent_laplacian(const SimplicialComplex& K_t,
                               const SimplicialComplex& K_tp, int q,
                               WeightMode mode, PersistenceRule rule,
                               const DistanceMatrix* d) {
    if (!K_tp.contains_all_of(K_t))
        throw input_error("persistent Laplacian needs nested snapshots");
    const int n = K_t.count(q);
    if (n == 0) {
        std::ostringstream msg;
        msg << "persistent Laplacian is absent: the earlier snapshot has no "
            << q << "-simplices";
        throw domain_error(msg.str());
    }
    if (rule == PersistenceRule::Kernel && mode.kind != WeightKind::Unweighted)
        throw domain_error("the kernel persistence rule is defined for unweighted chains only");

    Laplacian L;
    L.q = q;
    L.basis = K_t.simplices(q);
    L.m = Eigen::MatrixXd::Zero(n, n);

    if (q + 1 <= K_tp.dim()) {
        const BoundaryMatrix up = persistent_boundary_matrix(K_t, K_tp, q + 1, mode, d);
        if (rule == PersistenceRule::Truncated) {
            L.m += up.m * up.m.transpose();
        } else {
            // restrict to chains whose boundary stays in K_t, i.e. project
            // the columns onto the admissible subspace before the product
            const Eigen::MatrixXd basis = admissible_subspace_basis(K_t, K_tp, q + 1);
            if (basis.cols() > 0) {
                const Eigen::MatrixXd restricted = up.m * basis;
                L.m += restricted * restricted.transpose();
            }
        }
    }
    const BoundaryMatrix down = boundary_matrix(K_t, q, mode, d);
    L.m += down.m.transpose() * down.m;
    return L;
}

Laplacian persistent_laplacian(const Filtration& f, double t, double p, int q,
                               WeightMode mode, PersistenceRule rule) {
    if (p < 0) throw input_error("persistence offset p must be non-negative");
    const SimplicialComplex K_t = f.snapshot(t);
    const SimplicialComplex K_tp = f.snapshot(t + p);
    const DistanceMatrix& d = f.distances();
    return persistent_laplacian(K_t, K_tp, q, mode, rule, &d);
}

Spectrum spectrum_of(const Laplacian& L, double tau) { return Spectrum(eigvalsh(L.m), tau); }

Eigen::MatrixXd weighted_laplacian0(const DistanceMatrix& d, double r, WeightKind kind,
                                    bool strict_overlap) {
    if (r < 0) throw input_error("radius must be non-negative");
    const int n = static_cast<int>(d.rows());
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double dist = d(i, j);
            const bool edge = strict_overlap ? dist < 2.0 * r : dist <= 2.0 * r;
            if (!edge) continue;
            double w = 1.0;
            if (kind == WeightKind::Volume) {
                w = dist;
            } else if (kind == WeightKind::InverseVolume) {
                if (dist <= 0.0)
                    throw domain_error("inverse-distance weight undefined for coincident points");
                w = 1.0 / dist;
            }
            L(i, j) -= w;
            L(j, i) -= w;
            L(i, i) += w;
            L(j, j) += w;
        }
    return L;
}

Eigen::MatrixXd pseudoinverse(const Eigen::MatrixXd& sym, double tau) {
    if (sym.rows() != sym.cols()) throw input_error("pseudoinverse needs a square matrix");
    if (sym.size() == 0) return sym;
    const double scale = std::max(1.0, sym.cwiseAbs().maxCoeff());
    if ((sym - sym.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
        throw input_error("pseudoinverse input must be symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (sym + sym.transpose()));
    if (solver.info() != Eigen::Success)
        throw domain_error("symmetric eigensolver failed to converge");
    const Eigen::VectorXd& lam = solver.eigenvalues();
    const Eigen::MatrixXd& v = solver.eigenvectors();
    const double lam_max = lam.size() ? std::max(std::abs(lam[0]), std::abs(lam[lam.size() - 1])) : 0.0;
    const double thr = ZeroTolerance{tau}.threshold(lam_max);

    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(sym.rows(), sym.cols());
    for (int k = 0; k < lam.size(); ++k) {
        if (lam[k] < -thr)
            throw domain_error("pseudoinverse expects a positive semi-definite matrix");
        if (lam[k] > thr) out += (1.0 / lam[k]) * v.col(k) * v.col(k).transpose();
    }
    return out;
}

} // namespace perslap
