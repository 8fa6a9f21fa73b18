#include "perslap/complex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "perslap/error.hpp"

namespace perslap {

bool is_valid_simplex(const Simplex& s) {
    if (s.empty()) return false;
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
        if (s[i] >= s[i + 1]) return false;
    return s.front() >= 0;
}

std::vector<Simplex> simplex_faces(const Simplex& s) {
    std::vector<Simplex> out;
    if (s.size() < 2) return out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex f;
        f.reserve(s.size() - 1);
        for (std::size_t j = 0; j < s.size(); ++j)
            if (j != i) f.push_back(s[j]);
        out.push_back(std::move(f));
    }
    return out;
}

int PointCloud::dim() const {
    if (points.empty()) throw input_error("point cloud is empty");
    const auto n = points.front().coords.size();
    if (n < 1) throw input_error("point coordinates must have dimension >= 1");
    for (std::size_t i = 1; i < points.size(); ++i)
        if (points[i].coords.size() != n) {
            std::ostringstream msg;
            msg << "inconsistent coordinate dimensions: point 0 has " << n
                << ", point " << i << " has " << points[i].coords.size();
            throw input_error(msg.str());
        }
    return static_cast<int>(n);
}

DistanceMatrix build_distance_matrix(const PointCloud& cloud) {
    cloud.dim(); // validates non-empty + consistent dimensions
    const int n = cloud.size();
    DistanceMatrix d = DistanceMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double dist = (cloud.points[i].coords - cloud.points[j].coords).norm();
            d(i, j) = dist;
            d(j, i) = dist;
        }
    return d;
}

double cloud_diameter(const DistanceMatrix& d) {
    return d.size() == 0 ? 0.0 : d.maxCoeff();
}

void SimplicialComplex::rebuild_index() {
    index_.clear();
    for (auto& level : by_dim_)
        for (std::size_t i = 0; i < level.size(); ++i)
            index_.emplace(level[i], static_cast<int>(i));
}

SimplicialComplex SimplicialComplex::from_simplices(std::vector<Simplex> simplices,
                                                    FaceRule rule) {
    std::vector<std::vector<Simplex>> by_dim;
    for (auto& s : simplices) {
        if (!is_valid_simplex(s))
            throw input_error("simplex vertices must be strictly ascending and non-negative");
        const auto q = static_cast<std::size_t>(simplex_dim(s));
        if (by_dim.size() <= q) by_dim.resize(q + 1);
        by_dim[q].push_back(std::move(s));
    }
    for (auto& level : by_dim) {
        std::sort(level.begin(), level.end());
        level.erase(std::unique(level.begin(), level.end()), level.end());
    }

    if (rule == FaceRule::Close) {
        // walk top-down, inserting missing faces
        for (int q = static_cast<int>(by_dim.size()) - 1; q >= 1; --q) {
            std::vector<Simplex> missing;
            for (const auto& s : by_dim[static_cast<std::size_t>(q)])
                for (auto& f : simplex_faces(s)) {
                    auto& lower = by_dim[static_cast<std::size_t>(q - 1)];
                    if (!std::binary_search(lower.begin(), lower.end(), f))
                        missing.push_back(std::move(f));
                }
            if (!missing.empty()) {
                auto& lower = by_dim[static_cast<std::size_t>(q - 1)];
                lower.insert(lower.end(), missing.begin(), missing.end());
                std::sort(lower.begin(), lower.end());
                lower.erase(std::unique(lower.begin(), lower.end()), lower.end());
            }
        }
    } else {
        for (std::size_t q = 1; q < by_dim.size(); ++q)
            for (const auto& s : by_dim[q])
                for (const auto& f : simplex_faces(s)) {
                    const auto& lower = by_dim[q - 1];
                    if (!std::binary_search(lower.begin(), lower.end(), f)) {
                        std::ostringstream msg;
                        msg << "face closure violated: simplex (";
                        for (int v : s) msg << " " << v;
                        msg << " ) lacks face (";
                        for (int v : f) msg << " " << v;
                        msg << " )";
                        throw input_error(msg.str());
                    }
                }
    }

    // drop empty top levels (e.g. all input was vertices)
    while (!by_dim.empty() && by_dim.back().empty()) by_dim.pop_back();
    return from_sorted_closed(std::move(by_dim));
}

SimplicialComplex SimplicialComplex::from_sorted_closed(std::vector<std::vector<Simplex>> by_dim) {
    SimplicialComplex K;
    K.by_dim_ = std::move(by_dim);
    K.rebuild_index();
    return K;
}

long SimplicialComplex::total_count() const {
    long n = 0;
    for (const auto& level : by_dim_) n += static_cast<long>(level.size());
    return n;
}

const std::vector<Simplex>& SimplicialComplex::simplices(int q) const {
    static const std::vector<Simplex> empty;
    if (q < 0 || q > dim()) return empty;
    return by_dim_[static_cast<std::size_t>(q)];
}

int SimplicialComplex::index_of(const Simplex& s) const {
    auto it = index_.find(s);
    return it == index_.end() ? -1 : it->second;
}

bool SimplicialComplex::contains_all_of(const SimplicialComplex& other) const {
    for (int q = 0; q <= other.dim(); ++q)
        for (const auto& s : other.simplices(q))
            if (!contains(s)) return false;
    return true;
}

double simplex_birth_radius(const DistanceMatrix& d, const Simplex& s) {
    const int n = static_cast<int>(d.rows());
    for (int v : s)
        if (v < 0 || v >= n)
            throw input_error("simplex vertex index out of range of the distance matrix");
    double max_d = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            max_d = std::max(max_d, d(s[i], s[j]));
    return max_d / 2.0;
}

namespace {

// Clique expansion over the graph with edges {d_ij <= 2*r_cap} (or < for the
// strict rule). Cliques are grown by appending vertices larger than the
// current maximum, so each clique is produced exactly once, in ascending
// vertex order. Births are tracked incrementally: appending w to a clique
// takes the max of the old birth and the distances from w to the clique.
struct CliqueEnumerator {
    const DistanceMatrix& d;
    int n;
    int q_max;
    long budget;
    bool strict;
    double r_cap;
    std::vector<std::vector<int>> nbr_above; // neighbors with larger index, ascending
    std::vector<std::vector<std::pair<Simplex, double>>> out;
    long produced = 0;

    bool edge_ok(double dist) const {
        return strict ? (dist < 2.0 * r_cap) : (dist <= 2.0 * r_cap);
    }

    void emit(const Simplex& s, double birth) {
        ++produced;
        if (produced > budget)
            throw input_error("simplex budget exceeded during clique enumeration; "
                              "reduce the radius or q_max_build, or raise the budget");
        out[s.size() - 1].emplace_back(s, birth);
    }

    void grow(Simplex& clique, double birth, const std::vector<int>& candidates) {
        if (simplex_dim(clique) >= q_max) return;
        for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
            const int w = candidates[ci];
            double b = birth;
            for (int v : clique) b = std::max(b, d(v, w) / 2.0);
            clique.push_back(w);
            emit(clique, b);
            // candidates for the extended clique: later candidates adjacent to w
            std::vector<int> next;
            for (std::size_t cj = ci + 1; cj < candidates.size(); ++cj)
                if (edge_ok(d(w, candidates[cj]))) next.push_back(candidates[cj]);
            grow(clique, b, next);
            clique.pop_back();
        }
    }

    void run() {
        nbr_above.assign(static_cast<std::size_t>(n), {});
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (edge_ok(d(i, j))) nbr_above[static_cast<std::size_t>(i)].push_back(j);

        out.assign(static_cast<std::size_t>(q_max) + 1, {});
        Simplex clique;
        for (int v = 0; v < n; ++v) {
            clique = {v};
            emit(clique, 0.0);
            grow(clique, 0.0, nbr_above[static_cast<std::size_t>(v)]);
        }
        for (auto& level : out) std::sort(level.begin(), level.end());
    }
};

} // namespace

Filtration::Filtration(DistanceMatrix d, double r_cap, int q_max_build,
                       bool strict_overlap, long simplex_budget)
    : d_(std::move(d)), r_cap_(r_cap), q_max_build_(q_max_build), strict_(strict_overlap) {
    if (d_.rows() == 0 || d_.rows() != d_.cols())
        throw input_error("distance matrix must be square and non-empty");
    if (r_cap < 0) throw input_error("filtration cap radius must be non-negative");
    if (q_max_build < 0) throw input_error("q_max_build must be non-negative");
    if (simplex_budget <= 0) throw input_error("simplex budget must be positive");

    CliqueEnumerator en{d_, static_cast<int>(d_.rows()), q_max_build,
                        simplex_budget, strict_overlap, r_cap, {}, {}, 0};
    en.run();
    births_ = std::move(en.out);
}

const std::vector<std::pair<Simplex, double>>& Filtration::births(int q) const {
    static const std::vector<std::pair<Simplex, double>> empty;
    if (q < 0 || q >= static_cast<int>(births_.size())) return empty;
    return births_[static_cast<std::size_t>(q)];
}

SimplicialComplex Filtration::snapshot(double r) const {
    if (r < 0) throw input_error("snapshot radius must be non-negative");
    if (r > r_cap_) {
        std::ostringstream msg;
        msg << "snapshot radius " << r << " exceeds the filtration cap " << r_cap_;
        throw input_error(msg.str());
    }
    std::vector<std::vector<Simplex>> by_dim;
    for (int q = 0; q < static_cast<int>(births_.size()); ++q) {
        std::vector<Simplex> level;
        for (const auto& [s, birth] : births_[static_cast<std::size_t>(q)]) {
            // vertices always belong to every snapshot; for q >= 1 the strict
            // rule demands all pairwise distances strictly below 2r
            const bool present = (q == 0) || (strict_ ? birth < r : birth <= r);
            if (present) level.push_back(s);
        }
        if (!level.empty()) by_dim.push_back(std::move(level));
    }
    return SimplicialComplex::from_sorted_closed(std::move(by_dim));
}

SimplicialComplex rips_complex(const DistanceMatrix& d, double r, int q_max_build,
                               bool strict_overlap, long simplex_budget) {
    if (r < 0) throw input_error("radius must be non-negative");
    return Filtration(d, r, q_max_build, strict_overlap, simplex_budget).snapshot(r);
}

GraphMatrices graph_matrices(const SimplicialComplex& K) {
    const auto& verts = K.simplices(0);
    const int n = static_cast<int>(verts.size());
    GraphMatrices g;
    g.adjacency = Eigen::MatrixXd::Zero(n, n);
    g.degree = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : K.simplices(1)) {
        const int i = K.index_of({e[0]});
        const int j = K.index_of({e[1]});
        g.adjacency(i, j) = 1.0;
        g.adjacency(j, i) = 1.0;
        g.degree(i, i) += 1.0;
        g.degree(j, j) += 1.0;
    }
    g.laplacian0 = g.degree - g.adjacency;
    return g;
}

int connected_components(const SimplicialComplex& K) {
    const int n = K.count(0);
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    for (const auto& e : K.simplices(1)) {
        const int a = find(K.index_of({e[0]}));
        const int b = find(K.index_of({e[1]}));
        if (a != b) parent[static_cast<std::size_t>(a)] = b;
    }
    int components = 0;
    for (int v = 0; v < n; ++v)
        if (find(v) == v) ++components;
    return components;
}

} // namespace perslap
