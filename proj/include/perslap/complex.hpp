#pragma once

#include <Eigen/Dense>
#include <unordered_map>
#include <utility>
#include <vector>

#include "perslap/point_cloud.hpp"
#include "perslap/simplex.hpp"

namespace perslap {

// Face-closed collection of simplices, stored per dimension in lexicographic
// vertex-tuple order so every derived matrix is byte-reproducible across runs.
class SimplicialComplex {
public:
    enum class FaceRule {
        Require, // reject input whose codim-1 faces are missing
        Close    // add the missing faces (convenience for hand-built complexes)
    };

    SimplicialComplex() = default;

    static SimplicialComplex from_simplices(std::vector<Simplex> simplices,
                                            FaceRule rule = FaceRule::Require);

    // Dimension of the complex; -1 when empty.
    int dim() const { return static_cast<int>(by_dim_.size()) - 1; }

    int count(int q) const {
        return (q >= 0 && q <= dim()) ? static_cast<int>(by_dim_[q].size()) : 0;
    }

    long total_count() const;

    // Lexicographically sorted q-simplices; empty list when q is out of range.
    const std::vector<Simplex>& simplices(int q) const;

    bool contains(const Simplex& s) const { return index_of(s) >= 0; }

    // Position of s within its dimension's sorted list; -1 if absent.
    int index_of(const Simplex& s) const;

    // Is `other` a sub-complex of this one?
    bool contains_all_of(const SimplicialComplex& other) const;

    // Trusted fast path for snapshot extraction: lists must already be
    // face-closed, deduplicated and lexicographically sorted per dimension.
    static SimplicialComplex from_sorted_closed(std::vector<std::vector<Simplex>> by_dim);

private:
    std::vector<std::vector<Simplex>> by_dim_;
    std::unordered_map<Simplex, int, SimplexHash> index_;

    void rebuild_index();
};

// Birth radius of a simplex under the Rips rule: half the largest pairwise
// distance over its vertices; 0 for a vertex.
double simplex_birth_radius(const DistanceMatrix& d, const Simplex& s);

inline constexpr int kDefaultQMaxBuild = 3;
inline constexpr long kDefaultSimplexBudget = 2'000'000;

// Vietoris-Rips clique complex at radius r: a simplex is present iff all its
// vertices are pairwise within 2r (closed rule d_ij <= 2r by default; the
// strict_overlap flag switches to d_ij < 2r).
SimplicialComplex rips_complex(const DistanceMatrix& d, double r,
                               int q_max_build = kDefaultQMaxBuild,
                               bool strict_overlap = false,
                               long simplex_budget = kDefaultSimplexBudget);

struct GraphMatrices {
    Eigen::MatrixXd adjacency;  // symmetric 0/1
    Eigen::MatrixXd degree;     // diagonal vertex degrees
    Eigen::MatrixXd laplacian0; // degree - adjacency
};

GraphMatrices graph_matrices(const SimplicialComplex& K);

// Number of connected components of the 1-skeleton via union-find. Used as an
// independent check against the nullity of L_0.
int connected_components(const SimplicialComplex& K);

// All simplices up to q_max_build with their birth radii, enumerated once at a
// cap radius; snapshots at any r <= cap are filtered views. Snapshots are
// nested by construction: birth radii are monotone under inclusion.
class Filtration {
public:
    Filtration(DistanceMatrix d, double r_cap,
               int q_max_build = kDefaultQMaxBuild,
               bool strict_overlap = false,
               long simplex_budget = kDefaultSimplexBudget);

    const DistanceMatrix& distances() const { return d_; }
    double r_cap() const { return r_cap_; }
    int q_max_build() const { return q_max_build_; }
    bool strict_overlap() const { return strict_; }

    // Complex at radius r; throws input_error when r exceeds the enumeration
    // cap (simplices beyond the cap were never generated).
    SimplicialComplex snapshot(double r) const;

    // (simplex, birth radius) pairs of dimension q, lexicographic order.
    const std::vector<std::pair<Simplex, double>>& births(int q) const;

private:
    DistanceMatrix d_;
    double r_cap_;
    int q_max_build_;
    bool strict_;
    std::vector<std::vector<std::pair<Simplex, double>>> births_;
};

} // namespace perslap
