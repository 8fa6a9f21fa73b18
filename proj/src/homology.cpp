#include "perslap/homology.hpp"

#include <cstdint>

#include "perslap/boundary.hpp"
#include "perslap/error.hpp"
#include "perslap/exact.hpp"

namespace perslap {

namespace {

int boundary_rank(const SimplicialComplex& K, int q, Field field) {
    if (q > K.dim()) return 0;
    const IntTriplets t = boundary_triplets(K, q);
    if (field == Field::Rational) return exact::rank(to_rational(t));
    return exact::rank_z2(to_z2(t));
}

} // namespace

std::vector<int> betti_numbers(const SimplicialComplex& K, int q_max, Field field) {
    if (q_max < 0) throw input_error("q_max must be non-negative");
    std::vector<int> betti(static_cast<std::size_t>(q_max) + 1, 0);
    for (int q = 0; q <= q_max; ++q) {
        if (q > K.dim()) break; // stays zero above the top dimension
        const int cycles = K.count(q) - boundary_rank(K, q, field);
        betti[static_cast<std::size_t>(q)] = cycles - boundary_rank(K, q + 1, field);
    }
    return betti;
}

namespace {

// rank([Z | B]) - rank(B) over the rationals, with Z the kernel basis of the
// earlier boundary re-indexed into the later snapshot's q-simplex ordering.
int persistent_betti_rational(const SimplicialComplex& K_t,
                              const SimplicialComplex& K_tp, int q) {
    const auto z_basis = exact::kernel_basis(to_rational(boundary_triplets(K_t, q)));
    if (z_basis.empty()) return 0;

    const auto& rows_t = K_t.simplices(q);
    std::vector<int> row_map(rows_t.size());
    for (std::size_t i = 0; i < rows_t.size(); ++i)
        row_map[i] = K_tp.index_of(rows_t[i]);

    const int n_rows = K_tp.count(q);
    IntTriplets b;
    if (q + 1 <= K_tp.dim()) b = boundary_triplets(K_tp, q + 1);
    const int b_cols = (q + 1 <= K_tp.dim()) ? b.cols : 0;
    const int z_cols = static_cast<int>(z_basis.size());

    exact::Mat aug(static_cast<std::size_t>(n_rows),
                   std::vector<exact::Rational>(static_cast<std::size_t>(z_cols + b_cols), 0));
    for (int j = 0; j < z_cols; ++j)
        for (std::size_t i = 0; i < z_basis[static_cast<std::size_t>(j)].size(); ++i)
            aug[static_cast<std::size_t>(row_map[i])][static_cast<std::size_t>(j)] =
                z_basis[static_cast<std::size_t>(j)][i];

    exact::Mat b_only(static_cast<std::size_t>(n_rows),
                      std::vector<exact::Rational>(static_cast<std::size_t>(b_cols), 0));
    if (b_cols > 0)
        for (const auto& e : b.entries) {
            aug[static_cast<std::size_t>(e[0])][static_cast<std::size_t>(z_cols + e[1])] = e[2];
            b_only[static_cast<std::size_t>(e[0])][static_cast<std::size_t>(e[1])] = e[2];
        }

    return exact::rank(std::move(aug)) - exact::rank(std::move(b_only));
}

int persistent_betti_z2(const SimplicialComplex& K_t, const SimplicialComplex& K_tp,
                        int q) {
    const auto z_basis = exact::kernel_basis_z2(to_z2(boundary_triplets(K_t, q)));
    if (z_basis.empty()) return 0;

    const auto& rows_t = K_t.simplices(q);
    std::vector<int> row_map(rows_t.size());
    for (std::size_t i = 0; i < rows_t.size(); ++i)
        row_map[i] = K_tp.index_of(rows_t[i]);

    const int n_rows = K_tp.count(q);
    IntTriplets b;
    if (q + 1 <= K_tp.dim()) b = boundary_triplets(K_tp, q + 1);
    const int b_cols = (q + 1 <= K_tp.dim()) ? b.cols : 0;
    const int z_cols = static_cast<int>(z_basis.size());

    std::vector<std::vector<std::uint8_t>> aug(
        static_cast<std::size_t>(n_rows),
        std::vector<std::uint8_t>(static_cast<std::size_t>(z_cols + b_cols), 0));
    for (int j = 0; j < z_cols; ++j)
        for (std::size_t i = 0; i < z_basis[static_cast<std::size_t>(j)].size(); ++i)
            aug[static_cast<std::size_t>(row_map[i])][static_cast<std::size_t>(j)] =
                z_basis[static_cast<std::size_t>(j)][i];

    std::vector<std::vector<std::uint8_t>> b_only(
        static_cast<std::size_t>(n_rows),
        std::vector<std::uint8_t>(static_cast<std::size_t>(b_cols), 0));
    if (b_cols > 0)
        for (const auto& e : b.entries) {
            aug[static_cast<std::size_t>(e[0])][static_cast<std::size_t>(z_cols + e[1])] =
                static_cast<std::uint8_t>(e[2] & 1);
            b_only[static_cast<std::size_t>(e[0])][static_cast<std::size_t>(e[1])] =
                static_cast<std::uint8_t>(e[2] & 1);
        }

    return exact::rank_z2(std::move(aug)) - exact::rank_z2(std::move(b_only));
}

} // namespace

int persistent_betti_oracle(const SimplicialComplex& K_t,
                            const SimplicialComplex& K_tp, int q, Field field) {
    if (q < 0) throw input_error("q must be non-negative");
    if (!K_tp.contains_all_of(K_t))
        throw input_error("persistent Betti oracle needs nested snapshots");
    if (q > K_t.dim()) return 0;
    if (field == Field::Rational) return persistent_betti_rational(K_t, K_tp, q);
    return persistent_betti_z2(K_t, K_tp, q);
}

int persistent_betti_oracle(const Filtration& f, double t, double p, int q, Field field) {
    if (p < 0) throw input_error("persistence offset p must be non-negative");
    return persistent_betti_oracle(f.snapshot(t), f.snapshot(t + p), q, field);
}

std::vector<int> torsion_dimensions(const SimplicialComplex& K, int q_max) {
    const std::vector<int> rational = betti_numbers(K, q_max, Field::Rational);
    const std::vector<int> mod2 = betti_numbers(K, q_max, Field::Z2);
    std::vector<int> out;
    for (int q = 0; q <= q_max; ++q)
        if (rational[static_cast<std::size_t>(q)] != mod2[static_cast<std::size_t>(q)])
            out.push_back(q);
    return out;
}

} // namespace perslap
