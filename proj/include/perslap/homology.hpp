#pragma once

#include <vector>

#include "perslap/complex.hpp"

namespace perslap {

enum class Field { Rational, Z2 };

// Betti numbers beta_0..beta_q_max by exact rank arithmetic on the boundary
// matrices (no floating point, no eigenvalues). Dimensions above the complex
// dimension come back as zero.
std::vector<int> betti_numbers(const SimplicialComplex& K, int q_max,
                               Field field = Field::Rational);

// Rank of the q-th homology of the pair: cycles in the earlier snapshot that
// are still independent modulo boundaries of the later one. Computed as
// rank([Z | B]) - rank(B) where Z spans ker(boundary_q) of the earlier
// snapshot embedded in the later chain space and B is the later
// (q+1)-boundary. Returns 0 when the earlier snapshot has no q-simplices.
int persistent_betti_oracle(const SimplicialComplex& K_t,
                            const SimplicialComplex& K_tp, int q,
                            Field field = Field::Rational);
int persistent_betti_oracle(const Filtration& f, double t, double p, int q,
                            Field field = Field::Rational);

// Dimensions in [0, q_max] where the rational and mod-2 counts disagree,
// i.e. where the integral homology has 2-torsion. Empty means the field
// choice does not matter for this complex.
std::vector<int> torsion_dimensions(const SimplicialComplex& K, int q_max);

} // namespace perslap
