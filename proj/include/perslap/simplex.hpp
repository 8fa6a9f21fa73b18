#pragma once

#include <cstddef>
#include <vector>

namespace perslap {

// A simplex is its strictly ascending vertex tuple. The ascending order fixes
// the orientation convention once and for all: the i-th face of a simplex is
// obtained by deleting the i-th vertex and carries sign (-1)^i in the
// boundary operator. Spectra do not depend on this choice; matrices do.
using Simplex = std::vector<int>;

inline int simplex_dim(const Simplex& s) { return static_cast<int>(s.size()) - 1; }

bool is_valid_simplex(const Simplex& s);

// All codimension-1 faces, in face-index order (i-th face = drop i-th vertex).
std::vector<Simplex> simplex_faces(const Simplex& s);

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const {
        // FNV-1a over the vertex indices
        std::size_t h = 1469598103934665603ull;
        for (int v : s) {
            h ^= static_cast<std::size_t>(v);
            h *= 1099511628211ull;
        }
        return h;
    }
};

} // namespace perslap
