#pragma once

#include <string>
#include <vector>

#include "qserre/scalarq.hpp"

namespace qserre {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Validated generalized Cartan matrix with coprime symmetrizer d and
/// symmetrized matrix b_ij = d_i * a_ij.
struct CartanData {
    IntMatrix a;
    std::vector<std::int64_t> d;
    IntMatrix b;

    int rank() const { return static_cast<int>(a.size()); }
};

/// Checks the GCM axioms: a_ii = 2, a_ij <= 0 for i != j, a_ij = 0 iff a_ji = 0.
/// Throws invalid_input naming the first violated axiom and its indices.
void validate_gcm(const IntMatrix& a);

/// Finds the coprime positive symmetrizer by ratio propagation over the
/// nonzero off-diagonal edges. Throws invalid_input with the inconsistent
/// cycle when the matrix is not symmetrizable.
CartanData symmetrize(const IntMatrix& a);

/// {"a": [[...], ...]} from a JSON file on disk.
IntMatrix load_cartan_file(const std::string& path);

} // namespace qserre
