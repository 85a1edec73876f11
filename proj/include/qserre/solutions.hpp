#pragma once

#include <map>
#include <optional>
#include <string>

#include "qserre/biseries.hpp"
#include "qserre/cartan.hpp"

namespace qserre {

// Solutions of the one-variable exchange equation
//     (z - c) F(z^-1) = (c z - 1) F(z)
// and of the paired system it induces on index pairs with a_kl != 0.

/// Laurent polynomial basis element
/// P_n(z,c) = z^n + c z^-n + sum_{p=1-n}^{-1} c^(p+n-1)(c^2-1) z^p - c^(n-1)(c+1).
BiSeries basis_P(int n, const QScalar& c);
/// Q_n(z,c) = P_n(z^-1, c^-1).
BiSeries basis_Q(int n, const QScalar& c);

/// True iff (z - c) F(z^-1) - (c z - 1) F(z) vanishes: exactly for finite F,
/// on the window [-window, window] for series F.
bool check_equation_c(const BiSeries& F, const QScalar& c, std::int64_t window = 30);

/// One-variable reading of the exchange pair (z = u/v):
/// (z - q^b) F_ji(z^-1) = (q^b z - 1) F_ij(z).
bool check_system1_pair(const BiSeries& F_ij, const BiSeries& F_ji, std::int64_t b_ij,
                        std::int64_t window = 30);

/// Unique Taylor solution with F_ij(0) = q_j^n_ij:
/// F_ij(z) = (q_j^n_ij - z q_i^n_ji) / (1 - z q^b_ij), as an upper-ray series.
BiSeries taylor_entry(std::int64_t d_i, std::int64_t d_j, std::int64_t b_ij, std::int64_t n_ij,
                      std::int64_t n_ji);

struct TaylorPair {
    BiSeries F_ij;
    BiSeries F_ji;
};
TaylorPair taylor_solution(std::int64_t d_i, std::int64_t d_j, std::int64_t b_ij,
                           std::int64_t n_ij, std::int64_t n_ji);

/// Returns +1 or -1 when d_i n_ji - d_j n_ij = eps * b_ij has a sign solution,
/// nullopt otherwise. Requires b_ij != 0.
std::optional<int> epsilon_constraint(std::int64_t d_i, std::int64_t d_j, std::int64_t b_ij,
                                      std::int64_t n_ij, std::int64_t n_ji);

enum class PhiPsi { Phi, Psi };

/// phi_n(z,c) = z^-n + z^n (c - z)/(1 - c z)   (n >= 1), phi_0 = (1-z)/(1-cz);
/// psi_n(z,c) = phi_n(z^-1, c^-1).
BiSeries phi_psi(int n, const QScalar& c, PhiPsi which);

struct OffdiagPair {
    BiSeries F_ij; // the prescribed series sum C^n z^n (finite support here)
    BiSeries F_ji; // delta term + tails, as in the general off-diagonal solution
};
/// Off-diagonal solution pair from a finite coefficient family and a delta
/// coefficient C; b_ij is the symmetrized entry for the pair.
OffdiagPair general_offdiag(const std::map<std::int64_t, QScalar>& coeffs, const QScalar& C,
                            std::int64_t b_ij);

// ---------------------------------------------------------------- families

struct FamilyDescriptor {
    std::string kind; // p-basis | q-basis | taylor | phi-psi | general-offdiag | constant-ones
    int n = 1;        // basis index (p/q/phi/psi) and diagonal index for offdiag kinds
    std::string which = "phi";
    IntMatrix n_matrix;                     // taylor exponents n_kl (defaults to zeros)
    std::map<std::int64_t, QScalar> coeffs; // off-diagonal C^n family
    QScalar C;                              // delta coefficient

    static FamilyDescriptor parse_json(const std::string& text);
    std::string to_json() const;
};

/// Assignment of a solution F_kl to every ordered pair with a_kl != 0.
/// Construction verifies the exchange equations pairwise (except for the
/// deliberate non-solution kind "constant-ones").
class SolutionFamily {
public:
    static SolutionFamily make(const CartanData& cartan, const FamilyDescriptor& desc,
                               std::int64_t window = 30);

    const CartanData& cartan() const { return cartan_; }
    const FamilyDescriptor& descriptor() const { return desc_; }
    const BiSeries& entry(int k, int l) const;
    bool all_polynomial() const;
    bool validated() const { return validated_; }

private:
    CartanData cartan_;
    FamilyDescriptor desc_;
    std::map<std::pair<int, int>, BiSeries> entries_;
    bool validated_ = false;
};

} // namespace qserre
