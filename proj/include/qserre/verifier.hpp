#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qserre/mlaurent.hpp"
#include "qserre/solutions.hpp"

namespace qserre {

enum class VerifyMode { Auto, Exact, Truncated };

/// Standalone parameters of one Serre-sum instance. From a Cartan matrix these
/// satisfy b_ii = 2 d_i and b_ij = d_i a_ij; the standalone identities require
/// exactly those two relations.
struct SerreParams {
    std::int64_t a_ij = -1; // <= -1; the sum ranges over Sigma_(1-a_ij)
    std::int64_t b_ii = 2;
    std::int64_t b_ij = -1;
    std::int64_t d_i = 1;

    static SerreParams from_cartan(const CartanData& c, int i, int j);
    int var_count() const { return static_cast<int>(1 - a_ij); } // number of z variables
};

/// Linear functional constraint lambda . E <= bound describing coefficients
/// provably unaffected by truncating every series factor to [-W, W].
struct WindowConstraint {
    std::vector<int> lambda; // one entry per z slot plus one for w
    std::int64_t bound = 0;
    bool operator==(const WindowConstraint&) const = default;
};

struct CertifiedWindow {
    std::int64_t W = 0;
    bool certifiable = true;
    std::vector<WindowConstraint> constraints; // empty + certifiable means everything certified

    bool contains(const ExpVec& e) const;
};

/// Result of one identity evaluation.
struct EngineResult {
    MLaurent sum;       // the computed (possibly truncated) polynomial
    MLaurent certified; // restriction of sum to certified monomials
    CertifiedWindow window;
    std::int64_t term_count = 0;     // number of (pi, k) summands
    std::int64_t uncertified_monomials = 0;
};

/// Full Serre-type permutation sum for one family triple; prefactored = true
/// pairs every exchange-factor binomial with its series before truncation.
EngineResult serre_engine(const SerreParams& params, const BiSeries& F_ii, const BiSeries& F_ij,
                          const BiSeries& F_ji, bool prefactored, VerifyMode mode, std::int64_t W,
                          int threads = 1);

/// One (pi, k) product of the Serre sum, without the alternating binomial
/// weight; family must be polynomial (exact).
MLaurent serre_term_product(const SerreParams& params, const BiSeries& F_ii, const BiSeries& F_ij,
                            const BiSeries& F_ji, const Permutation& pi, int k);

/// The inversion-split alternating sum; exactly zero for every m <= 0.
MLaurent lemma2_sum(std::int64_t m, const std::optional<QScalar>& substitute_t = std::nullopt,
                    int threads = 1);

/// The signed variant with the plain pair product; exactly zero for m <= 0.
MLaurent jing_sum(std::int64_t m, int threads = 1);

/// Expanded binomial-product form of the Serre sum for the degree-one
/// polynomial family; exactly zero when b_ii = 2 d_i and b_ij = d_i a_ij.
MLaurent eq5_sum(std::int64_t a_ij, std::int64_t b_ii, std::int64_t b_ij, std::int64_t d_i,
                 int threads = 1);

/// One (pi, k) product of eq5_sum, without the alternating binomial weight.
MLaurent eq5_term_product(std::int64_t a_ij, std::int64_t b_ii, std::int64_t b_ij,
                          const Permutation& pi, int k);

/// Substitutes a one-variable series into the ratio monomial: sum over its
/// support of coeff(d) * (z^ratio)^d. Series factors are truncated to
/// [-W, W] first; finite inputs are exact (W ignored).
MLaurent substitute_series(const BiSeries& f, int n_z, const ExpVec& ratio,
                           std::optional<std::int64_t> W = std::nullopt);

/// Randomized exact-evaluation zero test: necessary condition, cross-checks
/// the structural verdict. Singular draws are retried, never reported.
bool numeric_oracle(const MLaurent& p, int trials, std::uint64_t seed = 20260809);

// ------------------------------------------------------------- hypothesis

struct RatioRegion {
    std::string ratio; // e.g. "z1/z2" or "w/z1"
    ConvergenceRegion region;
};

struct HypothesisReport {
    bool common_domain = false;
    std::vector<RatioRegion> ratios;
};

/// Convergence-region check for the product hypotheses, treating each ratio
/// z_a/z_b, w/z_s as an independent variable. variant is "constr1" or "constr2".
HypothesisReport hypothesis_check(const CartanData& cartan, const SolutionFamily& family, int i,
                                  int j, const std::string& variant, const BigRat& rho);

// ----------------------------------------------------------------- fronts

struct IdentityInstance {
    std::string which; // serre | prefactored | system1 | lemma2 | jing | eq5 | hypothesis
    std::optional<CartanData> cartan;
    int i = 0;
    int j = 1;
    std::optional<FamilyDescriptor> family;
    std::optional<SerreParams> params; // standalone override for eq5/serre
    std::int64_t m = 0;                // lemma2 / jing
    std::optional<QScalar> substitute_t;
    std::int64_t window = 30;
    VerifyMode mode = VerifyMode::Auto;
    std::string variant = "constr2";
    BigRat rho = BigRat(1, 2);
    int threads = 1;
    int oracle_trials = 0; // when > 0, cross-check exact verdicts numerically
};

struct VerdictReport {
    std::string identity;
    std::string params_json; // canonical echo of the resolved request
    std::string mode;        // exact | truncated | region
    std::string result;      // zero | nonzero | undefined | true | false
    std::string witness_monomial;
    std::string witness_coeff;
    std::optional<CertifiedWindow> window;
    std::int64_t uncertified_monomials = 0;
    std::vector<RatioRegion> regions; // hypothesis only
    std::int64_t terms = 0;
    std::int64_t millis = 0;
    int threads = 1;
    std::optional<bool> oracle_agrees;
    std::vector<std::string> notes;

    bool passed() const { return result == "zero" || result == "true"; }
    /// Canonical form: everything except timing and parallelism degree.
    std::string canonical_json() const;
    std::string full_json() const;
    std::string text() const;
};

VerdictReport run_identity(const IdentityInstance& inst);

} // namespace qserre
