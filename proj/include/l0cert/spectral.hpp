#pragma once

#include "l0cert/kernels.hpp"
#include "l0cert/problem.hpp"
#include "l0cert/subsets.hpp"

#include <vector>

namespace l0cert {

/// Restricted minimal eigenvalues sigma^2_min,k = inf ||phi d||^2 / ||d||^2 over
/// ||d||_0 <= k, for k = 1..k_max.
///
/// Each cardinality is enumerated exactly; the stored table is the running
/// minimum of the per-cardinality minima, which is the <= k definition.
class SigmaMinTable {
public:
    static SigmaMinTable compute(const ProblemInstance& instance, int k_max,
                                 const EnumerationLimits& limits = EnumerationLimits::from_environment(),
                                 Execution exec = Execution::Parallel);

    int k_max() const noexcept { return static_cast<int>(values_.size()); }
    int m() const noexcept { return m_; }
    /// sigma^2_min,k. Any k >= m maps to k = m, since no vector has more than m nonzeros.
    double at(int k) const;
    const std::vector<double>& values() const noexcept { return values_; }
    const std::vector<double>& per_cardinality() const noexcept { return exact_; }

private:
    int m_ = 0;
    std::vector<double> exact_;   // exact_[k-1]: min over |S| = k
    std::vector<double> values_;  // values_[k-1]: running min, i.e. sigma^2_min,k
};

double sigma_min_sq(const ProblemInstance& instance, int k,
                    const EnumerationLimits& limits = EnumerationLimits::from_environment());

/// Square root of the sum of the k largest squared magnitudes of v. k is clamped to len(v).
double c_stat(const Vector& v, int k);

/// max_{i != j} |<phi_i, phi_j>|. Throws NotStandardized unless the instance is standardized.
double mutual_coherence(const ProblemInstance& instance);

/// sup_{|I| <= s} sup_{j not in I} ||phi_I^+ phi_j||_2 for s = 1..max_size, and the gap
/// constant lambda(s; M) = 1 - (M / sqrt(s)) * sup_norm(s) built from it.
///
/// The first argument of lambda() is the subset-size bound s, the second the multiplier M.
class PseudoInverseGapTable {
public:
    static PseudoInverseGapTable compute(const ProblemInstance& instance, int max_size,
                                         const EnumerationLimits& limits = EnumerationLimits::from_environment(),
                                         Execution exec = Execution::Parallel);

    int max_size() const noexcept { return static_cast<int>(sup_norms_.size()); }
    double sup_norm(int size) const;
    double lambda(int size, double multiplier) const;
    const std::vector<double>& sup_norms() const noexcept { return sup_norms_; }

private:
    std::vector<double> sup_norms_;  // sup_norms_[s-1], nondecreasing
};

/// lambda(m_size; M). Requires 1 <= m_size <= m - 1 and M >= 0.
double pseudo_inverse_gap(const ProblemInstance& instance, int m_size, double multiplier,
                          const EnumerationLimits& limits = EnumerationLimits::from_environment());

}  // namespace l0cert
