#pragma once

#include "l0cert/kernels.hpp"
#include "l0cert/problem.hpp"
#include "l0cert/subsets.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace l0cert {

/// Objectives within this absolute distance of the optimum count as ties.
inline constexpr double kObjectiveTieTolerance = 1e-10;

/// Exhaustive solution of the l0-penalized problem.
struct OracleResult {
    Support best_support;
    CoefficientVector best_x;
    double best_objective = 0.0;
    double lambda0 = 0.0;
    int k_max = 0;
    /// f_curve[c] = min RSS over ||x||_0 <= c, c = 0..k_max. Nonincreasing.
    std::vector<double> f_curve;
    /// best_rss[c] = min RSS over full-rank supports of size exactly c (inf if none).
    std::vector<double> best_rss;
    std::vector<Support> best_of_size;
    /// Every support whose objective is within kObjectiveTieTolerance of the optimum.
    std::vector<Support> ties;
    std::uint64_t skipped_rank_deficient = 0;

    /// Cardinality of best_support.
    int m0() const noexcept { return best_support.size(); }
    /// Residual error at the optimal cardinality, f(m0).
    double epsilon() const { return f_curve[static_cast<std::size_t>(m0())]; }
    bool is_optimal(const Support& s) const;
};

/// Enumerates every support of size <= k_max (default m). The result is the global
/// minimizer when k_max = m. Throws TooLarge past the enumeration cap.
OracleResult brute_force_p0(const ProblemInstance& instance, double lambda0,
                            std::optional<int> k_max = std::nullopt,
                            const EnumerationLimits& limits = EnumerationLimits::from_environment(),
                            Execution exec = Execution::Parallel);

struct Lambda0Interval {
    double lo = 0.0;
    double hi = 0.0;  // may be +inf
    bool contains(double lambda0) const noexcept { return lambda0 >= lo && lambda0 <= hi; }
};

/// Values of lambda0 for which `support` is best of its cardinality and its
/// cardinality class attains the l0 minimum. Empty when no such lambda0 exists.
std::optional<Lambda0Interval> lambda0_optimality_range(const OracleResult& oracle,
                                                        const ProblemInstance& instance,
                                                        const Support& support);
std::optional<Lambda0Interval> lambda0_optimality_range(
    const ProblemInstance& instance, const Support& support,
    const EnumerationLimits& limits = EnumerationLimits::from_environment());

}  // namespace l0cert
