#pragma once

#include "l0cert/problem.hpp"

#include <cstdint>
#include <limits>
#include <vector>

// Exhaustive subset-enumeration kernels. Each kernel has a serial reference path
// and an OpenMP path; both visit every k-subset and reduce with a deterministic,
// order-independent rule, so the two return bit-identical results.
namespace l0cert {

enum class Execution { Serial, Parallel };

namespace kernels {

/// min over |S| = k of the smallest eigenvalue of gram(S, S), clamped at 0.
double min_gram_eigenvalue(const Matrix& gram, int k, Execution exec);

/// max over |I| = size and j not in I of ||phi_I^+ phi_j||_2. Throws RankDeficient
/// naming the lexicographically first singular I.
double max_pinv_column_norm(const Matrix& phi, int size, Execution exec);

struct SubsetFit {
    double rss = std::numeric_limits<double>::infinity();
    std::vector<int> support;  // lexicographically smallest minimizer
    std::uint64_t skipped = 0;  // rank-deficient subsets left out
};

/// Best RSS over full-rank k-subsets.
SubsetFit best_subset_of_size(const Matrix& phi, const Vector& y, int k, Execution exec);

/// Every full-rank k-subset whose RSS is <= bound, in lexicographic order.
std::vector<std::vector<int>> subsets_with_rss_at_most(const Matrix& phi, const Vector& y, int k,
                                                       double bound, Execution exec);

/// Number of OpenMP threads the parallel path will use (1 without OpenMP).
int max_threads();

}  // namespace kernels
}  // namespace l0cert
