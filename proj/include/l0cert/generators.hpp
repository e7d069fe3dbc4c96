#pragma once

#include "l0cert/problem.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace l0cert {

/// Parameters of the instance on which the lasso path picks every wrong column first.
/// Requires 1 <= A < m and 1 > a_1 > ... > a_{m-A} > 1/sqrt(A).
struct ExtremeExampleSpec {
    int m = 0;
    int A = 0;
    std::vector<double> a;
};

/// n = m. The last A columns are Dirac vectors, s is their normalized sum, the first
/// m - A columns are a_j s + sqrt(1 - a_j^2) delta_j, and y = s.
/// Throws SpecViolation naming the broken inequality.
ProblemInstance make_extreme(const ExtremeExampleSpec& spec);

/// Stacks diag(a) over the first k columns, an m x m identity, and n - k - m zero
/// rows; centers and unit-normalizes the columns. y is the sum of the first k
/// columns as built, before standardization. Requires n > m > k, n >= m + k and
/// |a_1| >= ... >= |a_k|.
ProblemInstance make_restrictive(int n, int m, int k, const std::vector<double>& a);

struct OrthonormalSpec {
    int n = 0;
    int m = 0;
    std::vector<double> coeffs;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> noise_seed;  // adds N(0, noise_sigma^2) noise to y when set
    double noise_sigma = 0.0;
};

/// Q factor of a seeded Gaussian n x m matrix; y = phi coeffs (+ noise).
ProblemInstance make_orthonormal(const OrthonormalSpec& spec);

}  // namespace l0cert
