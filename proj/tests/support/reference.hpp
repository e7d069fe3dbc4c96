#pragma once

// Independent reference implementations used only by the tests. They share no
// code with the library beyond the Eigen types.

#include "l0cert/problem.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace ref {

using l0cert::Matrix;
using l0cert::Vector;

/// Minimizer of ||y - phi x||^2 + lambda1 ||x||_1 by cyclic coordinate descent.
/// Stops when the largest coordinate move of a sweep falls below tol.
Vector coordinate_descent_lasso(const Matrix& phi, const Vector& y, double lambda1, double tol = 1e-13,
                                int max_sweeps = 1'000'000);

double lasso_objective(const Matrix& phi, const Vector& y, const Vector& x, double lambda1);

Vector soft_threshold(const Vector& z, double t);

/// Normal-equation RSS of y on the columns set in `mask`; +inf when the Gram matrix is singular.
double subset_rss(const Matrix& phi, const Vector& y, std::uint32_t mask);
Vector subset_fit(const Matrix& phi, const Vector& y, std::uint32_t mask);

struct BestSubsets {
    std::vector<double> rss;            // per exact cardinality
    std::vector<std::uint32_t> argmin;  // mask achieving it (lowest mask among ties)
};
BestSubsets best_subsets(const Matrix& phi, const Vector& y);

/// min over supports of exact size k of the least Gram eigenvalue (self-adjoint eigensolver).
double min_gram_eigenvalue(const Matrix& phi, int k);

/// sup over |I| = s, j outside I of ||pinv(phi_I) phi_j|| via complete orthogonal decomposition.
double max_pinv_norm(const Matrix& phi, int s);

std::vector<int> mask_to_indices(std::uint32_t mask);
std::uint32_t indices_to_mask(const std::vector<int>& indices);

/// Gaussian n x m matrix with unit-norm columns; y is a k-sparse combination plus noise.
struct RandomInstance {
    Matrix phi;
    Vector y;
    std::vector<int> truth;
};
RandomInstance random_instance(std::mt19937_64& rng, int n, int m, int k, double coef_scale, double noise,
                               double correlation = 0.0);

}  // namespace ref
