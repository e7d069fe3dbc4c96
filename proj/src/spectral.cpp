#include "l0cert/spectral.hpp"

#include "l0cert/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace l0cert {

SigmaMinTable SigmaMinTable::compute(const ProblemInstance& instance, int k_max,
                                     const EnumerationLimits& limits, Execution exec) {
    const int m = instance.m();
    if (k_max < 1 || k_max > m)
        throw InvalidArgument("sigma table size must lie in [1, " + std::to_string(m) + "]");
    limits.check(count_subsets(m, 1, k_max));

    const Matrix gram = instance.phi().transpose() * instance.phi();
    SigmaMinTable table;
    table.m_ = m;
    double running = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= k_max; ++k) {
        const double exact = kernels::min_gram_eigenvalue(gram, k, exec);
        running = std::min(running, exact);
        table.exact_.push_back(exact);
        table.values_.push_back(running);
    }
    return table;
}

double SigmaMinTable::at(int k) const {
    if (k < 1) throw InvalidArgument("sigma_min_sq needs k >= 1");
    if (k >= m_) k = m_;
    if (k > k_max())
        throw OutOfRange("sigma table holds k <= " + std::to_string(k_max()) + ", asked for " +
                         std::to_string(k));
    return values_[static_cast<std::size_t>(k - 1)];
}

double sigma_min_sq(const ProblemInstance& instance, int k, const EnumerationLimits& limits) {
    if (k < 1 || k > instance.m())
        throw InvalidArgument("sigma_min_sq needs 1 <= k <= m");
    return SigmaMinTable::compute(instance, k, limits).at(k);
}

double c_stat(const Vector& v, int k) {
    if (k < 1) throw InvalidArgument("c_stat needs k >= 1");
    std::vector<double> sq(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) sq[static_cast<std::size_t>(i)] = v[i] * v[i];
    const auto take = std::min<std::size_t>(static_cast<std::size_t>(k), sq.size());
    std::partial_sort(sq.begin(), sq.begin() + static_cast<std::ptrdiff_t>(take), sq.end(),
                      std::greater<>());
    double sum = 0.0;
    for (std::size_t i = 0; i < take; ++i) sum += sq[i];
    return std::sqrt(sum);
}

double mutual_coherence(const ProblemInstance& instance) {
    if (!instance.standardized()) throw NotStandardized();
    const Matrix gram = instance.phi().transpose() * instance.phi();
    double mu = 0.0;
    for (Eigen::Index i = 0; i < gram.rows(); ++i)
        for (Eigen::Index j = i + 1; j < gram.cols(); ++j) mu = std::max(mu, std::abs(gram(i, j)));
    return mu;
}

PseudoInverseGapTable PseudoInverseGapTable::compute(const ProblemInstance& instance, int max_size,
                                                     const EnumerationLimits& limits, Execution exec) {
    const int m = instance.m();
    if (max_size < 1 || max_size > m)
        throw InvalidArgument("gap table size must lie in [1, " + std::to_string(m) + "]");
    // The full index set has no outside column, so size m adds nothing beyond m - 1.
    const int enumerated = std::min(max_size, m - 1);
    limits.check(count_subsets(m, 1, enumerated));

    PseudoInverseGapTable table;
    double running = 0.0;
    for (int s = 1; s <= max_size; ++s) {
        if (s <= enumerated) running = std::max(running, kernels::max_pinv_column_norm(instance.phi(), s, exec));
        table.sup_norms_.push_back(running);
    }
    return table;
}

double PseudoInverseGapTable::sup_norm(int size) const {
    if (size < 1 || size > max_size())
        throw OutOfRange("gap table holds sizes 1.." + std::to_string(max_size()) + ", asked for " +
                         std::to_string(size));
    return sup_norms_[static_cast<std::size_t>(size - 1)];
}

double PseudoInverseGapTable::lambda(int size, double multiplier) const {
    if (multiplier < 0.0) throw InvalidArgument("gap multiplier must be nonnegative");
    if (multiplier == 0.0) return 1.0;
    return 1.0 - multiplier / std::sqrt(static_cast<double>(size)) * sup_norm(size);
}

double pseudo_inverse_gap(const ProblemInstance& instance, int m_size, double multiplier,
                          const EnumerationLimits& limits) {
    if (m_size < 1 || m_size > instance.m() - 1)
        throw InvalidArgument("pseudo_inverse_gap needs 1 <= m_size <= m - 1");
    if (multiplier < 0.0) throw InvalidArgument("gap multiplier must be nonnegative");
    return PseudoInverseGapTable::compute(instance, m_size, limits).lambda(m_size, multiplier);
}

}  // namespace l0cert
