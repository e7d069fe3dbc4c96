#pragma once

#include "l0cert/errors.hpp"
#include "l0cert/problem.hpp"
#include "l0cert/spectral.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace l0cert {

enum class CertificateKind {
    NoSmallerSupport,
    SubsetOfType0,
    SubsetOfType0Bounded,
    Type1KKT,
    Concurrent,
    MostCorrelatedType0,
    MostCorrelatedType1,
    MostCorrelatedConcurrent,
};

enum class Verdict { Certified, NotCertified, Vacuous };

const char* to_string(CertificateKind kind);
const char* to_string(Verdict verdict);

/// Outcome of one sufficiency test together with every number it was decided on.
///
/// `threshold` is the q-value the fitted magnitudes had to clear, or for the
/// inequality-style tests the smallest condition margin (LHS - RHS, oriented so
/// that >= 0 means the condition holds).
struct Certificate {
    CertificateKind kind{};
    Verdict verdict = Verdict::NotCertified;
    Support support;
    double threshold = 0.0;
    std::optional<double> lambda0;
    std::optional<double> lambda1;
    std::map<std::string, double> witness;
    std::map<std::string, std::vector<double>> witness_vectors;
    std::vector<std::string> notes;

    bool certified() const noexcept { return verdict == Verdict::Certified; }
};

/// sigma^2 values at or below this count as zero; thresholds that divide by them are vacuous.
inline constexpr double kSigmaFloor = 1e-12;

/// Thrown by the q-threshold functions when a needed sigma^2_min or lambda(k; m) is not positive.
class VacuousConstant : public Error {
public:
    using Error::Error;
};

/// sup over j in {0, .., k-1} of
///   [c(b,1) + sqrt(c^2(b, k+j) + (k-j) lambda0 sigma^2_{k+j})] / sigma^2_{k+j},
/// with b = phi^T eps and k + j clamped to m.
double q1_threshold(const SigmaMinTable& sigma, const Residual& residual, int k, double lambda0);

/// max(q1, q2) where q2 takes the same term over j in {k, .., m_cap}; negative radicands clamp to 0.
/// m_cap < 0 selects the number of covariates.
double q_threshold(const SigmaMinTable& sigma, const Residual& residual, int k, double lambda0,
                   int m_cap = -1);

/// sup over j in {0, .., M} of
///   [c(b,1) + sqrt(c^2(b,k) + lambda0 k^2 (k-j)/(k+j)^2 sigma^2_k lambda^2(k; j))]
///     / [(k/(k+j)) sigma^2_k lambda^2(k; j)].
/// The j = 0 term covers an empty competing support. Throws VacuousConstant when
/// sigma^2_k or any lambda(k; j), 1 <= j <= M, is not positive.
double q_prime_threshold(const SigmaMinTable& sigma, const PseudoInverseGapTable& gap,
                         const Residual& residual, int k, int M, double lambda0);

/// Precomputed constant tables shared by the support certificates of one instance.
struct CertificationTables {
    SigmaMinTable sigma;
    std::optional<PseudoInverseGapTable> gap;

    /// sigma up to m; gap up to `gap_size` when positive.
    static CertificationTables compute(const ProblemInstance& instance, int gap_size,
                                       const EnumerationLimits& limits = EnumerationLimits::from_environment(),
                                       Execution exec = Execution::Parallel);
};

Certificate certify_no_smaller_support(const ProblemInstance& instance, const Support& omega,
                                       double lambda0, const CertificationTables& tables);
Certificate certify_no_smaller_support(const ProblemInstance& instance, const Support& omega,
                                       double lambda0);

Certificate certify_subset_of_type0(const ProblemInstance& instance, const Support& omega,
                                    double lambda0, const CertificationTables& tables, int m_cap = -1);
Certificate certify_subset_of_type0(const ProblemInstance& instance, const Support& omega,
                                    double lambda0);

/// `tables.gap` must cover |omega|.
Certificate certify_subset_of_type0_bounded(const ProblemInstance& instance, const Support& omega,
                                            int M, double lambda0, const CertificationTables& tables);
Certificate certify_subset_of_type0_bounded(const ProblemInstance& instance, const Support& omega,
                                            int M, double lambda0);

/// Optimality conditions of the l1 problem for x. Certified iff on the support of x
/// phi_I^T (y - phi x) = (lambda1/2) sign(x_I) within tol and every off-support
/// correlation is at most lambda1/2 + tol in magnitude. lambda1 must be positive.
Certificate kkt_check_type1(const ProblemInstance& instance, const CoefficientVector& x,
                            double lambda1, double tol);

/// (lambda1/2) phi_1 (phi_1^T phi_1)^{-1} sign over the columns in `support`. Every
/// column in the support has inner product (lambda1/2) sign_i with the result.
Vector equiangular_diff(const ProblemInstance& instance, const Support& support, double lambda1,
                        const std::vector<int>& signs);

enum class ConcurrencyMode {
    Certificate,  // l0 side decided by certify_subset_of_type0
    Oracle,       // l0 side decided by exhaustive search
};

/// Tests whether `support` is optimal for both problems. The l1 solution on the
/// support is recovered from the least-squares fit through a sign fixed point.
Certificate concurrent_check(const ProblemInstance& instance, const Support& support, double lambda0,
                             double lambda1, ConcurrencyMode mode = ConcurrencyMode::Oracle,
                             const EnumerationLimits& limits = EnumerationLimits::from_environment());

/// Correlations z = phi^T y ordered by decreasing magnitude.
struct CorrelationOrder {
    Vector z;                  // original order
    std::vector<int> order;    // order[r] = column holding the (r+1)-th largest |z|
    std::vector<std::string> warnings;

    double ranked(int r) const { return z[order[static_cast<std::size_t>(r)]]; }
};

/// Throws TiedCorrelations when |z_(k)| and |z_(k+1)| tie within tolerance; other
/// ties are broken by column index and reported in `warnings`.
CorrelationOrder order_correlations(const ProblemInstance& instance, int k);

Certificate most_correlated_type0(const ProblemInstance& instance, int k, double lambda0);
Certificate most_correlated_type1(const ProblemInstance& instance, int k, double lambda1);
Certificate most_correlated_concurrent(const ProblemInstance& instance, int k, double lambda0,
                                       double lambda1);

}  // namespace l0cert
