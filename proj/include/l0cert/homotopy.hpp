#pragma once

#include "l0cert/certificates.hpp"
#include "l0cert/errors.hpp"
#include "l0cert/problem.hpp"

#include <optional>
#include <vector>

namespace l0cert {

enum class EventType { Enter, Leave, Terminal };

/// What happens at the lower end of a segment. `index` is -1 for Terminal.
struct PathEvent {
    EventType type = EventType::Terminal;
    int index = -1;
};

/// One linear piece of the lasso path. Support and signs are constant on
/// [lambda_lo, lambda_hi] and x depends affinely on lambda1 there.
struct PathSegment {
    double lambda_hi = 0.0;
    double lambda_lo = 0.0;
    Support support;
    std::vector<int> signs;  // aligned with support
    CoefficientVector x_at_hi;
    CoefficientVector x_at_lo;
    PathEvent event;
};

/// Piecewise-linear lasso solution from lambda_max = 2 ||phi^T y||_inf down to the floor.
struct LassoPath {
    int m = 0;
    double lambda_max = 0.0;
    double lambda_floor = 0.0;
    std::vector<PathSegment> segments;
    std::vector<int> selection_order;     // every Enter, in order (0-based columns)
    std::vector<double> entry_lambdas;    // lambda1 at each entry
    bool complete = true;                 // false for the partial path inside DegenerateTie

    double lambda_hi() const noexcept;
    double lambda_lo() const noexcept;
};

/// Two or more events landed within the tie tolerance. Carries the path up to the tie.
class DegenerateTie : public Error {
public:
    DegenerateTie(std::vector<int> indices, double lambda, LassoPath partial);
    const std::vector<int>& indices() const noexcept { return indices_; }
    double lambda() const noexcept { return lambda_; }
    const LassoPath& partial_path() const noexcept { return partial_; }

private:
    std::vector<int> indices_;
    double lambda_;
    LassoPath partial_;
};

/// Relative (to lambda_max) separation below which two path events count as simultaneous.
inline constexpr double kPathTieTolerance = 1e-10;

/// Lasso homotopy with LARS-style entry: follows the active set from lambda_max
/// down to lambda_floor, entering the inactive column whose correlation reaches the
/// active level and dropping an active column whose coefficient crosses zero.
/// Throws DegenerateTie or RankDeficient.
LassoPath solve_path(const ProblemInstance& instance, double lambda_floor = 0.0);

/// Linear interpolation inside the containing segment; zero above lambda_max.
/// Throws OutOfRange below the floor.
CoefficientVector solution_at_lambda(const LassoPath& path, double lambda1);

/// Certificates for one support visited by the path.
struct SupportCertificates {
    Support support;
    double lambda_hi = 0.0;  // +inf for the empty support above lambda_max
    double lambda_lo = 0.0;
    Certificate no_smaller;
    Certificate subset;
    std::optional<Certificate> bounded;
};

/// Runs the support certificates on every distinct support along the path,
/// starting with the empty support above lambda_max.
std::vector<SupportCertificates> certify_path(
    const ProblemInstance& instance, const LassoPath& path, double lambda0,
    std::optional<int> M_hint = std::nullopt,
    const EnumerationLimits& limits = EnumerationLimits::from_environment());

/// Same, with precomputed tables; `tables.gap` must cover the largest support when M_hint is set.
std::vector<SupportCertificates> certify_path(const ProblemInstance& instance, const LassoPath& path,
                                              double lambda0, std::optional<int> M_hint,
                                              const CertificationTables& tables);

/// Largest support size along the path.
int max_support_size(const LassoPath& path);

}  // namespace l0cert
