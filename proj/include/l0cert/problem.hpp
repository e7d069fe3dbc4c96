#pragma once

#include <Eigen/Dense>

#include <compare>
#include <span>
#include <vector>

namespace l0cert {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Entries with |x_i| <= kZeroTolerance * ||x||_inf count as zero.
inline constexpr double kZeroTolerance = 1e-9;
/// Relative pivot threshold below which a column submatrix is declared singular.
inline constexpr double kRankTolerance = 1e-10;
/// Column norms and means are checked against this when deciding the standardized flag.
inline constexpr double kStandardizedTolerance = 1e-10;

/// Sorted, duplicate-free subset of the column indices {0, ..., m-1}.
///
/// Indices are 0-based in code. Every external format (JSON, CLI) uses 1-based
/// indices; convert with one_based() / from_one_based().
class Support {
public:
    Support() = default;
    /// Throws InvalidArgument unless `indices` is strictly increasing within [0, m).
    Support(std::vector<int> indices, int m);

    static Support from_unsorted(std::vector<int> indices, int m);
    static Support from_one_based(const std::vector<int>& indices, int m);
    static Support full(int m);

    const std::vector<int>& indices() const noexcept { return indices_; }
    int size() const noexcept { return static_cast<int>(indices_.size()); }
    bool empty() const noexcept { return indices_.empty(); }
    int universe() const noexcept { return m_; }
    bool contains(int index) const;
    bool is_subset_of(const Support& other) const;
    Support complement() const;
    std::vector<int> one_based() const;

    auto begin() const noexcept { return indices_.begin(); }
    auto end() const noexcept { return indices_.end(); }

    bool operator==(const Support& other) const noexcept { return indices_ == other.indices_; }
    /// Smaller cardinality first, then lexicographic.
    std::strong_ordering operator<=>(const Support& other) const noexcept;

private:
    std::vector<int> indices_;
    int m_ = 0;
};

struct CoefficientVector {
    Vector values;

    CoefficientVector() = default;
    explicit CoefficientVector(Vector v) : values(std::move(v)) {}
    static CoefficientVector zeros(int m) { return CoefficientVector(Vector::Zero(m)); }

    int size() const noexcept { return static_cast<int>(values.size()); }
    Support support(double tau = kZeroTolerance) const;
    int l0_norm(double tau = kZeroTolerance) const { return support(tau).size(); }
    double l1_norm() const { return values.lpNorm<1>(); }
};

/// Immutable regression instance: model matrix phi (n x m) and response y.
class ProblemInstance {
public:
    /// Throws InvalidArgument on dimension mismatch, non-finite data, or n < m.
    ProblemInstance(Matrix phi, Vector y, bool centered = false);

    const Matrix& phi() const noexcept { return phi_; }
    const Vector& y() const noexcept { return y_; }
    int n() const noexcept { return static_cast<int>(phi_.rows()); }
    int m() const noexcept { return static_cast<int>(phi_.cols()); }
    auto column(int i) const { return phi_.col(i); }

    bool full_column_rank() const noexcept { return full_column_rank_; }
    bool standardized() const noexcept { return standardized_; }
    bool centered() const noexcept { return centered_; }

    /// Columns of phi restricted to `omega`, in index order.
    Matrix submatrix(const Support& omega) const;

private:
    Matrix phi_;
    Vector y_;
    bool centered_ = false;
    bool full_column_rank_ = false;
    bool standardized_ = false;
};

struct Residual {
    Vector values;        // y - phi x
    Vector correlations;  // phi^T (y - phi x)
};

Residual residual(const ProblemInstance& instance, const CoefficientVector& x);
double rss(const ProblemInstance& instance, const CoefficientVector& x);

struct StandardizeResult {
    ProblemInstance instance;
    Vector scales;  // original column norms (after centering)
    Vector means;   // zero unless centering was requested

    /// Maps coefficients fitted on the standardized columns back to the original scale.
    CoefficientVector back_transform(const CoefficientVector& x) const;
};

/// Rescales every column to unit Euclidean norm, optionally centering first. The
/// response is left untouched. Throws ZeroColumn when a column norm is <= 1e-12.
StandardizeResult standardize(const ProblemInstance& instance, bool center);

/// Pivoted QR of a column subset; solves the least-squares and Gram systems on it.
class ColumnSubsetQR {
public:
    /// Throws RankDeficient(omega) when the columns are dependent within kRankTolerance.
    ColumnSubsetQR(const ProblemInstance& instance, const Support& omega);

    const Support& support() const noexcept { return omega_; }
    /// argmin_w ||rhs - phi_omega w||, length |omega|.
    Vector least_squares(const Eigen::Ref<const Vector>& rhs) const;
    /// (phi_omega^T phi_omega)^{-1} v.
    Vector gram_solve(const Eigen::Ref<const Vector>& v) const;

private:
    Support omega_;
    Eigen::ColPivHouseholderQR<Matrix> qr_;
};

/// Minimizer of the RSS subject to supp(x) within omega (x = 0 for the empty support).
CoefficientVector restricted_least_squares(const ProblemInstance& instance, const Support& omega);

double p0_objective(const ProblemInstance& instance, const CoefficientVector& x, double lambda0);
double p1_objective(const ProblemInstance& instance, const CoefficientVector& x, double lambda1);

/// Scatters `local` (indexed by position in omega) into a length-m coefficient vector.
CoefficientVector scatter(const Support& omega, const Eigen::Ref<const Vector>& local, int m);
/// Gathers x at the positions listed in omega.
Vector gather(const Support& omega, const Vector& x);

}  // namespace l0cert
