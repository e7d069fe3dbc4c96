#include "l0cert/problem.hpp"

#include "l0cert/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace l0cert {

namespace {

std::string join_one_based(const std::vector<int>& indices) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (i) os << ',';
        os << indices[i] + 1;
    }
    os << '}';
    return os.str();
}

}  // namespace

RankDeficient::RankDeficient(std::vector<int> indices)
    : Error("column subset " + join_one_based(indices) + " is rank deficient"),
      indices_(std::move(indices)) {}

TooLarge::TooLarge(unsigned long long requested, unsigned long long cap)
    : Error("enumeration of " + std::to_string(requested) + " subsets exceeds the cap of " +
            std::to_string(cap) + " (use --force or L0CERT_MAX_SUBSETS)"),
      requested_(requested),
      cap_(cap) {}

Support::Support(std::vector<int> indices, int m) : indices_(std::move(indices)), m_(m) {
    if (m < 0) throw InvalidArgument("support universe must be nonnegative");
    for (std::size_t i = 0; i < indices_.size(); ++i) {
        if (indices_[i] < 0 || indices_[i] >= m)
            throw InvalidArgument("support index " + std::to_string(indices_[i] + 1) +
                                  " outside [1, " + std::to_string(m) + "]");
        if (i > 0 && indices_[i] <= indices_[i - 1])
            throw InvalidArgument("support indices must be strictly increasing");
    }
}

Support Support::from_unsorted(std::vector<int> indices, int m) {
    std::sort(indices.begin(), indices.end());
    if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
        throw InvalidArgument("duplicate support index");
    return Support(std::move(indices), m);
}

Support Support::from_one_based(const std::vector<int>& indices, int m) {
    std::vector<int> zero_based;
    zero_based.reserve(indices.size());
    for (int i : indices) zero_based.push_back(i - 1);
    return from_unsorted(std::move(zero_based), m);
}

Support Support::full(int m) {
    std::vector<int> all(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) all[static_cast<std::size_t>(i)] = i;
    return Support(std::move(all), m);
}

bool Support::contains(int index) const {
    return std::binary_search(indices_.begin(), indices_.end(), index);
}

bool Support::is_subset_of(const Support& other) const {
    return std::includes(other.indices_.begin(), other.indices_.end(), indices_.begin(),
                         indices_.end());
}

Support Support::complement() const {
    std::vector<int> rest;
    for (int i = 0; i < m_; ++i)
        if (!contains(i)) rest.push_back(i);
    return Support(std::move(rest), m_);
}

std::vector<int> Support::one_based() const {
    std::vector<int> out(indices_);
    for (int& i : out) ++i;
    return out;
}

std::strong_ordering Support::operator<=>(const Support& other) const noexcept {
    if (auto c = indices_.size() <=> other.indices_.size(); c != 0) return c;
    return indices_ <=> other.indices_;
}

Support CoefficientVector::support(double tau) const {
    std::vector<int> nz;
    const double scale = values.size() ? values.cwiseAbs().maxCoeff() : 0.0;
    const double cut = tau * scale;
    for (Eigen::Index i = 0; i < values.size(); ++i)
        if (scale > 0.0 && std::abs(values[i]) > cut) nz.push_back(static_cast<int>(i));
    return Support(std::move(nz), static_cast<int>(values.size()));
}

ProblemInstance::ProblemInstance(Matrix phi, Vector y, bool centered)
    : phi_(std::move(phi)), y_(std::move(y)), centered_(centered) {
    if (phi_.rows() == 0 || phi_.cols() == 0)
        throw InvalidArgument("model matrix must be nonempty");
    if (phi_.rows() != y_.size())
        throw InvalidArgument("response length " + std::to_string(y_.size()) +
                              " does not match " + std::to_string(phi_.rows()) + " matrix rows");
    if (phi_.rows() < phi_.cols())
        throw InvalidArgument("underdetermined instance: n = " + std::to_string(phi_.rows()) +
                              " < m = " + std::to_string(phi_.cols()));
    if (!phi_.allFinite() || !y_.allFinite())
        throw InvalidArgument("instance contains non-finite values");

    Eigen::ColPivHouseholderQR<Matrix> qr(phi_);
    qr.setThreshold(kRankTolerance);
    full_column_rank_ = qr.rank() == phi_.cols();

    bool unit = true;
    for (Eigen::Index j = 0; j < phi_.cols(); ++j) {
        if (std::abs(phi_.col(j).norm() - 1.0) > kStandardizedTolerance) unit = false;
        if (centered_ && std::abs(phi_.col(j).mean()) > kStandardizedTolerance) unit = false;
    }
    standardized_ = unit;
}

Matrix ProblemInstance::submatrix(const Support& omega) const {
    Matrix sub(phi_.rows(), omega.size());
    for (int c = 0; c < omega.size(); ++c) sub.col(c) = phi_.col(omega.indices()[c]);
    return sub;
}

Residual residual(const ProblemInstance& instance, const CoefficientVector& x) {
    Residual r;
    r.values = instance.y() - instance.phi() * x.values;
    r.correlations = instance.phi().transpose() * r.values;
    return r;
}

double rss(const ProblemInstance& instance, const CoefficientVector& x) {
    return (instance.y() - instance.phi() * x.values).squaredNorm();
}

CoefficientVector StandardizeResult::back_transform(const CoefficientVector& x) const {
    return CoefficientVector(x.values.cwiseQuotient(scales));
}

StandardizeResult standardize(const ProblemInstance& instance, bool center) {
    Matrix phi = instance.phi();
    Vector means = Vector::Zero(phi.cols());
    Vector scales(phi.cols());
    for (Eigen::Index j = 0; j < phi.cols(); ++j) {
        if (center) {
            means[j] = phi.col(j).mean();
            phi.col(j).array() -= means[j];
        }
        const double norm = phi.col(j).norm();
        if (!(norm > 1e-12)) throw ZeroColumn(static_cast<int>(j));
        scales[j] = norm;
        phi.col(j) /= norm;
    }
    return {ProblemInstance(std::move(phi), instance.y(), center || instance.centered()),
            std::move(scales), std::move(means)};
}

ColumnSubsetQR::ColumnSubsetQR(const ProblemInstance& instance, const Support& omega)
    : omega_(omega), qr_(instance.submatrix(omega)) {
    qr_.setThreshold(kRankTolerance);
    if (qr_.rank() != omega.size()) throw RankDeficient(omega.indices());
}

Vector ColumnSubsetQR::least_squares(const Eigen::Ref<const Vector>& rhs) const {
    return qr_.solve(rhs);
}

Vector ColumnSubsetQR::gram_solve(const Eigen::Ref<const Vector>& v) const {
    // phi P = Q R  =>  G = P R^T R P^T
    const Eigen::Index k = omega_.size();
    const auto r = qr_.matrixQR().topLeftCorner(k, k).template triangularView<Eigen::Upper>();
    Vector w = qr_.colsPermutation().transpose() * v;
    r.transpose().solveInPlace(w);
    r.solveInPlace(w);
    return qr_.colsPermutation() * w;
}

CoefficientVector scatter(const Support& omega, const Eigen::Ref<const Vector>& local, int m) {
    Vector x = Vector::Zero(m);
    for (int c = 0; c < omega.size(); ++c) x[omega.indices()[c]] = local[c];
    return CoefficientVector(std::move(x));
}

Vector gather(const Support& omega, const Vector& x) {
    Vector local(omega.size());
    for (int c = 0; c < omega.size(); ++c) local[c] = x[omega.indices()[c]];
    return local;
}

CoefficientVector restricted_least_squares(const ProblemInstance& instance, const Support& omega) {
    if (omega.empty()) return CoefficientVector::zeros(instance.m());
    ColumnSubsetQR qr(instance, omega);
    return scatter(omega, qr.least_squares(instance.y()), instance.m());
}

double p0_objective(const ProblemInstance& instance, const CoefficientVector& x, double lambda0) {
    if (lambda0 < 0.0) throw InvalidArgument("lambda0 must be nonnegative");
    return rss(instance, x) + lambda0 * x.l0_norm();
}

double p1_objective(const ProblemInstance& instance, const CoefficientVector& x, double lambda1) {
    if (lambda1 < 0.0) throw InvalidArgument("lambda1 must be nonnegative");
    return rss(instance, x) + lambda1 * x.l1_norm();
}

}  // namespace l0cert
