#include "l0cert/certificates.hpp"

#include "l0cert/errors.hpp"
#include "l0cert/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <set>

namespace l0cert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kKktTolerance = 1e-7;
/// Relative gap below which two correlation magnitudes count as tied.
constexpr double kCorrelationTieTolerance = 1e-12;
/// The sign fixed point gives up after this many distinct sign patterns.
constexpr std::size_t kMaxSignPatterns = std::size_t{1} << 20;

// Prefix sums of the squared magnitudes of b in decreasing order, so that
// c(b, k)^2 is a lookup.
class OrderedSquares {
public:
    explicit OrderedSquares(const Vector& b) {
        std::vector<double> sq(static_cast<std::size_t>(b.size()));
        for (Eigen::Index i = 0; i < b.size(); ++i) sq[static_cast<std::size_t>(i)] = b[i] * b[i];
        std::sort(sq.begin(), sq.end(), std::greater<>());
        prefix_.resize(sq.size() + 1, 0.0);
        std::partial_sum(sq.begin(), sq.end(), prefix_.begin() + 1);
    }
    double c_sq(int k) const {
        const auto kk = std::min<std::size_t>(static_cast<std::size_t>(std::max(k, 0)), prefix_.size() - 1);
        return prefix_[kk];
    }
    double c1() const { return std::sqrt(c_sq(1)); }

private:
    std::vector<double> prefix_;
};

// One term of the q1 / q2 suprema: competing support of size j against |omega| = k.
double direct_term(const SigmaMinTable& sigma, const OrderedSquares& b, int k, int j, double lambda0) {
    const int kk = std::min(k + j, sigma.m());
    const double s = sigma.at(kk);
    if (s <= kSigmaFloor)
        throw VacuousConstant("sigma^2_min," + std::to_string(kk) + " is not positive");
    const double radicand = std::max(0.0, b.c_sq(kk) + static_cast<double>(k - j) * lambda0 * s);
    return (b.c1() + std::sqrt(radicand)) / s;
}

double sup_direct(const SigmaMinTable& sigma, const Residual& residual, int k, double lambda0, int j_lo,
                  int j_hi) {
    const OrderedSquares b(residual.correlations);
    double sup = -kInf;
    for (int j = j_lo; j <= j_hi; ++j) sup = std::max(sup, direct_term(sigma, b, k, j, lambda0));
    return sup;
}

int resolve_cap(const SigmaMinTable& sigma, int m_cap) { return m_cap < 0 ? sigma.m() : m_cap; }

struct Fit {
    CoefficientVector x;
    Residual residual;
    double min_abs = kInf;
};

Fit fit_support(const ProblemInstance& instance, const Support& omega) {
    Fit fit;
    fit.x = restricted_least_squares(instance, omega);
    fit.residual = residual(instance, fit.x);
    for (int i : omega) fit.min_abs = std::min(fit.min_abs, std::abs(fit.x.values[i]));
    return fit;
}

Certificate base_certificate(CertificateKind kind, const Support& omega) {
    Certificate cert;
    cert.kind = kind;
    cert.support = omega;
    return cert;
}

void decide_by_threshold(Certificate& cert, const Fit& fit, double threshold) {
    cert.threshold = threshold;
    cert.witness["min_abs_coefficient"] = fit.min_abs;
    cert.witness["residual_norm"] = fit.residual.values.norm();
    cert.witness["c1_correlation"] = fit.residual.correlations.cwiseAbs().maxCoeff();
    cert.verdict = fit.min_abs > threshold ? Verdict::Certified : Verdict::NotCertified;
}

void mark_vacuous(Certificate& cert, const VacuousConstant& e) {
    cert.verdict = Verdict::Vacuous;
    cert.threshold = kInf;
    cert.notes.emplace_back(e.what());
}

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

Certificate kkt_evaluate(const ProblemInstance& instance, const CoefficientVector& x, double lambda1,
                         double tol) {
    Certificate cert = base_certificate(CertificateKind::Type1KKT, x.support());
    cert.lambda1 = lambda1;
    cert.threshold = tol;
    const Residual r = residual(instance, x);
    const double half = 0.5 * lambda1;

    double on_violation = 0.0;
    for (int i : cert.support)
        on_violation = std::max(on_violation,
                                std::abs(r.correlations[i] - half * sign_of(x.values[i])));
    std::vector<double> omega;
    double off_max = 0.0;
    for (int j = 0; j < instance.m(); ++j) {
        if (cert.support.contains(j)) continue;
        omega.push_back(r.correlations[j]);
        off_max = std::max(off_max, std::abs(r.correlations[j]));
    }
    const double off_violation = std::max(0.0, off_max - half);

    cert.witness["half_lambda1"] = half;
    cert.witness["max_support_violation"] = on_violation;
    cert.witness["omega_inf_norm"] = off_max;
    cert.witness["max_offsupport_violation"] = off_violation;
    cert.witness["worst_violation"] = std::max(on_violation, off_violation);
    cert.witness_vectors["omega"] = std::move(omega);
    cert.verdict = (on_violation <= tol && off_violation <= tol) ? Verdict::Certified
                                                                 : Verdict::NotCertified;
    return cert;
}

std::vector<double> to_std(const Vector& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

const char* to_string(CertificateKind kind) {
    switch (kind) {
        case CertificateKind::NoSmallerSupport: return "NoSmallerSupport";
        case CertificateKind::SubsetOfType0: return "SubsetOfType0";
        case CertificateKind::SubsetOfType0Bounded: return "SubsetOfType0Bounded";
        case CertificateKind::Type1KKT: return "Type1KKT";
        case CertificateKind::Concurrent: return "Concurrent";
        case CertificateKind::MostCorrelatedType0: return "MostCorrelatedType0";
        case CertificateKind::MostCorrelatedType1: return "MostCorrelatedType1";
        case CertificateKind::MostCorrelatedConcurrent: return "MostCorrelatedConcurrent";
    }
    return "?";
}

const char* to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::Certified: return "Certified";
        case Verdict::NotCertified: return "NotCertified";
        case Verdict::Vacuous: return "Vacuous";
    }
    return "?";
}

double q1_threshold(const SigmaMinTable& sigma, const Residual& residual, int k, double lambda0) {
    if (k < 1) throw InvalidArgument("q1 needs k >= 1");
    if (lambda0 < 0.0) throw InvalidArgument("lambda0 must be nonnegative");
    return sup_direct(sigma, residual, k, lambda0, 0, k - 1);
}

double q_threshold(const SigmaMinTable& sigma, const Residual& residual, int k, double lambda0,
                   int m_cap) {
    const double q1 = q1_threshold(sigma, residual, k, lambda0);
    const int cap = resolve_cap(sigma, m_cap);
    if (cap < k) return q1;
    return std::max(q1, sup_direct(sigma, residual, k, lambda0, k, cap));
}

double q_prime_threshold(const SigmaMinTable& sigma, const PseudoInverseGapTable& gap,
                         const Residual& residual, int k, int M, double lambda0) {
    if (k < 1) throw InvalidArgument("q' needs k >= 1");
    if (M < 0) throw InvalidArgument("q' needs M >= 0");
    if (lambda0 < 0.0) throw InvalidArgument("lambda0 must be nonnegative");
    const double s = sigma.at(k);
    if (s <= kSigmaFloor) throw VacuousConstant("sigma^2_min," + std::to_string(k) + " is not positive");

    const OrderedSquares b(residual.correlations);
    const double kd = k;
    double sup = -kInf;
    for (int j = 0; j <= M; ++j) {
        const double lam = gap.lambda(k, j);
        if (lam <= 0.0)
            throw VacuousConstant("lambda(" + std::to_string(k) + "; " + std::to_string(j) +
                                  ") = " + std::to_string(lam) + " is not positive");
        const double jd = j;
        const double scale = s * lam * lam;
        const double radicand =
            std::max(0.0, b.c_sq(k) + lambda0 * kd * kd * (kd - jd) / ((kd + jd) * (kd + jd)) * scale);
        sup = std::max(sup, (b.c1() + std::sqrt(radicand)) / (kd / (kd + jd) * scale));
    }
    return sup;
}

CertificationTables CertificationTables::compute(const ProblemInstance& instance, int gap_size,
                                                 const EnumerationLimits& limits, Execution exec) {
    CertificationTables t{SigmaMinTable::compute(instance, instance.m(), limits, exec), std::nullopt};
    if (gap_size > 0) t.gap = PseudoInverseGapTable::compute(instance, gap_size, limits, exec);
    return t;
}

Certificate certify_no_smaller_support(const ProblemInstance& instance, const Support& omega,
                                       double lambda0, const CertificationTables& tables) {
    Certificate cert = base_certificate(CertificateKind::NoSmallerSupport, omega);
    cert.lambda0 = lambda0;
    if (omega.empty()) {
        cert.verdict = Verdict::Certified;
        cert.notes.emplace_back("empty support: no smaller support exists");
        return cert;
    }
    const Fit fit = fit_support(instance, omega);
    try {
        const double q1 = q1_threshold(tables.sigma, fit.residual, omega.size(), lambda0);
        decide_by_threshold(cert, fit, q1);
        cert.witness["q1"] = q1;
    } catch (const VacuousConstant& e) {
        mark_vacuous(cert, e);
    }
    return cert;
}

Certificate certify_no_smaller_support(const ProblemInstance& instance, const Support& omega,
                                       double lambda0) {
    return certify_no_smaller_support(instance, omega, lambda0, CertificationTables::compute(instance, 0));
}

Certificate certify_subset_of_type0(const ProblemInstance& instance, const Support& omega,
                                    double lambda0, const CertificationTables& tables, int m_cap) {
    Certificate cert = base_certificate(CertificateKind::SubsetOfType0, omega);
    cert.lambda0 = lambda0;
    if (omega.empty()) {
        cert.verdict = Verdict::Certified;
        cert.notes.emplace_back("empty support is contained in every support");
        return cert;
    }
    const Fit fit = fit_support(instance, omega);
    const int cap = resolve_cap(tables.sigma, m_cap);
    const int k = omega.size();
    try {
        const double q1 = q1_threshold(tables.sigma, fit.residual, k, lambda0);
        const double q2 = cap >= k ? sup_direct(tables.sigma, fit.residual, k, lambda0, k, cap) : -kInf;
        const double q = std::max(q1, q2);
        decide_by_threshold(cert, fit, q);
        cert.witness["q1"] = q1;
        if (std::isfinite(q2)) cert.witness["q2"] = q2;
        cert.witness["q"] = q;
        cert.witness["m_cap"] = cap;
    } catch (const VacuousConstant& e) {
        mark_vacuous(cert, e);
    }
    return cert;
}

Certificate certify_subset_of_type0(const ProblemInstance& instance, const Support& omega,
                                    double lambda0) {
    return certify_subset_of_type0(instance, omega, lambda0, CertificationTables::compute(instance, 0));
}

Certificate certify_subset_of_type0_bounded(const ProblemInstance& instance, const Support& omega,
                                            int M, double lambda0, const CertificationTables& tables) {
    Certificate cert = base_certificate(CertificateKind::SubsetOfType0Bounded, omega);
    cert.lambda0 = lambda0;
    cert.witness["M"] = M;
    if (omega.empty()) {
        cert.verdict = Verdict::Certified;
        cert.notes.emplace_back("empty support is contained in every support");
        return cert;
    }
    const int k = omega.size();
    if (!tables.gap || tables.gap->max_size() < k)
        throw InvalidArgument("gap table does not cover support size " + std::to_string(k));
    const Fit fit = fit_support(instance, omega);
    try {
        const double qp = q_prime_threshold(tables.sigma, *tables.gap, fit.residual, k, M, lambda0);
        decide_by_threshold(cert, fit, qp);
        cert.witness["q_prime"] = qp;
        cert.witness["sigma_min_sq_k"] = tables.sigma.at(k);
        std::vector<double> lambdas;
        for (int j = 0; j <= M; ++j) lambdas.push_back(tables.gap->lambda(k, j));
        cert.witness_vectors["gap_lambda"] = std::move(lambdas);
    } catch (const VacuousConstant& e) {
        mark_vacuous(cert, e);
    }
    return cert;
}

Certificate certify_subset_of_type0_bounded(const ProblemInstance& instance, const Support& omega,
                                            int M, double lambda0) {
    const int gap_size = std::max(1, omega.size());
    return certify_subset_of_type0_bounded(instance, omega, M, lambda0,
                                           CertificationTables::compute(instance, gap_size));
}

Certificate kkt_check_type1(const ProblemInstance& instance, const CoefficientVector& x,
                            double lambda1, double tol) {
    if (!(lambda1 > 0.0)) throw InvalidArgument("kkt_check_type1 needs lambda1 > 0");
    if (x.size() != instance.m()) throw InvalidArgument("coefficient vector has wrong length");
    return kkt_evaluate(instance, x, lambda1, tol);
}

Vector equiangular_diff(const ProblemInstance& instance, const Support& support, double lambda1,
                        const std::vector<int>& signs) {
    if (static_cast<int>(signs.size()) != support.size())
        throw InvalidArgument("sign vector length must match the support");
    if (support.empty()) return Vector::Zero(instance.n());
    const ColumnSubsetQR qr(instance, support);
    Vector s(support.size());
    for (int i = 0; i < support.size(); ++i) s[i] = signs[static_cast<std::size_t>(i)];
    const Matrix sub = instance.submatrix(support);
    const Vector diff = 0.5 * lambda1 * (sub * qr.gram_solve(s));

    const Vector angles = sub.transpose() * diff;
    const double expect = 0.5 * lambda1;
    for (int i = 0; i < support.size(); ++i)
        if (std::abs(angles[i] - expect * s[i]) > 1e-9 * std::max(1.0, expect))
            throw Error("equiangular check failed at column " +
                        std::to_string(support.indices()[static_cast<std::size_t>(i)] + 1));
    return diff;
}

Certificate concurrent_check(const ProblemInstance& instance, const Support& support, double lambda0,
                             double lambda1, ConcurrencyMode mode, const EnumerationLimits& limits) {
    if (lambda0 < 0.0 || lambda1 < 0.0) throw InvalidArgument("penalties must be nonnegative");
    Certificate cert = base_certificate(CertificateKind::Concurrent, support);
    cert.lambda0 = lambda0;
    cert.lambda1 = lambda1;
    const int k = support.size();
    const double half = 0.5 * lambda1;

    // l1 side: sign fixed point x1 = x0 - (lambda1/2) G^{-1} sign(x1) on the support.
    Vector x0 = Vector::Zero(k);
    Vector x1 = Vector::Zero(k);
    Vector signs = Vector::Zero(k);
    bool converged = true;
    double identity_residual = 0.0;
    if (k > 0) {
        const ColumnSubsetQR qr(instance, support);
        x0 = qr.least_squares(instance.y());
        const double cut = kZeroTolerance * x0.cwiseAbs().maxCoeff();
        auto sign_pattern = [&](const Vector& v) {
            Vector s(v.size());
            for (Eigen::Index i = 0; i < v.size(); ++i) s[i] = std::abs(v[i]) <= cut ? 0.0 : sign_of(v[i]);
            return s;
        };
        signs = sign_pattern(x0);
        const std::size_t patterns =
            k < 20 ? std::min(kMaxSignPatterns, std::size_t{1} << k) : kMaxSignPatterns;
        std::set<std::vector<double>> visited;
        converged = false;
        std::size_t iterations = 0;
        while (iterations < patterns) {
            ++iterations;
            x1 = x0 - half * qr.gram_solve(signs);
            const Vector next = sign_pattern(x1);
            if (next == signs) {
                converged = true;
                break;
            }
            visited.insert(to_std(signs));
            if (visited.count(to_std(next))) break;
            signs = next;
        }
        cert.witness["sign_iterations"] = static_cast<double>(iterations);
        identity_residual = ((x0 - x1) - half * qr.gram_solve(signs)).cwiseAbs().maxCoeff();
    }
    cert.witness["shrinkage_identity_residual"] = identity_residual;
    cert.witness_vectors["x_l0"] = to_std(x0);
    cert.witness_vectors["x_l1"] = to_std(x1);
    cert.witness_vectors["signs"] = to_std(signs);

    bool type1 = converged;
    if (!converged) cert.notes.emplace_back("SignCycleNotConverged: sign fixed point did not settle");
    if (converged && (signs.array() == 0.0).any()) {
        type1 = false;
        cert.notes.emplace_back("l1 solution vanishes on part of the support");
    }
    if (type1) {
        const Certificate kkt = kkt_evaluate(instance, scatter(support, x1, instance.m()), lambda1,
                                             kKktTolerance);
        cert.witness["kkt_worst_violation"] = kkt.witness.at("worst_violation");
        type1 = kkt.certified() && kkt.support == support;
    }
    cert.witness["type1_optimal"] = type1 ? 1.0 : 0.0;

    bool type0 = false;
    if (mode == ConcurrencyMode::Oracle) {
        const OracleResult oracle = brute_force_p0(instance, lambda0, std::nullopt, limits);
        type0 = oracle.is_optimal(support);
        cert.witness["oracle_best_objective"] = oracle.best_objective;
        cert.witness["support_objective"] =
            p0_objective(instance, restricted_least_squares(instance, support), lambda0);
        cert.notes.emplace_back("l0 side decided by exhaustive search");
    } else {
        const Certificate sub = certify_subset_of_type0(instance, support, lambda0);
        type0 = sub.certified();
        cert.witness["q"] = sub.threshold;
        cert.notes.emplace_back("l0 side decided by the subset-of-optimal certificate (containment only)");
    }
    cert.witness["type0_optimal"] = type0 ? 1.0 : 0.0;
    cert.threshold = identity_residual;
    cert.verdict = (type0 && type1) ? Verdict::Certified : Verdict::NotCertified;
    return cert;
}

CorrelationOrder order_correlations(const ProblemInstance& instance, int k) {
    const int m = instance.m();
    if (k < 1 || k > m) throw InvalidArgument("k must lie in [1, m]");
    CorrelationOrder out;
    out.z = instance.phi().transpose() * instance.y();
    out.order.resize(static_cast<std::size_t>(m));
    std::iota(out.order.begin(), out.order.end(), 0);
    std::stable_sort(out.order.begin(), out.order.end(),
                     [&](int a, int b) { return std::abs(out.z[a]) > std::abs(out.z[b]); });

    const double tol = kCorrelationTieTolerance * std::max(1.0, out.z.cwiseAbs().maxCoeff());
    auto tied = [&](int r) { return std::abs(std::abs(out.ranked(r)) - std::abs(out.ranked(r + 1))) <= tol; };
    if (k < m && tied(k - 1))
        throw TiedCorrelations("correlation magnitudes at ranks " + std::to_string(k) + " and " +
                               std::to_string(k + 1) + " tie; the top-" + std::to_string(k) +
                               " set is not defined");
    for (int r = 0; r + 1 < m; ++r)
        if (tied(r))
            out.warnings.push_back("tied correlation magnitudes at ranks " + std::to_string(r + 1) +
                                   " and " + std::to_string(r + 2) + " broken by column index");
    return out;
}

namespace {

struct MostCorrelatedSetup {
    CorrelationOrder order;
    Support a1;
    double mu = 0.0;
    double z_k = 0.0;
    double z_next = 0.0;  // 0 when k = m
    double sum_sq = 0.0;
    std::vector<double> ranked_abs;
};

MostCorrelatedSetup setup_most_correlated(const ProblemInstance& instance, int k) {
    if (!instance.standardized()) throw NotStandardized();
    MostCorrelatedSetup s;
    s.order = order_correlations(instance, k);
    s.mu = mutual_coherence(instance);
    std::vector<int> top(s.order.order.begin(), s.order.order.begin() + k);
    s.a1 = Support::from_unsorted(top, instance.m());
    for (int r = 0; r < k; ++r) {
        const double a = std::abs(s.order.ranked(r));
        s.ranked_abs.push_back(a);
        s.sum_sq += a * a;
    }
    s.z_k = s.order.ranked(k - 1);
    s.z_next = k < instance.m() ? s.order.ranked(k) : 0.0;
    return s;
}

void record_setup(Certificate& cert, const MostCorrelatedSetup& s, int k) {
    cert.witness["k"] = k;
    cert.witness["mu"] = s.mu;
    cert.witness["z_k"] = s.z_k;
    cert.witness["z_k_plus_1"] = s.z_next;
    std::vector<double> ranked, columns;
    for (int c : s.order.order) {
        ranked.push_back(s.order.z[c]);
        columns.push_back(c + 1);
    }
    cert.witness_vectors["z_ranked"] = std::move(ranked);
    cert.witness_vectors["ranked_columns"] = std::move(columns);
    cert.notes.insert(cert.notes.end(), s.order.warnings.begin(), s.order.warnings.end());
}

}  // namespace

Certificate most_correlated_type0(const ProblemInstance& instance, int k, double lambda0) {
    if (lambda0 < 0.0) throw InvalidArgument("lambda0 must be nonnegative");
    const MostCorrelatedSetup s = setup_most_correlated(instance, k);
    Certificate cert = base_certificate(CertificateKind::MostCorrelatedType0, s.a1);
    cert.lambda0 = lambda0;
    record_setup(cert, s, k);

    const double mu = s.mu;
    const double km1 = k - 1;
    const double shrink = 1.0 - km1 * mu;
    if (shrink <= 0.0) {
        cert.verdict = Verdict::Vacuous;
        cert.threshold = -kInf;
        cert.notes.emplace_back("1 - (k-1) mu is not positive");
        return cert;
    }
    const double zk2 = s.z_k * s.z_k;
    const double zn2 = s.z_next * s.z_next;
    const double delta = instance.n() * mu;
    const double grow = 1.0 + km1 * mu;

    const double swap_lhs = shrink * zk2;
    const double swap_rhs = 2.0 * km1 * km1 * mu + zn2 * grow;
    const double excl_lhs = zn2;
    const double excl_rhs = lambda0 * (1.0 - delta) - (2.0 * k - 1.0) * mu / grow * s.sum_sq;
    const double incl_lhs = zk2;
    const double incl_rhs = lambda0 + (2.0 * k - 3.0) * mu / grow * s.sum_sq;

    const double swap_margin = swap_lhs - swap_rhs;
    const double excl_margin = excl_rhs - excl_lhs;
    const double incl_margin = incl_lhs - incl_rhs;

    cert.witness["Delta"] = delta;
    cert.witness["sum_z_sq"] = s.sum_sq;
    cert.witness["swap_lhs"] = swap_lhs;
    cert.witness["swap_rhs"] = swap_rhs;
    cert.witness["exclusion_lhs"] = excl_lhs;
    cert.witness["exclusion_rhs"] = excl_rhs;
    cert.witness["inclusion_lhs"] = incl_lhs;
    cert.witness["inclusion_rhs"] = incl_rhs;
    if (delta >= 1.0) cert.notes.emplace_back("Delta = n * mu >= 1: the exclusion bound is negative");
    if (k == 1 && zk2 < lambda0)
        cert.notes.emplace_back("k = 1 with z_1^2 < lambda0: the empty support has the lower objective");

    cert.threshold = std::min({swap_margin, excl_margin, incl_margin});
    cert.verdict = cert.threshold >= 0.0 ? Verdict::Certified : Verdict::NotCertified;
    return cert;
}

Certificate most_correlated_type1(const ProblemInstance& instance, int k, double lambda1) {
    if (lambda1 < 0.0) throw InvalidArgument("lambda1 must be nonnegative");
    const MostCorrelatedSetup s = setup_most_correlated(instance, k);
    Certificate cert = base_certificate(CertificateKind::MostCorrelatedType1, s.a1);
    cert.lambda1 = lambda1;
    record_setup(cert, s, k);

    const double shrink = 1.0 - (k - 1.0) * s.mu;
    if (shrink <= 0.0) {
        cert.verdict = Verdict::Vacuous;
        cert.threshold = -kInf;
        cert.notes.emplace_back("1 - (k-1) mu is not positive");
        return cert;
    }
    const double half = 0.5 * lambda1;
    double shifted = 0.0;
    for (double a : s.ranked_abs) shifted += (a + half) * (a + half);
    const double lhs = half - std::abs(s.z_next);
    const double rhs = std::sqrt(static_cast<double>(k)) * s.mu / shrink * std::sqrt(shifted);
    cert.witness["l1_lhs"] = lhs;
    cert.witness["l1_rhs"] = rhs;
    cert.threshold = lhs - rhs;
    cert.verdict = cert.threshold >= 0.0 ? Verdict::Certified : Verdict::NotCertified;
    return cert;
}

Certificate most_correlated_concurrent(const ProblemInstance& instance, int k, double lambda0,
                                       double lambda1) {
    const Certificate t0 = most_correlated_type0(instance, k, lambda0);
    const Certificate t1 = most_correlated_type1(instance, k, lambda1);
    Certificate cert = base_certificate(CertificateKind::MostCorrelatedConcurrent, t0.support);
    cert.lambda0 = lambda0;
    cert.lambda1 = lambda1;
    for (const auto& [key, value] : t0.witness) cert.witness["type0." + key] = value;
    for (const auto& [key, value] : t1.witness) cert.witness["type1." + key] = value;
    cert.notes = t0.notes;
    cert.threshold = std::min(t0.threshold, t1.threshold);
    if (t0.verdict == Verdict::NotCertified || t1.verdict == Verdict::NotCertified)
        cert.verdict = Verdict::NotCertified;
    else if (t0.verdict == Verdict::Vacuous || t1.verdict == Verdict::Vacuous)
        cert.verdict = Verdict::Vacuous;
    else
        cert.verdict = Verdict::Certified;
    return cert;
}

}  // namespace l0cert
