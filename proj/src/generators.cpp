#include "l0cert/generators.hpp"

#include "l0cert/errors.hpp"

#include <cmath>
#include <random>
#include <string>

namespace l0cert {

namespace {

constexpr double kConstructionTolerance = 1e-12;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

ProblemInstance make_extreme(const ExtremeExampleSpec& spec) {
    const int m = spec.m;
    const int A = spec.A;
    if (A < 1 || A >= m) throw SpecViolation("need 1 <= A < m, got A = " + std::to_string(A) +
                                             ", m = " + std::to_string(m));
    if (static_cast<int>(spec.a.size()) != m - A)
        throw SpecViolation("a must have m - A = " + std::to_string(m - A) + " entries, got " +
                            std::to_string(spec.a.size()));
    const double floor = 1.0 / std::sqrt(static_cast<double>(A));
    const auto& a = spec.a;
    if (!(a.front() < 1.0)) throw SpecViolation("need 1 > a_1, got a_1 = " + num(a.front()));
    for (std::size_t j = 1; j < a.size(); ++j)
        if (!(a[j - 1] > a[j]))
            throw SpecViolation("need a_" + std::to_string(j) + " > a_" + std::to_string(j + 1) + ", got " +
                                num(a[j - 1]) + " <= " + num(a[j]));
    if (!(a.back() > floor))
        throw SpecViolation("need a_" + std::to_string(a.size()) + " > 1/sqrt(A) = " + num(floor) +
                            ", got " + num(a.back()));

    Vector s = Vector::Zero(m);
    for (int i = m - A; i < m; ++i) s[i] = floor;
    Matrix phi = Matrix::Zero(m, m);
    for (int j = 0; j < m - A; ++j) {
        const double aj = a[static_cast<std::size_t>(j)];
        phi.col(j) = aj * s;
        phi(j, j) += std::sqrt(1.0 - aj * aj);
    }
    for (int i = m - A; i < m; ++i) phi(i, i) = 1.0;

    for (int c = 0; c < m; ++c) {
        const double expected = c < m - A ? a[static_cast<std::size_t>(c)] : floor;
        if (std::abs(phi.col(c).norm() - 1.0) > kConstructionTolerance ||
            std::abs(phi.col(c).dot(s) - expected) > kConstructionTolerance)
            throw SpecViolation("constructed column " + std::to_string(c + 1) + " misses its inner products");
    }
    return ProblemInstance(std::move(phi), std::move(s));
}

ProblemInstance make_restrictive(int n, int m, int k, const std::vector<double>& a) {
    if (!(k > 0 && m > k && n > m)) throw SpecViolation("need n > m > k > 0");
    if (n < m + k) throw SpecViolation("need n >= m + k");
    if (static_cast<int>(a.size()) != k)
        throw SpecViolation("a must have k = " + std::to_string(k) + " entries, got " + std::to_string(a.size()));
    for (int i = 1; i < k; ++i)
        if (std::abs(a[static_cast<std::size_t>(i - 1)]) < std::abs(a[static_cast<std::size_t>(i)]))
            throw SpecViolation("need |a_" + std::to_string(i) + "| >= |a_" + std::to_string(i + 1) + "|");

    Matrix raw = Matrix::Zero(n, m);
    for (int i = 0; i < k; ++i) raw(i, i) = a[static_cast<std::size_t>(i)];
    raw.block(k, 0, m, m).setIdentity();
    Vector y = raw.leftCols(k).rowwise().sum();
    return standardize(ProblemInstance(std::move(raw), std::move(y)), true).instance;
}

ProblemInstance make_orthonormal(const OrthonormalSpec& spec) {
    if (spec.m < 1 || spec.n < spec.m) throw SpecViolation("need n >= m >= 1");
    if (static_cast<int>(spec.coeffs.size()) != spec.m)
        throw SpecViolation("coeffs must have m = " + std::to_string(spec.m) + " entries");
    if (spec.noise_sigma < 0.0) throw SpecViolation("noise sigma must be nonnegative");

    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> gauss;
    Matrix g(spec.n, spec.m);
    for (int c = 0; c < spec.m; ++c)
        for (int r = 0; r < spec.n; ++r) g(r, c) = gauss(rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix phi = qr.householderQ() * Matrix::Identity(spec.n, spec.m);

    Vector y = phi * Eigen::Map<const Vector>(spec.coeffs.data(), spec.m);
    if (spec.noise_seed && spec.noise_sigma > 0.0) {
        std::mt19937_64 noise_rng(*spec.noise_seed);
        std::normal_distribution<double> noise(0.0, spec.noise_sigma);
        for (int r = 0; r < spec.n; ++r) y[r] += noise(noise_rng);
    }
    return ProblemInstance(std::move(phi), std::move(y));
}

}  // namespace l0cert
