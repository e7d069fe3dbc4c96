// Acceptance checks. One PASS/FAIL line per criterion; exit status is the number of failures.

#include "l0cert/certificates.hpp"
#include "l0cert/errors.hpp"
#include "l0cert/generators.hpp"
#include "l0cert/homotopy.hpp"
#include "l0cert/oracle.hpp"
#include "l0cert/spectral.hpp"
#include "support/reference.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>

using namespace l0cert;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
    std::printf("%s criterion-%d %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

LassoPath path_or_partial(const ProblemInstance& inst, bool* tied = nullptr) {
    try {
        if (tied) *tied = false;
        return solve_path(inst);
    } catch (const DegenerateTie& e) {
        if (tied) *tied = true;
        return e.partial_path();
    }
}

bool every_tie_contains(const OracleResult& o, const Support& s) {
    return std::all_of(o.ties.begin(), o.ties.end(), [&](const Support& t) { return s.is_subset_of(t); });
}

bool every_tie_at_least(const OracleResult& o, int size) {
    return std::all_of(o.ties.begin(), o.ties.end(), [&](const Support& t) { return t.size() >= size; });
}

// ---------------------------------------------------------------------------
void criterion1() {
    const auto t0 = Clock::now();
    const auto inst = make_restrictive(10, 7, 3, {-1, 1, 0});
    const double mu = mutual_coherence(inst);
    const auto order = order_correlations(inst, 3);
    const auto cert = most_correlated_type0(inst, 3, 0.5);
    const double secs = seconds_since(t0);

    struct Item {
        const char* name;
        double got;
        double printed;
    };
    const Item items[] = {
        {"mu", mu, 0.1667},
        {"z3", order.ranked(2), 0.7379},
        {"z4", order.ranked(3), -0.3162},
        {"lhs4", cert.witness.at("swap_lhs"), 0.3630},
        {"rhs4", cert.witness.at("swap_rhs"), 0.9117},
    };
    bool pass = secs < 1.0;
    std::ostringstream d;
    d.precision(6);
    for (const auto& it : items) {
        const bool ok = std::abs(it.got - it.printed) <= 5e-4;
        pass = pass && ok;
        d << it.name << "=" << it.got << (ok ? "(ok) " : "(off, printed ") ;
        if (!ok) d << it.printed << ") ";
    }
    d << "verdict=" << to_string(cert.verdict) << " time=" << secs << "s";
    report(1, pass, d.str());
}

// ---------------------------------------------------------------------------
struct SweepStats {
    std::size_t sigma_checked = 0, sigma_bad = 0;
    std::size_t cstat_checked = 0, cstat_bad = 0;
    std::size_t ortho_checked = 0, ortho_bad = 0;
};

void check_tables(const ProblemInstance& inst, const SigmaMinTable& sigma, const Vector& b, SweepStats& st) {
    ++st.sigma_checked;
    for (int k = 2; k <= sigma.k_max(); ++k)
        if (sigma.at(k) > sigma.at(k - 1)) {
            ++st.sigma_bad;
            break;
        }
    ++st.cstat_checked;
    for (int k = 2; k <= inst.m(); ++k)
        if (c_stat(b, k) < c_stat(b, k - 1)) {
            ++st.cstat_bad;
            break;
        }
}

void criterion2(SweepStats& st) {
    const auto t0 = Clock::now();
    int agree = 0, gap_ok = 0, total = 0;
    std::mt19937_64 rng(20240601);
    std::string first_problem;
    for (int trial = 0; trial < 50; ++trial) {
        std::uniform_real_distribution<double> mag(0.2, 4.0);
        std::bernoulli_distribution sign;
        std::vector<double> coeffs(8);
        for (auto& c : coeffs) c = mag(rng) * (sign(rng) ? 1 : -1);
        const auto inst = make_orthonormal({20, 8, coeffs, 1000u + static_cast<unsigned>(trial), 7000u + static_cast<unsigned>(trial), 0.05});

        // lambda1 halfway between two consecutive correlation magnitudes.
        const Vector z = (inst.phi().transpose() * inst.y()).cwiseAbs();
        std::vector<double> mags(z.data(), z.data() + z.size());
        std::sort(mags.begin(), mags.end(), std::greater<>());
        const int cut = std::uniform_int_distribution<int>(0, 6)(rng);
        const double lambda1 = mags[static_cast<std::size_t>(cut)] + mags[static_cast<std::size_t>(cut + 1)];
        const double lambda0 = lambda1 * lambda1 / 4.0;

        const auto path = solve_path(inst);
        const auto x1 = solution_at_lambda(path, lambda1);
        const auto oracle = brute_force_p0(inst, lambda0);
        ++total;
        const bool same = x1.support() == oracle.best_support;
        agree += same;
        bool gap = same;
        if (same)
            for (int i : oracle.best_support)
                gap = gap && std::abs(std::abs(oracle.best_x.values[i] - x1.values[i]) - lambda1 / 2) <= 1e-9;
        gap_ok += gap;
        if (!gap && first_problem.empty()) first_problem = " first mismatch at trial " + std::to_string(trial);

        // Constant tables on the same instance.
        const auto sigma = SigmaMinTable::compute(inst, 8);
        const auto gaps = PseudoInverseGapTable::compute(inst, 7);
        ++st.ortho_checked;
        bool exact = true;
        for (int k = 1; k <= 8; ++k) exact = exact && std::abs(sigma.at(k) - 1.0) <= 1e-12;
        for (int s = 1; s <= 7; ++s)
            for (int M = 0; M <= 8; ++M) exact = exact && std::abs(gaps.lambda(s, M) - 1.0) <= 1e-12;
        if (!exact) ++st.ortho_bad;
        check_tables(inst, sigma, residual(inst, oracle.best_x).correlations, st);
    }
    const double secs = seconds_since(t0);
    std::ostringstream d;
    d << "support_agree=" << agree << "/" << total << " gap_lambda1_over_2=" << gap_ok << "/" << total
      << " time=" << secs << "s" << first_problem;
    report(2, agree == total && gap_ok == total && secs < 10.0, d.str());
}

// ---------------------------------------------------------------------------
void criterion3() {
    std::mt19937_64 rng(777);
    int ok_order = 0, ok_oracle = 0, ties = 0;
    std::string first_problem;
    const int draws = 20;
    for (int trial = 0; trial < draws; ++trial) {
        const int A = 2 + trial % 3;
        const int m = std::uniform_int_distribution<int>(A + 2, 12)(rng);
        const double floor = 1.0 / std::sqrt(static_cast<double>(A));
        std::uniform_real_distribution<double> u(floor + 0.01, 0.99);
        std::vector<double> a(static_cast<std::size_t>(m - A));
        do {
            for (auto& v : a) v = u(rng);
            std::sort(a.begin(), a.end(), std::greater<>());
        } while (std::adjacent_find(a.begin(), a.end(), [](double x, double y) { return x - y < 1e-6; }) != a.end());
        const auto inst = make_extreme({m, A, a});

        bool tied = false;
        const auto path = path_or_partial(inst, &tied);
        ties += tied;
        const auto& order = path.selection_order;
        bool good = static_cast<int>(order.size()) >= m - A;
        for (int j = 0; good && j < m - A; ++j) good = order[static_cast<std::size_t>(j)] == j;
        ok_order += good;

        std::vector<int> tail;
        for (int i = m - A; i < m; ++i) tail.push_back(i);
        const Support truth(tail, m);
        const auto free = brute_force_p0(inst, 0.0);
        const auto range = lambda0_optimality_range(free, inst, truth);
        bool oracle_ok = false;
        if (range) {
            const double hi = std::isfinite(range->hi) ? range->hi : range->lo + 1.0;
            const double lambda0 = 0.5 * (range->lo + hi);
            oracle_ok = brute_force_p0(inst, lambda0).best_support == truth;
        }
        ok_oracle += oracle_ok;
        if ((!good || !oracle_ok) && first_problem.empty())
            first_problem = " first exception: m=" + std::to_string(m) + " A=" + std::to_string(A);
    }
    std::ostringstream d;
    d << "enter_order_ok=" << ok_order << "/" << draws << " oracle_tail_optimal=" << ok_oracle << "/" << draws
      << " (paths ending in a reported tie among the last A: " << ties << ")" << first_problem;
    report(3, ok_order == draws && ok_oracle == draws, d.str());
}

// ---------------------------------------------------------------------------
struct SoundnessCounts {
    std::size_t instances = 0;
    std::size_t t31a_cert = 0, t31a_bad = 0;
    std::size_t t31b_cert = 0, t31b_bad = 0;
    std::size_t t32_cert = 0, t32_bad = 0;
    std::size_t t46_cert = 0, t46_bad = 0, t46_bad_k1 = 0;
    std::size_t t48_cert = 0, t48_bad = 0, t48_exact = 0;
    std::size_t conc_cert = 0, conc_bad = 0;
    double conc_worst = 0.0;
    std::size_t tied_orders = 0;
    std::string first_violation;
};

void note(SoundnessCounts& c, const std::string& what) {
    if (c.first_violation.empty()) c.first_violation = what;
}

// Lasso restricted to the columns of `a1`, scattered back to length m.
Vector restricted_lasso(const ProblemInstance& inst, const Support& a1, double lambda1) {
    const Matrix sub = inst.submatrix(a1);
    const Vector local = ref::coordinate_descent_lasso(sub, inst.y(), lambda1, 1e-14);
    Vector x = Vector::Zero(inst.m());
    for (int i = 0; i < a1.size(); ++i) x[a1.indices()[static_cast<std::size_t>(i)]] = local[i];
    return x;
}

ProblemInstance sweep_instance(std::mt19937_64& rng, int trial) {
    const int m = std::uniform_int_distribution<int>(2, 8)(rng);
    const int n = std::uniform_int_distribution<int>(m, 12)(rng);
    const int k = std::uniform_int_distribution<int>(1, m)(rng);
    const double scale = std::vector<double>{0.3, 1.0, 3.0}[static_cast<std::size_t>(trial % 3)];
    const double noise = std::vector<double>{0.02, 0.2, 1.0}[static_cast<std::size_t>((trial / 3) % 3)];
    Matrix phi;
    Vector y;
    if (trial % 2 == 1) {
        // Near-orthogonal: orthonormal columns nudged and renormalized.
        std::vector<double> coeffs(static_cast<std::size_t>(m), 0.0);
        std::uniform_real_distribution<double> mag(0.5, 1.5);
        for (int i = 0; i < k; ++i) coeffs[static_cast<std::size_t>(i)] = scale * mag(rng);
        std::shuffle(coeffs.begin(), coeffs.end(), rng);
        const auto base = make_orthonormal({n, m, coeffs, rng(), rng(), noise * 0.2});
        std::normal_distribution<double> g;
        phi = base.phi() + 0.03 * Matrix::NullaryExpr(n, m, [&] { return g(rng); });
        phi.colwise().normalize();
        y = base.y();
    } else {
        const double corr = std::vector<double>{0.0, 0.3, 0.8}[static_cast<std::size_t>(trial % 3)];
        auto r = ref::random_instance(rng, n, m, k, scale, noise, corr);
        phi = std::move(r.phi);
        y = std::move(r.y);
    }
    y.normalize();
    return ProblemInstance(std::move(phi), std::move(y));
}

void sweep_one(const ProblemInstance& inst, std::mt19937_64& rng, SoundnessCounts& c, SweepStats& st) {
    const int m = inst.m();
    const double lambda0 = std::exp(std::uniform_real_distribution<double>(std::log(1e-3), std::log(0.5))(rng));
    const auto oracle = brute_force_p0(inst, lambda0, std::nullopt, EnumerationLimits::unlimited(), Execution::Serial);
    const auto tables =
        CertificationTables::compute(inst, m, EnumerationLimits::unlimited(), Execution::Serial);
    const int M = oracle.best_support.size();

    // Candidate supports: every support along the lasso path, the oracle optimum, and singletons.
    const auto path = path_or_partial(inst);
    std::vector<Support> candidates;
    auto add = [&](const Support& s) {
        if (std::find(candidates.begin(), candidates.end(), s) == candidates.end()) candidates.push_back(s);
    };
    for (const auto& seg : path.segments) add(seg.support);
    add(oracle.best_support);
    for (int i = 0; i < m; ++i) add(Support({i}, m));

    for (const auto& omega : candidates) {
        if (omega.empty()) continue;
        const auto a = certify_no_smaller_support(inst, omega, lambda0, tables);
        if (a.certified()) {
            ++c.t31a_cert;
            if (!every_tie_at_least(oracle, omega.size())) {
                ++c.t31a_bad;
                note(c, "no-smaller-support");
            }
        }
        const auto b = certify_subset_of_type0(inst, omega, lambda0, tables);
        if (b.certified()) {
            ++c.t31b_cert;
            if (!every_tie_contains(oracle, omega)) {
                ++c.t31b_bad;
                note(c, "subset-of-type0");
            }
        }
        if (M >= 1) {
            const auto bb = certify_subset_of_type0_bounded(inst, omega, M, lambda0, tables);
            if (bb.certified()) {
                ++c.t32_cert;
                if (!every_tie_contains(oracle, omega)) {
                    ++c.t32_bad;
                    note(c, "subset-of-type0-bounded");
                }
            }
        }
    }
    check_tables(inst, tables.sigma, residual(inst, oracle.best_x).correlations, st);

    // Most-correlated conditions for every k.
    const Vector z = inst.phi().transpose() * inst.y();
    const double lmax = 2.0 * z.cwiseAbs().maxCoeff();
    for (int k = 1; k <= m; ++k) {
        CorrelationOrder order;
        try {
            order = order_correlations(inst, k);
        } catch (const TiedCorrelations&) {
            ++c.tied_orders;
            continue;
        }
        const auto t0 = most_correlated_type0(inst, k, lambda0);
        if (t0.certified()) {
            ++c.t46_cert;
            if (!(oracle.best_support == t0.support && oracle.ties.size() == 1)) {
                ++c.t46_bad;
                c.t46_bad_k1 += k == 1;
                std::ostringstream w;
                w.precision(10);
                w << "most-correlated-type0 k=" << k << " m=" << m << " lambda0=" << lambda0
                  << " z_k^2=" << t0.witness.at("inclusion_lhs") << " inclusion_rhs=" << t0.witness.at("inclusion_rhs")
                  << " objective(A1)=" << p0_objective(inst, restricted_least_squares(inst, t0.support), lambda0)
                  << " optimum=" << oracle.best_objective << " |optimum|=" << oracle.best_support.size();
                note(c, w.str());
            }
        }
        const double zk = std::abs(order.ranked(k - 1));
        const double zn = k < m ? std::abs(order.ranked(k)) : 0.0;
        std::uniform_real_distribution<double> ul(0.0, lmax);
        for (double lambda1 : {ul(rng), ul(rng), zk + zn, 2.0 * zn + 0.25 * (zk - zn), 2.0 * zn + 1e-3}) {
            if (!(lambda1 > 0.0)) continue;
            const auto t1 = most_correlated_type1(inst, k, lambda1);
            if (!t1.certified()) continue;
            ++c.t48_cert;
            const Vector x = restricted_lasso(inst, t1.support, lambda1);
            const auto kkt = kkt_check_type1(inst, CoefficientVector(x), lambda1, 1e-7);
            if (!kkt.certified()) {
                ++c.t48_bad;
                note(c, "most-correlated-type1 k=" + std::to_string(k));
            } else if (kkt.support == t1.support) {
                ++c.t48_exact;
            }
        }
    }

    // Concurrent check, with the l0 side decided by the oracle.
    for (double lambda1 : {2.0 * std::sqrt(lambda0), std::uniform_real_distribution<double>(0.0, lmax)(rng)}) {
        if (lambda1 >= path.lambda_max || lambda1 < path.lambda_lo()) continue;
        const auto x1 = solution_at_lambda(path, lambda1);
        const Support s = x1.support();
        const auto cert = concurrent_check(inst, s, lambda0, lambda1, ConcurrencyMode::Oracle,
                                           EnumerationLimits::unlimited());
        if (!cert.certified()) continue;
        ++c.conc_cert;
        // Independent evaluation of the shrinkage identity.
        const Matrix sub = inst.submatrix(s);
        const Eigen::LDLT<Matrix> gram(sub.transpose() * sub);
        const Vector x0 = gram.solve(sub.transpose() * inst.y());
        Vector x1s(s.size()), sg(s.size());
        for (int i = 0; i < s.size(); ++i) {
            x1s[i] = x1.values[s.indices()[static_cast<std::size_t>(i)]];
            sg[i] = x1s[i] > 0 ? 1.0 : -1.0;
        }
        const double err = ((x0 - x1s) - gram.solve(0.5 * lambda1 * sg)).cwiseAbs().maxCoeff();
        c.conc_worst = std::max(c.conc_worst, err);
        if (err > 1e-8) {
            ++c.conc_bad;
            note(c, "shrinkage identity");
        }
    }
}

// Returns the criterion-6 verdict so it can be printed in order.
std::pair<bool, std::string> criterion4_and_6(SweepStats& st) {
    const auto t0 = Clock::now();
    constexpr int kInstances = 3000;
    SoundnessCounts total;
#pragma omp parallel
    {
        SoundnessCounts local;
        SweepStats local_st;
#pragma omp for schedule(dynamic, 4)
        for (int trial = 0; trial < kInstances; ++trial) {
            std::mt19937_64 rng(0x5eed0000u + static_cast<unsigned>(trial));
            const auto inst = sweep_instance(rng, trial);
            sweep_one(inst, rng, local, local_st);
            ++local.instances;
        }
#pragma omp critical
        {
            total.instances += local.instances;
            total.t31a_cert += local.t31a_cert;
            total.t31a_bad += local.t31a_bad;
            total.t31b_cert += local.t31b_cert;
            total.t31b_bad += local.t31b_bad;
            total.t32_cert += local.t32_cert;
            total.t32_bad += local.t32_bad;
            total.t46_cert += local.t46_cert;
            total.t46_bad += local.t46_bad;
            total.t46_bad_k1 += local.t46_bad_k1;
            total.t48_cert += local.t48_cert;
            total.t48_bad += local.t48_bad;
            total.t48_exact += local.t48_exact;
            total.conc_cert += local.conc_cert;
            total.conc_bad += local.conc_bad;
            total.conc_worst = std::max(total.conc_worst, local.conc_worst);
            total.tied_orders += local.tied_orders;
            if (total.first_violation.empty()) total.first_violation = local.first_violation;
            st.sigma_checked += local_st.sigma_checked;
            st.sigma_bad += local_st.sigma_bad;
            st.cstat_checked += local_st.cstat_checked;
            st.cstat_bad += local_st.cstat_bad;
        }
    }
    const double secs = seconds_since(t0);
    const auto& c = total;
    const std::size_t bad = c.t31a_bad + c.t31b_bad + c.t32_bad + c.t46_bad + c.t48_bad;
    std::ostringstream d;
    d << "instances=" << c.instances << " violations/certified: no_smaller=" << c.t31a_bad << "/" << c.t31a_cert
      << " subset=" << c.t31b_bad << "/" << c.t31b_cert << " bounded=" << c.t32_bad << "/" << c.t32_cert
      << " most_correlated_type0=" << c.t46_bad << "/" << c.t46_cert << " (at k=1: " << c.t46_bad_k1 << ")"
      << " most_correlated_type1=" << c.t48_bad
      << "/" << c.t48_cert << " (support exactly A1: " << c.t48_exact << ")"
      << " skipped_tied_orders=" << c.tied_orders << " time=" << secs << "s";
    if (!c.first_violation.empty()) d << " first_violation=" << c.first_violation;
    report(4, bad == 0 && c.instances >= 500 && secs < 300.0, d.str());

    std::ostringstream d6;
    d6 << "concurrent_certified=" << c.conc_cert << " identity_violations=" << c.conc_bad
       << " worst_residual=" << c.conc_worst;
    return {c.conc_bad == 0 && c.conc_cert > 0, d6.str()};
}

// ---------------------------------------------------------------------------
void criterion5() {
    std::mt19937_64 rng(4242);
    int instances = 0, kkt_ok = 0, obj_ok = 0, perturb_total = 0, perturb_caught = 0, redraws = 0;
    while (instances < 100) {
        const int m = std::uniform_int_distribution<int>(2, 10)(rng);
        const int n = std::uniform_int_distribution<int>(m, 20)(rng);
        const auto r = ref::random_instance(rng, n, m, std::min(m, 3), 1.0, 0.3, instances % 3 == 0 ? 0.5 : 0.0);
        const ProblemInstance inst(r.phi, r.y);
        LassoPath path;
        try {
            path = solve_path(inst);
        } catch (const DegenerateTie&) {
            ++redraws;
            continue;
        }
        ++instances;
        const double lambda1 = std::uniform_real_distribution<double>(0.01, 0.99)(rng) * path.lambda_max;
        const auto x = solution_at_lambda(path, lambda1);
        kkt_ok += kkt_check_type1(inst, x, lambda1, 1e-7).certified();
        const Vector cd = ref::coordinate_descent_lasso(r.phi, r.y, lambda1);
        const double a = ref::lasso_objective(r.phi, r.y, x.values, lambda1);
        const double b = ref::lasso_objective(r.phi, r.y, cd, lambda1);
        obj_ok += std::abs(a - b) <= 1e-7 * std::abs(b);
        for (int i = 0; i < m; ++i)
            for (double h : {-1e-4, 1e-4}) {
                CoefficientVector bumped = x;
                bumped.values[i] += h;
                ++perturb_total;
                perturb_caught += !kkt_check_type1(inst, bumped, lambda1, 1e-7).certified();
            }
    }
    std::ostringstream d;
    d << "kkt_pass=" << kkt_ok << "/100 objective_match=" << obj_ok << "/100 perturbations_rejected="
      << perturb_caught << "/" << perturb_total << " (tied draws replaced: " << redraws << ")";
    report(5, kkt_ok == 100 && obj_ok == 100 && perturb_caught == perturb_total, d.str());
}

}  // namespace

int main() {
    SweepStats st;
    criterion1();
    criterion2(st);
    criterion3();
    const auto [pass6, detail6] = criterion4_and_6(st);
    criterion5();
    report(6, pass6, detail6);
    std::ostringstream d;
    d << "sigma_nonincreasing_bad=" << st.sigma_bad << "/" << st.sigma_checked
      << " c_stat_nondecreasing_bad=" << st.cstat_bad << "/" << st.cstat_checked
      << " orthonormal_exact_bad=" << st.ortho_bad << "/" << st.ortho_checked;
    report(7, st.sigma_bad == 0 && st.cstat_bad == 0 && st.ortho_bad == 0 && st.ortho_checked > 0, d.str());
    return failures;
}
