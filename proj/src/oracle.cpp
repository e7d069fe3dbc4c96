#include "l0cert/oracle.hpp"

#include "l0cert/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace l0cert {

bool OracleResult::is_optimal(const Support& s) const {
    return std::find(ties.begin(), ties.end(), s) != ties.end();
}

OracleResult brute_force_p0(const ProblemInstance& instance, double lambda0, std::optional<int> k_max,
                            const EnumerationLimits& limits, Execution exec) {
    if (lambda0 < 0.0) throw InvalidArgument("lambda0 must be nonnegative");
    const int m = instance.m();
    const int kmax = k_max.value_or(m);
    if (kmax < 0 || kmax > m) throw InvalidArgument("k_max must lie in [0, m]");
    limits.check(count_subsets(m, 0, kmax));

    OracleResult out;
    out.lambda0 = lambda0;
    out.k_max = kmax;
    double running = std::numeric_limits<double>::infinity();
    for (int c = 0; c <= kmax; ++c) {
        const auto fit = kernels::best_subset_of_size(instance.phi(), instance.y(), c, exec);
        out.best_rss.push_back(fit.rss);
        out.best_of_size.emplace_back(fit.support, m);
        out.skipped_rank_deficient += fit.skipped;
        running = std::min(running, fit.rss);
        out.f_curve.push_back(running);
    }

    double optimum = std::numeric_limits<double>::infinity();
    for (int c = 0; c <= kmax; ++c)
        optimum = std::min(optimum, out.best_rss[static_cast<std::size_t>(c)] + lambda0 * c);

    for (int c = 0; c <= kmax; ++c) {
        const double bound = optimum + kObjectiveTieTolerance - lambda0 * c;
        if (out.best_rss[static_cast<std::size_t>(c)] > bound) continue;
        for (auto& s : kernels::subsets_with_rss_at_most(instance.phi(), instance.y(), c, bound, exec))
            out.ties.emplace_back(std::move(s), m);
    }
    std::sort(out.ties.begin(), out.ties.end());
    out.best_support = out.ties.front();
    out.best_x = restricted_least_squares(instance, out.best_support);
    out.best_objective = rss(instance, out.best_x) + lambda0 * out.best_support.size();
    return out;
}

std::optional<Lambda0Interval> lambda0_optimality_range(const OracleResult& oracle,
                                                        const ProblemInstance& instance,
                                                        const Support& support) {
    const int s = support.size();
    if (s > oracle.k_max) return std::nullopt;
    const auto& f = oracle.best_rss;
    const double own = rss(instance, restricted_least_squares(instance, support));
    if (own > f[static_cast<std::size_t>(s)] + kObjectiveTieTolerance) return std::nullopt;

    Lambda0Interval range{0.0, std::numeric_limits<double>::infinity()};
    for (int c = 0; c <= oracle.k_max; ++c) {
        const double fc = f[static_cast<std::size_t>(c)];
        if (c == s || !std::isfinite(fc)) continue;
        const double crossing = (fc - own) / static_cast<double>(s - c);
        if (c < s)
            range.hi = std::min(range.hi, crossing);
        else
            range.lo = std::max(range.lo, crossing);
    }
    if (range.lo > range.hi) return std::nullopt;
    return range;
}

std::optional<Lambda0Interval> lambda0_optimality_range(const ProblemInstance& instance,
                                                        const Support& support,
                                                        const EnumerationLimits& limits) {
    return lambda0_optimality_range(brute_force_p0(instance, 0.0, std::nullopt, limits), instance,
                                    support);
}

}  // namespace l0cert
