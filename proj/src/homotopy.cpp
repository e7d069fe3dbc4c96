#include "l0cert/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace l0cert {

namespace {

struct Candidate {
    double t;
    EventType type;
    int index;
};

std::string tie_message(const std::vector<int>& indices, double lambda) {
    std::string s = "simultaneous path events for columns";
    for (int i : indices) s += " " + std::to_string(i + 1);
    return s + " at lambda1 = " + std::to_string(lambda);
}

}  // namespace

double LassoPath::lambda_hi() const noexcept {
    return segments.empty() ? lambda_max : segments.front().lambda_hi;
}

double LassoPath::lambda_lo() const noexcept {
    return segments.empty() ? lambda_max : segments.back().lambda_lo;
}

DegenerateTie::DegenerateTie(std::vector<int> indices, double lambda, LassoPath partial)
    : Error(tie_message(indices, lambda)),
      indices_(std::move(indices)),
      lambda_(lambda),
      partial_(std::move(partial)) {}

// Works in t = lambda1 / 2. On an active set A with signs s the solution is
// x_A(t) = ls - t w with ls = (A^T A)^{-1} A^T y and w = (A^T A)^{-1} s, and the
// correlations are c(t) = r + t a with r = phi^T (y - A ls) and a = phi^T A w.
LassoPath solve_path(const ProblemInstance& instance, double lambda_floor) {
    if (!(lambda_floor >= 0.0)) throw InvalidArgument("lambda floor must be nonnegative");
    const int m = instance.m();
    const Vector z = instance.phi().transpose() * instance.y();

    LassoPath path;
    path.m = m;
    path.lambda_floor = lambda_floor;
    const double t_max = z.cwiseAbs().maxCoeff();
    path.lambda_max = 2.0 * t_max;
    const double t_floor = 0.5 * lambda_floor;

    if (t_max <= t_floor || t_max == 0.0) {
        PathSegment only;
        only.lambda_hi = std::max(lambda_floor, path.lambda_max);
        only.lambda_lo = path.lambda_max;
        only.support = Support({}, m);
        only.x_at_hi = only.x_at_lo = CoefficientVector::zeros(m);
        path.segments.push_back(std::move(only));
        return path;
    }

    const double tie_gap = kPathTieTolerance * t_max;
    std::vector<int> tied;
    for (int j = 0; j < m; ++j)
        if (std::abs(z[j]) >= t_max - tie_gap) tied.push_back(j);
    if (tied.size() > 1) {
        path.complete = false;
        throw DegenerateTie(tied, path.lambda_max, path);
    }

    std::vector<int> active{tied.front()};
    std::vector<int> signs{z[tied.front()] > 0 ? 1 : -1};
    path.selection_order.push_back(tied.front());
    path.entry_lambdas.push_back(path.lambda_max);
    double t = t_max;

    for (;;) {
        // Keep the active set sorted with signs aligned.
        std::vector<std::size_t> perm(active.size());
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
        std::sort(perm.begin(), perm.end(), [&](auto a, auto b) { return active[a] < active[b]; });
        std::vector<int> sorted_active, sorted_signs;
        for (auto p : perm) {
            sorted_active.push_back(active[p]);
            sorted_signs.push_back(signs[p]);
        }
        active = std::move(sorted_active);
        signs = std::move(sorted_signs);
        const Support support(active, m);
        const int k = support.size();

        Vector ls = Vector::Zero(k), w = Vector::Zero(k), a = Vector::Zero(m), r = z;
        if (k > 0) {
            const ColumnSubsetQR qr(instance, support);
            Vector s(k);
            for (int i = 0; i < k; ++i) s[i] = signs[static_cast<std::size_t>(i)];
            ls = qr.least_squares(instance.y());
            w = qr.gram_solve(s);
            const Matrix sub = instance.submatrix(support);
            r = instance.phi().transpose() * (instance.y() - sub * ls);
            a = instance.phi().transpose() * (sub * w);
        }

        std::vector<Candidate> candidates;
        const double ceiling = t - tie_gap;
        for (int j = 0; j < m; ++j) {
            if (support.contains(j)) continue;
            for (double dir : {1.0, -1.0}) {
                // r_j + t' a_j = dir * t'
                const double denom = dir - a[j];
                if (denom == 0.0) continue;
                const double root = r[j] / denom;
                if (root > 0.0 && root < ceiling) candidates.push_back({root, EventType::Enter, j});
            }
        }
        for (int i = 0; i < k; ++i) {
            if (w[i] == 0.0) continue;
            const double root = ls[i] / w[i];
            if (root > 0.0 && root < ceiling)
                candidates.push_back({root, EventType::Leave, active[static_cast<std::size_t>(i)]});
        }

        auto best = std::max_element(candidates.begin(), candidates.end(),
                                     [](const Candidate& x, const Candidate& y) { return x.t < y.t; });
        const bool terminal = best == candidates.end() || best->t <= t_floor;
        const double t_end = terminal ? t_floor : best->t;

        PathSegment seg;
        seg.lambda_hi = 2.0 * t;
        seg.lambda_lo = 2.0 * t_end;
        seg.support = support;
        seg.signs = signs;
        seg.x_at_hi = scatter(support, ls - t * w, m);
        seg.x_at_lo = scatter(support, ls - t_end * w, m);

        if (terminal) {
            seg.event = {EventType::Terminal, -1};
            path.segments.push_back(std::move(seg));
            return path;
        }

        std::vector<int> simultaneous;
        for (const auto& c : candidates)
            if (c.t >= best->t - tie_gap) simultaneous.push_back(c.index);
        std::sort(simultaneous.begin(), simultaneous.end());
        simultaneous.erase(std::unique(simultaneous.begin(), simultaneous.end()), simultaneous.end());
        if (simultaneous.size() > 1) {
            path.complete = false;
            throw DegenerateTie(simultaneous, 2.0 * best->t, path);
        }

        seg.event = {best->type, best->index};
        if (best->type == EventType::Leave) seg.x_at_lo.values[best->index] = 0.0;
        path.segments.push_back(std::move(seg));

        if (best->type == EventType::Enter) {
            const double c = r[best->index] + t_end * a[best->index];
            active.push_back(best->index);
            signs.push_back(c > 0 ? 1 : -1);
            path.selection_order.push_back(best->index);
            path.entry_lambdas.push_back(2.0 * t_end);
        } else {
            const auto pos = std::find(active.begin(), active.end(), best->index) - active.begin();
            active.erase(active.begin() + pos);
            signs.erase(signs.begin() + pos);
        }
        t = t_end;
    }
}

CoefficientVector solution_at_lambda(const LassoPath& path, double lambda1) {
    if (!(lambda1 >= 0.0)) throw OutOfRange("lambda1 must be nonnegative");
    if (lambda1 >= path.lambda_max) return CoefficientVector::zeros(path.m);
    if (lambda1 < path.lambda_lo())
        throw OutOfRange("lambda1 = " + std::to_string(lambda1) + " lies below the path floor " +
                         std::to_string(path.lambda_lo()));
    for (const auto& seg : path.segments) {
        if (lambda1 < seg.lambda_lo || lambda1 > seg.lambda_hi) continue;
        const double span = seg.lambda_hi - seg.lambda_lo;
        if (span <= 0.0) return seg.x_at_lo;
        const double theta = (lambda1 - seg.lambda_lo) / span;
        return CoefficientVector(seg.x_at_lo.values + theta * (seg.x_at_hi.values - seg.x_at_lo.values));
    }
    throw OutOfRange("lambda1 = " + std::to_string(lambda1) + " not covered by the path");
}

int max_support_size(const LassoPath& path) {
    int largest = 0;
    for (const auto& seg : path.segments) largest = std::max(largest, seg.support.size());
    return largest;
}

std::vector<SupportCertificates> certify_path(const ProblemInstance& instance, const LassoPath& path,
                                              double lambda0, std::optional<int> M_hint,
                                              const CertificationTables& tables) {
    std::vector<std::pair<Support, std::pair<double, double>>> visited;
    visited.push_back({Support({}, instance.m()),
                       {std::numeric_limits<double>::infinity(), path.lambda_max}});
    for (const auto& seg : path.segments) {
        if (seg.support.empty()) continue;
        auto it = std::find_if(visited.begin(), visited.end(),
                               [&](const auto& v) { return v.first == seg.support; });
        if (it != visited.end()) continue;
        visited.push_back({seg.support, {seg.lambda_hi, seg.lambda_lo}});
    }

    std::vector<SupportCertificates> out;
    for (const auto& [support, range] : visited) {
        SupportCertificates sc;
        sc.support = support;
        sc.lambda_hi = range.first;
        sc.lambda_lo = range.second;
        sc.no_smaller = certify_no_smaller_support(instance, support, lambda0, tables);
        sc.subset = certify_subset_of_type0(instance, support, lambda0, tables);
        if (M_hint) sc.bounded = certify_subset_of_type0_bounded(instance, support, *M_hint, lambda0, tables);
        out.push_back(std::move(sc));
    }
    return out;
}

std::vector<SupportCertificates> certify_path(const ProblemInstance& instance, const LassoPath& path,
                                              double lambda0, std::optional<int> M_hint,
                                              const EnumerationLimits& limits) {
    const int gap_size = M_hint ? std::max(1, max_support_size(path)) : 0;
    return certify_path(instance, path, lambda0, M_hint,
                        CertificationTables::compute(instance, gap_size, limits));
}

}  // namespace l0cert
