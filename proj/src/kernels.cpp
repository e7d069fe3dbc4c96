#include "l0cert/kernels.hpp"

#include "l0cert/errors.hpp"
#include "l0cert/subsets.hpp"

#include <algorithm>
#include <optional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace l0cert::kernels {

namespace {

// Visits every k-subset of {0..m-1}. `visit(state, idx)` folds one subset into a
// thread-local state; `merge(into, from)` must be commutative and associative.
template <class State, class Visit, class Merge>
State reduce_combinations(int m, int k, Execution exec, const State& init, Visit visit,
                          Merge merge) {
    State result = init;
    if (k < 0 || k > m) return result;
    if (exec == Execution::Serial) {
        for_each_combination(m, k, [&](std::span<const int> idx) { visit(result, idx); });
        return result;
    }

    const std::uint64_t total = binomial(m, k);
    const std::uint64_t chunks =
        std::min<std::uint64_t>(total, static_cast<std::uint64_t>(max_threads()) * 16);
    const std::uint64_t per_chunk = (total + chunks - 1) / chunks;
    const auto n_chunks = static_cast<long long>((total + per_chunk - 1) / per_chunk);

#pragma omp parallel
    {
        State local = init;
        std::vector<int> idx(static_cast<std::size_t>(k));
#pragma omp for schedule(dynamic, 1)
        for (long long c = 0; c < n_chunks; ++c) {
            const std::uint64_t begin = static_cast<std::uint64_t>(c) * per_chunk;
            const std::uint64_t end = std::min(total, begin + per_chunk);
            unrank_combination(begin, m, idx);
            for (std::uint64_t r = begin; r < end; ++r) {
                visit(local, std::span<const int>(idx));
                next_combination(idx, m);
            }
        }
#pragma omp critical(l0cert_reduce)
        merge(result, local);
    }
    return result;
}

Matrix columns(const Matrix& phi, std::span<const int> idx) {
    Matrix sub(phi.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c)
        sub.col(static_cast<Eigen::Index>(c)) = phi.col(idx[c]);
    return sub;
}

bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

double min_gram_eigenvalue(const Matrix& gram, int k, Execution exec) {
    const int m = static_cast<int>(gram.cols());
    const double inf = std::numeric_limits<double>::infinity();
    const double value = reduce_combinations(
        m, k, exec, inf,
        [&](double& best, std::span<const int> idx) {
            double ev;
            if (idx.size() == 1) {
                ev = gram(idx[0], idx[0]);
            } else {
                Matrix sub(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(idx.size()));
                for (std::size_t r = 0; r < idx.size(); ++r)
                    for (std::size_t c = 0; c < idx.size(); ++c)
                        sub(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = gram(idx[r], idx[c]);
                Eigen::SelfAdjointEigenSolver<Matrix> es(sub, Eigen::EigenvaluesOnly);
                ev = es.eigenvalues()[0];
            }
            best = std::min(best, ev);
        },
        [](double& into, const double& from) { into = std::min(into, from); });
    return std::max(0.0, value);
}

double max_pinv_column_norm(const Matrix& phi, int size, Execution exec) {
    const int m = static_cast<int>(phi.cols());
    struct State {
        double sup = 0.0;
        std::optional<std::vector<int>> singular;
    };
    const State state = reduce_combinations(
        m, size, exec, State{},
        [&](State& s, std::span<const int> idx) {
            if (s.singular) return;  // only the first singular subset per thread matters
            Eigen::ColPivHouseholderQR<Matrix> qr(columns(phi, idx));
            qr.setThreshold(kRankTolerance);
            if (qr.rank() != static_cast<Eigen::Index>(idx.size())) {
                s.singular = std::vector<int>(idx.begin(), idx.end());
                return;
            }
            std::size_t pos = 0;
            for (int j = 0; j < m; ++j) {
                if (pos < idx.size() && idx[pos] == j) {
                    ++pos;
                    continue;
                }
                const Vector coef = qr.solve(phi.col(j));
                s.sup = std::max(s.sup, coef.norm());
            }
        },
        [](State& into, const State& from) {
            into.sup = std::max(into.sup, from.sup);
            if (from.singular && (!into.singular || lex_less(*from.singular, *into.singular)))
                into.singular = from.singular;
        });
    if (state.singular) throw RankDeficient(*state.singular);
    return state.sup;
}

SubsetFit best_subset_of_size(const Matrix& phi, const Vector& y, int k, Execution exec) {
    const int m = static_cast<int>(phi.cols());
    if (k == 0) {
        SubsetFit fit;
        fit.rss = y.squaredNorm();
        return fit;
    }
    return reduce_combinations(
        m, k, exec, SubsetFit{},
        [&](SubsetFit& best, std::span<const int> idx) {
            const Matrix sub = columns(phi, idx);
            Eigen::ColPivHouseholderQR<Matrix> qr(sub);
            qr.setThreshold(kRankTolerance);
            if (qr.rank() != static_cast<Eigen::Index>(idx.size())) {
                ++best.skipped;
                return;
            }
            const double r = (y - sub * qr.solve(y)).squaredNorm();
            // Serial order is lexicographic, so strict < keeps the first minimizer.
            if (r < best.rss) {
                best.rss = r;
                best.support.assign(idx.begin(), idx.end());
            }
        },
        [](SubsetFit& into, const SubsetFit& from) {
            into.skipped += from.skipped;
            if (from.rss < into.rss ||
                (from.rss == into.rss && !from.support.empty() && lex_less(from.support, into.support))) {
                into.rss = from.rss;
                into.support = from.support;
            }
        });
}

std::vector<std::vector<int>> subsets_with_rss_at_most(const Matrix& phi, const Vector& y, int k,
                                                       double bound, Execution exec) {
    using List = std::vector<std::vector<int>>;
    const int m = static_cast<int>(phi.cols());
    if (k == 0) return y.squaredNorm() <= bound ? List{{}} : List{};
    List found = reduce_combinations(
        m, k, exec, List{},
        [&](List& out, std::span<const int> idx) {
            const Matrix sub = columns(phi, idx);
            Eigen::ColPivHouseholderQR<Matrix> qr(sub);
            qr.setThreshold(kRankTolerance);
            if (qr.rank() != static_cast<Eigen::Index>(idx.size())) return;
            if ((y - sub * qr.solve(y)).squaredNorm() <= bound) out.emplace_back(idx.begin(), idx.end());
        },
        [](List& into, const List& from) { into.insert(into.end(), from.begin(), from.end()); });
    std::sort(found.begin(), found.end());
    return found;
}

}  // namespace l0cert::kernels
