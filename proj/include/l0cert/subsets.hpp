#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace l0cert {

/// Default ceiling on the number of subsets a single enumeration may visit.
inline constexpr std::uint64_t kDefaultMaxSubsets = 2'000'000;

/// Cap on exhaustive enumeration. `force` disables the check.
struct EnumerationLimits {
    std::uint64_t max_subsets = kDefaultMaxSubsets;
    bool force = false;

    /// Reads L0CERT_MAX_SUBSETS when set; falls back to the default otherwise.
    static EnumerationLimits from_environment(bool force = false);
    static EnumerationLimits unlimited() { return {UINT64_MAX, true}; }

    /// Throws TooLarge when `requested` exceeds the cap and force is off.
    void check(std::uint64_t requested) const;
};

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(int n, int k);
/// Sum of C(m, k) for k in [k_lo, k_hi], saturating.
std::uint64_t count_subsets(int m, int k_lo, int k_hi);

/// Advances a strictly increasing k-combination of {0..m-1} in lexicographic order.
/// Returns false after the last combination.
bool next_combination(std::span<int> indices, int m);

/// Writes the combination with lexicographic rank `rank` among k-subsets of {0..m-1}.
void unrank_combination(std::uint64_t rank, int m, std::span<int> out);

/// Calls f(std::span<const int>) for every k-subset of {0..m-1}, lexicographically.
template <class F>
void for_each_combination(int m, int k, F&& f) {
    if (k < 0 || k > m) return;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    do {
        f(std::span<const int>(idx));
    } while (next_combination(idx, m));
}

}  // namespace l0cert
