#include "l0cert/subsets.hpp"

#include "l0cert/errors.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace l0cert {

EnumerationLimits EnumerationLimits::from_environment(bool force) {
    EnumerationLimits limits;
    limits.force = force;
    if (const char* env = std::getenv("L0CERT_MAX_SUBSETS"); env && *env) {
        std::uint64_t value = 0;
        const char* end = env + std::strlen(env);
        auto [ptr, ec] = std::from_chars(env, end, value);
        if (ec != std::errc() || ptr != end)
            throw InvalidArgument(std::string("L0CERT_MAX_SUBSETS is not an integer: ") + env);
        limits.max_subsets = value;
    }
    return limits;
}

void EnumerationLimits::check(std::uint64_t requested) const {
    if (!force && requested > max_subsets) throw TooLarge(requested, max_subsets);
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 result = 1;
    for (int i = 1; i <= k; ++i) {
        result = result * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
        if (result > UINT64_MAX) return UINT64_MAX;
    }
    return static_cast<std::uint64_t>(result);
}

std::uint64_t count_subsets(int m, int k_lo, int k_hi) {
    std::uint64_t total = 0;
    for (int k = k_lo; k <= k_hi; ++k) {
        const std::uint64_t c = binomial(m, k);
        if (UINT64_MAX - total < c) return UINT64_MAX;
        total += c;
    }
    return total;
}

bool next_combination(std::span<int> indices, int m) {
    const int k = static_cast<int>(indices.size());
    for (int i = k - 1; i >= 0; --i) {
        if (indices[static_cast<std::size_t>(i)] < m - k + i) {
            ++indices[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                indices[static_cast<std::size_t>(j)] = indices[static_cast<std::size_t>(j - 1)] + 1;
            return true;
        }
    }
    return false;
}

void unrank_combination(std::uint64_t rank, int m, std::span<int> out) {
    const int k = static_cast<int>(out.size());
    int next = 0;
    for (int pos = 0; pos < k; ++pos) {
        // Skip leading values whose block of completions lies entirely below rank.
        for (;; ++next) {
            const std::uint64_t block = binomial(m - next - 1, k - pos - 1);
            if (rank < block) break;
            rank -= block;
        }
        out[static_cast<std::size_t>(pos)] = next++;
    }
}

}  // namespace l0cert
