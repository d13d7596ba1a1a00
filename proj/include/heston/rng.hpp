#pragma once

#include <array>
#include <cstdint>

namespace heston {

/// Counter-based generator (Philox 4x32, 10 rounds). Each (seed, stream,
/// step) triple maps to four independent 32-bit words with no sequential
/// state, so per-path streams can be evaluated in any order or in parallel
/// and still produce identical draws.
struct Philox4x32 {
    static std::array<std::uint32_t, 4> block(std::uint64_t seed, std::uint64_t stream,
                                              std::uint64_t step) noexcept {
        std::uint32_t c0 = static_cast<std::uint32_t>(stream);
        std::uint32_t c1 = static_cast<std::uint32_t>(stream >> 32);
        std::uint32_t c2 = static_cast<std::uint32_t>(step);
        std::uint32_t c3 = static_cast<std::uint32_t>(step >> 32);
        std::uint32_t k0 = static_cast<std::uint32_t>(seed);
        std::uint32_t k1 = static_cast<std::uint32_t>(seed >> 32);

        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * c0;
            const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * c2;
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            c0 = hi1 ^ c1 ^ k0;
            c1 = lo1;
            c2 = hi0 ^ c3 ^ k1;
            c3 = lo0;
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        return {c0, c1, c2, c3};
    }
};

/// Uniform in the open interval (0, 1) from two 32-bit words: 52 mantissa
/// bits, offset by half a step so 0 and 1 are unreachable even after
/// rounding (the normal quantile needs p strictly inside).
inline double uniform_open(std::uint32_t w0, std::uint32_t w1) noexcept {
    const std::uint64_t wide = (static_cast<std::uint64_t>(w0) << 32) | w1;
    return (static_cast<double>(wide >> 12) + 0.5) * 0x1.0p-52;
}

/// Inverse standard normal CDF, Wichura's AS 241 (PPND16). Deterministic and
/// accurate to about 1e-16 relative, which keeps Monte-Carlo runs
/// reproducible across schedulers and platforms with the same libm-free path.
double normal_quantile(double p) noexcept;

/// The two standard normal increments for (stream, step).
inline std::array<double, 2> normal_pair(std::uint64_t seed, std::uint64_t stream,
                                         std::uint64_t step) noexcept {
    const auto w = Philox4x32::block(seed, stream, step);
    return {normal_quantile(uniform_open(w[0], w[1])),
            normal_quantile(uniform_open(w[2], w[3]))};
}

}  // namespace heston
