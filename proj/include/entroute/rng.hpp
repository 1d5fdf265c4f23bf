#pragma once

#include <cstdint>
#include <string_view>

namespace entroute {

// Deterministic, implementation-independent random stream. All randomness in
// the library flows from a single run seed through named sub-streams so that a
// change in one consumer never perturbs the draws seen by another.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : state_(seed) {
        // decorrelate trivially-related seeds
        next_u64();
        next_u64();
    }

    RandomStream(std::uint64_t seed, std::string_view stream_name)
        : RandomStream(seed ^ fnv1a(stream_name)) {}

    std::uint64_t next_u64() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform integer in [lo, hi], inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return lo + static_cast<std::int64_t>(next_u64());
        // rejection sampling keeps the distribution exact
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % span + 1) % span;
        std::uint64_t draw = next_u64();
        while (draw > limit) draw = next_u64();
        return lo + static_cast<std::int64_t>(draw % span);
    }

    // Uniform real in [lo, hi).
    double uniform_real(double lo, double hi) {
        const double unit = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * unit;
    }

    static std::uint64_t fnv1a(std::string_view s) {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (char ch : s) {
            h ^= static_cast<unsigned char>(ch);
            h *= 0x100000001b3ULL;
        }
        return h;
    }

private:
    std::uint64_t state_;
};

} // namespace entroute
