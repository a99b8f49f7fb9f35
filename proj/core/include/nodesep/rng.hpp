#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace nodesep {

// Deterministic random source. All randomness of a solve flows from one root
// Rng; independent child streams are derived with fork(stream_id), which
// depends only on the parent's seed and the id, never on how much the parent
// has already been consumed. Sampling avoids std::uniform_int_distribution so
// that results are identical across standard library implementations
// (std::mt19937_64 itself is fully specified by the standard).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), gen_(scramble(seed)) {}

    Rng fork(std::uint64_t stream) const {
        return Rng(scramble(seed_ ^ scramble(stream + 0x632be59bd9b4e019ULL)));
    }

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return gen_(); }

    // Unbiased integer in [0, bound); bound must be positive.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = gen_();
            if (r >= threshold) return r % bound;
        }
    }

    std::size_t index(std::size_t size) {
        return static_cast<std::size_t>(next_below(size));
    }

    bool coin() { return (gen_() & 1u) != 0; }

    double unit_real() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    template <typename T>
    void shuffle(std::vector<T>& values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            std::swap(values[i - 1], values[next_below(i)]);
        }
    }

private:
    static std::uint64_t scramble(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::uint64_t seed_;
    std::mt19937_64 gen_;
};

}  // namespace nodesep
