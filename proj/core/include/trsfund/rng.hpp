#pragma once

#include <array>
#include <cstdint>

namespace trsfund {

// Counter-based generator: each (counter, key) pair maps to four independent
// 32-bit words, so arbitrary points of the stream can be sampled without
// sequential state. Ten rounds of the standard multiply-bumped-key network.
struct Philox4x32 {
    static std::array<std::uint32_t, 4> block(const std::array<std::uint32_t, 4>& counter,
                                              const std::array<std::uint32_t, 2>& key);
};

// Uniform in (0,1) built from two 32-bit words: 52 significant bits, never 0 or 1.
double uniform_from_words(std::uint32_t hi, std::uint32_t lo);

// Deterministic gaussian stream addressed by (path index, step index).
// The same (seed, index, step) always yields the same variate regardless of
// how many threads are used or in what order paths are evaluated.
class NormalStream {
  public:
    explicit NormalStream(std::uint64_t seed) : seed_(seed) {}

    double operator()(std::uint64_t path_index, std::uint32_t step) const;

  private:
    std::uint64_t seed_;
};

} // namespace trsfund
