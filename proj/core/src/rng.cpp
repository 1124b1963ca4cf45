#include "trsfund/rng.hpp"

#include "trsfund/normal.hpp"

namespace trsfund {

namespace {

constexpr std::uint32_t kMult0 = 0xD2511F53u;
constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void round_once(std::array<std::uint32_t, 4>& x, const std::array<std::uint32_t, 2>& k) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMult0) * x[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMult1) * x[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    x = {hi1 ^ x[1] ^ k[0], lo1, hi0 ^ x[3] ^ k[1], lo0};
}

} // namespace

std::array<std::uint32_t, 4> Philox4x32::block(const std::array<std::uint32_t, 4>& counter,
                                               const std::array<std::uint32_t, 2>& key) {
    std::array<std::uint32_t, 4> x = counter;
    std::array<std::uint32_t, 2> k = key;
    for (int r = 0; r < 10; ++r) {
        round_once(x, k);
        k[0] += kWeyl0;
        k[1] += kWeyl1;
    }
    return x;
}

double uniform_from_words(std::uint32_t hi, std::uint32_t lo) {
    // 52 random bits; 53 would round the top value up to exactly 1.0
    const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
    return static_cast<double>(bits >> 12) * 0x1.0p-52 + 0x1.0p-53;
}

double NormalStream::operator()(std::uint64_t path_index, std::uint32_t step) const {
    const std::array<std::uint32_t, 4> counter = {
        static_cast<std::uint32_t>(path_index),
        static_cast<std::uint32_t>(path_index >> 32), step, 0u};
    const std::array<std::uint32_t, 2> key = {static_cast<std::uint32_t>(seed_),
                                              static_cast<std::uint32_t>(seed_ >> 32)};
    const auto w = Philox4x32::block(counter, key);
    return norm_inv_cdf(uniform_from_words(w[0], w[1]));
}

} // namespace trsfund
