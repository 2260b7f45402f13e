#pragma once

// Counter-based random streams.
//
// A Philox4x32-10 block cipher keyed by a 64-bit seed maps a 128-bit counter
// to four 32-bit words. The counter is split into a 64-bit stream id and a
// 64-bit block index, so (seed, stream, position) fully determines every
// output and independent streams can be handed to workers in any order.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

#include <boost/random/gamma_distribution.hpp>
#include <boost/random/normal_distribution.hpp>

namespace robustdeg {

namespace detail {

inline constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

constexpr void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                       std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace detail

using PhiloxBlock = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al., SC'11).
constexpr PhiloxBlock philox4x32_10(PhiloxBlock ctr, PhiloxKey key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += detail::kPhiloxW0;
      key[1] += detail::kPhiloxW1;
    }
    std::uint32_t hi0 = 0, lo0 = 0, hi1 = 0, lo1 = 0;
    detail::mulhilo(detail::kPhiloxM0, ctr[0], hi0, lo0);
    detail::mulhilo(detail::kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

/// UniformRandomBitGenerator over one Philox stream.
class CounterRng {
 public:
  using result_type = std::uint32_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    if (used_ == 4) {
      refill();
    }
    return buffer_[used_++];
  }

  std::uint64_t seed() const {
    return static_cast<std::uint64_t>(key_[1]) << 32 | key_[0];
  }
  std::uint64_t stream() const { return stream_; }
  // Number of 128-bit blocks consumed so far.
  std::uint64_t blocks() const { return block_; }

 private:
  void refill() {
    const PhiloxBlock ctr{static_cast<std::uint32_t>(block_),
                          static_cast<std::uint32_t>(block_ >> 32),
                          static_cast<std::uint32_t>(stream_),
                          static_cast<std::uint32_t>(stream_ >> 32)};
    buffer_ = philox4x32_10(ctr, key_);
    ++block_;
    used_ = 0;
  }

  PhiloxKey key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  PhiloxBlock buffer_{};
  int used_ = 4;
};

// Uniform on the open interval (0, 1) with 53 random bits.
template <class Rng>
double uniform_open01(Rng& rng) {
  for (;;) {
    const std::uint64_t hi = rng() >> 5;  // 27 bits
    const std::uint64_t lo = rng() >> 6;  // 26 bits
    const double u = static_cast<double>(hi << 26 | lo) * 0x1.0p-53;
    if (u > 0.0) {
      return u;
    }
  }
}

template <class Rng>
double uniform_symmetric(Rng& rng, double half_width) {
  return half_width * (2.0 * uniform_open01(rng) - 1.0);
}

template <class Rng>
double standard_normal(Rng& rng) {
  boost::random::normal_distribution<double> dist;
  return dist(rng);
}

template <class Rng>
double standard_gamma(Rng& rng, double shape) {
  boost::random::gamma_distribution<double> dist(shape, 1.0);
  return dist(rng);
}

template <class Rng>
double standard_exponential(Rng& rng) {
  return -std::log(uniform_open01(rng));
}

}  // namespace robustdeg
