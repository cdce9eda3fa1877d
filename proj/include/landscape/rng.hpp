#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace landscape::rng {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
/// as easy as 1, 2, 3"). Maps a 128-bit counter under a 64-bit key to 128
/// pseudo-random bits.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Mixes a base seed with a label and indices into an independent seed.
std::uint64_t derive_seed(std::uint64_t base, std::string_view label,
                          std::initializer_list<std::uint64_t> indices = {});

/// A counter-based random stream identified by (seed, stream, index).
///
/// Streams with different (stream, index) are independent and can be
/// created in any order on any thread; the values drawn from one stream do
/// not depend on how many other streams exist. This is what makes Monte Carlo
/// trials reproducible regardless of worker count.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint32_t stream, std::uint64_t index);

  std::uint64_t next_u64();
  /// Uniform on the open interval (0, 1), 53 bits.
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);
  /// Standard normal via Box-Muller.
  double normal();
  /// Unbiased integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> block_{};
  int used_ = 4;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// Named stream identifiers so independent uses never share counters.
enum class StreamId : std::uint32_t {
  Weights = 1,
  Data = 2,
  Labels = 3,
  Shuffle = 4,
  Init = 5,
  Padding = 6,
  Redraw = 7,
  Trial = 8,
};

inline Stream make_stream(std::uint64_t seed, StreamId id,
                          std::uint64_t index = 0) {
  return Stream(seed, static_cast<std::uint32_t>(id), index);
}

}  // namespace landscape::rng
