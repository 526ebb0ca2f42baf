#ifndef TNNCLUST_RNG_HPP
#define TNNCLUST_RNG_HPP

#include <cstdint>
#include <initializer_list>

#include "tnnclust/rational.hpp"

namespace tnn {

__extension__ using uint128 = unsigned __int128;
__extension__ using int128 = __int128;

/// Stream identifiers. Every random quantity in the library is addressed by
/// (seed, stream, coordinates...), never by a position in a shared sequence.
enum class Stream : std::uint64_t {
  kProjection = 1,
  kWeightInit = 2,
  kShuffle = 3,
  kStdp = 4,
  kSynthetic = 5,
  kKMeans = 6,
  kSequential = 7,
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based generator. The value at a key is
///
///   h0 = mix64(seed); h_{i+1} = mix64(h_i ^ word_i)
///
/// over words (stream, c0, c1, ...). The mapping is part of the on-disk
/// reproducibility contract: changing it invalidates saved models and
/// golden files.
class CounterRng {
 public:
  constexpr explicit CounterRng(std::uint64_t seed = 0) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t bits(Stream stream, std::initializer_list<std::uint64_t> counter) const {
    std::uint64_t h = mix64(mix64(seed_) ^ static_cast<std::uint64_t>(stream));
    for (std::uint64_t c : counter) h = mix64(h ^ c);
    return h;
  }

  /// Integer in [0, bound) by 128-bit multiply-shift; bias is below 2^-64 * bound.
  std::uint64_t below(std::uint64_t bound, Stream stream,
                      std::initializer_list<std::uint64_t> counter) const {
    const uint128 product =
        static_cast<uint128>(bits(stream, counter)) * bound;
    return static_cast<std::uint64_t>(product >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform(Stream stream, std::initializer_list<std::uint64_t> counter) const {
    return static_cast<double>(bits(stream, counter) >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t seed_;
};

/// True with probability p, decided by an integer comparison u·den < num·2^64.
inline bool bernoulli(std::uint64_t u, const Rational& p) {
  if (p.num() <= 0) return false;
  if (p.num() >= p.den()) return true;
  return static_cast<uint128>(u) * static_cast<std::uint64_t>(p.den()) <
         (static_cast<uint128>(static_cast<std::uint64_t>(p.num())) << 64);
}

}  // namespace tnn

#endif  // TNNCLUST_RNG_HPP
