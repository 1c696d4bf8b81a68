#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace hdc {

// Stream purposes used when deriving child streams. Keeping them named makes
// every draw in an experiment traceable to one (seed, key path, purpose).
enum class Purpose : std::uint64_t {
  vocabulary = 1,
  x_axis = 2,
  y_axis = 3,
  positions = 4,
  labels = 5,
  sampling = 6,
  superposition = 7,
  spatial = 8,
};

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seedable, splittable pseudo-random stream.
///
/// A stream is identified by a 64-bit key. Children are derived by hashing the
/// parent key with an index, so a child's output depends only on the path of
/// keys that produced it, never on how many draws other streams have made.
class RandomStream {
 public:
  using engine_type = std::mt19937_64;

  explicit RandomStream(std::uint64_t seed) : key_(splitmix64(seed)), engine_(key_) {}

  [[nodiscard]] RandomStream child(std::uint64_t index) const {
    return RandomStream(Key{}, splitmix64(key_ ^ splitmix64(index + 0x632BE59BD9B4E019ULL)));
  }
  [[nodiscard]] RandomStream child(Purpose p) const {
    return child(static_cast<std::uint64_t>(p));
  }
  [[nodiscard]] RandomStream derive(std::initializer_list<std::uint64_t> path) const {
    RandomStream s = *this;
    for (auto k : path) s = s.child(k);
    return s;
  }

  [[nodiscard]] std::uint64_t key() const noexcept { return key_; }
  engine_type& engine() noexcept { return engine_; }

  template <typename Scalar = double>
  Scalar normal() {
    return std::normal_distribution<Scalar>{}(engine_);
  }
  template <typename Scalar = double>
  Scalar uniform(Scalar lo, Scalar hi) {
    return std::uniform_real_distribution<Scalar>{lo, hi}(engine_);
  }
  bool coin() { return (engine_() >> 63) != 0; }
  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    return std::uniform_int_distribution<std::uint64_t>{0, n - 1}(engine_);
  }

 private:
  struct Key {};
  RandomStream(Key, std::uint64_t key) : key_(key), engine_(key) {}

  std::uint64_t key_;
  engine_type engine_;
};

}  // namespace hdc
