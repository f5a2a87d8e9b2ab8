#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <random>

#include "capcover/geometry.hpp"

namespace capcover {

struct Seed {
  std::uint64_t master = 0;
  std::uint64_t stream = 0;

  friend bool operator==(const Seed&, const Seed&) = default;
};

std::uint64_t splitmix64(std::uint64_t x);

// xoshiro256** keyed by (master, stream, substream). Every substream is a pure
// function of its key, so replications can be generated in any order or on
// any thread.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(Seed seed, std::uint64_t substream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  double uniform01();
  double standard_normal() { return normal_(*this); }

 private:
  std::array<std::uint64_t, 4> state_{};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// Three standard normals scaled to unit length; near-zero norms are redrawn.
UnitVector sample_uniform_sphere(Rng& rng);

}  // namespace capcover
