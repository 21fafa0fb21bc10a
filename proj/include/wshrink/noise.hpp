#ifndef WSHRINK_NOISE_HPP
#define WSHRINK_NOISE_HPP

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "wshrink/samples.hpp"

namespace wshrink {

/// Bounded zero-mean noise families. Every draw lies in [-b/2, b/2].
///
///   uniform       U[-b/2, b/2]
///   rademacher    +-b/2 with probability 1/2 each
///   truncated     N(0, (sigma b)^2) conditioned on [-b/2, b/2]
///   mixture       index i cycles uniform, rademacher, truncated, skewed
///   skewed        +b/2 with probability p, -(b/2) p/(1-p) otherwise
enum class NoiseFamily { uniform, rademacher, truncated, mixture, skewed };

NoiseFamily parse_noise_family(std::string_view name);
std::string_view to_string(NoiseFamily family);

struct NoiseSpec {
  NoiseFamily family = NoiseFamily::uniform;
  double b = 1.0;                ///< total range; b = 0 gives the zero vector
  std::uint64_t seed = 0;
  double truncated_sigma = 0.25; ///< standard deviation before truncation, in units of b
  double skew_p = 0.2;           ///< in (0, 1/2]
};

/// Throws std::invalid_argument for b < 0 or out-of-range family parameters.
void validate(const NoiseSpec& spec);

/// n independent draws; a pure function of (spec, n).
std::vector<double> draw_noise(const NoiseSpec& spec, std::size_t n);

/// draw_noise for a power-of-two n.
SignalSamples sample_noise(const NoiseSpec& spec, std::size_t n);

}  // namespace wshrink

#endif  // WSHRINK_NOISE_HPP
