#include "wshrink/noise.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace wshrink {

NoiseFamily parse_noise_family(std::string_view name) {
  if (name == "uniform") return NoiseFamily::uniform;
  if (name == "rademacher") return NoiseFamily::rademacher;
  if (name == "truncated") return NoiseFamily::truncated;
  if (name == "mixture") return NoiseFamily::mixture;
  if (name == "skewed") return NoiseFamily::skewed;
  throw std::invalid_argument("unknown noise family '" + std::string(name) + "'");
}

std::string_view to_string(NoiseFamily family) {
  switch (family) {
    case NoiseFamily::uniform: return "uniform";
    case NoiseFamily::rademacher: return "rademacher";
    case NoiseFamily::truncated: return "truncated";
    case NoiseFamily::mixture: return "mixture";
    case NoiseFamily::skewed: return "skewed";
  }
  return "unknown";
}

void validate(const NoiseSpec& spec) {
  if (!(spec.b >= 0.0) || !std::isfinite(spec.b)) throw std::invalid_argument("noise range b must be >= 0");
  if (!(spec.truncated_sigma > 0.0)) throw std::invalid_argument("truncated_sigma must be > 0");
  if (!(spec.skew_p > 0.0 && spec.skew_p <= 0.5)) throw std::invalid_argument("skew_p must be in (0, 1/2]");
}

namespace {

class Sampler {
 public:
  explicit Sampler(const NoiseSpec& spec) : spec_(spec), half_(spec.b / 2.0), engine_(spec.seed) {}

  double draw(NoiseFamily family) {
    switch (family) {
      case NoiseFamily::uniform: return std::uniform_real_distribution<double>(-half_, half_)(engine_);
      case NoiseFamily::rademacher: return std::bernoulli_distribution(0.5)(engine_) ? half_ : -half_;
      case NoiseFamily::truncated: {
        std::normal_distribution<double> normal(0.0, spec_.truncated_sigma * spec_.b);
        for (;;) {
          const double x = normal(engine_);
          if (x >= -half_ && x <= half_) return x;
        }
      }
      case NoiseFamily::skewed: {
        const double p = spec_.skew_p;
        return std::bernoulli_distribution(p)(engine_) ? half_ : -half_ * p / (1.0 - p);
      }
      case NoiseFamily::mixture: break;
    }
    throw std::logic_error("mixture has no single draw");
  }

 private:
  const NoiseSpec& spec_;
  double half_;
  std::mt19937_64 engine_;
};

}  // namespace

std::vector<double> draw_noise(const NoiseSpec& spec, std::size_t n) {
  validate(spec);
  std::vector<double> out(n, 0.0);
  if (spec.b == 0.0) return out;
  Sampler sampler(spec);
  static constexpr NoiseFamily cycle[] = {NoiseFamily::uniform, NoiseFamily::rademacher, NoiseFamily::truncated,
                                          NoiseFamily::skewed};
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = spec.family == NoiseFamily::mixture ? sampler.draw(cycle[i % 4]) : sampler.draw(spec.family);
  }
  return out;
}

SignalSamples sample_noise(const NoiseSpec& spec, std::size_t n) { return SignalSamples(draw_noise(spec, n)); }

}  // namespace wshrink
