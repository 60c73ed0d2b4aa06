#include "leafclust/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "leafclust/error.hpp"

namespace leafclust {
namespace {

constexpr int kHarmonics = 5;

// std::mt19937_64 is fully specified by the standard; the distributions are
// not, so uniform and normal draws are derived here from the raw bits.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t integer(std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(engine_() % (hi - lo + 1));
  }
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

struct Template {
  double amplitude[kHarmonics];
  double phase[kHarmonics];

  double radius(double theta) const {
    double r = 1.0;
    for (int h = 0; h < kHarmonics; ++h) r += amplitude[h] * std::cos((h + 1) * theta + phase[h]);
    return r;
  }
};

Template draw_template(Rng& rng) {
  Template t{};
  // A strong first harmonic gives every shape a well-defined mean direction.
  t.amplitude[0] = rng.uniform(0.2, 0.4);
  for (int h = 1; h < kHarmonics; ++h) t.amplitude[h] = rng.uniform(0.0, 0.35) / h;
  double total = 0.0;
  for (double a : t.amplitude) total += a;
  if (total > 0.85) {
    for (double& a : t.amplitude) a *= 0.85 / total;
  }
  for (double& p : t.phase) p = rng.uniform(0.0, kTwoPi);
  return t;
}

}  // namespace

void SynthConfig::validate() const {
  if (groups < 1) throw InputError("synth: groups must be >= 1");
  if (per_group < 1) throw InputError("synth: per_group must be >= 1");
  if (min_length < 2 || max_length < min_length) {
    throw InputError("synth: resolution range must satisfy 2 <= min <= max");
  }
  if (!(noise >= 0.0) || !std::isfinite(noise)) throw InputError("synth: noise must be >= 0");
}

Dataset synthesize(const SynthConfig& config) {
  config.validate();
  Rng rng(config.seed);
  std::vector<Template> templates;
  for (int g = 0; g < config.groups; ++g) templates.push_back(draw_template(rng));

  Dataset data;
  for (int g = 0; g < config.groups; ++g) {
    for (int k = 0; k < config.per_group; ++k) {
      const double scale = config.random_scale ? std::exp(rng.uniform(std::log(0.5), std::log(50.0))) : 1.0;
      const std::size_t n = rng.integer(config.min_length, config.max_length);
      const double offset = config.random_rotation ? rng.uniform(0.0, kTwoPi) : 0.0;
      std::vector<double> values(n);
      for (std::size_t j = 1; j <= n; ++j) {
        const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(n) + offset;
        double y = scale * templates[static_cast<std::size_t>(g)].radius(theta);
        if (config.noise > 0.0) y *= std::max(0.0, 1.0 + config.noise * rng.normal());
        values[j - 1] = y;
      }
      const std::string group = "G" + std::to_string(g + 1);
      data.sequences.emplace_back(group + "." + std::to_string(k + 1), std::move(values));
      data.groups.push_back(group);
    }
  }
  return data;
}

}  // namespace leafclust
