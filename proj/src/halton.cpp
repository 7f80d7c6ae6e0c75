#include "oath/halton.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace oath {

void HaltonConfig::validate() const {
  if (bases.size() != 2) throw std::invalid_argument("sampling: exactly two bases are supported");
  for (std::size_t i = 0; i < bases.size(); ++i) {
    if (bases[i] < 2) throw std::invalid_argument("sampling: bases must be >= 2");
    for (std::size_t j = i + 1; j < bases.size(); ++j) {
      if (std::gcd(bases[i], bases[j]) != 1) {
        throw std::invalid_argument("sampling: bases must be pairwise coprime");
      }
    }
  }
  if (n_candidates == 0) throw std::invalid_argument("sampling: n_candidates must be positive");
  if (!(beta >= 0.0 && beta <= 1.0)) throw std::invalid_argument("sampling: beta must be in [0, 1]");
  if (!(delta_min >= 0.0)) throw std::invalid_argument("sampling: delta_min must be >= 0");
  if (!(delta_opt >= delta_min)) throw std::invalid_argument("sampling: delta_opt must be >= delta_min");
  if (!(sigma > 0.0)) throw std::invalid_argument("sampling: sigma must be positive");
}

double radical_inverse(std::uint64_t i, std::uint32_t base) {
  double result = 0.0;
  double scale = 1.0 / base;
  while (i > 0) {
    result += static_cast<double>(i % base) * scale;
    i /= base;
    scale /= base;
  }
  return result;
}

double acceptance_probability(double delta, const HaltonConfig& cfg) {
  if (delta < cfg.delta_min) return 0.0;
  const double z = delta - cfg.delta_opt;
  return cfg.beta + (1.0 - cfg.beta) * std::exp(-(z * z) / (2.0 * cfg.sigma * cfg.sigma));
}

double acceptance_draw(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over a per-index counter
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

std::vector<SamplePoint> sample_map(const Workspace& workspace, const HaltonConfig& cfg) {
  cfg.validate();
  std::vector<SamplePoint> samples;
  samples.reserve(cfg.n_candidates);
  std::size_t accepted = 0;
  for (std::size_t i = 1; i <= cfg.n_candidates; ++i) {
    SamplePoint s;
    s.index = i;
    s.position = {radical_inverse(i, cfg.bases[0]) * workspace.width(),
                  radical_inverse(i, cfg.bases[1]) * workspace.height()};
    s.clearance = workspace.clearance(s.position, true);
    s.accepted = acceptance_draw(cfg.seed, i) < acceptance_probability(s.clearance, cfg);
    accepted += s.accepted ? 1 : 0;
    samples.push_back(s);
  }
  if (accepted == 0) throw std::runtime_error("sampling: no candidate point was accepted");
  return samples;
}

std::vector<Point> accepted_positions(const std::vector<SamplePoint>& samples) {
  std::vector<Point> out;
  for (const auto& s : samples) {
    if (s.accepted) out.push_back(s.position);
  }
  return out;
}

}  // namespace oath
