#pragma once

#include <cstdint>
#include <vector>

#include "oath/geometry.hpp"
#include "oath/workspace.hpp"

namespace oath {

struct HaltonConfig {
  std::vector<std::uint32_t> bases{2, 3};
  std::size_t n_candidates = 2000;
  double delta_min = 0.3;
  double delta_opt = 0.4;
  double sigma = 0.5;
  double beta = 0.2;
  std::uint64_t seed = 1;

  // Throws std::invalid_argument on a violated invariant.
  void validate() const;
};

struct SamplePoint {
  std::size_t index = 0;
  Point position;
  double clearance = 0.0;
  bool accepted = false;
};

// Digit-reversal of i in base b mapped into [0, 1).
double radical_inverse(std::uint64_t i, std::uint32_t base);

// Gaussian acceptance around delta_opt with floor beta; zero below delta_min.
double acceptance_probability(double delta, const HaltonConfig& cfg);

// Uniform [0, 1) draw that depends only on (seed, index).
double acceptance_draw(std::uint64_t seed, std::uint64_t index);

// Candidates i = 1..n_candidates scaled to the workspace, each tagged with its
// clearance against the obstacles visible at call time and the accept flag.
// Throws std::runtime_error if nothing is accepted.
std::vector<SamplePoint> sample_map(const Workspace& workspace, const HaltonConfig& cfg);

std::vector<Point> accepted_positions(const std::vector<SamplePoint>& samples);

}  // namespace oath
