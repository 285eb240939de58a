#pragma once

#include "braidflow/flow.hpp"

#include <cstdint>
#include <vector>

namespace braidflow {

// deterministic fixed-order pairwise summation (thread-count independent)
double pairwise_sum_fixed_order(const std::vector<double>& v);

// L2 length of the piecewise-autonomous isotopy: along an autonomous
// segment the spatial velocity norm is constant in time (the time-t map
// is area-preserving), so each segment contributes
// duration * sqrt(integral |X_H|^2). An upper bound for the L2 distance
// from the identity to the time-one map.
double l2_length(const FlowSpec& spec, int grid_n = 256);

struct GaussEstimate {
    double mean = 0.0;
    double half_width = 0.0;
    long samples = 0;
    std::uint64_t seed = 0;
    long refined_pairs = 0;
};

struct GaussOptions {
    long pairs = 2000;
    std::uint64_t seed = 1;
    Engine engine = Engine::Exact;
    int power = 1;                      // evaluate on the power-fold concatenation
    double samples_per_unit_time = 256; // chord sampling density
    double pair_floor = 1e-6;           // coincident pairs are resampled
    int max_refinements = 10;           // density doublings when turning steps exceed pi/2
};

// Monte Carlo estimate of the average total turning of the unit chord
// between two flow trajectories, scaled to the configuration-space
// integral: (1/2pi) int_{D^2 x D^2} (total turning) dx dy.
GaussEstimate gauss_functional(const FlowSpec& spec, const GaussOptions& opts);

// total chord turning for one concrete pair (exposed for oracles/tests)
double pair_turning(const FlowSpec& spec, Vec2 x, Vec2 y, const GaussOptions& opts);

} // namespace braidflow
