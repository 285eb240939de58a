#pragma once

#include "braidflow/braid.hpp"
#include "braidflow/flow.hpp"
#include "braidflow/rng.hpp"

#include <stdexcept>
#include <vector>

namespace braidflow {

// n pairwise distinct points in the open unit disc
struct Configuration {
    std::vector<Vec2> points;

    int n() const { return static_cast<int>(points.size()); }
    double min_separation() const;
    void validate(double separation_floor) const;
};

// n points on the horizontal diameter, the default basepoint tuple
Configuration default_basepoints(int n);

// raised when a sample is too degenerate to trace; callers resample
class TraceDegenerate : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// raised when the sampling grid is too coarse to resolve the motion;
// callers rebuild the bundle at doubled density
class TraceCoarse : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// n piecewise-linear strand paths over a shared time grid covering the
// three legs of the loop: straight basepoints -> configuration on
// [0, 1/3], the p-fold flow on [1/3, 2/3], straight return on [2/3, 1]
struct StrandBundle {
    std::vector<double> times;
    std::vector<std::vector<Vec2>> strands; // strands[i][k]
    int power = 1;

    int n() const { return static_cast<int>(strands.size()); }
    std::size_t samples() const { return times.size(); }
};

struct TraceOptions {
    double samples_per_unit_time = 128.0; // middle-leg sampling density
    int leg_samples = 32;
    double separation_floor = 1e-4;
    int direction_retries = 3;      // projection perturbation attempts
    int density_refinements = 10;   // doublings when chord turning is under-resolved
    bool verify_winding = false;    // cross-check writhe = 2 * sum of winding numbers
};

StrandBundle make_loop(const FlowSpec& spec, const Configuration& x, const Configuration& z,
                       int power, Engine engine, const TraceOptions& opts);

// Sort strands by their projection onto the direction; each exchange of
// adjacent projected order emits a generator, signed by which strand
// passes in front. Output is freely reduced and pure.
BraidWord extract_braid(const StrandBundle& b, double direction, const TraceOptions& opts,
                        Rng* retry_rng = nullptr);

// total signed winding number of the chord from strand i to strand j
// over the closed loop; integer and symmetric
std::vector<std::vector<int>> pairwise_winding(const StrandBundle& b);

// number of times the chord direction from i to j passes the given
// direction, per ordered pair
std::vector<std::vector<long>> crossing_profile(const StrandBundle& b, double direction);

// convenience: full per-sample pipeline used by the estimator
BraidWord trace_braid(const FlowSpec& spec, const Configuration& x, const Configuration& z,
                      int power, Engine engine, const TraceOptions& opts, Rng* retry_rng);

} // namespace braidflow
