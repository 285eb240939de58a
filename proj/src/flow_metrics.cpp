#include "braidflow/flow_metrics.hpp"

#include "braidflow/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace braidflow {

namespace {

// pairwise (fixed-order) summation: deterministic and well conditioned
double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 8) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += v[i];
        return s;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

struct TurningResult {
    double turning;
    bool coarse; // some step exceeded pi/2
};

TurningResult chord_turning(const FlowPath& px, const FlowPath& py, double pair_floor,
                            double samples_per_unit_time) {
    const double total = px.total_time();
    const long steps = std::max<long>(8, static_cast<long>(std::ceil(total * samples_per_unit_time)));
    double turning = 0.0;
    bool coarse = false;
    Vec2 chord = py.at(0.0) - px.at(0.0);
    if (norm(chord) < pair_floor) throw std::runtime_error("coincident pair");
    for (long k = 1; k <= steps; ++k) {
        const double t = total * static_cast<double>(k) / static_cast<double>(steps);
        const Vec2 next = py.at(t) - px.at(t);
        if (norm(next) < pair_floor) throw std::runtime_error("coincident pair");
        const double delta = signed_angle(chord, next);
        if (std::abs(delta) > M_PI_2) coarse = true;
        turning += std::abs(delta);
        chord = next;
    }
    return {turning, coarse};
}

} // namespace

double pairwise_sum_fixed_order(const std::vector<double>& v) {
    return v.empty() ? 0.0 : pairwise_sum(v, 0, v.size());
}

double l2_length(const FlowSpec& spec, int grid_n) {
    double total = 0.0;
    for (const auto& seg : spec.segments)
        total += seg.duration * std::sqrt(seg.field->kinetic_integral(grid_n));
    return total;
}

double pair_turning(const FlowSpec& spec, Vec2 x, Vec2 y, const GaussOptions& opts) {
    double density = opts.samples_per_unit_time;
    for (int attempt = 0; attempt <= opts.max_refinements; ++attempt) {
        const FlowPath px(spec, x, opts.power, opts.engine);
        const FlowPath py(spec, y, opts.power, opts.engine);
        const TurningResult r = chord_turning(px, py, opts.pair_floor, density);
        if (!r.coarse) return r.turning;
        density *= 2.0;
    }
    throw std::runtime_error("chord turning did not resolve within refinement limit");
}

GaussEstimate gauss_functional(const FlowSpec& spec, const GaussOptions& opts) {
    if (opts.pairs < 1) throw std::invalid_argument("gauss_functional needs at least one pair");
    std::vector<double> values(static_cast<std::size_t>(opts.pairs));
    long refined = 0;

#pragma omp parallel for schedule(dynamic, 16) reduction(+ : refined)
    for (long i = 0; i < opts.pairs; ++i) {
        Rng rng(Rng::derive(opts.seed, static_cast<std::uint64_t>(i)));
        for (;;) {
            const Vec2 x = rng.point_in_unit_disc();
            const Vec2 y = rng.point_in_unit_disc();
            if (norm(x - y) < opts.pair_floor) continue; // resample coincident pair
            double density = opts.samples_per_unit_time;
            double turning = -1.0;
            for (int attempt = 0; attempt <= opts.max_refinements; ++attempt) {
                const FlowPath px(spec, x, opts.power, opts.engine);
                const FlowPath py(spec, y, opts.power, opts.engine);
                TurningResult r{};
                try {
                    r = chord_turning(px, py, opts.pair_floor, density);
                } catch (const std::runtime_error&) {
                    break; // trajectories collide at this resolution: resample
                }
                if (!r.coarse) {
                    turning = r.turning;
                    if (attempt > 0) ++refined;
                    break;
                }
                density *= 2.0;
            }
            if (turning >= 0.0) {
                values[static_cast<std::size_t>(i)] = turning;
                break;
            }
        }
    }

    const double n = static_cast<double>(opts.pairs);
    const double mean_raw = pairwise_sum_fixed_order(values) / n;
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double d = values[i] - mean_raw;
        sq[i] = d * d;
    }
    const double var = values.size() > 1
                           ? pairwise_sum_fixed_order(sq) / (n - 1.0)
                           : 0.0;
    // scale factor: vol(D^2 x D^2) / (2 pi) = pi^2 / (2 pi) = pi / 2
    const double scale = M_PI / 2.0;
    GaussEstimate out;
    out.mean = scale * mean_raw;
    out.half_width = scale * 1.96 * std::sqrt(var / n);
    out.samples = opts.pairs;
    out.seed = opts.seed;
    out.refined_pairs = refined;
    return out;
}

} // namespace braidflow
