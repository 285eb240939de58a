#include "braidflow/trace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace braidflow {

namespace {

struct CrossingEvent {
    double t;
    int i, j;
    double vi, vj; // orthogonal coordinates at the crossing
};

} // namespace

double Configuration::min_separation() const {
    double best = 2.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            best = std::min(best, norm(points[i] - points[j]));
    return best;
}

void Configuration::validate(double separation_floor) const {
    if (points.size() < 2)
        throw std::invalid_argument("configuration needs at least two points");
    for (const auto& p : points) check_inside_disc(p, "configuration");
    if (min_separation() < separation_floor)
        throw TraceDegenerate("configuration below separation floor");
}

Configuration default_basepoints(int n) {
    Configuration z;
    for (int i = 0; i < n; ++i) {
        const double t = (2.0 * i - (n - 1)) / static_cast<double>(n + 1);
        z.points.push_back({t, 0.0});
    }
    return z;
}

StrandBundle make_loop(const FlowSpec& spec, const Configuration& x, const Configuration& z,
                       int power, Engine engine, const TraceOptions& opts) {
    if (power < 1) throw std::invalid_argument("make_loop power must be >= 1");
    if (x.n() != z.n()) throw std::invalid_argument("make_loop: configuration sizes differ");
    x.validate(opts.separation_floor);
    z.validate(opts.separation_floor);

    const int n = x.n();
    std::vector<FlowPath> paths;
    paths.reserve(n);
    for (int i = 0; i < n; ++i) paths.emplace_back(spec, x.points[i], power, engine);
    const double flow_time = paths.front().total_time();

    // shared loop-time grid: [0,1/3] leg, [1/3,2/3] flow, [2/3,1] leg
    const long mid = std::max<long>(
        8, static_cast<long>(std::ceil(flow_time * opts.samples_per_unit_time)));
    std::vector<double> times;
    times.reserve(2 * opts.leg_samples + mid + 1);
    for (int k = 0; k < opts.leg_samples; ++k)
        times.push_back(k / (3.0 * opts.leg_samples));
    for (long k = 0; k <= mid; ++k)
        times.push_back(1.0 / 3.0 + (k / static_cast<double>(mid)) / 3.0);
    for (int k = 1; k <= opts.leg_samples; ++k)
        times.push_back(2.0 / 3.0 + k / (3.0 * opts.leg_samples));

    StrandBundle b;
    b.power = power;
    b.times = times;
    b.strands.assign(n, {});
    for (int i = 0; i < n; ++i) {
        auto& strand = b.strands[i];
        strand.reserve(times.size());
        const Vec2 xi = x.points[i], zi = z.points[i];
        const Vec2 gi = paths[i].endpoint();
        for (double t : times) {
            if (t < 1.0 / 3.0 - 1e-15) {
                const double s = 3.0 * t;
                strand.push_back(zi * (1.0 - s) + xi * s);
            } else if (t <= 2.0 / 3.0 + 1e-15) {
                const double s = std::clamp(3.0 * (t - 1.0 / 3.0), 0.0, 1.0);
                strand.push_back(paths[i].at(s * flow_time));
            } else {
                const double s = 3.0 * (t - 2.0 / 3.0);
                strand.push_back(gi * (1.0 - s) + zi * s);
            }
        }
    }

    // degeneracy check: strands must stay separated at every sample time
    for (std::size_t k = 0; k < b.times.size(); ++k) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (norm(b.strands[i][k] - b.strands[j][k]) < opts.separation_floor)
                    throw TraceDegenerate("strands below separation floor mid-loop");
    }
    return b;
}

namespace {

// single extraction attempt; returns false on projection degeneracy
bool try_extract(const StrandBundle& b, double direction, BraidWord& out) {
    const int n = b.n();
    const Vec2 u{std::cos(direction), std::sin(direction)};
    const Vec2 v{-u.y, u.x};

    // projections
    std::vector<std::vector<double>> s(n), w(n);
    for (int i = 0; i < n; ++i) {
        s[i].reserve(b.samples());
        w[i].reserve(b.samples());
        for (const auto& p : b.strands[i]) {
            s[i].push_back(dot(p, u));
            w[i].push_back(dot(p, v));
        }
    }

    // initial ranking
    std::vector<int> order(n); // order[rank] = strand
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int c) { return s[a][0] < s[c][0]; });
    for (int r = 0; r + 1 < n; ++r)
        if (s[order[r]][0] == s[order[r + 1]][0]) return false;
    std::vector<int> rank(n);
    for (int r = 0; r < n; ++r) rank[order[r]] = r;

    BraidWord word(std::max(2, n));
    std::vector<CrossingEvent> events;
    for (std::size_t k = 0; k + 1 < b.samples(); ++k) {
        events.clear();
        const double t0 = b.times[k], t1 = b.times[k + 1];
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                const double d0 = s[i][k] - s[j][k];
                const double d1 = s[i][k + 1] - s[j][k + 1];
                if (d0 == 0.0 || d1 == 0.0) return false;
                if ((d0 < 0.0) == (d1 < 0.0)) continue;
                const double f = d0 / (d0 - d1);
                CrossingEvent e;
                e.t = t0 + f * (t1 - t0);
                e.i = i;
                e.j = j;
                e.vi = w[i][k] + f * (w[i][k + 1] - w[i][k]);
                e.vj = w[j][k] + f * (w[j][k + 1] - w[j][k]);
                events.push_back(e);
            }
        }
        std::sort(events.begin(), events.end(),
                  [](const CrossingEvent& a, const CrossingEvent& c) { return a.t < c.t; });
        for (std::size_t e = 0; e + 1 < events.size(); ++e)
            if (events[e].t == events[e + 1].t) return false;
        for (const auto& e : events) {
            const int ri = rank[e.i], rj = rank[e.j];
            if (std::abs(ri - rj) != 1) return false; // non-generic ordering
            const int lower_rank = std::min(ri, rj);
            const int lower_strand = ri < rj ? e.i : e.j;
            const double v_lower = lower_strand == e.i ? e.vi : e.vj;
            const double v_upper = lower_strand == e.i ? e.vj : e.vi;
            if (v_lower == v_upper) return false;
            // positive crossing: the strand at the lower projected position
            // passes behind (smaller orthogonal coordinate)
            const int sign = v_lower < v_upper ? 1 : -1;
            word.append({lower_rank + 1, sign});
            std::swap(rank[e.i], rank[e.j]);
            order[rank[e.i]] = e.i;
            order[rank[e.j]] = e.j;
        }
    }
    out = free_reduce(word);
    return true;
}

} // namespace

BraidWord extract_braid(const StrandBundle& b, double direction, const TraceOptions& opts,
                        Rng* retry_rng) {
    double omega = direction;
    for (int attempt = 0; attempt <= opts.direction_retries; ++attempt) {
        BraidWord out(std::max(2, b.n()));
        if (try_extract(b, omega, out)) {
            if (!is_pure(out))
                throw TraceDegenerate("extracted braid is not pure (missed crossings)");
            return out;
        }
        if (retry_rng != nullptr)
            omega += retry_rng->uniform(0.05, 0.45);
        else
            omega += 0.173 + 0.061 * attempt; // deterministic fallback rotation
    }
    throw TraceDegenerate("projection stayed degenerate after direction retries");
}

std::vector<std::vector<int>> pairwise_winding(const StrandBundle& b) {
    const int n = b.n();
    std::vector<std::vector<int>> out(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double total = 0.0;
            Vec2 chord = b.strands[j][0] - b.strands[i][0];
            for (std::size_t k = 1; k < b.samples(); ++k) {
                const Vec2 next = b.strands[j][k] - b.strands[i][k];
                const double delta = signed_angle(chord, next);
                if (std::abs(delta) > M_PI_2)
                    throw TraceCoarse("chord turning under-resolved (refine the bundle)");
                total += delta;
                chord = next;
            }
            const double turns = total / (2.0 * M_PI);
            const int rounded = static_cast<int>(std::lround(turns));
            if (std::abs(turns - rounded) > 1e-3)
                throw std::runtime_error("pairwise winding failed integer closure");
            out[i][j] = out[j][i] = rounded;
        }
    }
    return out;
}

std::vector<std::vector<long>> crossing_profile(const StrandBundle& b, double direction) {
    const int n = b.n();
    std::vector<std::vector<long>> out(n, std::vector<long>(n, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            // unwrapped chord angle relative to the direction
            Vec2 chord = b.strands[j][0] - b.strands[i][0];
            double theta = std::atan2(chord.y, chord.x) - direction;
            long count = 0;
            for (std::size_t k = 1; k < b.samples(); ++k) {
                const Vec2 next = b.strands[j][k] - b.strands[i][k];
                const double delta = signed_angle(chord, next);
                const double theta_next = theta + delta;
                // passages of the ray at angle 0 mod 2pi
                const auto wraps = [](double t) {
                    return static_cast<long>(std::floor(t / (2.0 * M_PI)));
                };
                count += std::labs(wraps(theta_next) - wraps(theta));
                theta = theta_next;
                chord = next;
            }
            out[i][j] = count;
        }
    }
    return out;
}

BraidWord trace_braid(const FlowSpec& spec, const Configuration& x, const Configuration& z,
                      int power, Engine engine, const TraceOptions& opts, Rng* retry_rng) {
    TraceOptions local = opts;
    for (int refine = 0;; ++refine) {
        try {
            const StrandBundle b = make_loop(spec, x, z, power, engine, local);
            BraidWord braid = extract_braid(b, 0.0, local, retry_rng);
            if (local.verify_winding) {
                const auto winding = pairwise_winding(b);
                int wsum = 0;
                for (int i = 0; i < b.n(); ++i)
                    for (int j = i + 1; j < b.n(); ++j) wsum += winding[i][j];
                if (writhe(braid) != 2 * wsum)
                    throw std::runtime_error("writhe / winding cross-check failed");
            }
            return braid;
        } catch (const TraceCoarse&) {
            if (refine >= local.density_refinements)
                throw TraceDegenerate("bundle stayed under-resolved after refinement limit");
            local.samples_per_unit_time *= 2.0;
            local.leg_samples *= 2;
        }
    }
}

} // namespace braidflow
