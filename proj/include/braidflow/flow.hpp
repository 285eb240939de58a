#pragma once

#include "braidflow/field.hpp"
#include "braidflow/vec2.hpp"

#include "json.hpp"

#include <optional>
#include <vector>

namespace braidflow {

// rotation about the origin followed by a translation
struct RigidMotion {
    double angle = 0.0;
    Vec2 translation{};

    Vec2 apply(Vec2 p) const { return rotate(p, angle) + translation; }
    Vec2 apply_inverse(Vec2 p) const { return rotate(p - translation, -angle); }
    nlohmann::json to_json() const;
    static RigidMotion from_json(const nlohmann::json& j);
};

struct Segment {
    FieldPtr field;
    double duration = 1.0;
    std::optional<RigidMotion> conjugator;
};

enum class Engine {
    Exact, // closed-form circular orbits; falls back to RK4 per segment when unavailable
    RK4,   // classical 4th-order one-step integration at the spec's step
};

// Ordered composition of autonomous segments, applied first to last:
// the time-one map is (last segment) o ... o (first segment).
struct FlowSpec {
    std::vector<Segment> segments;
    double step = 1e-3;

    static FlowSpec single(FieldPtr field, double duration = 1.0);

    double total_duration() const;
    bool all_circular() const;

    FlowSpec& append(const FlowSpec& other);
    FlowSpec operator*(const FlowSpec& other) const; // this first, then other
    FlowSpec inverse() const;
    FlowSpec power(int k) const;
    FlowSpec conjugated(const RigidMotion& motion) const;

    nlohmann::json to_json() const;
    static FlowSpec from_json(const nlohmann::json& j);
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Vec2> points;
};

// advance through one segment for the given time (<= segment duration)
Vec2 advance_segment(const Segment& seg, Vec2 p, double time, Engine engine, double step);

// time-one map of the whole composition
Vec2 time_one_map(const FlowSpec& spec, Vec2 p, Engine engine = Engine::RK4);

// dense integration through all segments; positions must stay inside the
// closed unit disc (an escaping trajectory signals a broken field)
Trajectory integrate(const FlowSpec& spec, Vec2 x0, Engine engine = Engine::RK4);

// Position along the p-fold concatenated flow at arbitrary query times.
// Exact segments are evaluated in closed form from precomputed segment
// boundary positions; RK4 segments interpolate a dense step grid
// piecewise-linearly.
class FlowPath {
public:
    FlowPath(const FlowSpec& spec, Vec2 x0, int power, Engine engine);

    double total_time() const { return total_time_; }
    Vec2 at(double t) const;
    Vec2 endpoint() const;
    // largest angular speed magnitude the path can see (sampling hint)
    double max_angular_speed() const { return max_omega_; }

private:
    struct SegmentRef {
        const Segment* seg;
        double t_begin;
        double t_end;
        Vec2 entry;             // position at t_begin
        std::size_t dense_begin; // index into dense samples for RK4 segments
        std::size_t dense_end;
        bool exact;
    };
    std::vector<SegmentRef> refs_;
    std::vector<double> dense_times_;
    std::vector<Vec2> dense_points_;
    Vec2 endpoint_sentinel_{};
    double total_time_ = 0.0;
    double max_omega_ = 0.0;
    double step_;
};

// Calabi invariant: sum over segments of duration * integral of H.
// A homomorphism; invariant under segment conjugation.
double calabi(const FlowSpec& spec);

void check_inside_disc(Vec2 p, const char* what);

} // namespace braidflow
