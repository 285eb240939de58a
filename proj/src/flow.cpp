#include "braidflow/flow.hpp"

#include <cmath>
#include <stdexcept>

namespace braidflow {

namespace {

constexpr double kEscapeTolerance = 1e-9;

Vec2 vf(const Field& f, Vec2 p) { return perp(f.gradient(p)); }

Vec2 rk4_step(const Field& f, Vec2 p, double h) {
    const Vec2 k1 = vf(f, p);
    const Vec2 k2 = vf(f, p + 0.5 * h * k1);
    const Vec2 k3 = vf(f, p + 0.5 * h * k2);
    const Vec2 k4 = vf(f, p + h * k3);
    return p + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// exact advance for a field with circular orbits (no conjugator)
Vec2 exact_advance(const Field& f, Vec2 p, double time) {
    const Vec2 q = p - f.center();
    const double r = norm(q);
    if (r >= f.support_radius()) return p;
    return f.center() + rotate(q, f.angular_speed(r) * time);
}

Vec2 rk4_advance(const Field& f, Vec2 p, double time, double step) {
    if (step <= 0.0) throw std::invalid_argument("integration step must be positive");
    if (time == 0.0) return p;
    // points outside the support never move
    if (norm(p - f.center()) >= f.support_radius()) return p;
    const int n = std::max(1, static_cast<int>(std::ceil(std::abs(time) / step)));
    const double h = time / n;
    for (int i = 0; i < n; ++i) p = rk4_step(f, p, h);
    return p;
}

} // namespace

void check_inside_disc(Vec2 p, const char* what) {
    if (norm2(p) > 1.0 + kEscapeTolerance)
        throw std::runtime_error(std::string(what) +
                                 ": trajectory escaped the unit disc (broken field)");
}

nlohmann::json RigidMotion::to_json() const {
    return {{"rotate", angle}, {"translate", {translation.x, translation.y}}};
}

RigidMotion RigidMotion::from_json(const nlohmann::json& j) {
    RigidMotion m;
    m.angle = j.value("rotate", 0.0);
    if (j.contains("translate")) {
        m.translation = {j["translate"].at(0).get<double>(), j["translate"].at(1).get<double>()};
    }
    return m;
}

FlowSpec FlowSpec::single(FieldPtr field, double duration) {
    if (duration <= 0.0) throw std::invalid_argument("segment duration must be positive");
    FlowSpec s;
    s.segments.push_back({std::move(field), duration, std::nullopt});
    return s;
}

double FlowSpec::total_duration() const {
    double t = 0.0;
    for (const auto& s : segments) t += s.duration;
    return t;
}

bool FlowSpec::all_circular() const {
    for (const auto& s : segments)
        if (!s.field->circular_orbits()) return false;
    return true;
}

FlowSpec& FlowSpec::append(const FlowSpec& other) {
    segments.insert(segments.end(), other.segments.begin(), other.segments.end());
    return *this;
}

FlowSpec FlowSpec::operator*(const FlowSpec& other) const {
    FlowSpec out = *this;
    out.append(other);
    return out;
}

FlowSpec FlowSpec::inverse() const {
    FlowSpec out;
    out.step = step;
    for (auto it = segments.rbegin(); it != segments.rend(); ++it) {
        Segment s{negated(it->field), it->duration, it->conjugator};
        out.segments.push_back(std::move(s));
    }
    return out;
}

FlowSpec FlowSpec::power(int k) const {
    const FlowSpec base = k >= 0 ? *this : inverse();
    const int reps = k >= 0 ? k : -k;
    FlowSpec out;
    out.step = step;
    for (int i = 0; i < reps; ++i) out.append(base);
    return out;
}

FlowSpec FlowSpec::conjugated(const RigidMotion& motion) const {
    FlowSpec out = *this;
    for (auto& seg : out.segments) {
        if (seg.conjugator) {
            // compose the rigid motions: new = motion o old
            RigidMotion composed;
            composed.angle = motion.angle + seg.conjugator->angle;
            composed.translation = rotate(seg.conjugator->translation, motion.angle) +
                                   motion.translation;
            seg.conjugator = composed;
        } else {
            seg.conjugator = motion;
        }
    }
    return out;
}

nlohmann::json FlowSpec::to_json() const {
    nlohmann::json segs = nlohmann::json::array();
    for (const auto& s : segments) {
        nlohmann::json seg{{"field", s.field->descriptor()}, {"duration", s.duration}};
        if (s.conjugator) seg["conjugator"] = s.conjugator->to_json();
        segs.push_back(std::move(seg));
    }
    return {{"segments", segs}, {"step", step}};
}

FlowSpec FlowSpec::from_json(const nlohmann::json& j) {
    FlowSpec out;
    out.step = j.value("step", 1e-3);
    for (const auto& seg : j.at("segments")) {
        Segment s;
        s.field = field_from_json(seg.at("field"));
        s.duration = seg.value("duration", 1.0);
        if (s.duration <= 0.0) throw std::invalid_argument("segment duration must be positive");
        if (seg.contains("conjugator")) s.conjugator = RigidMotion::from_json(seg["conjugator"]);
        out.segments.push_back(std::move(s));
    }
    return out;
}

Vec2 advance_segment(const Segment& seg, Vec2 p, double time, Engine engine, double step) {
    const bool exact = engine == Engine::Exact && seg.field->circular_orbits();
    if (seg.conjugator) {
        const Vec2 q = seg.conjugator->apply_inverse(p);
        const Vec2 moved = exact ? exact_advance(*seg.field, q, time)
                                 : rk4_advance(*seg.field, q, time, step);
        return seg.conjugator->apply(moved);
    }
    return exact ? exact_advance(*seg.field, p, time) : rk4_advance(*seg.field, p, time, step);
}

Vec2 time_one_map(const FlowSpec& spec, Vec2 p, Engine engine) {
    for (const auto& seg : spec.segments)
        p = advance_segment(seg, p, seg.duration, engine, spec.step);
    check_inside_disc(p, "time_one_map");
    return p;
}

Trajectory integrate(const FlowSpec& spec, Vec2 x0, Engine engine) {
    if (spec.step <= 0.0) throw std::invalid_argument("integration step must be positive");
    check_inside_disc(x0, "integrate");
    Trajectory out;
    out.times.push_back(0.0);
    out.points.push_back(x0);
    double t0 = 0.0;
    Vec2 p = x0;
    for (const auto& seg : spec.segments) {
        const int n = std::max(1, static_cast<int>(std::ceil(seg.duration / spec.step)));
        const double h = seg.duration / n;
        for (int i = 1; i <= n; ++i) {
            const Vec2 next = advance_segment(seg, p, h, engine, spec.step);
            p = next;
            check_inside_disc(p, "integrate");
            out.times.push_back(t0 + i * h);
            out.points.push_back(p);
        }
        t0 += seg.duration;
    }
    return out;
}

FlowPath::FlowPath(const FlowSpec& spec, Vec2 x0, int power, Engine engine) : step_(spec.step) {
    if (power < 1) throw std::invalid_argument("FlowPath power must be >= 1");
    check_inside_disc(x0, "FlowPath");
    Vec2 p = x0;
    double t0 = 0.0;
    for (int rep = 0; rep < power; ++rep) {
        for (const auto& seg : spec.segments) {
            SegmentRef ref;
            ref.seg = &seg;
            ref.t_begin = t0;
            ref.t_end = t0 + seg.duration;
            ref.entry = p;
            ref.exact = engine == Engine::Exact && seg.field->circular_orbits();
            if (ref.exact) {
                ref.dense_begin = ref.dense_end = 0;
                p = advance_segment(seg, p, seg.duration, Engine::Exact, step_);
                const Vec2 rel = ref.entry -
                                 (seg.conjugator ? seg.conjugator->apply(seg.field->center())
                                                 : seg.field->center());
                const double r = norm(rel);
                if (r < seg.field->support_radius())
                    max_omega_ = std::max(max_omega_, std::abs(seg.field->angular_speed(r)));
            } else {
                // dense RK4 grid for piecewise-linear interpolation
                ref.dense_begin = dense_times_.size();
                const int n = std::max(1, static_cast<int>(std::ceil(seg.duration / step_)));
                const double h = seg.duration / n;
                dense_times_.push_back(t0);
                dense_points_.push_back(p);
                for (int i = 1; i <= n; ++i) {
                    p = advance_segment(seg, p, h, Engine::RK4, step_);
                    check_inside_disc(p, "FlowPath");
                    dense_times_.push_back(t0 + i * h);
                    dense_points_.push_back(p);
                }
                ref.dense_end = dense_times_.size();
                max_omega_ = std::max(max_omega_, 2.0 * M_PI); // conservative hint
            }
            refs_.push_back(ref);
            t0 = ref.t_end;
        }
    }
    // store the final point as a sentinel segment boundary
    total_time_ = t0;
    endpoint_sentinel_ = p;
}

Vec2 FlowPath::endpoint() const { return endpoint_sentinel_; }

Vec2 FlowPath::at(double t) const {
    if (t <= 0.0) return refs_.empty() ? endpoint_sentinel_ : refs_.front().entry;
    if (t >= total_time_) return endpoint_sentinel_;
    // binary search for the segment containing t
    std::size_t lo = 0, hi = refs_.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (refs_[mid].t_end <= t)
            lo = mid + 1;
        else
            hi = mid;
    }
    const SegmentRef& ref = refs_[lo];
    const double local = t - ref.t_begin;
    if (ref.exact) return advance_segment(*ref.seg, ref.entry, local, Engine::Exact, step_);
    // piecewise-linear interpolation on the dense grid
    std::size_t a = ref.dense_begin, b = ref.dense_end - 1;
    while (a < b) {
        const std::size_t mid = (a + b) / 2;
        if (dense_times_[mid + 1] <= t)
            a = mid + 1;
        else
            b = mid;
    }
    if (a + 1 >= ref.dense_end) return dense_points_[a];
    const double t0 = dense_times_[a], t1 = dense_times_[a + 1];
    const double w = (t1 > t0) ? (t - t0) / (t1 - t0) : 0.0;
    return dense_points_[a] * (1.0 - w) + dense_points_[a + 1] * w;
}

double calabi(const FlowSpec& spec) {
    double total = 0.0;
    for (const auto& seg : spec.segments) total += seg.duration * seg.field->space_integral();
    return total;
}

} // namespace braidflow
