#include "braidflow/twist_system.hpp"

#include <cmath>
#include <stdexcept>

namespace braidflow {

double lens_area(const Disc& a, const Disc& b) {
    const double d = norm(a.center - b.center);
    if (d >= a.radius + b.radius) return 0.0;
    if (d <= std::abs(a.radius - b.radius)) {
        const double r = std::min(a.radius, b.radius);
        return M_PI * r * r;
    }
    const double r1 = a.radius, r2 = b.radius;
    const double alpha = std::acos((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1));
    const double beta = std::acos((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2));
    return r1 * r1 * (alpha - std::sin(2.0 * alpha) / 2.0) +
           r2 * r2 * (beta - std::sin(2.0 * beta) / 2.0);
}

void TwistLayout::validate() const {
    auto concentric = [](const Disc& inner, const Disc& outer) {
        return norm(inner.center - outer.center) < 1e-12 && inner.radius < outer.radius;
    };
    if (!concentric(w12, v12) || !concentric(w23, v23))
        throw std::invalid_argument("twist layout: rigid disc must sit inside its support disc");
    if (!v12.inside_unit_disc() || !v23.inside_unit_disc())
        throw std::invalid_argument("twist layout: supports must stay inside the unit disc");
    if (!w12.contains(anchors[0]) || !w12.contains(anchors[1]))
        throw std::invalid_argument("twist layout: anchors 1, 2 must lie in the first rigid disc");
    if (!w23.contains(anchors[1]) || !w23.contains(anchors[2]))
        throw std::invalid_argument("twist layout: anchors 2, 3 must lie in the second rigid disc");
    if (!v12.disjoint_from(anchors[2]))
        throw std::invalid_argument("twist layout: anchor 3 must clear the first support disc");
    if (!v23.disjoint_from(anchors[0]))
        throw std::invalid_argument("twist layout: anchor 1 must clear the second support disc");
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (norm(anchors[i].center - anchors[j].center) < 1e-3)
                throw std::invalid_argument("twist layout: anchor centers must be distinct");
}

std::array<double, 3> TwistLayout::region_areas() const {
    const double a1 = w12.area() - lens_area(w12, v23);
    const double a2 = lens_area(w12, w23);
    const double a3 = w23.area() - lens_area(w23, v12);
    return {a1, a2, a3};
}

std::array<Vec2, 3> TwistLayout::basepoints() const {
    return {anchors[0].center, anchors[1].center, anchors[2].center};
}

double TwistLayout::diagonal_prediction() const {
    const auto a = region_areas();
    return 6.0 * a[0] * a[1] * a[2];
}

bool TwistLayout::full_area_regime() const {
    const auto a = region_areas();
    return a[0] >= M_PI / 4.0 && a[1] >= M_PI / 4.0 && a[2] >= M_PI / 4.0;
}

TwistLayout TwistLayout::scaled_into(Vec2 center, double scale) const {
    auto move = [&](const Disc& d) {
        return Disc{center + d.center * scale, d.radius * scale};
    };
    TwistLayout out;
    out.w12 = move(w12);
    out.v12 = move(v12);
    out.w23 = move(w23);
    out.v23 = move(v23);
    for (int i = 0; i < 3; ++i) out.anchors[i] = move(anchors[i]);
    out.total_angle = total_angle;
    return out;
}

TwistLayout TwistLayout::standard() {
    // Largest symmetric two-disc layout that fits the open unit disc with
    // a thin interpolation collar. Region areas come out near (but below)
    // pi/4 each; three disjoint round regions of area pi/4 do not fit.
    TwistLayout layout;
    const double rigid = 0.709, collar = 0.004, offset = 0.285;
    layout.w12 = {{-offset, 0.0}, rigid};
    layout.v12 = {{-offset, 0.0}, rigid + collar};
    layout.w23 = {{offset, 0.0}, rigid};
    layout.v23 = {{offset, 0.0}, rigid + collar};
    layout.anchors[0] = {{-0.711, 0.0}, 0.27};
    layout.anchors[1] = {{0.0, 0.0}, 0.42};
    layout.anchors[2] = {{0.711, 0.0}, 0.27};
    layout.validate();
    return layout;
}

nlohmann::json TwistLayout::to_json() const {
    auto disc = [](const Disc& d) {
        return nlohmann::json{{"center", {d.center.x, d.center.y}}, {"radius", d.radius}};
    };
    return {{"w12", disc(w12)},   {"v12", disc(v12)},
            {"w23", disc(w23)},   {"v23", disc(v23)},
            {"anchors", {disc(anchors[0]), disc(anchors[1]), disc(anchors[2])}},
            {"angle", total_angle}};
}

TwistLayout TwistLayout::from_json(const nlohmann::json& j) {
    auto disc = [](const nlohmann::json& d) {
        return Disc{{d.at("center").at(0).get<double>(), d.at("center").at(1).get<double>()},
                    d.at("radius").get<double>()};
    };
    TwistLayout out;
    out.w12 = disc(j.at("w12"));
    out.v12 = disc(j.at("v12"));
    out.w23 = disc(j.at("w23"));
    out.v23 = disc(j.at("v23"));
    for (int i = 0; i < 3; ++i) out.anchors[i] = disc(j.at("anchors").at(i));
    out.total_angle = j.value("angle", 2.0 * M_PI);
    out.validate();
    return out;
}

std::pair<FlowSpec, FlowSpec> build_twist_system(const TwistLayout& layout) {
    layout.validate();
    auto h = FlowSpec::single(
        std::make_shared<TwistField>(layout.w12.center, layout.w12.radius, layout.v12.radius,
                                     layout.total_angle));
    auto hp = FlowSpec::single(
        std::make_shared<TwistField>(layout.w23.center, layout.w23.radius, layout.v23.radius,
                                     layout.total_angle));
    return {std::move(h), std::move(hp)};
}

FlowSpec realize_word(const TwistLayout& layout, const FreeWord& beta) {
    const auto [h, hp] = build_twist_system(layout);
    FlowSpec out;
    for (std::int8_t letter : beta.letters()) {
        switch (letter) {
            case +1: out.append(h); break;
            case -1: out.append(h.inverse()); break;
            case +2: out.append(hp); break;
            case -2: out.append(hp.inverse()); break;
        }
    }
    if (out.segments.empty())
        throw std::invalid_argument("realize_word: empty word has no twist realization");
    return out;
}

} // namespace braidflow
