#pragma once

#include "braidflow/flow.hpp"
#include "braidflow/free_word.hpp"

#include "json.hpp"

#include <array>
#include <utility>

namespace braidflow {

struct Disc {
    Vec2 center{};
    double radius = 0.0;

    double area() const { return M_PI * radius * radius; }
    bool contains(const Disc& other) const {
        return norm(other.center - center) + other.radius <= radius + 1e-12;
    }
    bool disjoint_from(const Disc& other) const {
        return norm(other.center - center) >= radius + other.radius - 1e-12;
    }
    bool inside_unit_disc() const { return norm(center) + radius < 1.0; }
};

// area of the intersection of two discs
double lens_area(const Disc& a, const Disc& b);

// Two overlapping twist regions: rigid rotation inside w12 (supported in
// v12) generating sigma_1^2 on the first two marked points, and likewise
// w23/v23 for sigma_2^2. The three productive regions are
//   region 1: rigid part of w12 clear of v23   (a crescent),
//   region 2: rigid w12 intersect rigid w23    (a lens),
//   region 3: rigid part of w23 clear of v12   (a crescent);
// each is an open set diffeomorphic to a disc. The anchor discs are
// round sub-discs of the regions that carry the basepoints.
struct TwistLayout {
    Disc w12, v12, w23, v23;
    std::array<Disc, 3> anchors;
    double total_angle = 2.0 * M_PI;

    void validate() const; // throws on geometry violations
    std::array<double, 3> region_areas() const;
    std::array<Vec2, 3> basepoints() const;
    // product measure of the productive configurations: 6 a1 a2 a3
    double diagonal_prediction() const;
    // the full-area regime precondition (region areas >= pi/4)
    bool full_area_regime() const;

    TwistLayout scaled_into(Vec2 center, double scale) const;
    static TwistLayout standard();

    nlohmann::json to_json() const;
    static TwistLayout from_json(const nlohmann::json& j);
};

// time-one twist flows (h, h') for the two regions
std::pair<FlowSpec, FlowSpec> build_twist_system(const TwistLayout& layout);

// realize a word in x = sigma_1^2, y = sigma_2^2 as the composition of
// twist flows (inverse letters run the oppositely oriented twist)
FlowSpec realize_word(const TwistLayout& layout, const FreeWord& beta);

} // namespace braidflow
