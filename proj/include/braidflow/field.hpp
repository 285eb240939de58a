#pragma once

#include "braidflow/vec2.hpp"

#include "json.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace braidflow {

// Compactly supported Hamiltonian on the open unit disc. The Hamiltonian
// vector field is X_H = (-dH/dy, dH/dx) = perp(grad H).
class Field {
public:
    virtual ~Field() = default;

    virtual double value(Vec2 p) const = 0;
    virtual Vec2 gradient(Vec2 p) const = 0;

    // support is contained in the closed disc around center() of this radius
    virtual Vec2 center() const = 0;
    virtual double support_radius() const = 0;

    // true when flow orbits are circles around center() (radial fields);
    // such fields admit exact trajectory evaluation
    virtual bool circular_orbits() const { return false; }
    // angular speed of X_H at distance r from center (circular fields only)
    virtual double angular_speed(double r) const;

    // integral of H over the plane
    virtual double space_integral() const = 0;
    // integral of |X_H|^2 over the plane; grid_n controls quadrature
    // resolution for fields without radial symmetry
    virtual double kinetic_integral(int grid_n) const = 0;

    virtual nlohmann::json descriptor() const = 0;
};

using FieldPtr = std::shared_ptr<const Field>;

Vec2 hamiltonian_vf(const Field& f, Vec2 p);

// Radial field: H(p) = h(|p - center|). Then grad H = omega(r) (p - c)
// with omega(r) = h'(r)/r, and X_H rotates at angular speed omega(r).
class RadialField : public Field {
public:
    explicit RadialField(Vec2 center) : center_(center) {}

    virtual double radial_value(double r) const = 0;
    virtual double omega(double r) const = 0;

    double value(Vec2 p) const override { return radial_value(norm(p - center_)); }
    Vec2 gradient(Vec2 p) const override {
        const Vec2 q = p - center_;
        return omega(norm(q)) * q;
    }
    Vec2 center() const override { return center_; }
    bool circular_orbits() const override { return true; }
    double angular_speed(double r) const override { return omega(r); }

    double space_integral() const override;         // 2 pi int h(r) r dr
    double kinetic_integral(int grid_n) const override; // 2 pi int omega^2 r^3 dr

private:
    Vec2 center_;
};

// h0 (1 - (r/rho)^2)^3 inside radius rho, zero outside: single
// non-degenerate interior critical point, C^2 across the boundary.
class RadialBumpField : public RadialField {
public:
    RadialBumpField(Vec2 center, double rho, double amplitude);

    double radial_value(double r) const override;
    double omega(double r) const override;
    double support_radius() const override { return rho_; }
    double space_integral() const override; // amplitude * pi * rho^2 / 4
    nlohmann::json descriptor() const override;

    double rho() const { return rho_; }
    double amplitude() const { return amplitude_; }

private:
    double rho_;
    double amplitude_;
};

// Rotation by total_angle on the inner disc (radius inner), ramping to
// zero at the outer radius with a C^2 monotone profile in r^2: the
// time-one map rigidly rotates the inner disc and is the identity
// outside the outer disc.
class TwistField : public RadialField {
public:
    TwistField(Vec2 center, double inner, double outer, double total_angle);

    double radial_value(double r) const override;
    double omega(double r) const override;
    double support_radius() const override { return outer_; }
    double space_integral() const override; // closed form
    nlohmann::json descriptor() const override;

    double inner() const { return inner_; }
    double outer() const { return outer_; }
    double total_angle() const { return total_angle_; }

private:
    double ramp_arg(double r) const; // (outer^2 - r^2) / (outer^2 - inner^2)
    double inner_, outer_, total_angle_;
};

// Pointwise sum; orbits are circular only when all parts share a center.
class SumField : public Field {
public:
    explicit SumField(std::vector<FieldPtr> parts);

    double value(Vec2 p) const override;
    Vec2 gradient(Vec2 p) const override;
    Vec2 center() const override { return center_; }
    double support_radius() const override { return radius_; }
    bool circular_orbits() const override { return concentric_; }
    double angular_speed(double r) const override;
    double space_integral() const override;
    double kinetic_integral(int grid_n) const override;
    nlohmann::json descriptor() const override;

    const std::vector<FieldPtr>& parts() const { return parts_; }

private:
    std::vector<FieldPtr> parts_;
    Vec2 center_;
    double radius_;
    bool concentric_;
};

// s * H for a real scale factor
class ScaledField : public Field {
public:
    ScaledField(FieldPtr inner, double factor) : inner_(std::move(inner)), factor_(factor) {}

    double value(Vec2 p) const override { return factor_ * inner_->value(p); }
    Vec2 gradient(Vec2 p) const override { return factor_ * inner_->gradient(p); }
    Vec2 center() const override { return inner_->center(); }
    double support_radius() const override { return inner_->support_radius(); }
    bool circular_orbits() const override { return inner_->circular_orbits(); }
    double angular_speed(double r) const override { return factor_ * inner_->angular_speed(r); }
    double space_integral() const override { return factor_ * inner_->space_integral(); }
    double kinetic_integral(int grid_n) const override {
        return factor_ * factor_ * inner_->kinetic_integral(grid_n);
    }
    nlohmann::json descriptor() const override;

private:
    FieldPtr inner_;
    double factor_;
};

FieldPtr scaled(FieldPtr f, double factor);

// -H: generates the inverse flow of H over the same duration
class NegatedField : public Field {
public:
    explicit NegatedField(FieldPtr inner) : inner_(std::move(inner)) {}

    double value(Vec2 p) const override { return -inner_->value(p); }
    Vec2 gradient(Vec2 p) const override { return -inner_->gradient(p); }
    Vec2 center() const override { return inner_->center(); }
    double support_radius() const override { return inner_->support_radius(); }
    bool circular_orbits() const override { return inner_->circular_orbits(); }
    double angular_speed(double r) const override { return -inner_->angular_speed(r); }
    double space_integral() const override { return -inner_->space_integral(); }
    double kinetic_integral(int grid_n) const override { return inner_->kinetic_integral(grid_n); }
    nlohmann::json descriptor() const override;

private:
    FieldPtr inner_;
};

// Morse-type bump fully inside the unit disc; throws on geometry violations.
FieldPtr build_radial_bump(Vec2 center, double rho, double amplitude);

FieldPtr negated(FieldPtr f);

// 1D adaptive Simpson quadrature with convergence failure detection, used
// for radial space integrals and as the independent oracle in tests.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10, int max_depth = 40);

FieldPtr field_from_json(const nlohmann::json& j);

} // namespace braidflow
