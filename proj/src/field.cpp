#include "braidflow/field.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace braidflow {

namespace {

// quintic smoothstep: C^2 monotone ramp from 0 to 1 on [0, 1]
double ramp(double s) {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    return s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

// integral of ramp over [0, s]
double ramp_integral(double s) {
    if (s <= 0.0) return 0.0;
    if (s <= 1.0) {
        const double s4 = s * s * s * s;
        return s4 * (2.5 + s * (-3.0 + s));
    }
    return s - 0.5;
}

// double integral of ramp: int_0^s ramp_integral
double ramp_integral2(double s) {
    if (s <= 0.0) return 0.0;
    if (s <= 1.0) {
        const double s5 = s * s * s * s * s;
        return s5 * (0.5 + s * (-0.5 + s / 7.0));
    }
    return 1.0 / 7.0 + 0.5 * s * (s - 1.0);
}

double simpson_rule(const std::function<double(double)>& f, double a, double m, double b,
                    double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double m, double b,
                            double fa, double fm, double fb, double whole, double tol,
                            int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson_rule(f, a, lm, m, fa, flm, fm);
    const double right = simpson_rule(f, m, rm, b, fm, frm, fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth <= 0)
        throw std::runtime_error("adaptive quadrature did not converge within refinement limit");
    return adaptive_simpson_rec(f, a, lm, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson_rec(f, m, rm, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = simpson_rule(f, a, m, b, fa, fm, fb);
    return adaptive_simpson_rec(f, a, m, b, fa, fm, fb, whole, tol, max_depth);
}

double Field::angular_speed(double) const {
    throw std::logic_error("angular_speed is defined only for fields with circular orbits");
}

Vec2 hamiltonian_vf(const Field& f, Vec2 p) {
    if (norm2(p) >= 1.0)
        throw std::invalid_argument("hamiltonian_vf: point outside the open unit disc");
    return perp(f.gradient(p));
}

double RadialField::space_integral() const {
    const double R = support_radius();
    return 2.0 * M_PI *
           adaptive_simpson([this](double r) { return radial_value(r) * r; }, 0.0, R);
}

double RadialField::kinetic_integral(int) const {
    const double R = support_radius();
    return 2.0 * M_PI * adaptive_simpson(
                            [this](double r) {
                                const double w = omega(r);
                                return w * w * r * r * r;
                            },
                            0.0, R);
}

RadialBumpField::RadialBumpField(Vec2 center, double rho, double amplitude)
    : RadialField(center), rho_(rho), amplitude_(amplitude) {
    if (rho <= 0.0) throw std::invalid_argument("radial bump needs positive radius");
}

double RadialBumpField::radial_value(double r) const {
    if (r >= rho_) return 0.0;
    const double s = 1.0 - (r / rho_) * (r / rho_);
    return amplitude_ * s * s * s;
}

double RadialBumpField::omega(double r) const {
    if (r >= rho_) return 0.0;
    const double s = 1.0 - (r / rho_) * (r / rho_);
    return -6.0 * amplitude_ / (rho_ * rho_) * s * s;
}

double RadialBumpField::space_integral() const {
    return amplitude_ * M_PI * rho_ * rho_ / 4.0;
}

nlohmann::json RadialBumpField::descriptor() const {
    return {{"type", "radial_bump"},
            {"center", {center().x, center().y}},
            {"radius", rho_},
            {"amplitude", amplitude_}};
}

TwistField::TwistField(Vec2 center, double inner, double outer, double total_angle)
    : RadialField(center), inner_(inner), outer_(outer), total_angle_(total_angle) {
    if (!(0.0 < inner && inner < outer))
        throw std::invalid_argument("twist field needs 0 < inner < outer");
}

double TwistField::ramp_arg(double r) const {
    return (outer_ * outer_ - r * r) / (outer_ * outer_ - inner_ * inner_);
}

double TwistField::omega(double r) const {
    if (r >= outer_) return 0.0;
    return total_angle_ * ramp(ramp_arg(r));
}

double TwistField::radial_value(double r) const {
    // H(r) = -int_r^outer omega(s) s ds, written through the ramp integral
    if (r >= outer_) return 0.0;
    const double span = outer_ * outer_ - inner_ * inner_;
    return -0.5 * total_angle_ * span * ramp_integral(ramp_arg(r));
}

double TwistField::space_integral() const {
    const double span = outer_ * outer_ - inner_ * inner_;
    const double s0 = outer_ * outer_ / span;
    return -0.5 * M_PI * total_angle_ * span * span * ramp_integral2(s0);
}

nlohmann::json TwistField::descriptor() const {
    return {{"type", "twist"},
            {"center", {center().x, center().y}},
            {"inner_radius", inner_},
            {"outer_radius", outer_},
            {"angle", total_angle_}};
}

SumField::SumField(std::vector<FieldPtr> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw std::invalid_argument("sum field needs at least one part");
    // enclosing support disc
    center_ = parts_.front()->center();
    radius_ = parts_.front()->support_radius();
    concentric_ = true;
    for (std::size_t i = 1; i < parts_.size(); ++i) {
        const Vec2 c = parts_[i]->center();
        const double r = parts_[i]->support_radius();
        if (norm(c - center_) > 1e-12) concentric_ = false;
        const double reach = norm(c - center_) + r;
        radius_ = std::max(radius_, reach);
    }
    if (!concentric_) {
        // recompute a crude enclosing disc around the first center
        double reach = 0.0;
        for (const auto& p : parts_)
            reach = std::max(reach, norm(p->center() - center_) + p->support_radius());
        radius_ = reach;
    }
}

double SumField::value(Vec2 p) const {
    double v = 0.0;
    for (const auto& f : parts_) v += f->value(p);
    return v;
}

Vec2 SumField::gradient(Vec2 p) const {
    Vec2 g{};
    for (const auto& f : parts_) g += f->gradient(p);
    return g;
}

double SumField::angular_speed(double r) const {
    if (!concentric_)
        throw std::logic_error("angular_speed on a non-concentric sum field");
    double w = 0.0;
    for (const auto& f : parts_) w += f->angular_speed(r);
    return w;
}

double SumField::space_integral() const {
    double v = 0.0;
    for (const auto& f : parts_) v += f->space_integral();
    return v;
}

double SumField::kinetic_integral(int grid_n) const {
    if (concentric_) {
        const double R = support_radius();
        return 2.0 * M_PI * adaptive_simpson(
                                [this](double r) {
                                    const double w = angular_speed(r);
                                    return w * w * r * r * r;
                                },
                                0.0, R);
    }
    // midpoint quadrature over the enclosing support square
    if (grid_n < 8) grid_n = 8;
    const double R = radius_;
    const double h = 2.0 * R / grid_n;
    double sum = 0.0;
    for (int i = 0; i < grid_n; ++i) {
        for (int j = 0; j < grid_n; ++j) {
            const Vec2 p = center_ + Vec2{(i + 0.5) * h - R, (j + 0.5) * h - R};
            if (norm(p - center_) > R) continue;
            sum += norm2(perp(gradient(p)));
        }
    }
    return sum * h * h;
}

nlohmann::json SumField::descriptor() const {
    nlohmann::json parts = nlohmann::json::array();
    for (const auto& f : parts_) parts.push_back(f->descriptor());
    return {{"type", "sum"}, {"parts", parts}};
}

nlohmann::json NegatedField::descriptor() const {
    return {{"type", "negated"}, {"inner", inner_->descriptor()}};
}

nlohmann::json ScaledField::descriptor() const {
    return {{"type", "scaled"}, {"factor", factor_}, {"inner", inner_->descriptor()}};
}

FieldPtr scaled(FieldPtr f, double factor) {
    return std::make_shared<ScaledField>(std::move(f), factor);
}

FieldPtr build_radial_bump(Vec2 center, double rho, double amplitude) {
    if (norm(center) + rho >= 1.0)
        throw std::invalid_argument("radial bump support must lie inside the open unit disc");
    return std::make_shared<RadialBumpField>(center, rho, amplitude);
}

FieldPtr negated(FieldPtr f) { return std::make_shared<NegatedField>(std::move(f)); }

FieldPtr field_from_json(const nlohmann::json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "radial_bump") {
        const auto c = j.at("center");
        return std::make_shared<RadialBumpField>(Vec2{c.at(0), c.at(1)},
                                                 j.at("radius").get<double>(),
                                                 j.at("amplitude").get<double>());
    }
    if (type == "twist") {
        const auto c = j.at("center");
        return std::make_shared<TwistField>(Vec2{c.at(0), c.at(1)},
                                            j.at("inner_radius").get<double>(),
                                            j.at("outer_radius").get<double>(),
                                            j.value("angle", 2.0 * M_PI));
    }
    if (type == "sum") {
        std::vector<FieldPtr> parts;
        for (const auto& part : j.at("parts")) parts.push_back(field_from_json(part));
        return std::make_shared<SumField>(std::move(parts));
    }
    if (type == "negated") return negated(field_from_json(j.at("inner")));
    if (type == "scaled")
        return scaled(field_from_json(j.at("inner")), j.at("factor").get<double>());
    throw std::invalid_argument("unknown field type: " + type);
}

} // namespace braidflow
