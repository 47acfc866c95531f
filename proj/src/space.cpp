#include "banachlab/space.hpp"

#include <algorithm>
#include <cmath>

namespace banachlab {

NormedSpace::NormedSpace(SpaceDef def) {
    if (def.dim < 1) throw std::invalid_argument("NormedSpace: dim must be >= 1");
    if (!def.evaluator) throw std::invalid_argument("NormedSpace: evaluator required");
    if (!(def.equiv_lo > 0.0) || !(def.equiv_hi >= def.equiv_lo)) {
        throw std::invalid_argument("NormedSpace: need 0 < equiv_lo <= equiv_hi");
    }
    impl_ = std::make_shared<const SpaceDef>(std::move(def));
}

double NormedSpace::norm(const Vec& v) const {
    ensure_dim(v, static_cast<std::size_t>(impl_->dim), "norm argument");
    ensure_finite(v, "norm argument");
    return impl_->evaluator(v);
}

Functional NormedSpace::subgrad(const Vec& x) const {
    if (!impl_->subgrad) throw std::logic_error("NormedSpace: no analytic subgradient");
    ensure_dim(x, static_cast<std::size_t>(impl_->dim), "subgrad argument");
    if (is_zero(x)) throw std::invalid_argument("subgrad: zero vector");
    return impl_->subgrad(x);
}

std::vector<double> NormedSpace::special_angles() const {
    if (!impl_->geometry.special_angles) return {};
    return impl_->geometry.special_angles();
}

NormedSpace NormedSpace::relabeled(std::string label) const {
    SpaceDef def = *impl_;
    def.label = std::move(label);
    return NormedSpace(std::move(def));
}

Lipschitz2D Lipschitz2D::of(const NormedSpace& s) {
    Lipschitz2D l;
    l.c = s.equiv_lo();
    l.C = s.equiv_hi();
    l.boundary_speed = 1.0 / l.c + l.C / (l.c * l.c);
    l.certified = s.equiv_certified();
    return l;
}

Vec unit_direction(double theta) { return Vec{std::cos(theta), std::sin(theta)}; }

Vec boundary_point(const NormedSpace& space, double theta) {
    Vec u = unit_direction(theta);
    double g = space.norm_unchecked(u);
    return scale(u, 1.0 / g);
}

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

Boundary2D::Boundary2D(const NormedSpace& space, int angle_count, std::vector<double> extra_angles)
    : space_(space) {
    if (space.dim() != 2) throw std::invalid_argument("Boundary2D: dim must be 2");
    if (angle_count < 8) throw std::invalid_argument("Boundary2D: angle_count too small");

    angles_.reserve(static_cast<std::size_t>(angle_count) + 16);
    double h = kTwoPi / angle_count;
    for (int k = 0; k < angle_count; ++k) angles_.push_back(k * h);
    for (double a : space.special_angles()) extra_angles.push_back(a);
    for (double a : extra_angles) {
        double w = std::fmod(a, kTwoPi);
        if (w < 0) w += kTwoPi;
        angles_.push_back(w);
    }
    std::sort(angles_.begin(), angles_.end());
    angles_.erase(std::unique(angles_.begin(), angles_.end(),
                              [](double a, double b) { return std::abs(a - b) < 1e-14; }),
                  angles_.end());

    points_.reserve(angles_.size());
    for (double a : angles_) points_.push_back(boundary_point(space_, a));

    max_gap_ = kTwoPi + angles_.front() - angles_.back();
    for (std::size_t i = 1; i < angles_.size(); ++i) {
        max_gap_ = std::max(max_gap_, angles_[i] - angles_[i - 1]);
    }
}

Vec Boundary2D::at(double theta) const { return boundary_point(space_, theta); }

}  // namespace banachlab
