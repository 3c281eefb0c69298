#include "deffuant/opinion_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "deffuant/errors.hpp"

namespace deffuant
{

namespace
{

void require_dimension(std::size_t got, std::size_t want, const char* what)
{
  if (got != want) {
    throw DimensionError(std::string(what) + ": expected dimension " + std::to_string(want) +
                         ", got " + std::to_string(got));
  }
}

std::string format_vector(std::span<const double> v)
{
  std::ostringstream out;
  out.precision(17);
  out << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    out << (i ? "," : "") << v[i];
  }
  out << ')';
  return out.str();
}

} // namespace

Norm::Norm(NormKind kind, std::size_t dimension, double p)
  : kind_(kind)
  , dimension_(dimension)
  , p_(p)
{
  if (dimension == 0) {
    throw ValidationError("norm dimension must be positive");
  }
}

Norm Norm::l1(std::size_t dimension) { return Norm(NormKind::L1, dimension, 1.0); }
Norm Norm::l2(std::size_t dimension) { return Norm(NormKind::L2, dimension, 2.0); }
Norm Norm::linf(std::size_t dimension)
{
  return Norm(NormKind::Linf, dimension, std::numeric_limits<double>::infinity());
}

Norm Norm::lp(std::size_t dimension, double p)
{
  if (std::isnan(p) || p < 1.0) {
    throw ValidationError("p-norm requires p >= 1");
  }
  if (p == 1.0) {
    return l1(dimension);
  }
  if (p == 2.0) {
    return l2(dimension);
  }
  if (std::isinf(p)) {
    return linf(dimension);
  }
  return Norm(NormKind::Lp, dimension, p);
}

std::string Norm::name() const
{
  switch (kind_) {
  case NormKind::L1:
    return "l1";
  case NormKind::L2:
    return "l2";
  case NormKind::Linf:
    return "linf";
  case NormKind::Lp:
    break;
  }
  std::ostringstream out;
  out << 'l' << p_;
  return out.str();
}

double Norm::operator()(std::span<const double> v) const
{
  require_dimension(v.size(), dimension_, "norm");
  const std::vector<double> zero(dimension_, 0.0);
  return of_difference(v.data(), zero.data());
}

double Norm::of_difference(const double* a, const double* b) const noexcept
{
  switch (kind_) {
  case NormKind::L1: {
    double s = 0.0;
    for (std::size_t i = 0; i < dimension_; ++i) {
      s += std::abs(a[i] - b[i]);
    }
    return s;
  }
  case NormKind::L2: {
    if (dimension_ == 1) {
      return std::abs(a[0] - b[0]);
    }
    double s = 0.0;
    for (std::size_t i = 0; i < dimension_; ++i) {
      const double t = a[i] - b[i];
      s += t * t;
    }
    return std::sqrt(s);
  }
  case NormKind::Linf: {
    double m = 0.0;
    for (std::size_t i = 0; i < dimension_; ++i) {
      m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
  }
  case NormKind::Lp: {
    double s = 0.0;
    for (std::size_t i = 0; i < dimension_; ++i) {
      s += std::pow(std::abs(a[i] - b[i]), p_);
    }
    return std::pow(s, 1.0 / p_);
  }
  }
  return 0.0;
}

double distance(std::span<const double> a, std::span<const double> b, const Norm& norm)
{
  require_dimension(a.size(), norm.dimension(), "distance");
  require_dimension(b.size(), norm.dimension(), "distance");
  return norm.of_difference(a.data(), b.data());
}

// ---------------------------------------------------------------------------

ConvexSet ConvexSet::ball(Opinion center, double radius, const Norm& norm)
{
  require_dimension(center.size(), norm.dimension(), "ball center");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw ValidationError("ball radius must be positive and finite");
  }
  return ConvexSet(Ball{std::move(center), radius, norm});
}

ConvexSet ConvexSet::box(Opinion lower, Opinion upper)
{
  if (lower.empty()) {
    throw ValidationError("box dimension must be positive");
  }
  require_dimension(upper.size(), lower.size(), "box upper corner");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) || lower[i] > upper[i]) {
      throw ValidationError("box requires finite lower <= upper in every coordinate");
    }
  }
  return ConvexSet(Box{std::move(lower), std::move(upper)});
}

ConvexSet ConvexSet::interval(double a, double b) { return box({a}, {b}); }

std::size_t ConvexSet::dimension() const noexcept
{
  return is_ball() ? as_ball().center.size() : as_box().lower.size();
}

bool ConvexSet::contains(std::span<const double> a, double slack) const
{
  require_dimension(a.size(), dimension(), "membership");
  if (const auto* ball = std::get_if<Ball>(&shape_)) {
    return ball->norm.of_difference(a.data(), ball->center.data()) <= ball->radius + slack;
  }
  const auto& box = as_box();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < box.lower[i] - slack || a[i] > box.upper[i] + slack) {
      return false;
    }
  }
  return true;
}

std::string ConvexSet::describe() const
{
  std::ostringstream out;
  out.precision(17);
  if (const auto* ball = std::get_if<Ball>(&shape_)) {
    out << "ball(center=" << format_vector(ball->center) << ", radius=" << ball->radius
        << ", norm=" << ball->norm.name() << ')';
  } else {
    out << "box(lower=" << format_vector(as_box().lower) << ", upper=" << format_vector(as_box().upper)
        << ')';
  }
  return out.str();
}

double diameter(const ConvexSet& set, const Norm& norm)
{
  require_dimension(set.dimension(), norm.dimension(), "diameter");
  if (const auto* ball = std::get_if<Ball>(&set.shape())) {
    if (!(ball->norm == norm)) {
      throw UnsupportedError("ball defined under " + ball->norm.name() + " measured with " + norm.name() +
                             ": no closed-form diameter");
    }
    return 2.0 * ball->radius;
  }
  // Every p-norm is monotone in the absolute coordinates, so the farthest pair is a pair of
  // opposite corners.
  const auto& box = set.as_box();
  return norm.of_difference(box.upper.data(), box.lower.data());
}

Opinion center(const ConvexSet& set)
{
  if (const auto* ball = std::get_if<Ball>(&set.shape())) {
    return ball->center;
  }
  const auto& box = set.as_box();
  Opinion c(box.lower.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = 0.5 * (box.lower[i] + box.upper[i]);
  }
  return c;
}

double sup_distance_to_set(std::span<const double> a, const ConvexSet& set, const Norm& norm)
{
  require_dimension(a.size(), norm.dimension(), "sup distance");
  require_dimension(set.dimension(), norm.dimension(), "sup distance");
  if (const auto* ball = std::get_if<Ball>(&set.shape())) {
    if (!(ball->norm == norm)) {
      throw UnsupportedError("sup distance to a ball is only closed-form under its defining norm");
    }
    return norm.of_difference(a.data(), ball->center.data()) + ball->radius;
  }
  // Farthest corner: in each coordinate take the endpoint farther from a.
  const auto& box = set.as_box();
  Opinion corner(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    corner[i] = (a[i] - box.lower[i] >= box.upper[i] - a[i]) ? box.lower[i] : box.upper[i];
  }
  return norm.of_difference(a.data(), corner.data());
}

Opinion interpolate(std::span<const double> a, std::span<const double> b, double mu)
{
  if (!(mu > 0.0 && mu <= 0.5)) {
    throw ValidationError("convergence parameter mu must lie in (0, 1/2]");
  }
  require_dimension(b.size(), a.size(), "interpolate");
  Opinion out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = a[i] + mu * (b[i] - a[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------

OpinionSpace::OpinionSpace(ConvexSet set, const Norm& norm)
  : set_(std::move(set))
  , norm_(norm)
  , diameter_(deffuant::diameter(set_, norm_))
  , center_(deffuant::center(set_))
{}

OpinionSpace OpinionSpace::of_ball(Opinion center, double radius, const Norm& norm)
{
  return OpinionSpace(ConvexSet::ball(std::move(center), radius, norm), norm);
}

std::string OpinionSpace::describe() const
{
  std::ostringstream out;
  out << set_.describe() << " measured with " << norm_.name();
  return out.str();
}

SampledEstimate sampled_diameter(std::span<const Opinion> points, const Norm& norm)
{
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    require_dimension(points[i].size(), norm.dimension(), "sampled diameter");
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      best = std::max(best, norm.of_difference(points[i].data(), points[j].data()));
    }
  }
  return {best, points.size()};
}

} // namespace deffuant
