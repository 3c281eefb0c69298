#ifndef DEFFUANT_OPINION_SPACE_HPP
#define DEFFUANT_OPINION_SPACE_HPP

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace deffuant
{

/// A point of R^d: one agent's opinion.
using Opinion = std::vector<double>;

enum class NormKind
{
  L1,
  L2,
  Linf,
  Lp
};

/**
 * A p-norm on R^d.
 *
 * `lp(d, p)` normalizes p = 1, p = 2 and p = inf to the dedicated kinds so
 * that two norms compare equal whenever they define the same function.
 */
class Norm
{
public:
  static Norm l1(std::size_t dimension);
  static Norm l2(std::size_t dimension);
  static Norm linf(std::size_t dimension);
  static Norm lp(std::size_t dimension, double p);

  NormKind kind() const noexcept { return kind_; }
  double p() const noexcept { return p_; }
  std::size_t dimension() const noexcept { return dimension_; }

  /// Short name as used on the command line: l1, l2, linf, l3.5, ...
  std::string name() const;

  /// Checked evaluation; throws DimensionError when v.size() != dimension().
  double operator()(std::span<const double> v) const;

  /// ||a - b|| without dimension checks; both pointers address dimension() values.
  double of_difference(const double* a, const double* b) const noexcept;

  friend bool operator==(const Norm&, const Norm&) = default;

private:
  Norm(NormKind kind, std::size_t dimension, double p);

  NormKind kind_;
  std::size_t dimension_;
  double p_;
};

/// ||a - b||; throws DimensionError on any dimension mismatch.
double distance(std::span<const double> a, std::span<const double> b, const Norm& norm);

/// The ball {a : ||a - center|| < radius} under its own defining norm.
struct Ball
{
  Opinion center;
  double radius;
  Norm norm;
};

/// The axis-aligned box [lower, upper] (an interval when d = 1).
struct Box
{
  Opinion lower;
  Opinion upper;
};

/// A bounded convex subset of R^d with a closed-form diameter and center.
class ConvexSet
{
public:
  using Shape = std::variant<Ball, Box>;

  static ConvexSet ball(Opinion center, double radius, const Norm& norm);
  static ConvexSet box(Opinion lower, Opinion upper);
  static ConvexSet interval(double a, double b);

  const Shape& shape() const noexcept { return shape_; }
  bool is_ball() const noexcept { return std::holds_alternative<Ball>(shape_); }
  const Ball& as_ball() const { return std::get<Ball>(shape_); }
  const Box& as_box() const { return std::get<Box>(shape_); }
  std::size_t dimension() const noexcept;

  /// Membership in the closure of the set, widened by `slack`.
  bool contains(std::span<const double> a, double slack = 0.0) const;

  std::string describe() const;

private:
  explicit ConvexSet(Shape shape)
    : shape_(std::move(shape))
  {}

  Shape shape_;
};

/// Closed-form diameter under `norm`. A ball is only supported under the norm that defines it.
double diameter(const ConvexSet& set, const Norm& norm);

/// Point c with sup_{a in set} ||a - c|| = diameter / 2.
Opinion center(const ConvexSet& set);

/// sup_{c in set} ||a - c||.
double sup_distance_to_set(std::span<const double> a, const ConvexSet& set, const Norm& norm);

/// The averaging map phi(a, b) = a + mu (b - a), for mu in (0, 1/2].
Opinion interpolate(std::span<const double> a, std::span<const double> b, double mu);

/// A convex set together with the norm that measures disagreement.
class OpinionSpace
{
public:
  /// Throws UnsupportedError for shape/norm pairs without closed forms.
  OpinionSpace(ConvexSet set, const Norm& norm);

  /// A ball measured with its own defining norm.
  static OpinionSpace of_ball(Opinion center, double radius, const Norm& norm);

  const ConvexSet& set() const noexcept { return set_; }
  const Norm& norm() const noexcept { return norm_; }
  double diameter() const noexcept { return diameter_; }
  const Opinion& center() const noexcept { return center_; }
  std::size_t dimension() const noexcept { return norm_.dimension(); }

  bool contains(std::span<const double> a, double slack = 0.0) const { return set_.contains(a, slack); }
  double distance(std::span<const double> a, std::span<const double> b) const
  {
    return deffuant::distance(a, b, norm_);
  }
  double sup_distance(std::span<const double> a) const { return sup_distance_to_set(a, set_, norm_); }

  std::string describe() const;

private:
  ConvexSet set_;
  Norm norm_;
  double diameter_;
  Opinion center_;
};

/// A labeled lower estimate of a supremum obtained from finitely many samples.
struct SampledEstimate
{
  double value;
  std::size_t samples;
};

/// max ||a - b|| over the given points. An estimate only; it never feeds the bound calculator.
SampledEstimate sampled_diameter(std::span<const Opinion> points, const Norm& norm);

} // namespace deffuant

#endif
