#ifndef DEFFUANT_INIT_HPP
#define DEFFUANT_INIT_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "deffuant/configuration.hpp"
#include "deffuant/graph.hpp"
#include "deffuant/opinion_space.hpp"
#include "deffuant/rng.hpp"

namespace deffuant
{

enum class DistributionKind
{
  UniformBall,
  TriangularBall, ///< density proportional to r - ||a - c|| on B(c, r)
  UniformBox,
  PointMass
};

/// Law of a single initial opinion; vertices receive i.i.d. draws.
class InitialDistribution
{
public:
  /// Uniform over the set: UniformBall for a ball, UniformBox for a box.
  static InitialDistribution uniform(const OpinionSpace& space);
  /// Requires a ball; throws UnsupportedError otherwise.
  static InitialDistribution triangular(const OpinionSpace& space);
  /// Requires `point` in the set.
  static InitialDistribution point_mass(const OpinionSpace& space, Opinion point);

  DistributionKind kind() const noexcept { return kind_; }
  const OpinionSpace& space() const noexcept { return space_; }
  std::size_t dimension() const noexcept { return space_.dimension(); }
  const Opinion& point() const noexcept { return point_; }

  std::string describe() const;

private:
  InitialDistribution(DistributionKind kind, OpinionSpace space, Opinion point)
    : kind_(kind)
    , space_(std::move(space))
    , point_(std::move(point))
  {}

  DistributionKind kind_;
  OpinionSpace space_;
  Opinion point_;
};

/// Upper limit on consecutive rejected proposals before a sampler gives up.
inline constexpr std::uint64_t max_rejections = 1'000'000;

/**
 * Draws opinions from an InitialDistribution.
 *
 * UniformBall proposes from the Linf box [c - r, c + r]^d and keeps points of
 * the open ball. TriangularBall thins uniform-ball points, keeping a with
 * probability (r - ||a - c||) / r. Counters expose the proposal counts so
 * acceptance rates can be checked.
 */
class Sampler
{
public:
  explicit Sampler(const InitialDistribution& dist)
    : dist_(&dist)
  {}
  explicit Sampler(InitialDistribution&&) = delete; ///< the sampler keeps a reference

  void draw(Rng& rng, std::span<double> out);
  Opinion operator()(Rng& rng);

  std::uint64_t samples() const noexcept { return samples_; }
  std::uint64_t box_proposals() const noexcept { return box_proposals_; }
  std::uint64_t uniform_ball_points() const noexcept { return uniform_ball_points_; }

private:
  void draw_uniform_ball(Rng& rng, std::span<double> out);

  const InitialDistribution* dist_;
  std::uint64_t samples_ = 0;
  std::uint64_t box_proposals_ = 0;
  std::uint64_t uniform_ball_points_ = 0;
};

Opinion sample(const InitialDistribution& dist, Rng& rng);

/// Closed-form E||X - center||; throws UnsupportedError when none is available.
double expected_disagreement_analytic(const InitialDistribution& dist);

struct MeanEstimate
{
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// Monte Carlo estimate of E||X - c|| with its standard error; n_samples >= 2.
MeanEstimate expected_disagreement_mc(const InitialDistribution& dist, std::span<const double> c,
                                      std::size_t n_samples, Rng& rng);

/// One independent draw per vertex, in vertex order.
Configuration initial_configuration(const InitialDistribution& dist, const Graph& graph, Rng& rng);

} // namespace deffuant

#endif
