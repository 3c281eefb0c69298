#include "deffuant/init.hpp"

#include <cmath>
#include <sstream>

#include "deffuant/errors.hpp"

namespace deffuant
{

InitialDistribution InitialDistribution::uniform(const OpinionSpace& space)
{
  const auto kind = space.set().is_ball() ? DistributionKind::UniformBall : DistributionKind::UniformBox;
  return InitialDistribution(kind, space, {});
}

InitialDistribution InitialDistribution::triangular(const OpinionSpace& space)
{
  if (!space.set().is_ball()) {
    throw UnsupportedError("triangular initial distribution requires a ball opinion space");
  }
  return InitialDistribution(DistributionKind::TriangularBall, space, {});
}

InitialDistribution InitialDistribution::point_mass(const OpinionSpace& space, Opinion point)
{
  if (point.size() != space.dimension()) {
    throw DimensionError("point mass has dimension " + std::to_string(point.size()) + ", space has " +
                         std::to_string(space.dimension()));
  }
  if (!space.contains(point)) {
    throw ValidationError("point mass lies outside the opinion space");
  }
  return InitialDistribution(DistributionKind::PointMass, space, std::move(point));
}

std::string InitialDistribution::describe() const
{
  std::ostringstream out;
  out.precision(17);
  switch (kind_) {
  case DistributionKind::UniformBall:
    out << "uniform-ball";
    break;
  case DistributionKind::TriangularBall:
    out << "triangular-ball";
    break;
  case DistributionKind::UniformBox:
    out << "uniform-box";
    break;
  case DistributionKind::PointMass:
    out << "point(";
    for (std::size_t i = 0; i < point_.size(); ++i) {
      out << (i ? "," : "") << point_[i];
    }
    out << ')';
    break;
  }
  return out.str();
}

// ---------------------------------------------------------------------------

void Sampler::draw_uniform_ball(Rng& rng, std::span<double> out)
{
  const Ball& ball = dist_->space().set().as_ball();
  const std::size_t d = ball.center.size();
  for (std::uint64_t attempt = 0; attempt < max_rejections; ++attempt) {
    ++box_proposals_;
    for (std::size_t i = 0; i < d; ++i) {
      out[i] = ball.center[i] + ball.radius * (2.0 * rng.uniform01() - 1.0);
    }
    if (ball.norm.of_difference(out.data(), ball.center.data()) < ball.radius) {
      ++uniform_ball_points_;
      return;
    }
  }
  throw SamplingError("uniform ball sampler rejected " + std::to_string(max_rejections) +
                      " consecutive proposals");
}

void Sampler::draw(Rng& rng, std::span<double> out)
{
  const OpinionSpace& space = dist_->space();
  if (out.size() != space.dimension()) {
    throw DimensionError("sample buffer has the wrong dimension");
  }
  switch (dist_->kind()) {
  case DistributionKind::PointMass:
    std::copy(dist_->point().begin(), dist_->point().end(), out.begin());
    break;
  case DistributionKind::UniformBox: {
    const Box& box = space.set().as_box();
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = box.lower[i] + (box.upper[i] - box.lower[i]) * rng.uniform01();
    }
    break;
  }
  case DistributionKind::UniformBall:
    draw_uniform_ball(rng, out);
    break;
  case DistributionKind::TriangularBall: {
    const Ball& ball = space.set().as_ball();
    std::uint64_t attempt = 0;
    for (;; ++attempt) {
      if (attempt == max_rejections) {
        throw SamplingError("triangular sampler rejected " + std::to_string(max_rejections) +
                            " consecutive uniform-ball points");
      }
      draw_uniform_ball(rng, out);
      const double weight = (ball.radius - ball.norm.of_difference(out.data(), ball.center.data())) / ball.radius;
      if (rng.uniform01() < weight) {
        break;
      }
    }
    break;
  }
  }
  ++samples_;
}

Opinion Sampler::operator()(Rng& rng)
{
  Opinion out(dist_->dimension());
  draw(rng, out);
  return out;
}

Opinion sample(const InitialDistribution& dist, Rng& rng)
{
  Sampler sampler(dist);
  return sampler(rng);
}

double expected_disagreement_analytic(const InitialDistribution& dist)
{
  const OpinionSpace& space = dist.space();
  const auto d = static_cast<double>(space.dimension());
  switch (dist.kind()) {
  case DistributionKind::UniformBall:
    // P(||X - c|| < s) = (s/r)^d  =>  E||X - c|| = dr/(d+1)
    return d * space.set().as_ball().radius / (d + 1.0);
  case DistributionKind::TriangularBall:
    // P(||X - c|| < s) = (s/r)^d (1 + d(1 - s/r))  =>  E||X - c|| = dr/(d+2)
    return d * space.set().as_ball().radius / (d + 2.0);
  case DistributionKind::PointMass:
    return space.distance(dist.point(), space.center());
  case DistributionKind::UniformBox: {
    // Coordinates are independent uniforms on [l_i, u_i] and |X_i - m_i| has mean (u_i - l_i)/4.
    // This gives the L1 norm exactly, and any norm when d = 1.
    const Box& box = space.set().as_box();
    if (space.dimension() == 1 || space.norm().kind() == NormKind::L1) {
      double sum = 0.0;
      for (std::size_t i = 0; i < box.lower.size(); ++i) {
        sum += 0.25 * (box.upper[i] - box.lower[i]);
      }
      return sum;
    }
    throw UnsupportedError("no closed form for E||X - c|| of a uniform box under " + space.norm().name() +
                           " in dimension " + std::to_string(space.dimension()) +
                           "; use the Monte Carlo estimator");
  }
  }
  throw UnsupportedError("unknown distribution kind");
}

MeanEstimate expected_disagreement_mc(const InitialDistribution& dist, std::span<const double> c,
                                      std::size_t n_samples, Rng& rng)
{
  if (n_samples < 2) {
    throw ValidationError("Monte Carlo estimate needs at least 2 samples");
  }
  const Norm& norm = dist.space().norm();
  if (c.size() != norm.dimension()) {
    throw DimensionError("reference point has the wrong dimension");
  }
  Sampler sampler(dist);
  Opinion x(dist.dimension());
  // Welford
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t k = 1; k <= n_samples; ++k) {
    sampler.draw(rng, x);
    const double value = norm.of_difference(x.data(), c.data());
    const double delta = value - mean;
    mean += delta / static_cast<double>(k);
    m2 += delta * (value - mean);
  }
  const double n = static_cast<double>(n_samples);
  const double variance = m2 / (n - 1.0);
  return {mean, std::sqrt(variance / n), n_samples};
}

Configuration initial_configuration(const InitialDistribution& dist, const Graph& graph, Rng& rng)
{
  Configuration config(graph.vertex_count(), dist.dimension());
  Sampler sampler(dist);
  for (Vertex v = 0; v < graph.vertex_count(); ++v) {
    sampler.draw(rng, config.opinion(v));
  }
  return config;
}

} // namespace deffuant
