#ifndef DEFFUANT_CONFIGURATION_HPP
#define DEFFUANT_CONFIGURATION_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "deffuant/opinion_space.hpp"

namespace deffuant
{

/// Opinions of all vertices at one instant, stored row-major (vertex, coordinate).
class Configuration
{
public:
  Configuration() = default;
  Configuration(std::size_t vertex_count, std::size_t dimension)
    : vertex_count_(vertex_count)
    , dimension_(dimension)
    , values_(vertex_count * dimension, 0.0)
  {}

  /// One opinion per vertex; all must share a dimension (throws DimensionError otherwise).
  static Configuration from_opinions(std::span<const Opinion> opinions);

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t dimension() const noexcept { return dimension_; }

  std::span<double> opinion(std::size_t v) { return {values_.data() + v * dimension_, dimension_}; }
  std::span<const double> opinion(std::size_t v) const
  {
    return {values_.data() + v * dimension_, dimension_};
  }
  Opinion opinion_copy(std::size_t v) const
  {
    const auto o = opinion(v);
    return {o.begin(), o.end()};
  }

  const std::vector<double>& values() const noexcept { return values_; }

  double time = 0.0;
  std::uint64_t event_count = 0;

  /// Equal opinions, time and event count.
  friend bool operator==(const Configuration&, const Configuration&) = default;

private:
  std::size_t vertex_count_ = 0;
  std::size_t dimension_ = 0;
  std::vector<double> values_;
};

} // namespace deffuant

#endif
