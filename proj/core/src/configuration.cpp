#include "deffuant/configuration.hpp"

#include <algorithm>
#include <string>

#include "deffuant/errors.hpp"

namespace deffuant
{

Configuration Configuration::from_opinions(std::span<const Opinion> opinions)
{
  if (opinions.empty()) {
    throw ValidationError("configuration needs at least one vertex");
  }
  Configuration config(opinions.size(), opinions.front().size());
  for (std::size_t v = 0; v < opinions.size(); ++v) {
    if (opinions[v].size() != config.dimension()) {
      throw DimensionError("opinion of vertex " + std::to_string(v) + " has dimension " +
                           std::to_string(opinions[v].size()) + ", expected " +
                           std::to_string(config.dimension()));
    }
    std::copy(opinions[v].begin(), opinions[v].end(), config.opinion(v).begin());
  }
  return config;
}

} // namespace deffuant
