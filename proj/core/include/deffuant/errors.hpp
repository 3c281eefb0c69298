#ifndef DEFFUANT_ERRORS_HPP
#define DEFFUANT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace deffuant
{

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Two vectors (or a vector and a norm) disagree on the dimension d.
class DimensionError : public Error
{
public:
  using Error::Error;
};

/// A parameter lies outside its admissible range (tau, mu, eps_stop, n, p...).
class ValidationError : public Error
{
public:
  using Error::Error;
};

/// The requested shape/norm/distribution combination has no closed form here.
class UnsupportedError : public Error
{
public:
  using Error::Error;
};

class GraphError : public Error
{
public:
  using Error::Error;
};

/// Self-loop, parallel edge, or out-of-range vertex id.
class StructureError : public GraphError
{
public:
  using GraphError::GraphError;
};

class ConnectivityError : public GraphError
{
public:
  ConnectivityError(std::size_t unreachable_vertex)
    : GraphError("graph is disconnected: vertex " + std::to_string(unreachable_vertex) +
                 " is unreachable from vertex 0")
    , vertex_(unreachable_vertex)
  {}

  std::size_t unreachable_vertex() const noexcept { return vertex_; }

private:
  std::size_t vertex_;
};

/// Malformed text input; `line()` is 1-based.
class ParseError : public Error
{
public:
  ParseError(std::size_t line, const std::string& what)
    : Error("line " + std::to_string(line) + ": " + what)
    , line_(line)
  {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// A rejection sampler exceeded its guard without accepting.
class SamplingError : public Error
{
public:
  using Error::Error;
};

} // namespace deffuant

#endif
