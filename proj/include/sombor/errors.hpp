#pragma once

#include <stdexcept>
#include <string>

namespace sombor {

// Raised when a graph cannot be built or an operation receives a vertex or
// edge that does not belong to the graph.
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when a parameter lies outside the domain of a family, formula or
// analysis routine. The message names the violated constraint.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline void require(bool ok, const std::string& constraint) {
  if (!ok) throw DomainError("domain violation: " + constraint);
}

}  // namespace detail
}  // namespace sombor
