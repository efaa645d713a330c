#ifndef DGO_ERRORS_HPP
#define DGO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dgo {

// Iterative solver failed to reach its tolerance.
class convergence_error : public std::runtime_error {
 public:
  explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

// Inputs violate a validity guard (weak coupling, positive effective
// damping, ...). Distinct from domain errors so the CLI can map it to its
// own exit code.
class validity_error : public std::runtime_error {
 public:
  explicit validity_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dgo

#endif  // DGO_ERRORS_HPP
