#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace aps {

// Every failure carries the module that raised it and a short kind tag so the
// CLI can report {module, kind, message} without string parsing.
class Error : public std::runtime_error {
public:
  Error(std::string module, std::string kind, const std::string &message)
      : std::runtime_error(message), module_(std::move(module)),
        kind_(std::move(kind)) {}

  const std::string &module() const noexcept { return module_; }
  const std::string &kind() const noexcept { return kind_; }

private:
  std::string module_;
  std::string kind_;
};

#define APS_DEFINE_ERROR(Name, Module)                                         \
  class Name : public Error {                                                  \
  public:                                                                      \
    explicit Name(const std::string &message)                                  \
        : Error(Module, #Name, message) {}                                     \
  };

APS_DEFINE_ERROR(NonInvertible, "ga_core")
APS_DEFINE_ERROR(NotUnimodular, "spacetime")
APS_DEFINE_ERROR(OffShell, "spacetime")
APS_DEFINE_ERROR(NonTimelike, "spacetime")
APS_DEFINE_ERROR(TooManyModes, "fermion_gen")
APS_DEFINE_ERROR(StepTooLarge, "dynamics")
APS_DEFINE_ERROR(InvalidParticle, "dynamics")
APS_DEFINE_ERROR(NotUnit, "spin_states")
APS_DEFINE_ERROR(InvalidState, "spin_states")
APS_DEFINE_ERROR(SuperluminalVelocity, "dirac_bridge")
APS_DEFINE_ERROR(ConfigOutOfRange, "sg_sim")
APS_DEFINE_ERROR(InvalidConfig, "cli_io")
APS_DEFINE_ERROR(IOFailure, "cli_io")

#undef APS_DEFINE_ERROR

} // namespace aps
