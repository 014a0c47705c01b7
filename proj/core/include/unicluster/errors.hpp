#pragma once

#include <stdexcept>
#include <string>

namespace unicluster {

// Base for every failure raised by the library. name() is the stable
// identifier surfaced by the CLI (exit code 4).
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define UNICLUSTER_DEFINE_ERROR(Type)                                   \
  class Type : public Error {                                           \
   public:                                                              \
    explicit Type(const std::string& what) : Error(#Type, what) {}      \
  };

UNICLUSTER_DEFINE_ERROR(InvalidArgument)
UNICLUSTER_DEFINE_ERROR(NotSymmetric)
UNICLUSTER_DEFINE_ERROR(NotPositiveDefinite)
UNICLUSTER_DEFINE_ERROR(ConvergenceFailure)
UNICLUSTER_DEFINE_ERROR(DegenerateRow)
UNICLUSTER_DEFINE_ERROR(EmptyCluster)
UNICLUSTER_DEFINE_ERROR(ZeroVolume)
UNICLUSTER_DEFINE_ERROR(IsolatedNode)
UNICLUSTER_DEFINE_ERROR(EmptyNeighborhood)
UNICLUSTER_DEFINE_ERROR(LengthMismatch)

#undef UNICLUSTER_DEFINE_ERROR

}  // namespace unicluster
