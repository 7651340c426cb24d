#pragma once

#include <stdexcept>
#include <string>

namespace cech {

// Exit-code classes used by the CLI. Library code throws; the tool maps
// the category to a process exit code.
enum class ErrorKind {
    Parse = 2,
    Invariance = 3,
    Solver = 4,
    DegreeBound = 5,
    Internal = 1,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, std::string msg) : std::runtime_error(std::move(msg)), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

struct AntisymmetryViolation : Error {
    explicit AntisymmetryViolation(const std::string& msg) : Error(ErrorKind::Parse, msg) {}
};
struct JacobiViolation : Error {
    explicit JacobiViolation(const std::string& msg) : Error(ErrorKind::Parse, msg) {}
};
struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error(ErrorKind::Internal, msg) {}
};
struct ArityMismatch : Error {
    explicit ArityMismatch(const std::string& msg) : Error(ErrorKind::Internal, msg) {}
};
struct IndexOutOfRange : Error {
    explicit IndexOutOfRange(const std::string& msg) : Error(ErrorKind::Internal, msg) {}
};
struct NotHomogeneous : Error {
    explicit NotHomogeneous(const std::string& msg) : Error(ErrorKind::Parse, msg) {}
};
struct NotInvariant : Error {
    explicit NotInvariant(const std::string& msg) : Error(ErrorKind::Invariance, msg) {}
};
struct UnsolvableSystem : Error {
    explicit UnsolvableSystem(const std::string& msg) : Error(ErrorKind::Solver, msg) {}
};
struct InvalidDifferentials : Error {
    explicit InvalidDifferentials(const std::string& msg) : Error(ErrorKind::Internal, msg) {}
};
struct NotInFiltration : Error {
    explicit NotInFiltration(const std::string& msg) : Error(ErrorKind::Internal, msg) {}
};
struct NotChainMap : Error {
    explicit NotChainMap(const std::string& msg) : Error(ErrorKind::Internal, msg) {}
};
struct NotInKernel : Error {
    explicit NotInKernel(const std::string& msg) : Error(ErrorKind::Internal, msg) {}
};
struct LiftFailed : Error {
    explicit LiftFailed(const std::string& msg) : Error(ErrorKind::Internal, msg) {}
};
struct NotDivisible : Error {
    explicit NotDivisible(const std::string& msg) : Error(ErrorKind::Parse, msg) {}
};
struct NonFiniteClosure : Error {
    explicit NonFiniteClosure(const std::string& msg) : Error(ErrorKind::Parse, msg) {}
};
struct DegreeBoundTooSmall : Error {
    explicit DegreeBoundTooSmall(const std::string& msg) : Error(ErrorKind::DegreeBound, msg) {}
};
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(ErrorKind::Parse, msg) {}
};

}  // namespace cech
