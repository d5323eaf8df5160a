#pragma once

#include <stdexcept>
#include <string>

namespace qet {

// Process exit codes used by the CLI. Library errors carry one of these so
// the harness can map failure classes to distinct codes without string
// matching.
enum class ExitCode : int {
  Ok = 0,
  Config = 2,     // bad flags, out-of-range sweep configuration
  Domain = 3,     // inputs outside the model's validity range
  Invariant = 4,  // a physical identity the model guarantees failed to hold
  Io = 5,         // filesystem problems
};

class Error : public std::runtime_error {
 public:
  Error(const std::string& msg, ExitCode code)
      : std::runtime_error(msg), code_(code) {}
  ExitCode code() const { return code_; }

 private:
  ExitCode code_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error(msg, ExitCode::Config) {}
};

struct DomainError : Error {
  explicit DomainError(const std::string& msg) : Error(msg, ExitCode::Domain) {}
};

struct InvariantViolation : Error {
  explicit InvariantViolation(const std::string& msg)
      : Error(msg, ExitCode::Invariant) {}
};

struct IoError : Error {
  explicit IoError(const std::string& msg) : Error(msg, ExitCode::Io) {}
};

// Leaf types, so tests can catch the precise condition.

struct NonHermitian : DomainError {
  explicit NonHermitian(const std::string& msg) : DomainError(msg) {}
};

// An eigenvalue fell below the floor of a spectral function that needs
// strictly positive arguments (log of a density matrix).
struct RankDeficient : DomainError {
  explicit RankDeficient(const std::string& msg) : DomainError(msg) {}
};

struct DegenerateGroundState : DomainError {
  explicit DegenerateGroundState(const std::string& msg) : DomainError(msg) {}
};

struct SectorViolation : InvariantViolation {
  explicit SectorViolation(const std::string& msg) : InvariantViolation(msg) {}
};

struct CalibrationFailure : InvariantViolation {
  explicit CalibrationFailure(const std::string& msg)
      : InvariantViolation(msg) {}
};

struct ZeroProbability : DomainError {
  explicit ZeroProbability(const std::string& msg) : DomainError(msg) {}
};

// The two-by-two block ansatz for the reduced log-density failed: couplings
// between the even and odd magnetization blocks exceeded tolerance.
struct BlockViolation : InvariantViolation {
  explicit BlockViolation(const std::string& msg) : InvariantViolation(msg) {}
};

struct AllZero : DomainError {
  explicit AllZero(const std::string& msg) : DomainError(msg) {}
};

}  // namespace qet
