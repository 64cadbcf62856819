#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lvc {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two operands live over different Coxeter data (or different fields).
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// A configured work cap would be exceeded.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::uint64_t needed, std::uint64_t cap)
      : Error(what + ": needs " + std::to_string(needed) + ", cap is " + std::to_string(cap)),
        needed_(needed),
        cap_(cap) {}

  std::uint64_t needed() const noexcept { return needed_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t needed_;
  std::uint64_t cap_;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Raised by exact fitting when points are missing or do not lie on one curve.
class FitError : public Error {
 public:
  using Error::Error;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

}  // namespace lvc
