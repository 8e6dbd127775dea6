#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hypcert {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByIntervalContainingZero : public Error {
 public:
  using Error::Error;
};

/// An elementary function or operation was applied outside its real domain.
/// `function` names the operation, `path` locates the node inside an
/// expression tree (empty when raised directly by the interval layer).
class DomainViolation : public Error {
 public:
  DomainViolation(std::string function, std::string detail, std::string path = {})
      : Error(format(function, detail, path)),
        function_(std::move(function)),
        detail_(std::move(detail)),
        path_(std::move(path)) {}

  const std::string& function() const { return function_; }
  const std::string& detail() const { return detail_; }
  const std::string& path() const { return path_; }

  DomainViolation at(const std::string& path) const {
    return DomainViolation(function_, detail_, path);
  }

 private:
  static std::string format(const std::string& f, const std::string& d, const std::string& p) {
    std::string msg = "domain violation in " + f + ": " + d;
    if (!p.empty()) msg += " (at " + p + ")";
    return msg;
  }

  std::string function_;
  std::string detail_;
  std::string path_;
};

class OverflowRange : public Error {
 public:
  using Error::Error;
};

class DegenerateInterval : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t offset)
      : Error(message + " at byte " + std::to_string(offset)), message_(message), offset_(offset) {}
  const std::string& message() const { return message_; }
  std::size_t offset() const { return offset_; }

 private:
  std::string message_;
  std::size_t offset_;
};

class UnknownFunction : public SyntaxError {
 public:
  UnknownFunction(const std::string& name, std::size_t offset)
      : SyntaxError("unknown function '" + name + "'", offset), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class NonIntegerExponent : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(const std::string& name)
      : Error("unbound variable '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class MalformedCertificate : public Error {
 public:
  using Error::Error;
};

}  // namespace hypcert
