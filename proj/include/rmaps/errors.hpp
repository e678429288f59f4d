#pragma once

#include <stdexcept>
#include <string>

namespace rmaps {

enum class ErrorKind { parameter, contract, resource, internal, parse };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

class ParameterError : public Error {
public:
  explicit ParameterError(const std::string& w) : Error(ErrorKind::parameter, w) {}
};

class ContractError : public Error {
public:
  explicit ContractError(const std::string& w) : Error(ErrorKind::contract, w) {}
};

class ResourceError : public Error {
public:
  explicit ResourceError(const std::string& w, bool partial = false)
      : Error(ErrorKind::resource, w), partial_(partial) {}
  // True when a search was cut short and its result set is incomplete.
  bool partial() const noexcept { return partial_; }

private:
  bool partial_;
};

class InternalError : public Error {
public:
  explicit InternalError(const std::string& w) : Error(ErrorKind::internal, w) {}
};

class ParseError : public Error {
public:
  explicit ParseError(const std::string& w) : Error(ErrorKind::parse, w) {}
};

}  // namespace rmaps
