#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace igam {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad ids, out-of-range node references, garbled input.
class MalformedInput : public Error {
 public:
  using Error::Error;
};

class ParseError : public MalformedInput {
 public:
  ParseError(const std::string& what, std::size_t line)
      : MalformedInput(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// A model parameter bundle violates its constraints.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

class UnsupportedOperation : public Error {
 public:
  using Error::Error;
};

class InvalidCut : public Error {
 public:
  using Error::Error;
};

class DisconnectedGraph : public Error {
 public:
  using Error::Error;
};

class EmptyGraph : public Error {
 public:
  using Error::Error;
};

class SingularKernel : public Error {
 public:
  using Error::Error;
};

/// Iterative solver stopped at its iteration cap.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// One candidate parameterization was rejected (e.g. c outside (1, b)).
class FitRejected : public Error {
 public:
  FitRejected(const std::string& what, double c) : Error(what), c_(c) {}
  double c() const { return c_; }

 private:
  double c_;
};

/// Every candidate fanout was rejected.
class FitFailed : public Error {
 public:
  FitFailed(const std::string& what, std::vector<std::string> log)
      : Error(what), log_(std::move(log)) {}
  const std::vector<std::string>& rejection_log() const { return log_; }

 private:
  std::vector<std::string> log_;
};

}  // namespace igam
