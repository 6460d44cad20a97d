#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lucent {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A node id was used with a net (or cluster) that does not contain it.
class NotInNet : public Error {
public:
  using Error::Error;
};

/// A transition was fired (or queried) while not enabled.
class NotEnabled : public Error {
public:
  NotEnabled(const std::string& transition, std::size_t position, const std::string& what)
      : Error(what), transition_(transition), position_(position) {}

  const std::string& transition() const { return transition_; }
  /// 1-based step in a sequence; 0 for a standalone firing.
  std::size_t position() const { return position_; }

private:
  std::string transition_;
  std::size_t position_;
};

/// Net construction violated a structural invariant.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Text input could not be parsed. Carries 1-based line/column.
class ParseError : public Error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// A node sequence is not a valid path of the net.
class InvalidPath : public Error {
public:
  using Error::Error;
};

/// Expediting two positions of a firing sequence is not permitted.
class ExpediteNotPermitted : public Error {
public:
  using Error::Error;
};

/// Exploration hit the node cap before closing the state space.
class StateSpaceExceeded : public Error {
public:
  using Error::Error;
};

/// An operation needs a complete reachability graph but got a truncated one.
class IncompleteStateSpace : public Error {
public:
  using Error::Error;
};

/// Short-circuiting requires a safe initial marking.
class UnsafeInitialMarking : public Error {
public:
  using Error::Error;
};

/// Restricting a net to the connected part produced an invalid net.
class CleanFailed : public Error {
public:
  using Error::Error;
};

/// The random-net generator exhausted its retry budget.
class GenerationFailed : public Error {
public:
  using Error::Error;
};

}  // namespace lucent
