#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "restrace/word.hpp"

namespace restrace {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class UnknownName : public Error {
public:
  UnknownName(const std::string& kind, const std::string& name)
      : Error("unknown " + kind + " " + name), kind(kind), name(name) {}
  std::string kind;
  std::string name;
};

class BoundaryMismatch : public Error {
public:
  BoundaryMismatch(Word expected, Word got)
      : Error("boundary mismatch: expected " + pretty(expected) + ", got " + pretty(got)),
        expected(std::move(expected)), got(std::move(got)) {}
  /// With the 1-based column span [begin, end] of the offending sub-expression.
  BoundaryMismatch(Word expected, Word got, std::size_t begin, std::size_t end)
      : Error("boundary mismatch at columns " + std::to_string(begin) + "-" + std::to_string(end) + ": expected " +
              pretty(expected) + ", got " + pretty(got)),
        expected(std::move(expected)), got(std::move(got)), begin(begin), end(end) {}
  Word expected;
  Word got;
  std::size_t begin = 0;
  std::size_t end = 0;
};

class GraphMismatch : public Error {
public:
  GraphMismatch() : Error("morphisms live over different device graphs") {}
};

class NotSwappable : public Error {
public:
  enum class Reason { SharedDevice, OverlappingSpan };
  explicit NotSwappable(Reason reason)
      : Error(reason == Reason::SharedDevice ? "not swappable: shared-device"
                                             : "not swappable: overlapping-span"),
        reason(reason) {}
  Reason reason;
};

class IndexOutOfRange : public Error {
public:
  IndexOutOfRange(std::size_t index, std::size_t size)
      : Error("index " + std::to_string(index) + " out of range (size " + std::to_string(size) + ")") {}
};

class NotPure : public Error {
public:
  explicit NotPure(const std::string& gen) : Error("generator " + gen + " carries devices") {}
};

class InvalidMorphism : public Error {
public:
  using Error::Error;
};

class BudgetExceeded : public Error {
public:
  explicit BudgetExceeded(std::size_t cap)
      : Error("budget exceeded (cap " + std::to_string(cap) + ")"), cap(cap) {}
  std::size_t cap;
};

class ParseError : public Error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line(line), column(column), message(message) {}
  std::size_t line;
  std::size_t column;
  std::string message;
};

class AlphabetMismatch : public Error {
public:
  AlphabetMismatch() : Error("relations over different alphabets") {}
};

class PureMismatch : public Error {
public:
  using Error::Error;
};

class NotCommuting : public Error {
public:
  using Error::Error;
};

class PureDisagreement : public Error {
public:
  using Error::Error;
};

} // namespace restrace
