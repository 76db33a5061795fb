#pragma once

#include <stdexcept>
#include <string>

namespace regraph {

// Base class for all domain errors thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

class UnknownNode : public Error {
 public:
  explicit UnknownNode(const std::string &msg) : Error(msg) {}
};

class InvalidGraph : public Error {
 public:
  explicit InvalidGraph(const std::string &msg) : Error(msg) {}
};

class InvalidPartition : public Error {
 public:
  explicit InvalidPartition(const std::string &msg) : Error(msg) {}
};

class InvalidSplit : public Error {
 public:
  explicit InvalidSplit(const std::string &msg) : Error(msg) {}
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string &msg) : Error(msg) {}
};

class NegativeEntry : public Error {
 public:
  explicit NegativeEntry(const std::string &msg) : Error(msg) {}
};

class NotTriangular : public Error {
 public:
  explicit NotTriangular(const std::string &msg) : Error(msg) {}
};

class NotSymmetric : public Error {
 public:
  explicit NotSymmetric(const std::string &msg) : Error(msg) {}
};

class SingularPivot : public Error {
 public:
  explicit SingularPivot(const std::string &msg) : Error(msg) {}
};

class SingularBlock : public Error {
 public:
  explicit SingularBlock(const std::string &msg) : Error(msg) {}
};

class SingularMatrix : public Error {
 public:
  explicit SingularMatrix(const std::string &msg) : Error(msg) {}
};

class NotPositiveDefinite : public Error {
 public:
  explicit NotPositiveDefinite(const std::string &msg) : Error(msg) {}
};

class NotRealizable : public Error {
 public:
  explicit NotRealizable(const std::string &msg) : Error(msg) {}
};

class InvalidProbability : public Error {
 public:
  explicit InvalidProbability(const std::string &msg) : Error(msg) {}
};

// Text-format parse failure with source position.
class ParseError : public Error {
 public:
  ParseError(int line, int col, const std::string &msg)
      : Error("parse error at " + std::to_string(line) + ":" +
              std::to_string(col) + ": " + msg),
        line_(line),
        col_(col) {}

  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

}  // namespace regraph
