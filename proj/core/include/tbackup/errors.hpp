#pragma once

#include <stdexcept>
#include <string>

namespace tbackup {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed instance data (bad endpoints, self-loops, too few terminals, ...).
class InvalidInstance : public Error {
 public:
  using Error::Error;
};

/// Some terminal cannot reach the other terminals even with every edge at capacity.
class Infeasible : public Error {
 public:
  using Error::Error;
};

/// Input exceeds the configured bound of an exhaustive routine.
class TooLarge : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// A structural property that the theory guarantees failed at runtime. Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

class NotMinimal : public InternalError {
 public:
  explicit NotMinimal(int edge)
      : InternalError("solution is not minimal: edge " + std::to_string(edge) +
                      " can be decreased by 1/2"),
        edge_(edge) {}
  int edge() const { return edge_; }

 private:
  int edge_;
};

class StructureViolation : public InternalError {
 public:
  using InternalError::InternalError;
};

class IncompleteFamily : public InternalError {
 public:
  using InternalError::InternalError;
};

class OddDegree : public InternalError {
 public:
  explicit OddDegree(int node)
      : InternalError("half-integral edges have odd or excessive degree at node " +
                      std::to_string(node)),
        node_(node) {}
  int node() const { return node_; }

 private:
  int node_;
};

class CycleSequenceError : public InternalError {
 public:
  using InternalError::InternalError;
};

class NoAdmissiblePair : public InternalError {
 public:
  explicit NoAdmissiblePair(int node)
      : InternalError("no admissible pair and no removable edge at node " +
                      std::to_string(node)),
        node_(node) {}
  int node() const { return node_; }

 private:
  int node_;
};

}  // namespace tbackup
