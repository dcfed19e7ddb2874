#pragma once

#include <stdexcept>
#include <string>

namespace sclkit {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownSymbolError : Error {
  explicit UnknownSymbolError(char c)
      : Error(std::string("unknown symbol '") + c + "'"), symbol(c) {}
  char symbol;
};

struct EmptyWordError : Error {
  EmptyWordError() : Error("word reduces to the identity") {}
};

struct TrivialWordError : Error {
  TrivialWordError() : Error("chain term reduces to the identity") {}
};

struct NotNullHomologousError : Error {
  NotNullHomologousError() : Error("chain is not null-homologous; no admissible surface exists") {}
};

struct MalformedSolutionError : Error {
  using Error::Error;
};

struct UnbalancedAssignmentError : Error {
  UnbalancedAssignmentError() : Error("boundary assignment does not sum to zero mod N") {}
};

struct SearchExhaustedError : Error {
  using Error::Error;
};

struct NoGenusError : Error {
  NoGenusError() : Error("surface has genus zero; no pairing cover exists") {}
};

struct NotInKernelError : Error {
  NotInKernelError() : Error("class does not lie in the Mayer-Vietoris kernel lattice") {}
};

struct ParseError : Error {
  using Error::Error;
};

struct DisconnectedGraphError : ParseError {
  DisconnectedGraphError() : ParseError("underlying graph is not connected") {}
};

struct TrivialAttachingWordError : ParseError {
  explicit TrivialAttachingWordError(const std::string& e)
      : ParseError("attaching word on edge '" + e + "' is trivial") {}
};

struct UnknownVertexError : ParseError {
  explicit UnknownVertexError(const std::string& v)
      : ParseError("unknown vertex '" + v + "'") {}
};

struct LimitExceededError : Error {
  using Error::Error;
};

struct DepthExceededError : Error {
  DepthExceededError() : Error("fan subdivision depth guard exceeded") {}
};

struct IndependenceViolationError : Error {
  IndependenceViolationError() : Error("classes are linearly dependent") {}
};

}  // namespace sclkit
