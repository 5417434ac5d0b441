#pragma once

#include <stdexcept>
#include <string>

namespace monofan {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct NoPositiveGrading : Error {
  explicit NoPositiveGrading(const std::string& what) : Error(what) {}
};

struct NotStronglyConvex : Error {
  explicit NotStronglyConvex(const std::string& what) : Error(what) {}
};

struct DegeneratePolytope : Error {
  explicit DegeneratePolytope(const std::string& what) : Error(what) {}
};

struct NotAMember : Error {
  explicit NotAMember(const std::string& what) : Error(what) {}
};

struct InvalidPrime : Error {
  explicit InvalidPrime(const std::string& what) : Error(what) {}
};

struct InvalidFan : Error {
  explicit InvalidFan(const std::string& what) : Error(what) {}
};

struct IllFormedSpace : Error {
  explicit IllFormedSpace(const std::string& what) : Error(what) {}
};

struct NotIrreducible : Error {
  explicit NotIrreducible(const std::string& what) : Error(what) {}
};

struct IncompatibleIdentification : Error {
  explicit IncompatibleIdentification(const std::string& what) : Error(what) {}
};

struct IllFormedMorphism : Error {
  explicit IllFormedMorphism(const std::string& what) : Error(what) {}
};

struct NotAFan : Error {
  explicit NotAFan(const std::string& what) : Error(what) {}
};

struct NoOverlap : Error {
  explicit NoOverlap(const std::string& what) : Error(what) {}
};

struct PreconditionsNotMet : Error {
  explicit PreconditionsNotMet(const std::string& what) : Error(what) {}
};

struct SchemaError : Error {
  explicit SchemaError(const std::string& what) : Error(what) {}
};

}  // namespace monofan
