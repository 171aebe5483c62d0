#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hsp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonUnit : public Error {
 public:
  NonUnit(std::int64_t value, std::uint64_t modulus);
  std::int64_t value() const noexcept { return value_; }
  std::uint64_t modulus() const noexcept { return modulus_; }

 private:
  std::int64_t value_;
  std::uint64_t modulus_;
};

class InvalidParams : public Error {
 public:
  explicit InvalidParams(const std::string& reason) : Error(reason) {}
};

class NonUnitDenominator : public Error {
 public:
  using Error::Error;
};

class InvalidDescriptor : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class NotASubgroup : public Error {
 public:
  using Error::Error;
};

// Raised when a subgroup does not match any canonical descriptor. Firing it
// means the classification is wrong.
class UnclassifiableSet : public Error {
 public:
  using Error::Error;
};

class InvalidHidden : public Error {
 public:
  using Error::Error;
};

/// Two distinct summation indices that the operator U would send to the same
/// basis state.
struct CollisionWitness {
  std::uint64_t n1 = 0;
  std::uint64_t n2 = 0;
  std::uint64_t register_value = 0;  // shared second-register content
  std::uint64_t s_value = 0;         // shared S value
};

class NonInjectiveS : public Error {
 public:
  NonInjectiveS(const std::string& what, CollisionWitness witness)
      : Error(what), witness_(witness) {}
  const CollisionWitness& witness() const noexcept { return witness_; }

 private:
  CollisionWitness witness_;
};

class Exhausted : public Error {
 public:
  Exhausted(const std::string& what, std::uint64_t runs) : Error(what), runs_(runs) {}
  std::uint64_t runs() const noexcept { return runs_; }

 private:
  std::uint64_t runs_;
};

class UnsupportedT : public Error {
 public:
  UnsupportedT(const std::string& what, unsigned t, unsigned j, bool has_witness,
               CollisionWitness witness)
      : Error(what), t_(t), j_(j), has_witness_(has_witness), witness_(witness) {}
  unsigned t() const noexcept { return t_; }
  unsigned j() const noexcept { return j_; }
  bool has_witness() const noexcept { return has_witness_; }
  const CollisionWitness& witness() const noexcept { return witness_; }

 private:
  unsigned t_;
  unsigned j_;
  bool has_witness_;
  CollisionWitness witness_;
};

class NoCollision : public Error {
 public:
  NoCollision(const std::string& what, std::uint64_t queries)
      : Error(what), queries_(queries) {}
  std::uint64_t queries() const noexcept { return queries_; }

 private:
  std::uint64_t queries_;
};

class DegenerateV : public Error {
 public:
  using Error::Error;
};

}  // namespace hsp
