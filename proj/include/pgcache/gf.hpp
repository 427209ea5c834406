#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <vector>

namespace pgcache {

// An element of GF(p^n), stored as its polynomial-basis coordinates read as a base-p integer
// (constant coefficient least significant).
class FieldElement {
 public:
  constexpr FieldElement() = default;
  constexpr explicit FieldElement(std::uint32_t value) : value_(value) {}

  constexpr std::uint32_t value() const { return value_; }
  constexpr bool is_zero() const { return value_ == 0; }

  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;

 private:
  std::uint32_t value_ = 0;
};

inline constexpr std::uint32_t kDefaultFieldLimit = 1U << 16;

// GF(q) for q = p^n with log/antilog tables. Immutable after construction.
class Field {
 public:
  // Throws InvalidArgument for non-prime p, n == 0, or p^n above `limit`.
  Field(std::uint32_t p, unsigned n, std::uint32_t limit = kDefaultFieldLimit);

  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return n_; }
  std::uint32_t order() const { return q_; }
  // Monic modulus coefficients, constant term first; {0, 1} (the polynomial x) for prime fields.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  FieldElement zero() const { return FieldElement{0}; }
  FieldElement one() const { return FieldElement{1}; }
  FieldElement element(std::uint32_t value) const;

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement sub(FieldElement a, FieldElement b) const;
  FieldElement neg(FieldElement a) const;
  FieldElement mul(FieldElement a, FieldElement b) const;
  // Throws InvalidArgument on zero.
  FieldElement inv(FieldElement a) const;

  bool operator==(const Field& other) const { return p_ == other.p_ && n_ == other.n_; }

 private:
  std::uint32_t p_;
  unsigned n_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> exp_;  // exp_[i] = g^i, doubled to skip a modulo in mul
  std::vector<std::uint32_t> log_;
};

using FieldPtr = std::shared_ptr<const Field>;

FieldPtr field_new(std::uint32_t p, unsigned n, std::uint32_t limit = kDefaultFieldLimit);
// Splits q into p^n first. Throws InvalidArgument when q is not a prime power.
FieldPtr field_of_order(std::uint32_t q, std::uint32_t limit = kDefaultFieldLimit);

bool is_prime(std::uint64_t n);

}  // namespace pgcache
