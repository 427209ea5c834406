#include "pgcache/gf.hpp"

#include <string>

#include "pgcache/errors.hpp"

namespace pgcache {

namespace {

using Poly = std::vector<std::uint32_t>;  // coefficients mod p, constant term first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly from_value(std::uint32_t value, std::uint32_t p, unsigned len) {
  Poly out(len, 0);
  for (unsigned i = 0; i < len; ++i) {
    out[i] = value % p;
    value /= p;
  }
  return out;
}

std::uint32_t to_value(const Poly& a, std::uint32_t p) {
  std::uint32_t v = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) v = v * p + *it;
  return v;
}

std::uint32_t inverse_mod_p(std::uint32_t a, std::uint32_t p) {
  std::uint64_t result = 1, base = a % p;
  std::uint32_t e = p - 2;
  while (e > 0) {
    if (e & 1U) result = result * base % p;
    base = base * base % p;
    e >>= 1U;
  }
  return static_cast<std::uint32_t>(result);
}

// Remainder of a modulo b (b nonzero, trimmed).
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint64_t lead_inv = inverse_mod_p(b.back(), p);
  while (a.size() > db) {
    const std::size_t shift = a.size() - 1 - db;
    const std::uint64_t factor = a.back() * lead_inv % p;
    for (std::size_t i = 0; i <= db; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - factor * b[i] % p) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& modulus, std::uint32_t p) {
  Poly prod(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  return poly_mod(std::move(prod), modulus, p);
}

bool is_irreducible(const Poly& f, std::uint32_t p) {
  const unsigned n = static_cast<unsigned>(f.size() - 1);
  // Trial division by every monic polynomial of degree 1..n/2.
  for (unsigned d = 1; 2 * d <= n; ++d) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (std::uint64_t low = 0; low < count; ++low) {
      Poly g = from_value(static_cast<std::uint32_t>(low), p, d);
      g.push_back(1);
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

Poly least_irreducible(std::uint32_t p, unsigned n, std::uint32_t q) {
  if (n == 1) return {0, 1};
  for (std::uint32_t low = 0; low < q; ++low) {
    Poly f = from_value(low, p, n);
    f.push_back(1);
    if (is_irreducible(f, p)) return f;
  }
  throw std::logic_error("no irreducible polynomial found");
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Field::Field(std::uint32_t p, unsigned n, std::uint32_t limit) : p_(p), n_(n) {
  if (!is_prime(p)) throw InvalidArgument("field characteristic " + std::to_string(p) + " is not prime");
  if (n == 0) throw InvalidArgument("field extension degree must be at least 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < n; ++i) {
    q *= p;
    if (q > limit) {
      throw InvalidArgument("field order " + std::to_string(p) + "^" + std::to_string(n) +
                            " exceeds the limit " + std::to_string(limit));
    }
  }
  q_ = static_cast<std::uint32_t>(q);
  modulus_ = least_irreducible(p, n, q_);

  auto slow_mul = [&](std::uint32_t a, std::uint32_t b) -> std::uint32_t {
    if (n_ == 1) return static_cast<std::uint32_t>(std::uint64_t{a} * b % p_);
    return to_value(poly_mul_mod(from_value(a, p_, n_), from_value(b, p_, n_), modulus_, p_), p_);
  };

  // Find a generator of the multiplicative group and fill the tables from its powers.
  const std::uint32_t group = q_ - 1;
  exp_.assign(2 * std::size_t{group} + 1, 0);
  log_.assign(q_, 0);
  for (std::uint32_t g = 1; g < q_; ++g) {
    std::uint32_t x = 1;
    std::uint32_t i = 0;
    bool generator = true;
    for (; i < group; ++i) {
      if (i > 0 && x == 1) {
        generator = false;
        break;
      }
      exp_[i] = x;
      x = slow_mul(x, g);
    }
    if (generator && x == 1) break;
  }
  for (std::uint32_t i = 0; i < group; ++i) {
    exp_[group + i] = exp_[i];
    log_[exp_[i]] = i;
  }
  exp_[2 * std::size_t{group}] = exp_[0];
}

FieldElement Field::element(std::uint32_t value) const {
  if (value >= q_) {
    throw InvalidArgument("value " + std::to_string(value) + " is not an element of GF(" +
                          std::to_string(q_) + ")");
  }
  return FieldElement{value};
}

FieldElement Field::add(FieldElement a, FieldElement b) const {
  if (n_ == 1) return FieldElement{(a.value() + b.value()) % p_};
  if (p_ == 2) return FieldElement{a.value() ^ b.value()};
  std::uint32_t x = a.value(), y = b.value(), out = 0, place = 1;
  for (unsigned i = 0; i < n_; ++i) {
    out += ((x % p_ + y % p_) % p_) * place;
    x /= p_;
    y /= p_;
    place *= p_;
  }
  return FieldElement{out};
}

FieldElement Field::neg(FieldElement a) const {
  if (n_ == 1) return FieldElement{(p_ - a.value()) % p_};
  if (p_ == 2) return a;
  std::uint32_t x = a.value(), out = 0, place = 1;
  for (unsigned i = 0; i < n_; ++i) {
    out += ((p_ - x % p_) % p_) * place;
    x /= p_;
    place *= p_;
  }
  return FieldElement{out};
}

FieldElement Field::sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }

FieldElement Field::mul(FieldElement a, FieldElement b) const {
  if (a.is_zero() || b.is_zero()) return zero();
  return FieldElement{exp_[log_[a.value()] + log_[b.value()]]};
}

FieldElement Field::inv(FieldElement a) const {
  if (a.is_zero()) throw InvalidArgument("inverse of zero in GF(" + std::to_string(q_) + ")");
  const std::uint32_t group = q_ - 1;
  return FieldElement{exp_[(group - log_[a.value()]) % group]};
}

FieldPtr field_new(std::uint32_t p, unsigned n, std::uint32_t limit) {
  return std::make_shared<const Field>(p, n, limit);
}

FieldPtr field_of_order(std::uint32_t q, std::uint32_t limit) {
  if (q < 2) throw InvalidArgument("field order must be at least 2");
  std::uint32_t p = 2;
  while (q % p != 0) ++p;
  unsigned n = 0;
  std::uint32_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++n;
  }
  if (rest != 1) throw InvalidArgument(std::to_string(q) + " is not a prime power");
  return field_new(p, n, limit);
}

}  // namespace pgcache
