#include <doctest.h>

#include <vector>

#include "pgcache/errors.hpp"
#include "pgcache/gf.hpp"

using namespace pgcache;

namespace {

const std::vector<std::uint32_t> kOrders{2,  3,  4,  5,  7,  8,  9,  11, 13, 16, 17, 19, 23, 25,
                                         27, 29, 31, 32, 37, 41, 43, 47, 49, 53, 59, 61, 64};

// Schoolbook product of base-p digit polynomials, reduced by the monic modulus.
std::uint32_t poly_mul(std::uint32_t a, std::uint32_t b, std::uint32_t p, const std::vector<std::uint32_t>& mod) {
  const std::size_t n = mod.size() - 1;
  std::vector<std::uint32_t> x(n), y(n), prod(2 * n, 0);
  for (std::size_t i = 0; i < n; ++i, a /= p, b /= p) {
    x[i] = a % p;
    y[i] = b % p;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
  for (std::size_t d = 2 * n - 1; d >= n; --d) {
    const std::uint32_t c = prod[d];
    if (c == 0) continue;
    for (std::size_t i = 0; i <= n; ++i) prod[d - n + i] = (prod[d - n + i] + p * p - c * mod[i] % p) % p;
  }
  std::uint32_t out = 0;
  for (std::size_t i = n; i-- > 0;) out = out * p + prod[i];
  return out;
}

// Monic polynomial of degree n with lower coefficients given by the base-p digits of `low`.
std::vector<std::uint32_t> monic(std::uint32_t low, std::uint32_t p, unsigned n) {
  std::vector<std::uint32_t> c(n + 1, 0);
  for (unsigned i = 0; i < n; ++i, low /= p) c[i] = low % p;
  c[n] = 1;
  return c;
}

bool divides(const std::vector<std::uint32_t>& d, std::vector<std::uint32_t> f, std::uint32_t p) {
  const std::size_t dn = d.size() - 1;
  for (std::size_t top = f.size() - 1; top >= dn; --top) {
    const std::uint32_t c = f[top];
    if (c != 0) {
      for (std::size_t i = 0; i <= dn; ++i) f[top - dn + i] = (f[top - dn + i] + p * p - c * d[i] % p) % p;
    }
    if (top == 0) break;
  }
  for (std::size_t i = 0; i < dn; ++i)
    if (f[i] != 0) return false;
  return true;
}

bool irreducible(const std::vector<std::uint32_t>& f, std::uint32_t p) {
  const unsigned n = static_cast<unsigned>(f.size() - 1);
  for (unsigned deg = 1; deg <= n / 2; ++deg) {
    std::uint32_t count = 1;
    for (unsigned i = 0; i < deg; ++i) count *= p;
    for (std::uint32_t low = 0; low < count; ++low)
      if (divides(monic(low, p, deg), f, p)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("small fields and their moduli") {
  CHECK(field_new(2, 1)->modulus() == std::vector<std::uint32_t>{0, 1});
  CHECK(field_new(2, 2)->modulus() == std::vector<std::uint32_t>{1, 1, 1});
  const auto f3 = field_new(3, 1);
  CHECK(f3->order() == 3);
  CHECK(f3->mul(FieldElement{2}, FieldElement{2}) == FieldElement{1});
  const auto f4 = field_of_order(4);
  CHECK(f4->mul(FieldElement{2}, FieldElement{2}) == FieldElement{3});
  CHECK(field_of_order(5)->inv(FieldElement{2}) == FieldElement{3});
}

TEST_CASE("invalid fields are rejected") {
  for (std::uint32_t q : {0U, 1U, 6U, 10U, 12U, 36U}) CHECK_THROWS_AS(field_of_order(q), InvalidArgument);
  CHECK_THROWS_AS(field_new(4, 1), InvalidArgument);
  CHECK_THROWS_AS(field_new(2, 0), InvalidArgument);
  CHECK_THROWS_AS(field_new(2, 17), InvalidArgument);
  CHECK_THROWS_AS(field_of_order(7)->inv(FieldElement{0}), InvalidArgument);
}

TEST_CASE("modulus is the least monic irreducible") {
  for (std::uint32_t q : kOrders) {
    const auto f = field_of_order(q);
    if (f->degree() == 1) continue;
    CAPTURE(q);
    const std::uint32_t p = f->characteristic();
    const unsigned n = f->degree();
    std::uint32_t low = 0;
    while (!irreducible(monic(low, p, n), p)) ++low;
    CHECK(f->modulus() == monic(low, p, n));
  }
}

TEST_CASE("field axioms for every q up to 64") {
  for (std::uint32_t q : kOrders) {
    CAPTURE(q);
    const auto f = field_of_order(q);
    const std::uint32_t p = f->characteristic();
    REQUIRE(f->order() == q);
    std::vector<FieldElement> el;
    for (std::uint32_t i = 0; i < q; ++i) el.push_back(f->element(i));
    bool ok = true;
    for (auto a : el) {
      ok &= f->add(a, f->zero()) == a && f->mul(a, f->one()) == a && f->add(a, f->neg(a)) == f->zero();
      for (auto b : el) {
        ok &= f->add(a, b) == f->add(b, a) && f->mul(a, b) == f->mul(b, a);
        ok &= f->sub(f->add(a, b), b) == a;
        // Coordinate-wise mod-p addition and polynomial multiplication.
        std::uint32_t s = 0, scale = 1, x = a.value(), y = b.value();
        for (unsigned i = 0; i < f->degree(); ++i, x /= p, y /= p, scale *= p) s += ((x % p + y % p) % p) * scale;
        ok &= f->add(a, b).value() == s;
        ok &= f->mul(a, b).value() == poly_mul(a.value(), b.value(), p, f->modulus());
        for (auto c : el) {
          ok &= f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c));
          ok &= f->add(f->add(a, b), c) == f->add(a, f->add(b, c));
          ok &= f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c));
        }
      }
      if (!a.is_zero()) ok &= f->mul(a, f->inv(a)) == f->one();
    }
    CHECK(ok);
  }
}

TEST_CASE("multiplicative group is cyclic of order q-1") {
  for (std::uint32_t q : kOrders) {
    CAPTURE(q);
    const auto f = field_of_order(q);
    std::uint32_t max_order = 0;
    for (std::uint32_t i = 1; i < q; ++i) {
      FieldElement x = f->element(i);
      std::uint32_t order = 1;
      while (x != f->one()) {
        x = f->mul(x, f->element(i));
        ++order;
      }
      CHECK((q - 1) % order == 0);
      max_order = std::max(max_order, order);
    }
    CHECK(max_order == q - 1);
  }
}
