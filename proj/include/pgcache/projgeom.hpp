#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pgcache/exact.hpp"
#include "pgcache/gf.hpp"

namespace pgcache {

using Vector = std::vector<FieldElement>;

// A subspace of F_q^k held by its reduced-row-echelon basis. Two values compare equal
// exactly when they span the same subspace of the same ambient space.
class SubspaceBasis {
 public:
  // The zero subspace of F_q^k.
  SubspaceBasis(FieldPtr field, std::size_t ambient_dim);

  // RREF basis of the span of `rows`; every row must have length `ambient_dim`.
  static SubspaceBasis canonicalize(FieldPtr field, std::size_t ambient_dim,
                                    std::span<const Vector> rows);
  // span(e_first, ..., e_{first+count-1}) using 0-based coordinates.
  static SubspaceBasis standard(FieldPtr field, std::size_t ambient_dim, std::size_t first,
                                std::size_t count);

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<Vector>& rows() const { return rows_; }
  // Column index of the leading one of each row.
  std::vector<std::size_t> pivots() const;

  bool contains_vector(std::span<const FieldElement> v) const;
  // Span of this subspace and v.
  SubspaceBasis with_vector(std::span<const FieldElement> v) const;

  friend bool operator==(const SubspaceBasis& a, const SubspaceBasis& b);
  // Orders by dimension, then by the flattened canonical matrix.
  friend std::strong_ordering operator<=>(const SubspaceBasis& a, const SubspaceBasis& b);

 private:
  SubspaceBasis(FieldPtr field, std::size_t ambient_dim, std::vector<Vector> rows);
  // Reduces v against the basis in place; returns the pivot column of what remains, or
  // ambient_dim_ when v reduces to zero.
  std::size_t reduce(Vector& v) const;

  FieldPtr field_;
  std::size_t ambient_dim_;
  std::vector<Vector> rows_;
};

SubspaceBasis subspace_sum(const SubspaceBasis& a, const SubspaceBasis& b);
// True iff b is a subspace of a.
bool contains(const SubspaceBasis& a, const SubspaceBasis& b);
std::size_t intersection_dim(const SubspaceBasis& a, const SubspaceBasis& b);

// Number of b-dim subspaces of F_q^a; zero when b > a.
Integer q_binomial(unsigned a, unsigned b, std::uint64_t q);

// All d-dim subspaces containing w, sorted, each exactly once. Enumerates RREF matrices of the
// quotient by w rather than filtering all d-dim subspaces.
std::vector<SubspaceBasis> enumerate_superspaces(const SubspaceBasis& w, std::size_t d);

// Number of r-dim subspaces of F_q^k meeting a fixed s-dim subspace in a fixed l-dim
// subspace of it: q^{(r-l)(s-l)} [k-s choose r-l]_q. Accepts l = 0.
Integer count_intersecting(unsigned k, unsigned r, unsigned s, unsigned l, std::uint64_t q);

struct GeneratingSetCount {
  // Sets {A_1..A_{m+1}} of 1-dim spaces with W + A_1 + ... + A_{m+1} = P as a direct sum.
  Integer line_sets;
  // Sets {V_1..V_{m+1}} of (dim W + 1)-dim superspaces of W summing to P: line_sets / q^{(t-1)(m+1)}.
  Integer subspace_sets;
};

// Closed form for a fixed W of dimension t-1 inside P of dimension m+t.
GeneratingSetCount generating_set_count(std::uint64_t q, unsigned t, unsigned m);
// Validates W inside P with dim P = dim W + m + 1, then applies the closed form.
GeneratingSetCount count_generating_sets(const SubspaceBasis& p, const SubspaceBasis& w, unsigned m);

}  // namespace pgcache
