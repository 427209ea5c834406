#include "pgcache/projgeom.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "pgcache/errors.hpp"

namespace pgcache {

namespace {

void require_same_space(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (!(a.field() == b.field()) || a.ambient_dim() != b.ambient_dim()) {
    throw InvalidArgument("subspaces live in different ambient spaces");
  }
}

// Row operation: target -= factor * source.
void axpy(const Field& f, Vector& target, FieldElement factor, const Vector& source) {
  if (factor.is_zero()) return;
  for (std::size_t j = 0; j < target.size(); ++j) {
    if (!source[j].is_zero()) target[j] = f.sub(target[j], f.mul(factor, source[j]));
  }
}

void scale(const Field& f, Vector& v, FieldElement factor) {
  for (auto& x : v) x = f.mul(x, factor);
}

std::size_t leading(const Vector& v) {
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (!v[j].is_zero()) return j;
  }
  return v.size();
}

}  // namespace

SubspaceBasis::SubspaceBasis(FieldPtr field, std::size_t ambient_dim)
    : field_(std::move(field)), ambient_dim_(ambient_dim) {
  if (!field_) throw InvalidArgument("subspace without a field");
}

SubspaceBasis::SubspaceBasis(FieldPtr field, std::size_t ambient_dim, std::vector<Vector> rows)
    : field_(std::move(field)), ambient_dim_(ambient_dim), rows_(std::move(rows)) {}

SubspaceBasis SubspaceBasis::canonicalize(FieldPtr field, std::size_t ambient_dim,
                                          std::span<const Vector> rows) {
  if (!field) throw InvalidArgument("subspace without a field");
  const Field& f = *field;
  std::vector<Vector> m(rows.begin(), rows.end());
  for (const auto& row : m) {
    if (row.size() != ambient_dim) {
      throw InvalidArgument("row of length " + std::to_string(row.size()) +
                            " in ambient dimension " + std::to_string(ambient_dim));
    }
    for (auto x : row) {
      if (x.value() >= f.order()) throw InvalidArgument("row entry outside the field");
    }
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < ambient_dim && rank < m.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][col].is_zero()) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[rank], m[pivot]);
    scale(f, m[rank], f.inv(m[rank][col]));
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r != rank) axpy(f, m[r], m[r][col], m[rank]);
    }
    ++rank;
  }
  m.resize(rank);
  return SubspaceBasis(std::move(field), ambient_dim, std::move(m));
}

SubspaceBasis SubspaceBasis::standard(FieldPtr field, std::size_t ambient_dim, std::size_t first,
                                      std::size_t count) {
  if (first + count > ambient_dim) throw InvalidArgument("standard basis index out of range");
  std::vector<Vector> rows;
  for (std::size_t i = 0; i < count; ++i) {
    Vector v(ambient_dim);
    v[first + i] = field->one();
    rows.push_back(std::move(v));
  }
  return SubspaceBasis(std::move(field), ambient_dim, std::move(rows));
}

std::vector<std::size_t> SubspaceBasis::pivots() const {
  std::vector<std::size_t> out;
  out.reserve(rows_.size());
  for (const auto& row : rows_) out.push_back(leading(row));
  return out;
}

std::size_t SubspaceBasis::reduce(Vector& v) const {
  for (const auto& row : rows_) {
    const std::size_t c = leading(row);
    axpy(*field_, v, v[c], row);
  }
  return leading(v);
}

bool SubspaceBasis::contains_vector(std::span<const FieldElement> v) const {
  if (v.size() != ambient_dim_) throw InvalidArgument("vector length does not match ambient dimension");
  Vector w(v.begin(), v.end());
  return reduce(w) == ambient_dim_;
}

SubspaceBasis SubspaceBasis::with_vector(std::span<const FieldElement> v) const {
  if (v.size() != ambient_dim_) throw InvalidArgument("vector length does not match ambient dimension");
  Vector w(v.begin(), v.end());
  const std::size_t c = reduce(w);
  if (c == ambient_dim_) return *this;
  const Field& f = *field_;
  scale(f, w, f.inv(w[c]));
  std::vector<Vector> rows = rows_;
  for (auto& row : rows) axpy(f, row, row[c], w);
  auto pos = std::find_if(rows.begin(), rows.end(), [&](const Vector& r) { return leading(r) > c; });
  rows.insert(pos, std::move(w));
  return SubspaceBasis(field_, ambient_dim_, std::move(rows));
}

bool operator==(const SubspaceBasis& a, const SubspaceBasis& b) {
  return a.field() == b.field() && a.ambient_dim_ == b.ambient_dim_ && a.rows_ == b.rows_;
}

std::strong_ordering operator<=>(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (auto c = a.ambient_dim_ <=> b.ambient_dim_; c != 0) return c;
  if (auto c = a.rows_.size() <=> b.rows_.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.rows_.size(); ++i) {
    if (auto c = a.rows_[i] <=> b.rows_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

SubspaceBasis subspace_sum(const SubspaceBasis& a, const SubspaceBasis& b) {
  require_same_space(a, b);
  SubspaceBasis out = a;
  for (const auto& row : b.rows()) out = out.with_vector(row);
  return out;
}

bool contains(const SubspaceBasis& a, const SubspaceBasis& b) {
  require_same_space(a, b);
  if (b.dim() > a.dim()) return false;
  return std::all_of(b.rows().begin(), b.rows().end(),
                     [&](const Vector& row) { return a.contains_vector(row); });
}

std::size_t intersection_dim(const SubspaceBasis& a, const SubspaceBasis& b) {
  return a.dim() + b.dim() - subspace_sum(a, b).dim();
}

Integer q_binomial(unsigned a, unsigned b, std::uint64_t q) {
  if (b > a) return 0;
  Integer num = 1, den = 1;
  const Integer qq = q;
  for (unsigned i = 0; i < b; ++i) {
    num *= ipow(qq, a - i) - 1;
    den *= ipow(qq, i + 1) - 1;
  }
  return num / den;
}

std::vector<SubspaceBasis> enumerate_superspaces(const SubspaceBasis& w, std::size_t d) {
  const std::size_t k = w.ambient_dim();
  if (d < w.dim() || d > k) {
    throw InvalidArgument("superspace dimension " + std::to_string(d) + " outside [" +
                          std::to_string(w.dim()) + ", " + std::to_string(k) + "]");
  }
  const Field& f = w.field();
  // Coordinates of a complement of w: the columns that carry no pivot of w.
  std::vector<std::size_t> coords;
  {
    auto piv = w.pivots();
    for (std::size_t j = 0; j < k; ++j) {
      if (std::find(piv.begin(), piv.end(), j) == piv.end()) coords.push_back(j);
    }
  }
  const std::size_t n = coords.size();
  const std::size_t r = d - w.dim();

  std::vector<SubspaceBasis> out;
  std::vector<std::size_t> pivot_cols(r);
  for (std::size_t i = 0; i < r; ++i) pivot_cols[i] = i;

  while (true) {
    // Free entries of an r x n RREF matrix with these pivots: right of the row's pivot and
    // not in any pivot column.
    std::vector<std::pair<std::size_t, std::size_t>> free_cells;
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = pivot_cols[i] + 1; j < n; ++j) {
        if (std::find(pivot_cols.begin(), pivot_cols.end(), j) == pivot_cols.end()) {
          free_cells.emplace_back(i, j);
        }
      }
    }
    std::vector<std::uint32_t> digits(free_cells.size(), 0);
    while (true) {
      std::vector<Vector> rows = w.rows();
      for (std::size_t i = 0; i < r; ++i) {
        Vector v(k);
        v[coords[pivot_cols[i]]] = f.one();
        rows.push_back(std::move(v));
      }
      for (std::size_t c = 0; c < free_cells.size(); ++c) {
        auto [i, j] = free_cells[c];
        rows[w.dim() + i][coords[j]] = FieldElement{digits[c]};
      }
      out.push_back(SubspaceBasis::canonicalize(w.field_ptr(), k, rows));

      std::size_t c = 0;
      while (c < digits.size() && ++digits[c] == f.order()) digits[c++] = 0;
      if (c == digits.size()) break;
    }

    // Next pivot combination in lexicographic order.
    std::size_t i = r;
    while (i > 0 && pivot_cols[i - 1] == n - r + (i - 1)) --i;
    if (i == 0) break;
    ++pivot_cols[i - 1];
    for (std::size_t j = i; j < r; ++j) pivot_cols[j] = pivot_cols[j - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Integer count_intersecting(unsigned k, unsigned r, unsigned s, unsigned l, std::uint64_t q) {
  if (r > k || s > k || l > std::min(r, s)) {
    throw InvalidArgument("invalid dimension triple (r=" + std::to_string(r) + ", s=" +
                          std::to_string(s) + ", l=" + std::to_string(l) + ") in dimension " +
                          std::to_string(k));
  }
  return ipow(Integer(q), (r - l) * (s - l)) * q_binomial(k - s, r - l, q);
}

GeneratingSetCount generating_set_count(std::uint64_t q, unsigned t, unsigned m) {
  if (t == 0) throw InvalidArgument("t must be at least 1");
  const Integer qq = q;
  Integer ordered = 1;
  for (unsigned i = 0; i <= m; ++i) ordered *= ipow(qq, m + t) - ipow(qq, t - 1 + i);
  GeneratingSetCount out;
  out.line_sets = ordered / (ipow(qq - 1, m + 1) * factorial(m + 1));
  out.subspace_sets = out.line_sets / ipow(qq, (t - 1) * (m + 1));
  return out;
}

GeneratingSetCount count_generating_sets(const SubspaceBasis& p, const SubspaceBasis& w, unsigned m) {
  require_same_space(p, w);
  if (!contains(p, w) || p.dim() != w.dim() + m + 1) {
    throw InvalidArgument("generating sets need W inside P with dim P = dim W + m + 1");
  }
  return generating_set_count(p.field().order(), static_cast<unsigned>(w.dim()) + 1, m);
}

}  // namespace pgcache
