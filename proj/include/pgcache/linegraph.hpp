#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pgcache/exact.hpp"
#include "pgcache/projgeom.hpp"

namespace pgcache {

// (k, m, t, q) with m + t <= k and t >= 1. m = 0 is accepted but degenerate.
struct ConstructionParams {
  unsigned k = 0;
  unsigned m = 0;
  unsigned t = 0;
  std::uint32_t q = 0;

  unsigned alpha() const { return k - m - t; }
  bool degenerate() const { return m == 0; }
  // Throws InvalidArgument.
  void validate() const;
  std::string label() const;
};

struct EnumerationLimits {
  // Largest line graph (number of vertices K*D) that will be enumerated.
  std::uint64_t max_vertices = 10'000'000;
};

// Predicted sizes from the closed forms, available before anything is enumerated.
struct PredictedSizes {
  Integer users;         // K = [k-t+1 choose 1]_q
  Integer spans;         // |P| = [k-t+1 choose m+1]_q
  Integer subfiles;      // F
  Integer subfile_clique;  // c
  Integer user_clique;     // D
  Integer vertices;        // K * D
  Integer transmissions;   // K * D / (m + 2)
};
PredictedSizes predict_sizes(const ConstructionParams& params);

struct Subfile {
  std::vector<std::uint32_t> users;  // sorted indices into Universe::users
  std::uint32_t span = 0;            // index into Universe::spans of their sum
};

struct Universe {
  ConstructionParams params;
  FieldPtr field;
  SubspaceBasis w;                     // span(e_1, ..., e_{t-1})
  std::vector<SubspaceBasis> users;    // t-dim superspaces of w, sorted
  std::vector<SubspaceBasis> spans;    // (m+t)-dim superspaces of w, sorted
  std::vector<std::vector<std::uint32_t>> users_in_span;  // per span, users it contains
  std::vector<Subfile> subfiles;       // sorted by user tuple
};

// Throws InvalidArgument for bad params and CapExceeded when the predicted line graph is larger
// than the limit.
Universe build_universe(const ConstructionParams& params, const EnumerationLimits& limits = {});

// Sorted tuples of `size` users drawn from `candidates` in which every member adds one new
// dimension to the running sum, starting from `base`. Users must be superspaces of `base` of
// dimension base.dim() + 1; the tuples are then exactly the sets whose sum has dimension
// base.dim() + size.
std::vector<std::vector<std::uint32_t>> independent_subsets(const SubspaceBasis& base,
                                                            const std::vector<SubspaceBasis>& users,
                                                            const std::vector<std::uint32_t>& candidates,
                                                            std::size_t size);

struct Vertex {
  std::uint32_t user = 0;
  std::uint32_t subfile = 0;
  friend constexpr auto operator<=>(const Vertex&, const Vertex&) = default;
};

struct TransmissionClique {
  std::vector<std::uint32_t> users;     // Y, sorted
  std::vector<std::uint32_t> vertices;  // (V_i, Y \ V_i) for V_i in Y, in the order of `users`
};

struct CachingLineGraph {
  Universe universe;
  std::vector<Vertex> vertices;  // sorted by (user, subfile)
  std::vector<std::vector<std::uint32_t>> user_cliques;     // vertex ids per user
  std::vector<std::vector<std::uint32_t>> subfile_cliques;  // vertex ids per subfile
  std::vector<TransmissionClique> transmission_cliques;

  std::size_t users() const { return user_cliques.size(); }
  std::size_t subfiles() const { return subfile_cliques.size(); }
  // Id of (user, subfile), located by binary search in the sorted vertex list.
  std::optional<std::uint32_t> find_vertex(Vertex v) const;
};

// Vertices (V, X) with V not inside the sum of X, plus user and subfile cliques and the
// transmission cliques. Rejects graphs with no vertices (m + t = k).
CachingLineGraph build_line_graph(Universe universe);
CachingLineGraph build_line_graph(const ConstructionParams& params, const EnumerationLimits& limits = {});

// Y ranges over sets of m+2 users whose sum has dimension m+t+1; each yields the clique
// {(V_i, Y \ V_i)}. Throws std::logic_error if some (V_i, Y \ V_i) is not a vertex.
std::vector<TransmissionClique> enumerate_transmission_cliques(const CachingLineGraph& graph);

// Edge of the complement of the square of the line graph: distinct users, distinct subfiles,
// and neither cross pair is a vertex. Throws InvalidArgument for unknown vertices.
bool is_compl_square_edge(const CachingLineGraph& graph, Vertex a, Vertex b);

struct ValidationReport {
  bool user_cliques_ok = true;     // (i) partition into K cliques of equal size D
  bool cross_neighbors_ok = true;  // (ii) at most one neighbour in any other user clique
  bool subfile_cliques_ok = true;  // (iii) {v} + N(v) \ U_k is a clique and is the listed subfile clique
  bool subfile_count_ok = true;    // (iv) F equals the number of subfile cliques
  std::size_t user_count = 0;
  std::size_t user_clique_size = 0;
  std::size_t subfile_count = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Checks the line-graph conditions from the clique lists, with adjacency read off the vertex
// labels: (k, f) ~ (k', f') iff k = k' or f = f' but not both.
ValidationReport verify_line_graph(const CachingLineGraph& graph);

struct CoverReport {
  std::size_t clique_count = 0;
  std::size_t clique_size = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Transmission cliques must be disjoint, cover every vertex, have m+2 members each, and be
// cliques of the complement of the square.
CoverReport verify_transmission_cover(const CachingLineGraph& graph);

}  // namespace pgcache
