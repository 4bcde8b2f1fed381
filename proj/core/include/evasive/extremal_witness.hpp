#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "evasive/budget.hpp"
#include "evasive/point_set.hpp"
#include "evasive/subspaces.hpp"

namespace evasive {

using Edge = std::vector<std::size_t>;

/// r-partite r-uniform hypergraph; an edge picks one vertex index per part.
class RPartiteHypergraph {
 public:
  explicit RPartiteHypergraph(std::vector<std::size_t> part_sizes);

  std::size_t r() const noexcept { return part_sizes_.size(); }
  const std::vector<std::size_t>& part_sizes() const noexcept { return part_sizes_; }
  const std::set<Edge>& edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// Throws DomainError when a coordinate is out of range. Duplicates are ignored.
  void add_edge(Edge e);
  bool has_edge(const Edge& e) const { return edges_.count(e) != 0; }

  friend bool operator==(const RPartiteHypergraph&, const RPartiteHypergraph&) = default;

 private:
  std::vector<std::size_t> part_sizes_;
  std::set<Edge> edges_;
};

/// Text form: "hypergraph r=<r> sizes=<a,b,...>", then one edge per line.
std::string format_hypergraph(const RPartiteHypergraph& h);
RPartiteHypergraph parse_hypergraph(std::string_view text);

/// S_1 x ... x S_r, each S_i sorted.
struct BoxWitness {
  std::vector<std::vector<std::size_t>> parts;

  friend bool operator==(const BoxWitness&, const BoxWitness&) = default;
};

struct BoxOptions {
  /// Visit first-part subsets that meet the next level's edge threshold
  /// before the others. Off means plain lexicographic order.
  bool threshold_pruning = true;
  /// Cap on first-part subsets examined over the whole search.
  std::uint64_t max_nodes = kDefaultBudget;
};

/// Whether the part sizes and edge count meet the box lemma's hypothesis,
/// compared exactly after raising both sides to integer powers:
///   |V_i|^{P_i} >= s_i^{2 P_i} |V_r|          with P_i = s_i ... s_{r-1}
///   |E|^M >= 2^M s_r (|V_1| ... |V_{r-1}|)^M |V_r|^{M-1}   with M = s_1 ... s_{r-1}
bool box_hypothesis_holds(const std::vector<std::size_t>& part_sizes, std::uint64_t edge_count,
                          const std::vector<std::size_t>& sizes);
bool box_hypothesis_holds(const RPartiteHypergraph& h, const std::vector<std::size_t>& sizes);

/// Complete backtracking search for a box with |S_i| = sizes[i]. Ties go to
/// the lexicographically first choice of S_1, then S_2, and so on (within
/// the visiting order set by BoxOptions). Throws BudgetExceeded past
/// max_nodes.
std::optional<BoxWitness> find_box(const RPartiteHypergraph& h, const std::vector<std::size_t>& sizes,
                                   const BoxOptions& options = {});

/// Checks every tuple of the box is an edge and the part sizes match.
bool verify_box(const RPartiteHypergraph& h, const BoxWitness& box, const std::vector<std::size_t>& sizes);

struct LowerBoundParams {
  std::size_t r = 0;
  /// Block sizes t_1..t_{r-1}; the last block has d - T coordinates.
  std::vector<std::size_t> t;
  std::size_t T = 0;
  /// s_1 = ... = s_{r-1} = 2, s_r = k - r + 2.
  std::vector<std::size_t> s;
};

/// r = floor(log2(1/eps)) - 1 and the block layout for dimension d.
/// Throws DomainError unless 0 < eps <= 1/4, r <= k and T < d.
LowerBoundParams lowerbound_params(std::size_t d, std::size_t k, double eps);

struct LowerBoundWitness {
  LowerBoundParams params;
  std::vector<std::size_t> part_sizes;
  std::uint64_t edge_count = 0;
  bool hypothesis_holds = false;
  BoxWitness box;
  /// Indices into S, sorted.
  std::vector<std::size_t> subset;
  AffineFlat flat;
  std::size_t affine_dim = 0;
};

/// Splits F_p^d into coordinate blocks, finds a box in the resulting
/// hypergraph and returns the box's points with an affine flat of dimension
/// <= k through all of them. Throws Error carrying the hypergraph statistics
/// when no box exists.
LowerBoundWitness lowerbound_witness(const PointSet& s, std::size_t k, double eps,
                                     const BoxOptions& options = {});

/// k_1 + ... + k_{C+1} = k, the larger parts first.
std::vector<std::size_t> hamming_partition(std::size_t k, std::size_t c);

struct HammingWitness {
  std::vector<std::size_t> part_dims;
  /// Disjoint index subsets of S with |W_i| = k_i + 1 and linear span dim <= k_i.
  std::vector<std::vector<std::size_t>> parts;
  std::size_t union_dim = 0;
  std::uint64_t nodes = 0;
};

/// Greedy selection of W_1, ..., W_{C+1}; each is the lexicographically first
/// fitting subset of the points not yet used. Empty when some step finds
/// nothing. Requires 2(C + 1) <= k.
std::optional<HammingWitness> hamming_witness(const PointSet& s, std::size_t k, std::size_t c,
                                              std::uint64_t max_nodes = kDefaultBudget);

struct CodeSummary {
  std::uint64_t modulus = 2;
  std::size_t length = 0;
  std::size_t rank = 0;
  std::size_t dimension = 0;
  /// Empty when the code is {0}.
  std::optional<std::size_t> min_distance;
  std::optional<FieldVector> min_weight_codeword;
};

/// The code {x : M x = 0} where the columns of M are the points of S.
/// Enumerates all p^dimension codewords; throws BudgetExceeded past max_codewords.
CodeSummary parity_check_code(const PointSet& s, std::uint64_t max_codewords = kDefaultBudget);

/// |S| <= 2k p^{d/r - 1} with r = floor((k+1)/2), decided exactly as
/// |S|^r <= (2k)^r p^{d-r}.
bool hamming_bound_check(std::uint64_t set_size, std::uint64_t p, std::size_t d, std::size_t k);

}  // namespace evasive
