#pragma once

// Maximum splitter sets as maximum independent sets. For a prime modulus
// p > k1+k2 the conflict graph is the Cayley graph of Z_p^* with connection
// set S = { x/y : x != y in M }; for any other modulus it is built from the
// definition (vertices whose expansion is clean, edges between intersecting
// expansions).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string_view>
#include <vector>

#include "splitter/bitset.hpp"
#include "splitter/core.hpp"

namespace splitter::cayley {

class CayleyGraph {
 public:
  const SplitterInstance& instance() const { return instance_; }
  /// True when built as Cay(Z_p^*, S).
  bool prime_path() const { return prime_path_; }
  /// Residues in ascending order; vertex i is vertices()[i].
  const std::vector<u64>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  /// Sorted quotient set S; empty off the prime path.
  const std::vector<u64>& quotient_set() const { return quotient_; }

  std::optional<std::size_t> index_of(u64 residue) const;
  bool adjacent(std::size_t i, std::size_t j) const { return rows_[i].test(j); }
  const Bitset& row(std::size_t i) const { return rows_[i]; }
  std::size_t degree(std::size_t i) const { return rows_[i].count(); }
  std::size_t edge_count() const;

 private:
  friend CayleyGraph build_graph(const SplitterInstance& inst);
  explicit CayleyGraph(const SplitterInstance& inst) : instance_(inst) {}

  SplitterInstance instance_;
  bool prime_path_ = false;
  std::vector<u64> vertices_;
  std::vector<u64> quotient_;
  std::vector<Bitset> rows_;
  std::vector<std::int64_t> slot_;  // residue -> vertex index or -1
};

/// Vertex count above which build_graph refuses (quadratic memory).
inline constexpr u64 kMaxGraphVertices = 20000;

/// Throws UnsupportedError when q - 1 exceeds kMaxGraphVertices.
CayleyGraph build_graph(const SplitterInstance& inst);

/// No edge inside B. Throws PreconditionError if some element of B is not a
/// vertex.
bool is_independent(const CayleyGraph& g, const std::vector<u64>& B);

struct ExactOptions {
  std::uint64_t node_budget = 20'000'000;
  std::size_t max_vertices = 4000;
};

struct IndependentSet {
  std::vector<u64> witness;  // ascending residues
  /// False when the node budget ran out; the size is then a lower bound.
  bool exact = true;
  std::uint64_t nodes = 0;

  std::size_t size() const { return witness.size(); }
};

/// Branch and bound with degree-0/1 reductions, component splitting and a
/// greedy clique-cover bound. Branches on a maximum-degree vertex (smallest
/// index on ties), include-branch first, so witnesses are reproducible.
/// Throws UnsupportedError above options.max_vertices.
IndependentSet max_independent_exact(const CayleyGraph& g, const ExactOptions& options = {});

/// Repeatedly takes a minimum-degree vertex (smallest index on ties).
std::vector<u64> greedy_independent(const CayleyGraph& g);

struct LowerBound {
  u64 value;
  /// ceil((p-1)/|S|) applied; otherwise ceil((p-1)/(|S|+1)).
  bool strong_form;
  u64 quotient_size;
  /// |<M>| in Z_p^*.
  u64 subgroup_order;
};

/// Requires a prime modulus p > k1+k2+1 and k2 >= 3.
LowerBound independence_lower_bound(const CayleyGraph& g);

enum class SearchMode { exact, bound };

std::string_view to_string(SearchMode mode);

struct MaxSplitterReport {
  SearchMode mode;
  /// Exact mode: the witness size (a lower bound if !exact). Bound mode: the
  /// degree bound.
  u64 size;
  bool exact;
  SplitterSet witness;  // exact: search witness; bound: greedy witness
  Classification classification;
  std::optional<LowerBound> bound;
  u64 vertex_count;
  std::optional<u64> quotient_size;
  std::uint64_t nodes = 0;
};

/// Bound mode needs the prime path and the bound's preconditions, and
/// throws UnsupportedError otherwise.
MaxSplitterReport max_splitter(const SplitterInstance& inst, SearchMode mode, const ExactOptions& options = {});

/// One line per vertex: `vertex: neighbor neighbor ...`, ascending.
void write_adjacency(const CayleyGraph& g, std::ostream& out);

}  // namespace splitter::cayley
