#include "splitter/cayley.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "splitter/error.hpp"

namespace splitter::cayley {

std::optional<std::size_t> CayleyGraph::index_of(u64 residue) const {
  if (residue >= slot_.size() || slot_[residue] < 0) return std::nullopt;
  return static_cast<std::size_t>(slot_[residue]);
}

std::size_t CayleyGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& r : rows_) twice += r.count();
  return twice / 2;
}

CayleyGraph build_graph(const SplitterInstance& inst) {
  const u64 q = inst.q();
  if (q - 1 > kMaxGraphVertices) {
    throw UnsupportedError("build_graph: q = " + std::to_string(q) + " exceeds the graph size limit");
  }
  CayleyGraph g(inst);
  g.slot_.assign(q, -1);
  const auto mults = inst.multipliers();

  if (nt::is_prime(q) && q > inst.weight()) {
    g.prime_path_ = true;
    for (u64 b = 1; b < q; ++b) {
      g.slot_[b] = static_cast<std::int64_t>(g.vertices_.size());
      g.vertices_.push_back(b);
    }
    for (i64 x : mults) {
      for (i64 y : mults) {
        if (x == y) continue;
        g.quotient_.push_back(nt::mul_mod(inst.residue(x), nt::inverse_mod(inst.residue(y), q), q));
      }
    }
    std::sort(g.quotient_.begin(), g.quotient_.end());
    g.quotient_.erase(std::unique(g.quotient_.begin(), g.quotient_.end()), g.quotient_.end());
    g.rows_.assign(q - 1, Bitset(q - 1));
    for (u64 u = 1; u < q; ++u) {
      for (u64 s : g.quotient_) g.rows_[u - 1].set(nt::mul_mod(u, s, q) - 1);
    }
    return g;
  }

  std::vector<std::vector<u64>> expansions;
  for (u64 b = 1; b < q; ++b) {
    auto e = expand(inst, b);
    std::sort(e.begin(), e.end());
    if (e.front() == 0 || std::adjacent_find(e.begin(), e.end()) != e.end()) continue;
    g.slot_[b] = static_cast<std::int64_t>(g.vertices_.size());
    g.vertices_.push_back(b);
    expansions.push_back(std::move(e));
  }
  const std::size_t n = g.vertices_.size();
  g.rows_.assign(n, Bitset(n));
  std::vector<std::vector<std::size_t>> holders(q);
  for (std::size_t i = 0; i < n; ++i) {
    for (u64 r : expansions[i]) holders[r].push_back(i);
  }
  for (const auto& h : holders) {
    for (std::size_t a = 0; a < h.size(); ++a) {
      for (std::size_t b = a + 1; b < h.size(); ++b) {
        g.rows_[h[a]].set(h[b]);
        g.rows_[h[b]].set(h[a]);
      }
    }
  }
  return g;
}

bool is_independent(const CayleyGraph& g, const std::vector<u64>& B) {
  Bitset members(g.size());
  for (u64 b : B) {
    const auto i = g.index_of(b);
    if (!i) throw PreconditionError("is_independent: " + std::to_string(b) + " is not a vertex");
    members.set(*i);
  }
  for (auto i = members.first(); i != Bitset::npos; i = members.next(i + 1)) {
    if (g.row(i).intersects(members)) return false;
  }
  return true;
}

namespace {

using Indices = std::vector<std::size_t>;

class Solver {
 public:
  Solver(const CayleyGraph& g, std::uint64_t budget) : g_(g), budget_(budget) {}

  /// Maximum independent set of P; stops early once `cap` is reached.
  Indices solve(Bitset P, std::size_t cap = Bitset::npos) {
    Indices best = greedy(P);
    if (best.size() < cap) branch(std::move(P), {}, best, cap);
    return best;
  }

  Indices greedy(Bitset P) const {
    Indices out;
    while (P.any()) {
      std::size_t pick = Bitset::npos;
      std::size_t pick_deg = 0;
      for (auto v = P.first(); v != Bitset::npos; v = P.next(v + 1)) {
        const std::size_t d = g_.row(v).count_and(P);
        if (pick == Bitset::npos || d < pick_deg) {
          pick = v;
          pick_deg = d;
        }
      }
      out.push_back(pick);
      P.subtract(g_.row(pick));
      P.reset(pick);
    }
    return out;
  }

  bool exhausted() const { return exhausted_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  // Takes isolated vertices and one endpoint of each pendant edge; both are
  // in some maximum independent set of what remains.
  Indices reduce(Bitset& P) const {
    Indices forced;
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto v = P.first(); v != Bitset::npos; v = P.next(v + 1)) {
        const std::size_t d = g_.row(v).count_and(P);
        if (d > 1) continue;
        forced.push_back(v);
        if (d == 1) P.subtract(g_.row(v));
        P.reset(v);
        changed = true;
      }
    }
    return forced;
  }

  std::size_t clique_cover(Bitset R) const {
    std::size_t cliques = 0;
    while (R.any()) {
      const std::size_t v = R.first();
      R.reset(v);
      Bitset cand = R & g_.row(v);
      while (cand.any()) {
        const std::size_t u = cand.first();
        R.reset(u);
        cand.reset(u);
        cand &= g_.row(u);
      }
      ++cliques;
    }
    return cliques;
  }

  std::vector<Bitset> components(const Bitset& P) const {
    std::vector<Bitset> out;
    Bitset left = P;
    while (left.any()) {
      Bitset comp(P.width());
      comp.set(left.first());
      Bitset frontier = comp;
      while (frontier.any()) {
        Bitset grown(P.width());
        for (auto u = frontier.first(); u != Bitset::npos; u = frontier.next(u + 1)) grown |= g_.row(u);
        grown &= left;
        grown.subtract(comp);
        comp |= grown;
        frontier = std::move(grown);
      }
      left.subtract(comp);
      out.push_back(std::move(comp));
    }
    return out;
  }

  void branch(Bitset P, Indices cur, Indices& best, std::size_t cap) {
    if (best.size() >= cap) return;
    ++nodes_;
    if (nodes_ > budget_) {
      exhausted_ = true;
      const auto rest = greedy(std::move(P));
      cur.insert(cur.end(), rest.begin(), rest.end());
      if (cur.size() > best.size()) best = std::move(cur);
      return;
    }
    const auto forced = reduce(P);
    cur.insert(cur.end(), forced.begin(), forced.end());
    if (!P.any()) {
      if (cur.size() > best.size()) best = std::move(cur);
      return;
    }
    if (cur.size() + clique_cover(P) <= best.size()) return;

    auto comps = components(P);
    if (comps.size() > 1) {
      for (auto& c : comps) {
        const auto part = solve(std::move(c));
        cur.insert(cur.end(), part.begin(), part.end());
      }
      if (cur.size() > best.size()) best = std::move(cur);
      return;
    }

    std::size_t pivot = Bitset::npos;
    std::size_t pivot_deg = 0;
    for (auto v = P.first(); v != Bitset::npos; v = P.next(v + 1)) {
      const std::size_t d = g_.row(v).count_and(P);
      if (pivot == Bitset::npos || d > pivot_deg) {
        pivot = v;
        pivot_deg = d;
      }
    }
    Bitset with = P;
    with.subtract(g_.row(pivot));
    with.reset(pivot);
    cur.push_back(pivot);
    branch(std::move(with), cur, best, cap);
    cur.pop_back();
    P.reset(pivot);
    branch(std::move(P), std::move(cur), best, cap);
  }

  const CayleyGraph& g_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

std::vector<u64> to_residues(const CayleyGraph& g, const Indices& idx) {
  std::vector<u64> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(g.vertices()[i]);
  std::sort(out.begin(), out.end());
  return out;
}

Bitset all_vertices(const CayleyGraph& g) {
  Bitset P(g.size());
  P.set_all();
  return P;
}

}  // namespace

IndependentSet max_independent_exact(const CayleyGraph& g, const ExactOptions& options) {
  if (g.size() > options.max_vertices) {
    throw UnsupportedError("max_independent_exact: " + std::to_string(g.size()) + " vertices exceeds the limit " +
                           std::to_string(options.max_vertices));
  }
  const auto& inst = g.instance();
  Solver solver(g, options.node_budget);
  if (!g.prime_path()) {
    const auto best = solver.solve(all_vertices(g), inst.size_bound());
    return {to_residues(g, best), !solver.exhausted(), solver.nodes()};
  }

  // Cay(Z_p^*, S) splits into the cosets of <M>, and multiplying by a coset
  // representative is an isomorphism between components. Within <M> every
  // vertex looks alike, so some maximum set contains 1.
  const nt::PrimeContext ctx(inst.q());
  std::vector<u64> gens;
  for (i64 m : inst.multipliers()) gens.push_back(inst.residue(m));
  const auto sub = nt::subgroup_generated(ctx, gens);
  Bitset P(g.size());
  for (u64 x : sub.elements()) P.set(*g.index_of(x));
  const std::size_t root = *g.index_of(1);
  P.subtract(g.row(root));
  P.reset(root);
  const u64 cap = sub.order() / inst.weight();
  auto part = solver.solve(std::move(P), cap == 0 ? 0 : cap - 1);
  part.push_back(root);

  std::vector<u64> witness;
  for (u64 t : nt::coset_representatives(sub, nt::whole_group(ctx))) {
    for (auto i : part) witness.push_back(ctx.mul(t, g.vertices()[i]));
  }
  std::sort(witness.begin(), witness.end());
  return {std::move(witness), !solver.exhausted(), solver.nodes()};
}

std::vector<u64> greedy_independent(const CayleyGraph& g) {
  return to_residues(g, Solver(g, 0).greedy(all_vertices(g)));
}

LowerBound independence_lower_bound(const CayleyGraph& g) {
  const auto& inst = g.instance();
  const u64 p = inst.q();
  if (!g.prime_path() || p <= inst.weight() + 1 || inst.k2() < 3) {
    throw PreconditionError("independence_lower_bound: needs a prime p > k1+k2+1 and k2 >= 3");
  }
  const nt::PrimeContext ctx(p);
  std::vector<u64> gens;
  for (i64 m : inst.multipliers()) gens.push_back(inst.residue(m));
  const u64 order = nt::subgroup_generated(ctx, gens).order();
  const u64 s = g.quotient_set().size();
  const bool strong = order >= s + 2 && p > inst.weight() + 2;
  const u64 denom = strong ? s : s + 1;
  return {(p - 1 + denom - 1) / denom, strong, s, order};
}

std::string_view to_string(SearchMode mode) { return mode == SearchMode::exact ? "exact" : "bound"; }

MaxSplitterReport max_splitter(const SplitterInstance& inst, SearchMode mode, const ExactOptions& options) {
  const auto g = build_graph(inst);
  std::optional<LowerBound> bound;
  try {
    bound = independence_lower_bound(g);
  } catch (const PreconditionError& e) {
    if (mode == SearchMode::bound) throw UnsupportedError(e.what());
  }

  std::vector<u64> witness;
  bool exact = false;
  std::uint64_t nodes = 0;
  if (mode == SearchMode::exact) {
    auto r = max_independent_exact(g, options);
    witness = std::move(r.witness);
    exact = r.exact;
    nodes = r.nodes;
  } else {
    witness = greedy_independent(g);
  }
  SplitterSet set(inst, witness);
  if (!verify(set).valid) throw std::logic_error("max_splitter: witness failed verification");
  const u64 size = mode == SearchMode::exact ? set.size() : bound->value;
  std::optional<u64> qsize;
  if (g.prime_path()) qsize = g.quotient_set().size();
  const auto cls = classify(set);
  return {mode, size, exact, std::move(set), cls, bound, g.size(), qsize, nodes};
}

void write_adjacency(const CayleyGraph& g, std::ostream& out) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    out << g.vertices()[i] << ':';
    const auto& r = g.row(i);
    for (auto j = r.first(); j != Bitset::npos; j = r.next(j + 1)) out << ' ' << g.vertices()[j];
    out << '\n';
  }
}

}  // namespace splitter::cayley
