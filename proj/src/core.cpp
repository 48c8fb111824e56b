#include "splitter/core.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "splitter/error.hpp"

namespace splitter {

SplitterInstance::SplitterInstance(u64 q, u64 k1, u64 k2) : q_(q), k1_(k1), k2_(k2) {
  if (q < 2) throw PreconditionError("splitter instance: q must be at least 2");
  if (k2 == 0) throw PreconditionError("splitter instance: k2 must be positive");
  if (k1 > k2) throw PreconditionError("splitter instance: k1 must not exceed k2");
  if (q > nt::max_modulus()) {
    throw PreconditionError("splitter instance: q = " + std::to_string(q) + " exceeds the modulus cap " +
                            std::to_string(nt::max_modulus()));
  }
}

bool SplitterInstance::nonsingular() const { return coprime_to_factorial(q_, k2_); }

std::vector<i64> SplitterInstance::multipliers() const {
  std::vector<i64> m;
  m.reserve(weight());
  for (i64 x = -static_cast<i64>(k1_); x <= static_cast<i64>(k2_); ++x) {
    if (x != 0) m.push_back(x);
  }
  return m;
}

u64 SplitterInstance::residue(i64 m) const {
  const i64 r = m % static_cast<i64>(q_);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(q_) : r);
}

SplitterSet::SplitterSet(SplitterInstance instance, std::vector<u64> elements)
    : instance_(instance), elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const u64 e = elements_[i];
    if (e == 0 || e >= instance_.q()) {
      throw PreconditionError("splitter set: element " + std::to_string(e) + " outside [1, q-1]");
    }
    if (i > 0 && elements_[i - 1] == e) {
      throw PreconditionError("splitter set: duplicate element " + std::to_string(e));
    }
  }
}

bool SplitterSet::contains(u64 x) const { return std::binary_search(elements_.begin(), elements_.end(), x); }

bool coprime_to_factorial(u64 q, u64 k2) {
  for (u64 i = 2; i <= k2; ++i) {
    if (nt::gcd(q, i) != 1) return false;
  }
  return true;
}

std::vector<u64> expand(const SplitterInstance& inst, u64 b) {
  if (b % inst.q() == 0) throw PreconditionError("expand: element is 0 modulo q");
  std::vector<u64> out;
  out.reserve(inst.weight());
  for (i64 m : inst.multipliers()) out.push_back(nt::mul_mod(inst.residue(m), b % inst.q(), inst.q()));
  return out;
}

std::string Violation::describe(u64 q) const {
  std::ostringstream os;
  if (kind == Kind::zero_product) {
    os << m1 << "*" << b1 << " = 0 (mod " << q << ")";
  } else {
    os << m1 << "*" << b1 << " = " << m2 << "*" << b2 << " = " << residue << " (mod " << q << ")";
  }
  return os.str();
}

Verdict verify(const SplitterInstance& inst, std::span<const u64> elements) {
  struct Entry {
    u64 residue;
    u64 b;
    i64 m;
  };
  std::vector<u64> sorted(elements.begin(), elements.end());
  std::sort(sorted.begin(), sorted.end());
  const auto mults = inst.multipliers();
  std::vector<Entry> entries;
  entries.reserve(sorted.size() * mults.size());
  for (u64 b : sorted) {
    for (i64 m : mults) {
      const u64 r = nt::mul_mod(inst.residue(m), b % inst.q(), inst.q());
      if (r == 0) return {false, Violation{Violation::Kind::zero_product, b, m, b, m, 0}};
      entries.push_back({r, b, m});
    }
  }
  // The same element listed twice collides with itself at every multiplier.
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& x, const Entry& y) { return x.residue < y.residue; });
  std::optional<Violation> best;
  for (std::size_t i = 0; i + 1 < entries.size(); ++i) {
    if (entries[i].residue != entries[i + 1].residue) continue;
    // Entries with equal residue stay in (b, m) order, so the first two of a
    // run are that run's smallest pair.
    const Violation v{Violation::Kind::collision, entries[i].b, entries[i].m, entries[i + 1].b, entries[i + 1].m,
                      entries[i].residue};
    if (!best || std::tie(v.b1, v.m1, v.b2, v.m2) < std::tie(best->b1, best->m1, best->b2, best->m2)) best = v;
    while (i + 1 < entries.size() && entries[i + 1].residue == v.residue) ++i;
  }
  if (best) return {false, best};
  return {true, std::nullopt};
}

Verdict verify(const SplitterSet& set) { return verify(set.instance(), set.elements()); }

std::string_view to_string(SetKind kind) {
  switch (kind) {
    case SetKind::perfect:
      return "Perfect";
    case SetKind::quasi_perfect:
      return "QuasiPerfect";
    case SetKind::valid_non_maximal:
      return "ValidNonMaximalOrUnknown";
    case SetKind::invalid:
      return "Invalid";
  }
  return "Invalid";
}

Classification classify(const SplitterSet& set) {
  const auto& inst = set.instance();
  Classification c{SetKind::invalid, set.size(), inst.size_bound()};
  if (!verify(set).valid) return c;
  if (set.size() == inst.size_bound()) {
    c.kind = inst.admits_perfect() ? SetKind::perfect : SetKind::quasi_perfect;
  } else {
    c.kind = SetKind::valid_non_maximal;
  }
  return c;
}

SplitterSet scale(const SplitterSet& set, u64 c) {
  const u64 q = set.instance().q();
  if (nt::gcd(c % q, q) != 1) throw PreconditionError("scale: multiplier must be coprime to q");
  std::vector<u64> out;
  out.reserve(set.size());
  for (u64 b : set.elements()) out.push_back(nt::mul_mod(b, c % q, q));
  return SplitterSet(set.instance(), std::move(out));
}

SplitterSet compose(const SplitterSet& b1, const SplitterSet& b2) {
  const auto& i1 = b1.instance();
  const auto& i2 = b2.instance();
  if (i1.k1() != i2.k1() || i1.k2() != i2.k2()) throw PreconditionError("compose: (k1, k2) differ");
  if (!coprime_to_factorial(i2.q(), i2.k2())) throw PreconditionError("compose: gcd(q2, k2!) != 1");
  const u64 q1 = i1.q();
  const u64 q2 = i2.q();
  if (q2 != 0 && q1 > nt::max_modulus() / q2) throw PreconditionError("compose: q1*q2 exceeds the modulus cap");
  const SplitterInstance inst(q1 * q2, i1.k1(), i1.k2());
  std::vector<u64> out;
  out.reserve(b1.size() * q2 + b2.size());
  for (u64 c : b1.elements()) {
    for (u64 r = 0; r < q2; ++r) out.push_back(c + r * q1);
  }
  for (u64 c : b2.elements()) out.push_back(q1 * c);
  return SplitterSet(inst, std::move(out));
}

namespace {

void require_matching_prime(const FactorizationWitness& w, const SplitterInstance& inst) {
  if (inst.q() != w.subgroup.ctx().p()) {
    throw PreconditionError("factorization: instance modulus differs from the witness prime");
  }
}

}  // namespace

bool check_factorization(const FactorizationWitness& w, const SplitterInstance& inst) {
  require_matching_prime(w, inst);
  const auto& H = w.subgroup;
  const u64 p = H.ctx().p();
  if (inst.weight() * w.cofactor.size() != H.order()) return false;
  std::vector<u64> products;
  products.reserve(H.order());
  for (i64 m : inst.multipliers()) {
    const u64 mr = inst.residue(m);
    if (mr == 0) return false;
    for (u64 b : w.cofactor) {
      if (b % p == 0) return false;
      const u64 x = nt::mul_mod(mr, b % p, p);
      if (!H.contains(x)) return false;
      products.push_back(x);
    }
  }
  std::sort(products.begin(), products.end());
  return std::adjacent_find(products.begin(), products.end()) == products.end();
}

SplitterSet coset_extend(const FactorizationWitness& w, const SplitterInstance& inst) {
  if (!check_factorization(w, inst)) {
    throw PreconditionError("coset_extend: M * cofactor is not a factorization of the subgroup");
  }
  const auto& ctx = w.subgroup.ctx();
  const auto reps = nt::coset_representatives(w.subgroup, nt::whole_group(ctx));
  std::vector<u64> out;
  out.reserve(reps.size() * w.cofactor.size());
  for (u64 t : reps) {
    for (u64 b : w.cofactor) out.push_back(ctx.mul(t, b % ctx.p()));
  }
  return SplitterSet(inst, std::move(out));
}

}  // namespace splitter
