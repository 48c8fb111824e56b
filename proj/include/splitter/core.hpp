#pragma once

// Splitter sets B[-k1,k2](q): the data model, the verifier and the
// constructions that operate on arbitrary sets (scaling, the product
// composition, and extension of a subgroup factorization over cosets).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "splitter/numtheory.hpp"

namespace splitter {

using nt::i64;
using nt::u64;

/// Parameters (q, k1, k2) of a splitter set together with the multiplier
/// range M = [-k1, k2] \ {0}.
class SplitterInstance {
 public:
  SplitterInstance(u64 q, u64 k1, u64 k2);

  u64 q() const { return q_; }
  u64 k1() const { return k1_; }
  u64 k2() const { return k2_; }
  /// |M| = k1 + k2.
  u64 weight() const { return k1_ + k2_; }
  /// floor((q-1)/(k1+k2)), the size of a perfect or quasi-perfect set.
  u64 size_bound() const { return (q_ - 1) / weight(); }
  bool admits_perfect() const { return (q_ - 1) % weight() == 0; }
  /// gcd(q, k2!) == 1.
  bool nonsingular() const;

  /// M in ascending order: -k1, ..., -1, 1, ..., k2.
  std::vector<i64> multipliers() const;
  /// m reduced into [0, q).
  u64 residue(i64 m) const;

  friend bool operator==(const SplitterInstance&, const SplitterInstance&) = default;

 private:
  u64 q_;
  u64 k1_;
  u64 k2_;
};

/// Elements are kept sorted and distinct, each in [1, q-1]. Membership in
/// this type does not imply validity; see verify().
class SplitterSet {
 public:
  SplitterSet(SplitterInstance instance, std::vector<u64> elements);

  const SplitterInstance& instance() const { return instance_; }
  const std::vector<u64>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool contains(u64 x) const;

  friend bool operator==(const SplitterSet&, const SplitterSet&) = default;

 private:
  SplitterInstance instance_;
  std::vector<u64> elements_;
};

/// gcd(q, k2!) == 1, i.e. q has no prime factor <= k2.
bool coprime_to_factorial(u64 q, u64 k2);

/// { m*b mod q : m in M }, in multiplier order, duplicates retained.
std::vector<u64> expand(const SplitterInstance& inst, u64 b);

struct Violation {
  enum class Kind {
    /// m1*b1 = 0 (mod q).
    zero_product,
    /// m1*b1 = m2*b2 (mod q) with (b1,m1) < (b2,m2); b1 == b2 flags a
    /// repeated residue inside one expansion.
    collision,
  };
  Kind kind;
  u64 b1;
  i64 m1;
  u64 b2;
  i64 m2;
  u64 residue;

  std::string describe(u64 q) const;
  friend bool operator==(const Violation&, const Violation&) = default;
};

struct Verdict {
  bool valid;
  std::optional<Violation> violation;

  explicit operator bool() const { return valid; }
};

/// Checks the definition directly. On rejection the witness is a zero
/// product if any exists, else the lexicographically smallest colliding
/// (b1, m1, b2, m2).
Verdict verify(const SplitterSet& set);
Verdict verify(const SplitterInstance& inst, std::span<const u64> elements);

enum class SetKind { perfect, quasi_perfect, valid_non_maximal, invalid };

std::string_view to_string(SetKind kind);

struct Classification {
  SetKind kind;
  u64 size;
  /// floor((q-1)/(k1+k2)).
  u64 bound;
};

Classification classify(const SplitterSet& set);

/// c * B. Requires gcd(c, q) == 1.
SplitterSet scale(const SplitterSet& set, u64 c);

/// B1 (.) B2 = { c + r*q1 : c in B1, r in [0, q2-1] } u { q1*c : c in B2 }
/// over q1*q2. Requires equal (k1, k2) and gcd(q2, k2!) == 1.
SplitterSet compose(const SplitterSet& b1, const SplitterSet& b2);

/// A claimed factorization H = M * cofactor inside Z_p^*.
struct FactorizationWitness {
  nt::SubgroupDescriptor subgroup;
  std::vector<u64> cofactor;
};

/// |M| * |cofactor| == |H| and every product m*b is distinct and lies in H.
/// inst.q() must equal the prime of the witness.
bool check_factorization(const FactorizationWitness& w, const SplitterInstance& inst);

/// Union of t * cofactor over ascending-index coset representatives t of H
/// in Z_p^*. Throws PreconditionError if the factorization check fails.
SplitterSet coset_extend(const FactorizationWitness& w, const SplitterInstance& inst);

}  // namespace splitter
