#pragma once

// Modular arithmetic and the multiplicative group Z_p^*.
//
// All residues are plain std::uint64_t values in [0, m). Products are formed
// in 128-bit intermediates, so every modulus below 2^63 is exact.

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace splitter::nt {

using u64 = std::uint64_t;
using i64 = std::int64_t;

u64 mul_mod(u64 a, u64 b, u64 m);
u64 mod_pow(u64 base, u64 exp, u64 m);
u64 gcd(u64 a, u64 b);
u64 lcm(u64 a, u64 b);

/// Inverse of a modulo m. Throws PreconditionError when gcd(a, m) != 1.
u64 inverse_mod(u64 a, u64 m);

/// Deterministic Miller-Rabin. Domain is 2 <= n < 2^63.
bool is_prime(u64 n);

/// Largest modulus accepted by PrimeContext and SplitterInstance.
/// Defaults to 2^40; SPLITTER_MAX_MODULUS overrides it (read once).
u64 max_modulus();

struct PrimePower {
  u64 prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

class FactoredInteger {
 public:
  FactoredInteger() = default;
  FactoredInteger(u64 value, std::vector<PrimePower> factors);

  u64 value() const { return value_; }
  const std::vector<PrimePower>& factors() const { return factors_; }

  /// Distinct primes dividing value().
  std::vector<u64> primes() const;

  /// v_r(value) for a prime r.
  unsigned valuation(u64 prime) const;

 private:
  u64 value_ = 1;
  std::vector<PrimePower> factors_;
};

/// Complete factorization of 1 <= n < 2^63. Trial division up to 10^12,
/// Pollard-Brent rho above.
FactoredInteger factorize(u64 n);

enum class RootParity { any, odd };

/// Smallest primitive root modulo p. With RootParity::odd, the smallest odd
/// positive integer that is a primitive root (it may exceed p for tiny p).
u64 primitive_root(u64 p, RootParity parity = RootParity::any);

/// A signed rational ±num/den, resolved in Z_p as num * den^{-1}.
struct SignedRational {
  i64 num;
  i64 den = 1;
};

/// A prime modulus with a fixed primitive root. Immutable after construction.
class PrimeContext {
 public:
  /// Uses the smallest primitive root.
  explicit PrimeContext(u64 p);
  /// Pins the generator. g is an integer whose residue must generate Z_p^*.
  PrimeContext(u64 p, u64 g);

  static PrimeContext with_odd_root(u64 p);

  u64 p() const { return p_; }
  /// The generator as given (an integer, possibly >= p for odd roots).
  u64 g() const { return g_; }
  u64 group_order() const { return p_ - 1; }
  const FactoredInteger& group_order_factors() const { return pm1_; }

  u64 resolve(i64 value) const;
  u64 resolve(SignedRational r) const;

  u64 pow(u64 base, u64 exp) const { return mod_pow(base, exp, p_); }
  u64 mul(u64 a, u64 b) const { return mul_mod(a, b, p_); }
  u64 neg(u64 a) const { return a == 0 ? 0 : p_ - a; }
  u64 inv(u64 a) const { return inverse_mod(a, p_); }
  /// g^e with the exponent reduced mod p-1.
  u64 gpow(u64 e) const { return mod_pow(g_ % p_, e % (p_ - 1), p_); }

  bool is_generator(u64 x) const;

 private:
  u64 p_;
  u64 g_;
  FactoredInteger pm1_;
};

/// ind_g(b): the unique i in [0, p-2] with g^i = b. Pohlig-Hellman over the
/// factorization of p-1, baby-step/giant-step inside each prime-order piece.
u64 discrete_log(const PrimeContext& ctx, u64 b);

/// ord_p(x) = (p-1) / gcd(ind(x), p-1).
u64 mult_order(const PrimeContext& ctx, u64 x);

bool is_power_residue(const PrimeContext& ctx, u64 x, u64 n);

/// The subgroup <g^d> of Z_p^* for a divisor d of p-1.
class SubgroupDescriptor {
 public:
  SubgroupDescriptor(PrimeContext ctx, u64 d);

  const PrimeContext& ctx() const { return ctx_; }
  u64 d() const { return d_; }
  u64 order() const { return (ctx_.p() - 1) / d_; }

  /// Sorted element set.
  std::vector<u64> elements() const;
  /// Elements listed as g^(d*t), t = 0, 1, ....
  std::vector<u64> elements_by_index() const;

  bool contains(u64 x) const;
  bool contains(SignedRational x) const;
  bool is_subgroup_of(const SubgroupDescriptor& other) const { return d_ % other.d_ == 0; }

  friend bool operator==(const SubgroupDescriptor& a, const SubgroupDescriptor& b) {
    return a.ctx_.p() == b.ctx_.p() && a.d_ == b.d_;
  }

 private:
  PrimeContext ctx_;
  u64 d_;
};

SubgroupDescriptor whole_group(const PrimeContext& ctx);
SubgroupDescriptor subgroup_generated(const PrimeContext& ctx, std::span<const u64> gens);
SubgroupDescriptor subgroup_generated(const PrimeContext& ctx, std::initializer_list<SignedRational> gens);

bool contains(const SubgroupDescriptor& sub, u64 x);
bool contains(const SubgroupDescriptor& sub, SignedRational x);

enum class CosetChoice {
  /// Greedy by ascending ind_g.
  ascending_index,
  /// Greedy by ascending ind_g, each pick x also takes -x. Requires -1 in
  /// `within` and -1 outside `sub`.
  negation_paired,
};

/// One representative per coset of `sub` in `within`.
std::vector<u64> coset_representatives(const SubgroupDescriptor& sub, const SubgroupDescriptor& within,
                                       CosetChoice choice = CosetChoice::ascending_index);

}  // namespace splitter::nt
