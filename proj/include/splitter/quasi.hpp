#pragma once

// Quasi-perfect splitter sets for moduli where no perfect set can exist.

#include <optional>
#include <vector>

#include "splitter/core.hpp"
#include "splitter/numtheory.hpp"

namespace splitter::quasi {

/// { ik+1 : i in [0, m-1], i != (-k)^{-1} mod m }, a quasi-perfect
/// B[0,k](km) set of size m-1. Requires gcd(m, k!) = 1 and km >= 2.
SplitterSet qp_0k(u64 k, u64 m);

/// {k+1} u { 1 + (2k+2)i : i in [0, p-1] }, a quasi-perfect
/// B[-k,k](p(2k+2)) set of size p+1. Requires p prime, k < p < 2k.
SplitterSet qp_kk(u64 k, u64 p);

/// The same set as qp_kk read as a quasi-perfect B[-(k-1),k](p(2k+2)) set.
/// Requires p prime, k < p < (4k-1)/3.
SplitterSet qp_k1k(u64 k, u64 p);

/// Parameters of the B[-k,k](2p) construction. T_0 and T_1 are the even and
/// odd members of [1, k]; both index-residue sets mod v must tile Z_v with A.
struct Dl7Parameters {
  nt::PrimeContext ctx;  // g odd
  u64 k;
  u64 m;
  u64 v;  // 2^(m-1) k
  u64 n;  // (p-1)/(2v)
  std::vector<u64> A;
  std::vector<u64> residues_even;  // ind_g(x) mod v, x in T_0, ascending x
  std::vector<u64> residues_odd;   // ind_g(x) mod v, x in T_1, ascending x
};

/// A + N hits every residue of Z_v exactly once.
bool tiles(const std::vector<u64>& A, const std::vector<u64>& N, u64 v);

/// Structural and tiling checks on a parameter set.
bool dl7_valid(const Dl7Parameters& params);

/// Lexicographically smallest 2^m-subset A of Z_v tiling Z_v with both
/// residue sets, or nullopt after exhausting the search. Throws
/// PreconditionError for odd k, m = 0, an even g or p != 1 (mod 2^m k).
std::optional<Dl7Parameters> dl7_find_A(u64 k, u64 m, const nt::PrimeContext& ctx);

/// { g^(i + jv) mod 2p : i in A, j in [0, n-1] }, a quasi-perfect
/// B[-k,k](2p) set of size 2^m n.
SplitterSet qp_kk_2p(const Dl7Parameters& params);

/// Primes p = 1 (mod 2^m k), p <= p_max, for which dl7_find_A succeeds with
/// the smallest odd primitive root.
std::vector<u64> dl7_feasible_primes(u64 k, u64 m, u64 p_max);

}  // namespace splitter::quasi
