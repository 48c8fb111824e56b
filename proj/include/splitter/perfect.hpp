#pragma once

// Existence criteria and explicit constructions for nonsingular perfect
// splitter sets B[-k1,k2](p), p prime.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "splitter/core.hpp"
#include "splitter/numtheory.hpp"

namespace splitter::perfect {

enum class Existence { exists, not_exists, no_criterion };

std::string_view to_string(Existence e);

enum class Criterion {
  none,
  weight_divides,          // p != 1 (mod k1+k2)
  trivial,                 // (0,1) and (1,1)
  odd_weight_asymmetric,   // 1 <= k1 < k2, k1+k2 odd
  b02_order_of_two,        // ord_p(2) even
  b22_order_of_two,        // v_2(ord_p(2)) >= 2
  b13_quartic,             // p = 5 (mod 8): 6 is a quartic residue
  b13_orders,              // p = 1 (mod 8): ord(-3/2) odd, 4 | ord(2)
  b24_subgroup,            // ord(-3/4) odd, 2 not in <6,8>
  b44_subgroup,            // +-4 not in <6,16>
  b04_subgroup,            // 4 not in <6,16>
  mu_symmetric_prime,      // B[-k,k], k an odd prime
  mu_zero_prime,           // B[0,k], k an odd prime
  mu_coprime_index,        // gcd((p-1)/(k1+k2), k1+k2) = 1
  b24_cubic_residues,      // p = 7, 31 (mod 36)
  b04_quartic_residue,     // p = 5 (mod 8)
  b44_mod16,               // p = 9 (mod 16)
};

std::string_view to_string(Criterion c);

using EvidenceValue = std::variant<bool, i64, std::vector<i64>>;

struct EvidenceItem {
  std::string name;
  EvidenceValue value;
};

struct ExistenceVerdict {
  Existence outcome = Existence::no_criterion;
  Criterion criterion = Criterion::none;
  std::vector<EvidenceItem> evidence;

  bool exists() const { return outcome == Existence::exists; }
  const EvidenceValue* find(std::string_view name) const;
};

/// Recomputes the outcome from the recorded evidence alone.
Existence reevaluate(const ExistenceVerdict& v);

/// Dispatches to the strongest known criterion for (k1, k2). Throws
/// PreconditionError when p <= k2 (a singular modulus).
ExistenceVerdict exists_perfect(const nt::PrimeContext& ctx, u64 k1, u64 k2);

enum class MuRow { symmetric_prime, zero_prime, coprime_index };

/// Inputs of the index-residue criteria. `index_residues` holds
/// ind_g(j)/mu mod `modulus` over the row's residue range, in j order.
struct MuCriterionInput {
  nt::PrimeContext ctx;
  u64 k1;
  u64 k2;
  MuRow row;
  u64 mu;
  u64 modulus;
  std::vector<u64> index_residues;
};

/// Selects the applicable row and computes mu and the residues. Throws
/// PreconditionError when no row applies.
MuCriterionInput make_mu_input(const nt::PrimeContext& ctx, u64 k1, u64 k2);
ExistenceVerdict exists_via_mu(const MuCriterionInput& input);

/// p = 7, 31 (mod 36): 6 a cubic residue, 2 and 3 not.
ExistenceVerdict exists_24_residue_shortcut(const nt::PrimeContext& ctx);
/// p = 5 (mod 8): 6 a quartic residue.
ExistenceVerdict exists_04_residue_shortcut(const nt::PrimeContext& ctx);
/// p = 9 (mod 16): never exists.
ExistenceVerdict exists_44_mod16_rule(u64 p);

/// A construction together with the quantities its derivation produced.
struct PerfectConstruction {
  SplitterSet set;
  FactorizationWitness witness;
  std::vector<u64> coset_reps;
  std::vector<EvidenceItem> trace;
};

PerfectConstruction build_24(const nt::PrimeContext& ctx);
PerfectConstruction build_44(const nt::PrimeContext& ctx);
PerfectConstruction build_04(const nt::PrimeContext& ctx);

/// Perfect B[-2,4](p). Throws NonexistenceError if none exists.
SplitterSet construct_24(const nt::PrimeContext& ctx);
/// Perfect B[-4,4](p). Throws NonexistenceError if none exists.
SplitterSet construct_44(const nt::PrimeContext& ctx);
/// Perfect B[0,4](p). Throws NonexistenceError if none exists.
SplitterSet construct_04(const nt::PrimeContext& ctx);

struct ScanEntry {
  u64 p;
  ExistenceVerdict verdict;
};

/// All primes p = 1 (mod k1+k2), k2 < p <= p_max, ascending, each with the
/// dispatcher's verdict (smallest primitive root).
std::vector<ScanEntry> scan_primes(u64 k1, u64 k2, u64 p_max);

/// The p of entries whose verdict is `exists`.
std::vector<u64> existing_primes(const std::vector<ScanEntry>& scan);

struct FormPrime {
  i64 p;
  i64 k;
  i64 l;
  friend bool operator==(const FormPrime&, const FormPrime&) = default;
};

/// Evaluates the form at (k, l) without a primality or congruence filter.
i64 evaluate_form(int form_id, i64 k, i64 l);

/// Prime values of the B[-2,4] quadratic forms over the box, sorted by
/// (p, k, l). Form 3 keeps only k + 3l = 1 or 3 (mod 6).
std::vector<FormPrime> quadratic_form_family(int form_id, i64 k_lo, i64 k_hi, i64 l_lo, i64 l_hi);

}  // namespace splitter::perfect
