#include "splitter/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>
#include <unordered_map>

#include "splitter/error.hpp"

namespace splitter::nt {

using u128 = unsigned __int128;
using i128 = __int128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 mod_pow(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

u64 lcm(u64 a, u64 b) { return a / gcd(a, b) * b; }

u64 inverse_mod(u64 a, u64 m) {
  i128 r0 = static_cast<i128>(m), r1 = static_cast<i128>(a % m);
  i128 t0 = 0, t1 = 1;
  while (r1 != 0) {
    const i128 q = r0 / r1;
    std::swap(r0, r1);
    r1 -= q * r0;
    std::swap(t0, t1);
    t1 -= q * t0;
  }
  if (r0 != 1) {
    throw PreconditionError("inverse_mod: " + std::to_string(a) + " is not invertible modulo " + std::to_string(m));
  }
  if (t0 < 0) t0 += m;
  return static_cast<u64>(t0);
}

namespace {

bool miller_rabin_witness(u64 n, u64 a, u64 d, unsigned s) {
  u64 x = mod_pow(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (unsigned r = 1; r < s; ++r) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

bool is_prime_unchecked(u64 n) {
  if (n < 2) return false;
  for (u64 sp : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % sp == 0) return n == sp;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  // Jaeschke/Sinclair bases: deterministic for all n < 2^64.
  for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    const u64 am = a % n;
    if (am == 0) continue;
    if (miller_rabin_witness(n, am, d, s)) return false;
  }
  return true;
}

u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    const u64 m = 128;
    u64 r = 1;
    auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1U;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void collect_factors(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime_unchecked(n)) {
    out.push_back(n);
    return;
  }
  const u64 d = pollard_brent(n);
  collect_factors(d, out);
  collect_factors(n / d, out);
}

constexpr u64 kTwo63 = 1ULL << 63U;
constexpr u64 kTrialDivisionLimit = 1'000'000'000'000ULL;

}  // namespace

bool is_prime(u64 n) {
  if (n < 2 || n >= kTwo63) {
    throw std::domain_error("is_prime: argument " + std::to_string(n) + " outside [2, 2^63)");
  }
  return is_prime_unchecked(n);
}

u64 max_modulus() {
  static const u64 cap = [] {
    constexpr u64 kDefault = 1ULL << 40U;
    const char* env = std::getenv("SPLITTER_MAX_MODULUS");
    if (env == nullptr || *env == '\0') return kDefault;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v < 2 || v >= kTwo63) return kDefault;
    return static_cast<u64>(v);
  }();
  return cap;
}

FactoredInteger::FactoredInteger(u64 value, std::vector<PrimePower> factors)
    : value_(value), factors_(std::move(factors)) {
  u64 product = 1;
  u64 previous = 0;
  for (const auto& [prime, exponent] : factors_) {
    if (prime <= previous || exponent == 0) {
      throw PreconditionError("FactoredInteger: primes must be strictly increasing with positive exponents");
    }
    previous = prime;
    for (unsigned i = 0; i < exponent; ++i) product *= prime;
  }
  if (product != value_) throw PreconditionError("FactoredInteger: factors do not multiply to value");
}

std::vector<u64> FactoredInteger::primes() const {
  std::vector<u64> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(f.prime);
  return out;
}

unsigned FactoredInteger::valuation(u64 prime) const {
  for (const auto& f : factors_) {
    if (f.prime == prime) return f.exponent;
  }
  return 0;
}

FactoredInteger factorize(u64 n) {
  if (n == 0 || n >= kTwo63) {
    throw std::domain_error("factorize: argument " + std::to_string(n) + " outside [1, 2^63)");
  }
  const u64 original = n;
  std::vector<u64> primes;
  const u64 trial_limit = n <= kTrialDivisionLimit ? static_cast<u64>(std::sqrt(static_cast<double>(n))) + 1 : 10'000;
  for (u64 d = 2; d <= trial_limit && d * d <= n; d += (d == 2 ? 1 : 2)) {
    while (n % d == 0) {
      primes.push_back(d);
      n /= d;
    }
  }
  if (n > 1) {
    if (original <= kTrialDivisionLimit) {
      primes.push_back(n);
    } else {
      collect_factors(n, primes);
    }
  }
  std::sort(primes.begin(), primes.end());
  std::vector<PrimePower> factors;
  for (u64 q : primes) {
    if (!factors.empty() && factors.back().prime == q) {
      ++factors.back().exponent;
    } else {
      factors.push_back({q, 1});
    }
  }
  return FactoredInteger(original, std::move(factors));
}

namespace {

bool generates(u64 g, u64 p, const FactoredInteger& pm1) {
  if (g % p == 0) return false;
  for (const auto& f : pm1.factors()) {
    if (mod_pow(g, (p - 1) / f.prime, p) == 1) return false;
  }
  return true;
}

void check_prime_modulus(u64 p) {
  if (p < 2 || !is_prime(p)) throw PreconditionError("modulus " + std::to_string(p) + " is not prime");
  if (p > max_modulus()) {
    throw PreconditionError("modulus " + std::to_string(p) + " exceeds the configured cap " +
                            std::to_string(max_modulus()) + " (raise SPLITTER_MAX_MODULUS)");
  }
}

}  // namespace

u64 primitive_root(u64 p, RootParity parity) {
  check_prime_modulus(p);
  if (p == 2) return 1;
  const FactoredInteger pm1 = factorize(p - 1);
  if (parity == RootParity::odd) {
    for (u64 g = 3;; g += 2) {
      if (generates(g, p, pm1)) return g;
    }
  }
  for (u64 g = 2;; ++g) {
    if (generates(g, p, pm1)) return g;
  }
}

PrimeContext::PrimeContext(u64 p) : p_(p), g_(primitive_root(p)), pm1_(factorize(p - 1)) {}

PrimeContext::PrimeContext(u64 p, u64 g) : p_(p), g_(g) {
  check_prime_modulus(p);
  pm1_ = factorize(p - 1);
  if (p != 2 && !generates(g, p, pm1_)) {
    throw PreconditionError(std::to_string(g) + " is not a primitive root modulo " + std::to_string(p));
  }
}

PrimeContext PrimeContext::with_odd_root(u64 p) { return PrimeContext(p, primitive_root(p, RootParity::odd)); }

u64 PrimeContext::resolve(i64 value) const {
  const i128 r = static_cast<i128>(value) % static_cast<i128>(p_);
  return static_cast<u64>(r < 0 ? r + p_ : r);
}

u64 PrimeContext::resolve(SignedRational r) const {
  const u64 den = resolve(r.den);
  if (den == 0) throw PreconditionError("denominator vanishes modulo " + std::to_string(p_));
  return mul(resolve(r.num), inv(den));
}

bool PrimeContext::is_generator(u64 x) const { return p_ == 2 ? x % 2 == 1 : generates(x, p_, pm1_); }

namespace {

// Solve gamma^x = h where gamma has prime order r.
u64 bsgs(u64 gamma, u64 h, u64 r, u64 p) {
  if (r <= 64) {
    u64 acc = 1;
    for (u64 x = 0; x < r; ++x) {
      if (acc == h) return x;
      acc = mul_mod(acc, gamma, p);
    }
    throw PreconditionError("discrete_log: element outside the cyclic subgroup");
  }
  const auto m = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(r))));
  std::unordered_map<u64, u64> baby;
  baby.reserve(m * 2);
  u64 acc = 1;
  for (u64 j = 0; j < m; ++j) {
    baby.emplace(acc, j);
    acc = mul_mod(acc, gamma, p);
  }
  const u64 giant = inverse_mod(acc, p);  // gamma^{-m}
  u64 y = h;
  for (u64 i = 0; i <= m; ++i) {
    if (auto it = baby.find(y); it != baby.end()) return (i * m + it->second) % r;
    y = mul_mod(y, giant, p);
  }
  throw PreconditionError("discrete_log: element outside the cyclic subgroup");
}

}  // namespace

u64 discrete_log(const PrimeContext& ctx, u64 b) {
  const u64 p = ctx.p();
  b %= p;
  if (b == 0) throw PreconditionError("discrete_log: argument is 0 modulo " + std::to_string(p));
  if (p == 2) return 0;
  const u64 n = p - 1;
  const u64 g = ctx.g() % p;
  u64 x = 0;
  u64 modulus = 1;
  for (const auto& [r, e] : ctx.group_order_factors().factors()) {
    u64 re = 1;
    for (unsigned i = 0; i < e; ++i) re *= r;
    const u64 gi = mod_pow(g, n / re, p);
    const u64 hi = mod_pow(b, n / re, p);
    const u64 gamma = mod_pow(gi, re / r, p);
    const u64 gi_inv = inverse_mod(gi, p);
    u64 xi = 0;
    u64 rk = 1;
    u64 strip = re / r;
    for (unsigned k = 0; k < e; ++k) {
      const u64 t = mul_mod(mod_pow(gi_inv, xi, p), hi, p);
      const u64 dk = bsgs(gamma, mod_pow(t, strip, p), r, p);
      xi += dk * rk;
      rk *= r;
      strip /= r;
    }
    // CRT: x mod modulus, xi mod re.
    const u64 diff = (xi + re - x % re) % re;
    const u64 step = mul_mod(diff, inverse_mod(modulus % re, re), re);
    x += modulus * step;
    modulus *= re;
  }
  return x % n;
}

u64 mult_order(const PrimeContext& ctx, u64 x) {
  const u64 n = ctx.group_order();
  return n / gcd(discrete_log(ctx, x), n);
}

bool is_power_residue(const PrimeContext& ctx, u64 x, u64 n) {
  if (x % ctx.p() == 0) throw PreconditionError("is_power_residue: argument is 0");
  const u64 e = ctx.group_order() / gcd(n, ctx.group_order());
  return ctx.pow(x, e) == 1;
}

SubgroupDescriptor::SubgroupDescriptor(PrimeContext ctx, u64 d) : ctx_(std::move(ctx)), d_(d) {
  if (d_ == 0 || (ctx_.p() - 1) % d_ != 0) {
    throw PreconditionError("subgroup index " + std::to_string(d) + " does not divide p-1");
  }
}

std::vector<u64> SubgroupDescriptor::elements_by_index() const {
  std::vector<u64> out;
  out.reserve(order());
  const u64 step = ctx_.gpow(d_);
  u64 x = 1;
  for (u64 t = 0; t < order(); ++t) {
    out.push_back(x);
    x = ctx_.mul(x, step);
  }
  return out;
}

std::vector<u64> SubgroupDescriptor::elements() const {
  auto out = elements_by_index();
  std::sort(out.begin(), out.end());
  return out;
}

bool SubgroupDescriptor::contains(u64 x) const {
  x %= ctx_.p();
  if (x == 0) throw PreconditionError("subgroup membership: argument is 0");
  // d | ind(x)  <=>  x^((p-1)/d) = 1
  return ctx_.pow(x, order()) == 1;
}

bool SubgroupDescriptor::contains(SignedRational x) const { return contains(ctx_.resolve(x)); }

SubgroupDescriptor whole_group(const PrimeContext& ctx) { return SubgroupDescriptor(ctx, 1); }

SubgroupDescriptor subgroup_generated(const PrimeContext& ctx, std::span<const u64> gens) {
  u64 d = ctx.group_order();
  for (u64 x : gens) d = gcd(d, discrete_log(ctx, x));
  if (d == 0) d = ctx.group_order();
  return SubgroupDescriptor(ctx, d);
}

SubgroupDescriptor subgroup_generated(const PrimeContext& ctx, std::initializer_list<SignedRational> gens) {
  std::vector<u64> residues;
  residues.reserve(gens.size());
  for (const auto& r : gens) residues.push_back(ctx.resolve(r));
  return subgroup_generated(ctx, residues);
}

bool contains(const SubgroupDescriptor& sub, u64 x) { return sub.contains(x); }
bool contains(const SubgroupDescriptor& sub, SignedRational x) { return sub.contains(x); }

std::vector<u64> coset_representatives(const SubgroupDescriptor& sub, const SubgroupDescriptor& within,
                                       CosetChoice choice) {
  const PrimeContext& ctx = within.ctx();
  if (sub.ctx().p() != ctx.p() || !sub.is_subgroup_of(within)) {
    throw PreconditionError("coset_representatives: subgroup is not contained in the enclosing group");
  }
  // Elements of `within` are g^(dw*t); g^(dw*t) and g^(dw*t') share a coset
  // of `sub` iff t = t' mod index.
  const u64 dw = within.d();
  const u64 index = sub.d() / dw;
  std::vector<u64> reps;
  reps.reserve(index);
  if (choice == CosetChoice::ascending_index) {
    for (u64 t = 0; t < index; ++t) reps.push_back(ctx.gpow(dw * t));
    return reps;
  }
  const u64 half = ctx.group_order() / 2;
  if (ctx.p() == 2 || half % dw != 0) {
    throw PreconditionError("coset_representatives: -1 is not in the enclosing group");
  }
  const u64 shift = (half / dw) % index;
  if (shift == 0) throw PreconditionError("coset_representatives: -1 lies in the subgroup, cannot pair by sign");
  std::vector<bool> covered(index, false);
  for (u64 t = 0; t < index; ++t) {
    if (covered[t]) continue;
    const u64 x = ctx.gpow(dw * t);
    covered[t] = true;
    covered[(t + shift) % index] = true;
    reps.push_back(x);
    reps.push_back(ctx.neg(x));
  }
  return reps;
}

}  // namespace splitter::nt
