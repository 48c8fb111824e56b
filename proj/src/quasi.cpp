#include "splitter/quasi.hpp"

#include <algorithm>
#include <string>

#include "splitter/error.hpp"

namespace splitter::quasi {

SplitterSet qp_0k(u64 k, u64 m) {
  if (k == 0 || m == 0) throw PreconditionError("qp_0k: k and m must be positive");
  if (!coprime_to_factorial(m, k)) throw PreconditionError("qp_0k: gcd(m, k!) != 1");
  if (k > nt::max_modulus() / m) throw PreconditionError("qp_0k: km exceeds the modulus cap");
  const SplitterInstance inst(k * m, 0, k);
  const u64 a = nt::inverse_mod((m - k % m) % m, m);
  std::vector<u64> out;
  out.reserve(m);
  for (u64 i = 0; i < m; ++i) {
    if (i != a) out.push_back(i * k + 1);
  }
  return SplitterSet(inst, std::move(out));
}

namespace {

std::vector<u64> spaced_set(u64 k, u64 p) {
  std::vector<u64> out{k + 1};
  for (u64 i = 0; i < p; ++i) out.push_back(1 + (2 * k + 2) * i);
  return out;
}

void require_prime(u64 p, const char* who) {
  if (p < 2 || !nt::is_prime(p)) throw PreconditionError(std::string(who) + ": p must be prime");
}

}  // namespace

SplitterSet qp_kk(u64 k, u64 p) {
  require_prime(p, "qp_kk");
  if (!(k < p && p < 2 * k)) throw PreconditionError("qp_kk: need k < p < 2k");
  return SplitterSet(SplitterInstance(p * (2 * k + 2), k, k), spaced_set(k, p));
}

SplitterSet qp_k1k(u64 k, u64 p) {
  require_prime(p, "qp_k1k");
  if (!(k < p && 3 * p < 4 * k - 1)) throw PreconditionError("qp_k1k: need k < p < (4k-1)/3");
  return SplitterSet(SplitterInstance(p * (2 * k + 2), k - 1, k), spaced_set(k, p));
}

bool tiles(const std::vector<u64>& A, const std::vector<u64>& N, u64 v) {
  if (A.size() * N.size() != v) return false;
  std::vector<bool> hit(v, false);
  for (u64 a : A) {
    for (u64 x : N) {
      const u64 r = (a + x) % v;
      if (hit[r]) return false;
      hit[r] = true;
    }
  }
  return true;
}

namespace {

void check_dl7_preconditions(u64 k, u64 m, const nt::PrimeContext& ctx) {
  if (k == 0 || k % 2 != 0) throw PreconditionError("dl7: k must be a positive even integer");
  if (m == 0 || m >= 32) throw PreconditionError("dl7: m must be in [1, 31]");
  if (ctx.g() % 2 == 0) throw PreconditionError("dl7: the primitive root must be odd");
  const u64 step = (u64{1} << m) * k;
  if ((ctx.p() - 1) % step != 0) throw PreconditionError("dl7: need p = 1 (mod 2^m k)");
}

std::vector<u64> parity_residues(const nt::PrimeContext& ctx, u64 k, u64 v, u64 parity) {
  std::vector<u64> out;
  for (u64 x = 1; x <= k; ++x) {
    if (x % 2 == parity) out.push_back(nt::discrete_log(ctx, x) % v);
  }
  return out;
}

bool has_duplicates(std::vector<u64> xs) {
  std::sort(xs.begin(), xs.end());
  return std::adjacent_find(xs.begin(), xs.end()) != xs.end();
}

// Extends `chosen` in ascending order; the first completion found is the
// lexicographically smallest.
bool search(u64 start, std::size_t target, u64 v, const std::vector<u64>& n0, const std::vector<u64>& n1,
            std::vector<bool>& cov0, std::vector<bool>& cov1, std::vector<u64>& chosen) {
  if (chosen.size() == target) return true;
  for (u64 a = start; a < v; ++a) {
    if (v - a < target - chosen.size()) return false;
    bool free = true;
    for (u64 x : n0) free = free && !cov0[(a + x) % v];
    for (u64 x : n1) free = free && !cov1[(a + x) % v];
    if (!free) continue;
    for (u64 x : n0) cov0[(a + x) % v] = true;
    for (u64 x : n1) cov1[(a + x) % v] = true;
    chosen.push_back(a);
    if (search(a + 1, target, v, n0, n1, cov0, cov1, chosen)) return true;
    chosen.pop_back();
    for (u64 x : n0) cov0[(a + x) % v] = false;
    for (u64 x : n1) cov1[(a + x) % v] = false;
  }
  return false;
}

}  // namespace

bool dl7_valid(const Dl7Parameters& params) {
  try {
    check_dl7_preconditions(params.k, params.m, params.ctx);
  } catch (const PreconditionError&) {
    return false;
  }
  const u64 v = (u64{1} << (params.m - 1)) * params.k;
  if (params.v != v || params.n * 2 * v != params.ctx.p() - 1) return false;
  if (params.A.size() != (u64{1} << params.m)) return false;
  if (params.residues_even != parity_residues(params.ctx, params.k, v, 0)) return false;
  if (params.residues_odd != parity_residues(params.ctx, params.k, v, 1)) return false;
  return tiles(params.A, params.residues_even, v) && tiles(params.A, params.residues_odd, v);
}

std::optional<Dl7Parameters> dl7_find_A(u64 k, u64 m, const nt::PrimeContext& ctx) {
  check_dl7_preconditions(k, m, ctx);
  const u64 v = (u64{1} << (m - 1)) * k;
  Dl7Parameters params{ctx, k, m, v, (ctx.p() - 1) / (2 * v), {}, parity_residues(ctx, k, v, 0),
                       parity_residues(ctx, k, v, 1)};
  if (has_duplicates(params.residues_even) || has_duplicates(params.residues_odd)) return std::nullopt;
  std::vector<bool> cov0(v, false), cov1(v, false);
  std::vector<u64> chosen;
  if (!search(0, std::size_t{1} << m, v, params.residues_even, params.residues_odd, cov0, cov1, chosen)) {
    return std::nullopt;
  }
  params.A = std::move(chosen);
  return params;
}

SplitterSet qp_kk_2p(const Dl7Parameters& params) {
  if (!dl7_valid(params)) throw PreconditionError("qp_kk_2p: invalid parameters");
  const u64 p = params.ctx.p();
  const u64 q = 2 * p;
  const SplitterInstance inst(q, params.k, params.k);
  std::vector<u64> out;
  out.reserve(params.A.size() * params.n);
  for (u64 i : params.A) {
    for (u64 j = 0; j < params.n; ++j) out.push_back(nt::mod_pow(params.ctx.g(), i + j * params.v, q));
  }
  return SplitterSet(inst, std::move(out));
}

std::vector<u64> dl7_feasible_primes(u64 k, u64 m, u64 p_max) {
  if (k == 0 || k % 2 != 0) throw PreconditionError("dl7: k must be a positive even integer");
  if (m == 0 || m >= 32) throw PreconditionError("dl7: m must be in [1, 31]");
  const u64 step = (u64{1} << m) * k;
  std::vector<u64> out;
  for (u64 p = step + 1; p <= p_max; p += step) {
    if (!nt::is_prime(p)) continue;
    if (dl7_find_A(k, m, nt::PrimeContext::with_odd_root(p))) out.push_back(p);
  }
  return out;
}

}  // namespace splitter::quasi
