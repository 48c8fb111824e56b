#include "splitter/perfect.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <tuple>

#include "splitter/error.hpp"

namespace splitter::perfect {

using nt::PrimeContext;
using nt::SignedRational;
using nt::SubgroupDescriptor;

std::string_view to_string(Existence e) {
  switch (e) {
    case Existence::exists:
      return "exists";
    case Existence::not_exists:
      return "not_exists";
    case Existence::no_criterion:
      return "no_criterion";
  }
  return "no_criterion";
}

std::string_view to_string(Criterion c) {
  switch (c) {
    case Criterion::none:
      return "none";
    case Criterion::weight_divides:
      return "weight-divides-p-minus-1";
    case Criterion::trivial:
      return "trivial";
    case Criterion::odd_weight_asymmetric:
      return "odd-weight-asymmetric";
    case Criterion::b02_order_of_two:
      return "B[0,2]:ord(2)-even";
    case Criterion::b22_order_of_two:
      return "B[-2,2]:v2(ord(2))>=2";
    case Criterion::b13_quartic:
      return "B[-1,3]:6-quartic-residue";
    case Criterion::b13_orders:
      return "B[-1,3]:ord(-3/2)-odd-and-4|ord(2)";
    case Criterion::b24_subgroup:
      return "B[-2,4]:ord(-3/4)-odd-and-2-not-in-<6,8>";
    case Criterion::b44_subgroup:
      return "B[-4,4]:+-4-not-in-<6,16>";
    case Criterion::b04_subgroup:
      return "B[0,4]:4-not-in-<6,16>";
    case Criterion::mu_symmetric_prime:
      return "mu:B[-k,k]-k-odd-prime";
    case Criterion::mu_zero_prime:
      return "mu:B[0,k]-k-odd-prime";
    case Criterion::mu_coprime_index:
      return "mu:coprime-index";
    case Criterion::b24_cubic_residues:
      return "B[-2,4]:cubic-residues";
    case Criterion::b04_quartic_residue:
      return "B[0,4]:quartic-residue";
    case Criterion::b44_mod16:
      return "B[-4,4]:p=9-mod-16";
  }
  return "none";
}

const EvidenceValue* ExistenceVerdict::find(std::string_view name) const {
  for (const auto& item : evidence) {
    if (item.name == name) return &item.value;
  }
  return nullptr;
}

namespace {

Existence from_bool(bool b) { return b ? Existence::exists : Existence::not_exists; }

i64 as_int(u64 v) { return static_cast<i64>(v); }

bool is_odd_prime(u64 k) { return k >= 3 && nt::is_prime(k); }

unsigned two_adic_valuation(u64 x) {
  unsigned v = 0;
  while (x != 0 && x % 2 == 0) {
    x /= 2;
    ++v;
  }
  return v;
}

bool get_bool(const ExistenceVerdict& v, std::string_view name) {
  const auto* value = v.find(name);
  if (value == nullptr || !std::holds_alternative<bool>(*value)) {
    throw PreconditionError("evidence missing boolean '" + std::string(name) + "'");
  }
  return std::get<bool>(*value);
}

i64 get_int(const ExistenceVerdict& v, std::string_view name) {
  const auto* value = v.find(name);
  if (value == nullptr || !std::holds_alternative<i64>(*value)) {
    throw PreconditionError("evidence missing integer '" + std::string(name) + "'");
  }
  return std::get<i64>(*value);
}

ExistenceVerdict verdict(Existence e, Criterion c, std::vector<EvidenceItem> evidence) {
  return ExistenceVerdict{e, c, std::move(evidence)};
}

bool in_subgroup_of(const PrimeContext& ctx, std::initializer_list<SignedRational> gens, SignedRational x,
                    u64* d_out = nullptr) {
  const auto sub = nt::subgroup_generated(ctx, gens);
  if (d_out != nullptr) *d_out = sub.d();
  return sub.contains(x);
}

ExistenceVerdict criterion_24(const PrimeContext& ctx) {
  u64 d = 0;
  const bool two_in = in_subgroup_of(ctx, {{6}, {8}}, {2}, &d);
  const u64 ord = nt::mult_order(ctx, ctx.resolve(SignedRational{-3, 4}));
  return verdict(from_bool(ord % 2 == 1 && !two_in), Criterion::b24_subgroup,
                 {{"ord_minus_3_over_4", as_int(ord)}, {"d_6_8", as_int(d)}, {"two_in_6_8", two_in}});
}

ExistenceVerdict criterion_44(const PrimeContext& ctx) {
  u64 d = 0;
  const bool plus = in_subgroup_of(ctx, {{6}, {16}}, {4}, &d);
  const bool minus = in_subgroup_of(ctx, {{6}, {16}}, {-4});
  return verdict(from_bool(!plus && !minus), Criterion::b44_subgroup,
                 {{"d_6_16", as_int(d)}, {"plus4_in_6_16", plus}, {"minus4_in_6_16", minus}});
}

ExistenceVerdict criterion_04(const PrimeContext& ctx) {
  u64 d = 0;
  const bool four_in = in_subgroup_of(ctx, {{6}, {16}}, {4}, &d);
  return verdict(from_bool(!four_in), Criterion::b04_subgroup, {{"d_6_16", as_int(d)}, {"four_in_6_16", four_in}});
}

}  // namespace

ExistenceVerdict exists_perfect(const PrimeContext& ctx, u64 k1, u64 k2) {
  const u64 p = ctx.p();
  if (k2 == 0 || k1 > k2) throw PreconditionError("exists_perfect: need 0 <= k1 <= k2, k2 >= 1");
  if (p <= k2) throw PreconditionError("exists_perfect: p <= k2 makes the modulus singular");
  const u64 n = k1 + k2;
  if ((p - 1) % n != 0) {
    return verdict(Existence::not_exists, Criterion::weight_divides, {{"p_minus_1_mod_weight", as_int((p - 1) % n)}});
  }
  if (n == 1 || (k1 == 1 && k2 == 1)) return verdict(Existence::exists, Criterion::trivial, {{"weight", as_int(n)}});
  if (k1 >= 1 && k1 < k2 && n % 2 == 1) {
    return verdict(Existence::not_exists, Criterion::odd_weight_asymmetric, {{"k1", as_int(k1)}, {"k2", as_int(k2)}});
  }
  if (k1 == 0 && k2 == 2) {
    const u64 ord2 = nt::mult_order(ctx, 2);
    return verdict(from_bool(ord2 % 2 == 0), Criterion::b02_order_of_two, {{"ord_2", as_int(ord2)}});
  }
  if (k1 == 2 && k2 == 2) {
    const u64 ord2 = nt::mult_order(ctx, 2);
    const unsigned v2 = two_adic_valuation(ord2);
    return verdict(from_bool(v2 >= 2), Criterion::b22_order_of_two, {{"ord_2", as_int(ord2)}, {"v2_ord_2", i64{v2}}});
  }
  if (k1 == 1 && k2 == 3) {
    if (p % 8 == 5) {
      const bool quartic = nt::is_power_residue(ctx, 6, 4);
      return verdict(from_bool(quartic), Criterion::b13_quartic, {{"p_mod_8", i64{5}}, {"six_quartic_residue", quartic}});
    }
    const u64 ord = nt::mult_order(ctx, ctx.resolve(SignedRational{-3, 2}));
    const u64 ord2 = nt::mult_order(ctx, 2);
    return verdict(from_bool(ord % 2 == 1 && ord2 % 4 == 0), Criterion::b13_orders,
                   {{"p_mod_8", i64{1}}, {"ord_minus_3_over_2", as_int(ord)}, {"ord_2", as_int(ord2)}});
  }
  if (k1 == 2 && k2 == 4) return criterion_24(ctx);
  if (k1 == 4 && k2 == 4) return criterion_44(ctx);
  if (k1 == 0 && k2 == 4) return criterion_04(ctx);
  const bool mu_row = (k1 == k2 && is_odd_prime(k1)) || (k1 == 0 && is_odd_prime(k2)) ||
                      nt::gcd((p - 1) / n, n) == 1;
  if (mu_row) return exists_via_mu(make_mu_input(ctx, k1, k2));
  return verdict(Existence::no_criterion, Criterion::none, {{"gcd_index_weight", as_int(nt::gcd((p - 1) / n, n))}});
}

MuCriterionInput make_mu_input(const PrimeContext& ctx, u64 k1, u64 k2) {
  const u64 p = ctx.p();
  const u64 n = k1 + k2;
  if (p <= k2) throw PreconditionError("mu criterion: p <= k2");
  auto ind = [&](i64 j) { return nt::discrete_log(ctx, ctx.resolve(j)); };
  MuCriterionInput in{ctx, k1, k2, MuRow::coprime_index, 0, n, {}};
  std::vector<i64> defining;  // j whose indices define mu
  std::vector<i64> range;     // j whose residues are tested
  if (k1 == k2 && is_odd_prime(k1)) {
    in.row = MuRow::symmetric_prime;
    in.modulus = k1;
    defining.push_back(-1);
    for (i64 j = 1; j <= static_cast<i64>(k1); ++j) defining.push_back(j);
    for (i64 j = 1; j <= static_cast<i64>(k1); ++j) range.push_back(j);
  } else if (k1 == 0 && is_odd_prime(k2)) {
    in.row = MuRow::zero_prime;
    in.modulus = k2;
    for (i64 j = 2; j <= static_cast<i64>(k2); ++j) defining.push_back(j);
    defining.push_back(static_cast<i64>(p - 1));
    for (i64 j = 1; j <= static_cast<i64>(k2); ++j) range.push_back(j);
  } else {
    if ((p - 1) % n != 0 || nt::gcd((p - 1) / n, n) != 1) {
      throw PreconditionError("mu criterion: needs k1 = k2 an odd prime, k1 = 0 with k2 an odd prime, or "
                              "gcd((p-1)/(k1+k2), k1+k2) = 1");
    }
    in.row = MuRow::coprime_index;
    in.modulus = n;
    defining.push_back(-1);
    for (i64 j = 1; j <= static_cast<i64>(k2); ++j) defining.push_back(j);
    for (i64 j = -static_cast<i64>(k1); j <= static_cast<i64>(k2); ++j) {
      if (j != 0) range.push_back(j);
    }
  }
  u64 mu = p - 1;
  for (i64 j : defining) mu = nt::gcd(mu, ind(j));
  in.mu = mu;
  for (i64 j : range) in.index_residues.push_back((ind(j) / mu) % in.modulus);
  return in;
}

ExistenceVerdict exists_via_mu(const MuCriterionInput& in) {
  const u64 p = in.ctx.p();
  u64 required = in.mu * in.modulus;
  Criterion c = Criterion::mu_coprime_index;
  if (in.row == MuRow::symmetric_prime) {
    required *= 2;
    c = Criterion::mu_symmetric_prime;
  } else if (in.row == MuRow::zero_prime) {
    c = Criterion::mu_zero_prime;
  }
  const std::set<u64> distinct(in.index_residues.begin(), in.index_residues.end());
  const u64 rem = (p - 1) % required;
  std::vector<i64> residues(in.index_residues.begin(), in.index_residues.end());
  return verdict(from_bool(rem == 0 && distinct.size() == in.modulus), c,
                 {{"mu", as_int(in.mu)},
                  {"required_modulus", as_int(required)},
                  {"p_minus_1_mod_required", as_int(rem)},
                  {"modulus", as_int(in.modulus)},
                  {"index_residues", std::move(residues)},
                  {"distinct_residues", as_int(distinct.size())}});
}

ExistenceVerdict exists_24_residue_shortcut(const PrimeContext& ctx) {
  const u64 r = ctx.p() % 36;
  if (r != 7 && r != 31) throw PreconditionError("cubic-residue shortcut needs p = 7 or 31 (mod 36)");
  const bool six = nt::is_power_residue(ctx, 6, 3);
  const bool two = nt::is_power_residue(ctx, 2, 3);
  const bool three = nt::is_power_residue(ctx, 3, 3);
  return verdict(from_bool(six && !two && !three), Criterion::b24_cubic_residues,
                 {{"p_mod_36", as_int(r)}, {"six_cubic", six}, {"two_cubic", two}, {"three_cubic", three}});
}

ExistenceVerdict exists_04_residue_shortcut(const PrimeContext& ctx) {
  if (ctx.p() % 8 != 5) throw PreconditionError("quartic-residue shortcut needs p = 5 (mod 8)");
  const bool six = nt::is_power_residue(ctx, 6, 4);
  return verdict(from_bool(six), Criterion::b04_quartic_residue, {{"p_mod_8", i64{5}}, {"six_quartic", six}});
}

ExistenceVerdict exists_44_mod16_rule(u64 p) {
  if (p % 16 != 9) throw PreconditionError("mod-16 rule needs p = 9 (mod 16)");
  return verdict(Existence::not_exists, Criterion::b44_mod16, {{"p_mod_16", i64{9}}});
}

Existence reevaluate(const ExistenceVerdict& v) {
  switch (v.criterion) {
    case Criterion::none:
      return Existence::no_criterion;
    case Criterion::weight_divides:
      return from_bool(get_int(v, "p_minus_1_mod_weight") == 0);
    case Criterion::trivial:
      return Existence::exists;
    case Criterion::odd_weight_asymmetric: {
      const i64 k1 = get_int(v, "k1");
      const i64 k2 = get_int(v, "k2");
      return from_bool(!(k1 >= 1 && k1 < k2 && (k1 + k2) % 2 == 1));
    }
    case Criterion::b02_order_of_two:
      return from_bool(get_int(v, "ord_2") % 2 == 0);
    case Criterion::b22_order_of_two:
      return from_bool(get_int(v, "ord_2") % 4 == 0);
    case Criterion::b13_quartic:
      return from_bool(get_bool(v, "six_quartic_residue"));
    case Criterion::b13_orders:
      return from_bool(get_int(v, "ord_minus_3_over_2") % 2 == 1 && get_int(v, "ord_2") % 4 == 0);
    case Criterion::b24_subgroup:
      return from_bool(get_int(v, "ord_minus_3_over_4") % 2 == 1 && !get_bool(v, "two_in_6_8"));
    case Criterion::b44_subgroup:
      return from_bool(!get_bool(v, "plus4_in_6_16") && !get_bool(v, "minus4_in_6_16"));
    case Criterion::b04_subgroup:
      return from_bool(!get_bool(v, "four_in_6_16"));
    case Criterion::mu_symmetric_prime:
    case Criterion::mu_zero_prime:
    case Criterion::mu_coprime_index: {
      const auto* residues = v.find("index_residues");
      if (residues == nullptr || !std::holds_alternative<std::vector<i64>>(*residues)) {
        throw PreconditionError("evidence missing 'index_residues'");
      }
      const auto& list = std::get<std::vector<i64>>(*residues);
      const std::set<i64> distinct(list.begin(), list.end());
      return from_bool(get_int(v, "p_minus_1_mod_required") == 0 &&
                       static_cast<i64>(distinct.size()) == get_int(v, "modulus"));
    }
    case Criterion::b24_cubic_residues:
      return from_bool(get_bool(v, "six_cubic") && !get_bool(v, "two_cubic") && !get_bool(v, "three_cubic"));
    case Criterion::b04_quartic_residue:
      return from_bool(get_bool(v, "six_quartic"));
    case Criterion::b44_mod16:
      return from_bool(get_int(v, "p_mod_16") != 9);
  }
  return Existence::no_criterion;
}

namespace {

void require_exists(const PrimeContext& ctx, u64 k1, u64 k2) {
  const auto v = exists_perfect(ctx, k1, k2);
  if (!v.exists()) {
    throw NonexistenceError("no nonsingular perfect B[-" + std::to_string(k1) + "," + std::to_string(k2) + "](" +
                            std::to_string(ctx.p()) + ") set exists (" + std::string(to_string(v.criterion)) + ")");
  }
}

PerfectConstruction extend(const PrimeContext& ctx, u64 k1, u64 k2, SubgroupDescriptor H, std::vector<u64> cofactor,
                           std::vector<EvidenceItem> trace) {
  const SplitterInstance inst(ctx.p(), k1, k2);
  FactorizationWitness w{std::move(H), std::move(cofactor)};
  auto set = coset_extend(w, inst);
  auto reps = nt::coset_representatives(w.subgroup, nt::whole_group(ctx));
  trace.push_back({"d_H", as_int(w.subgroup.d())});
  trace.push_back({"coset_count", as_int(reps.size())});
  return PerfectConstruction{std::move(set), std::move(w), std::move(reps), std::move(trace)};
}

}  // namespace

PerfectConstruction build_24(const PrimeContext& ctx) {
  require_exists(ctx, 2, 4);
  const SignedRational c{-4, 3};
  const auto K = nt::subgroup_generated(ctx, {{6}, c});
  const auto C = nt::subgroup_generated(ctx, {c});
  const u64 ord6 = nt::mult_order(ctx, 6);
  std::vector<u64> elems;
  if (ord6 % 2 == 0) {
    // -1 lies in K. B must hold one of each {x, -x} and be closed under
    // multiplication by -4/3 (else 3b = 4b' for some b, b'), so take one coset
    // of <-4/3> from each negation pair, the one whose representative has
    // index below (p-1)/2.
    const u64 half = (ctx.p() - 1) / 2;
    const auto c_elems = C.elements();
    for (u64 s : nt::coset_representatives(C, K, nt::CosetChoice::negation_paired)) {
      if (nt::discrete_log(ctx, s) >= half) continue;
      for (u64 x : c_elems) elems.push_back(ctx.mul(s, x));
    }
  } else {
    elems = K.elements_by_index();
  }
  std::vector<EvidenceItem> trace{{"ord_6", as_int(ord6)},
                                  {"ind_6", as_int(nt::discrete_log(ctx, 6))},
                                  {"ind_minus_4_over_3", as_int(nt::discrete_log(ctx, ctx.resolve(c)))},
                                  {"ord_minus_4_over_3", as_int(C.order())},
                                  {"d_6_minus_4_over_3", as_int(K.d())},
                                  {"halved_by_sign", ord6 % 2 == 0}};
  return extend(ctx, 2, 4, nt::subgroup_generated(ctx, {{-1}, {2}, {3}}), std::move(elems), std::move(trace));
}

PerfectConstruction build_44(const PrimeContext& ctx) {
  require_exists(ctx, 4, 4);
  const u64 half = (ctx.p() - 1) / 2;
  const u64 a = nt::gcd(half, nt::gcd(nt::discrete_log(ctx, 6), nt::discrete_log(ctx, 16)));
  u64 u = 1;
  while (half % ((u64{1} << u) * a) == 0) ++u;
  const u64 kd = (u64{1} << u) * a;
  const SubgroupDescriptor L(ctx, a);    // <6,16> = <g^a>, -1 included
  const SubgroupDescriptor K(ctx, kd);   // <g^(2^u a)>, -1 excluded
  const auto S = nt::coset_representatives(K, L, nt::CosetChoice::negation_paired);
  std::vector<u64> s_prime;
  for (u64 s : S) {
    if (nt::discrete_log(ctx, s) < half) s_prime.push_back(s);
  }
  std::sort(s_prime.begin(), s_prime.end());
  const auto k_elems = K.elements();
  std::vector<u64> cofactor;
  cofactor.reserve(s_prime.size() * k_elems.size());
  for (u64 s : s_prime) {
    for (u64 x : k_elems) cofactor.push_back(ctx.mul(s, x));
  }
  std::vector<i64> s_list(S.begin(), S.end());
  std::sort(s_list.begin(), s_list.end());
  std::vector<i64> s_prime_list(s_prime.begin(), s_prime.end());
  std::vector<i64> k_list(k_elems.begin(), k_elems.end());
  std::vector<EvidenceItem> trace{{"a", as_int(a)},
                                  {"u", as_int(u)},
                                  {"d_6_16", as_int(nt::subgroup_generated(ctx, {{6}, {16}}).d())},
                                  {"K", std::move(k_list)},
                                  {"S", std::move(s_list)},
                                  {"S_prime", std::move(s_prime_list)}};
  return extend(ctx, 4, 4, nt::subgroup_generated(ctx, {{-1}, {2}, {3}}), std::move(cofactor), std::move(trace));
}

PerfectConstruction build_04(const PrimeContext& ctx) {
  require_exists(ctx, 0, 4);
  const auto L = nt::subgroup_generated(ctx, {{6}, {16}});
  // <1,2,3,4> = <2,3> = {1,2,3,4} * <6,16>
  const auto H = nt::subgroup_generated(ctx, {{2}, {3}});
  std::vector<EvidenceItem> trace{{"d_6_16", as_int(L.d())}};
  return extend(ctx, 0, 4, H, L.elements_by_index(), std::move(trace));
}

SplitterSet construct_24(const PrimeContext& ctx) { return build_24(ctx).set; }
SplitterSet construct_44(const PrimeContext& ctx) { return build_44(ctx).set; }
SplitterSet construct_04(const PrimeContext& ctx) { return build_04(ctx).set; }

std::vector<ScanEntry> scan_primes(u64 k1, u64 k2, u64 p_max) {
  if (k2 == 0 || k1 > k2) throw PreconditionError("scan_primes: need 0 <= k1 <= k2, k2 >= 1");
  const u64 n = k1 + k2;
  std::vector<ScanEntry> out;
  for (u64 p = std::max<u64>(k2 + 1, 2); p <= p_max; ++p) {
    if ((p - 1) % n != 0 || !nt::is_prime(p)) continue;
    const PrimeContext ctx(p);
    out.push_back({p, exists_perfect(ctx, k1, k2)});
  }
  return out;
}

std::vector<u64> existing_primes(const std::vector<ScanEntry>& scan) {
  std::vector<u64> out;
  for (const auto& e : scan) {
    if (e.verdict.exists()) out.push_back(e.p);
  }
  return out;
}

i64 evaluate_form(int form_id, i64 k, i64 l) {
  switch (form_id) {
    case 1:
      return 1296 * k * k - 648 * k * l + 324 * l * l + 36 * k + 72 * l + 7;
    case 2:
      return 1296 * k * k - 648 * k * l + 324 * l * l + 1764 * k - 360 * l + 607;
    case 3:
      return 36 * k * k - 108 * k * l + 324 * l * l - 102 * k + 558 * l + 241;
    default:
      throw PreconditionError("quadratic form id must be 1, 2 or 3");
  }
}

std::vector<FormPrime> quadratic_form_family(int form_id, i64 k_lo, i64 k_hi, i64 l_lo, i64 l_hi) {
  if (form_id < 1 || form_id > 3) throw PreconditionError("quadratic form id must be 1, 2 or 3");
  std::vector<FormPrime> out;
  for (i64 k = k_lo; k <= k_hi; ++k) {
    for (i64 l = l_lo; l <= l_hi; ++l) {
      if (form_id == 3) {
        const i64 r = ((k + 3 * l) % 6 + 6) % 6;
        if (r != 1 && r != 3) continue;
      }
      const i64 v = evaluate_form(form_id, k, l);
      if (v >= 2 && nt::is_prime(static_cast<u64>(v))) out.push_back({v, k, l});
    }
  }
  std::sort(out.begin(), out.end(), [](const FormPrime& x, const FormPrime& y) {
    return std::tie(x.p, x.k, x.l) < std::tie(y.p, y.k, y.l);
  });
  return out;
}

}  // namespace splitter::perfect
