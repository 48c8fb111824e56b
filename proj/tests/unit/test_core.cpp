#include <random>
#include <set>

#include "doctest.h"
#include "oracle.hpp"
#include "splitter/core.hpp"
#include "splitter/error.hpp"

using namespace splitter;

namespace {

const std::vector<u64> kB44_97{1, 5, 6, 14, 16, 30, 35, 61, 75, 78, 80, 84};

std::vector<u64> random_subset(u64 q, std::size_t n, std::mt19937_64& rng) {
  std::set<u64> s;
  while (s.size() < std::min<std::size_t>(n, q - 1)) s.insert(1 + rng() % (q - 1));
  return {s.begin(), s.end()};
}

}  // namespace

TEST_CASE("instance") {
  const SplitterInstance inst(40, 3, 3);
  CHECK(inst.weight() == 6);
  CHECK(inst.size_bound() == 6);
  CHECK_FALSE(inst.admits_perfect());
  CHECK(inst.multipliers() == std::vector<i64>{-3, -2, -1, 1, 2, 3});
  CHECK(SplitterInstance(97, 4, 4).nonsingular());
  CHECK_FALSE(SplitterInstance(35, 0, 5).nonsingular());
  CHECK_THROWS_AS(SplitterInstance(1, 0, 1), PreconditionError);
  CHECK_THROWS_AS(SplitterInstance(10, 3, 2), PreconditionError);
  CHECK_THROWS_AS(SplitterInstance(10, 0, 0), PreconditionError);
  CHECK_THROWS_AS(SplitterSet(inst, {0}), PreconditionError);
  CHECK_THROWS_AS(SplitterSet(inst, {40}), PreconditionError);
  CHECK_THROWS_AS(SplitterSet(inst, {3, 3}), PreconditionError);
  CHECK(SplitterSet(inst, {9, 1, 4}).elements() == std::vector<u64>{1, 4, 9});
}

TEST_CASE("expand") {
  CHECK(expand(SplitterInstance(40, 3, 3), 1) == std::vector<u64>{37, 38, 39, 1, 2, 3});
  CHECK(expand(SplitterInstance(97, 4, 4), 5) == std::vector<u64>{77, 82, 87, 92, 5, 10, 15, 20});
  CHECK(expand(SplitterInstance(10, 0, 5), 2) == std::vector<u64>{2, 4, 6, 8, 0});
  CHECK_THROWS_AS(expand(SplitterInstance(10, 0, 5), 10), PreconditionError);
}

TEST_CASE("verify examples") {
  CHECK(verify(SplitterSet(SplitterInstance(40, 3, 3), {1, 4, 9, 17, 25, 33})).valid);
  CHECK(verify(SplitterSet(SplitterInstance(13, 0, 3), {})).valid);

  const auto bad = verify(SplitterSet(SplitterInstance(13, 0, 3), {1, 2}));
  REQUIRE_FALSE(bad.valid);
  REQUIRE(bad.violation);
  CHECK(*bad.violation == Violation{Violation::Kind::collision, 1, 2, 2, 1, 2});
  CHECK(bad.violation->describe(13) == "2*1 = 1*2 = 2 (mod 13)");

  // A zero product outranks any collision.
  const auto zero = verify(SplitterSet(SplitterInstance(10, 0, 5), {1, 2}));
  REQUIRE(zero.violation);
  CHECK(zero.violation->kind == Violation::Kind::zero_product);
  CHECK(zero.violation->b1 == 2);
  CHECK(zero.violation->m1 == 5);

  // A repeated residue inside one expansion.
  const auto self = verify(SplitterSet(SplitterInstance(9, 2, 2), {3}));
  REQUIRE(self.violation);
  CHECK(self.violation->kind == Violation::Kind::collision);
  CHECK(self.violation->b1 == self.violation->b2);
}

TEST_CASE("verify matches the pairwise definition") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 4000; ++t) {
    const u64 k2 = 1 + rng() % 5;
    const u64 k1 = rng() % (k2 + 1);
    const u64 q = 2 + rng() % 150;
    const auto B = random_subset(q, rng() % 6, rng);
    const SplitterSet s(SplitterInstance(q, k1, k2), B);
    const bool valid = verify(s).valid;
    CHECK(valid == oracle::verify(q, k1, k2, B));
    if (valid) CHECK(s.size() <= s.instance().size_bound());
  }
}

TEST_CASE("classify") {
  CHECK(classify(SplitterSet(SplitterInstance(97, 4, 4), kB44_97)).kind == SetKind::perfect);
  CHECK(classify(SplitterSet(SplitterInstance(35, 0, 5), {1, 6, 11, 16, 26, 31})).kind == SetKind::quasi_perfect);
  CHECK(classify(SplitterSet(SplitterInstance(9, 0, 2), {})).kind == SetKind::valid_non_maximal);
  CHECK(classify(SplitterSet(SplitterInstance(13, 0, 3), {1, 2})).kind == SetKind::invalid);
  const auto c = classify(SplitterSet(SplitterInstance(40, 3, 3), {1, 4, 9, 17, 25, 33}));
  CHECK(c.kind == SetKind::quasi_perfect);
  CHECK(c.size == 6);
  CHECK(c.bound == 6);
  CHECK(to_string(SetKind::valid_non_maximal) == "ValidNonMaximalOrUnknown");
}

TEST_CASE("scale") {
  const SplitterSet b97(SplitterInstance(97, 4, 4), kB44_97);
  CHECK(scale(b97, 1) == b97);
  const auto s5 = scale(b97, 5);
  CHECK(verify(s5).valid);
  CHECK(classify(s5).kind == SetKind::perfect);
  const SplitterSet b35(SplitterInstance(35, 0, 5), {1, 6, 11, 16, 26, 31});
  CHECK(classify(scale(b35, 2)).kind == SetKind::quasi_perfect);
  CHECK_THROWS_AS(scale(b35, 5), PreconditionError);
}

TEST_CASE("compose") {
  const SplitterSet e1(SplitterInstance(7, 0, 2), {}), e2(SplitterInstance(5, 0, 2), {});
  CHECK(compose(e1, e2).size() == 0);
  CHECK(compose(e1, e2).instance().q() == 35);

  // {1,3} is valid but not perfect over 7 (a perfect B[0,2](7) set needs 3 elements).
  const SplitterSet b7(SplitterInstance(7, 0, 2), {1, 3});
  const auto c49 = compose(b7, b7);
  CHECK(c49.size() == 16);
  CHECK(verify(c49).valid);
  CHECK(classify(c49).kind == SetKind::valid_non_maximal);
  CHECK(c49.elements() == std::vector<u64>{1, 3, 7, 8, 10, 15, 17, 21, 22, 24, 29, 31, 36, 38, 43, 45});

  // {1,4} is perfect over 5; the composition is perfect over 25.
  const SplitterSet b5(SplitterInstance(5, 0, 2), {1, 4});
  CHECK(classify(b5).kind == SetKind::perfect);
  const auto c25 = compose(b5, b5);
  CHECK(c25.size() == 12);
  CHECK(classify(c25).kind == SetKind::perfect);

  CHECK_THROWS_AS(compose(b7, SplitterSet(SplitterInstance(5, 1, 2), {})), PreconditionError);
  CHECK_THROWS_AS(compose(b7, SplitterSet(SplitterInstance(4, 0, 2), {})), PreconditionError);
}

TEST_CASE("check_factorization") {
  const nt::PrimeContext c139(139);
  const auto h139 = nt::subgroup_generated(c139, {{6}, {45}});
  CHECK_FALSE(check_factorization({h139, h139.elements()}, SplitterInstance(139, 2, 4)));

  const nt::PrimeContext c97(97, 5);
  const auto h97 = nt::subgroup_generated(c97, {{-1}, {2}, {3}});
  std::vector<u64> cofactor;
  for (u64 s : {1, 6}) {
    for (u64 x : {1, 35, 61}) cofactor.push_back(c97.mul(s, x));
  }
  const FactorizationWitness w{h97, cofactor};
  CHECK(check_factorization(w, SplitterInstance(97, 4, 4)));
  CHECK(coset_extend(w, SplitterInstance(97, 4, 4)).elements() == kB44_97);

  const nt::PrimeContext c7(7);
  const nt::SubgroupDescriptor trivial(c7, 6);
  CHECK(check_factorization({trivial, {1}}, SplitterInstance(7, 0, 1)));

  CHECK_THROWS_AS(coset_extend({h139, h139.elements()}, SplitterInstance(139, 2, 4)), PreconditionError);
}

TEST_CASE("coset_extend over the whole group returns the cofactor") {
  const nt::PrimeContext c139(139);
  const auto whole = nt::subgroup_generated(c139, {{-1}, {2}, {3}});
  CHECK(whole.order() == 138);
  const auto h = nt::subgroup_generated(c139, {{6}, {45}});
  const auto set = coset_extend({whole, h.elements()}, SplitterInstance(139, 2, 4));
  CHECK(set.elements() == h.elements());
  CHECK(classify(set).kind == SetKind::perfect);
}
