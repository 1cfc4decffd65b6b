#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sigmarot/covering.hpp"
#include "support/fixtures.hpp"

#include <stdexcept>

using namespace sigmarot;

namespace {

// Re-verify a cover step from scratch: witnesses inside the source, ordered,
// and their images straddle the translated target.
void check_step(const PAMap& m, const CoverStep& s) {
  const SigmaSpace& sp = m.space;
  CHECK(sp.segment_contains(s.source, s.witness_lo));
  CHECK(sp.segment_contains(s.source, s.witness_hi));
  CHECK(sp.height(s.witness_lo) <= sp.height(s.witness_hi));
  Point lo = sp.translate(iterate(m, s.witness_lo, s.n), -s.p);
  Point hi = sp.translate(iterate(m, s.witness_hi, s.n), -s.p);
  // Low witness image sits at or below the bottom of the target branch
  // interval (possibly on the line side), high witness at or above its top.
  if (lo.kind == PointKind::Branch) {
    CHECK(lo.copy == s.target.copy);
    CHECK(sp.height(lo) <= s.target.lo);
  }
  CHECK(hi.kind == PointKind::Branch);
  CHECK(hi.copy == s.target.copy);
  CHECK(sp.height(hi) >= s.target.hi);
}

}  // namespace

TEST_CASE("positive coverings") {
  PAMap m = fixtures::make_primary();
  Partition part = partition_XF(m);
  BranchSegment X1 = part.segments[0];  // [0, 1/2]
  BranchSegment X2 = part.segments[1];  // [3/4, 1]

  auto c12 = positively_covers(m, X1, X2, 0, 1);
  REQUIRE(c12.has_value());
  check_step(m, *c12);

  auto c21 = positively_covers(m, X2, X1, 1, 1);
  REQUIRE(c21.has_value());
  check_step(m, *c21);

  auto c11 = positively_covers(m, X1, X1, 0, 1);
  REQUIRE(c11.has_value());
  check_step(m, *c11);

  auto cfull = positively_covers(m, BranchSegment{0, rat(0), rat(1, 4)},
                                 BranchSegment{0, rat(0), rat(1)}, 0, 1);
  REQUIRE(cfull.has_value());
  check_step(m, *cfull);

  // Images never reach the top of the target: no covering.
  CHECK(!positively_covers(m, BranchSegment{0, rat(0), rat(1, 8)},
                           BranchSegment{0, rat(0), rat(1)}, 0, 1)
             .has_value());

  // The descent piece covers with reversed orientation only.
  CHECK(!positively_covers(m, BranchSegment{0, rat(1, 4), rat(1, 2)},
                           BranchSegment{0, rat(0), rat(1)}, 0, 1)
             .has_value());

  // Wrong translate.
  CHECK(!positively_covers(m, X1, X2, 1, 1).has_value());

  // Partition-reusing overload agrees.
  auto c12b = positively_covers(m, part, X1, X2, 0, 1);
  REQUIRE(c12b.has_value());
  CHECK(c12b->p == c12->p);
  CHECK(c12b->target == c12->target);
}

TEST_CASE("chain algebra") {
  PAMap m = fixtures::make_primary();
  Partition part = partition_XF(m);
  BranchSegment X1 = part.segments[0];
  BranchSegment X2 = part.segments[1];

  CoverStep s12 = *positively_covers(m, X1, X2, 0, 1);
  CoverStep s21 = *positively_covers(m, X2, X1, 1, 1);

  Chain c = make_chain({s12, s21});
  CHECK(c.length == 2);
  CHECK(c.weight == 1);
  CHECK(c.closed);

  Chain cc = chain_concat(c, c);
  CHECK(cc.length == c.length * 2);
  CHECK(cc.weight == c.weight * 2);
  CHECK(cc.closed);

  Chain c3 = chain_power(c, 3);
  CHECK(c3.length == 6);
  CHECK(c3.weight == 3);

  Chain up = chain_translate(c, 2);
  CHECK(up.steps[0].source == m.space.translate(X1, 2));
  CHECK(up.weight == c.weight);

  // Interfaces must match.
  CHECK_THROWS_AS(make_chain({s12, s12}), std::invalid_argument);
}

TEST_CASE("exact fixed points of chains") {
  PAMap m = fixtures::make_primary();
  const SigmaSpace& sp = m.space;
  Partition part = partition_XF(m);
  BranchSegment X1 = part.segments[0];
  BranchSegment X2 = part.segments[1];

  Chain self_top = make_chain({*positively_covers(m, X2, X2, 1, 1)});
  Point top = chain_fixed_point(m, self_top);
  CHECK(top == sp.branch(0, rat(1)));

  Chain two = make_chain({*positively_covers(m, X1, X2, 0, 1),
                          *positively_covers(m, X2, X1, 1, 1)});
  Point p2 = chain_fixed_point(m, two);
  CHECK(p2 == sp.branch(0, rat(1, 5)));
  CHECK(iterate(m, p2, 2) == sp.translate(p2, 1));
  // Intermediate image follows the chain.
  CHECK(sp.segment_contains(X2, evaluate(m, p2)));

  Chain self_bot = make_chain({*positively_covers(m, X1, X1, 0, 1)});
  Point bot = chain_fixed_point(m, self_bot);
  CHECK(evaluate(m, bot) == bot);
}

TEST_CASE("horseshoe chains interpolate means") {
  PAMap m = fixtures::make_primary();
  const SigmaSpace& sp = m.space;
  Partition part = partition_XF(m);
  BranchSegment X1 = part.segments[0];
  BranchSegment X2 = part.segments[1];

  Chain h = horseshoe_chain(m, X1, X2, 0, 1, 1, 1, 3);
  CHECK(h.length == 3);
  CHECK(h.weight == 1);
  CHECK(h.closed);
  Point x = chain_fixed_point(m, h);
  CHECK(iterate(m, x, 3) == sp.translate(x, 1));

  // Endpoint means collapse to the pure self-coverings.
  Chain h0 = horseshoe_chain(m, X1, X2, 0, 1, 1, 0, 1);
  CHECK(h0.length == 1);
  CHECK(h0.weight == 0);
  Chain h1 = horseshoe_chain(m, X1, X2, 0, 1, 1, 1, 1);
  CHECK(h1.length == 1);
  CHECK(h1.weight == 1);

  Chain h25 = horseshoe_chain(m, X1, X2, 0, 1, 1, 2, 5);
  CHECK(h25.length == 5);
  CHECK(h25.weight == 2);
  Point y = chain_fixed_point(m, h25);
  CHECK(iterate(m, y, 5) == sp.translate(y, 2));

  CHECK_THROWS_AS(horseshoe_chain(m, X1, X2, 0, 1, 1, 2, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(horseshoe_chain(m, X1, X2, 0, 1, 1, -1, 1),
                  std::invalid_argument);
}

TEST_CASE("leftmost self-anchored point") {
  PAMap m = fixtures::make_primary();
  Partition part = partition_XF(m);
  Point a = leftmost_anchor(m, part.segments[0], 0);
  CHECK(a == m.space.line(rat(0)));

  // The minimal-preimage walk converges without terminating; the affine tail
  // solve must find the limit exactly.
  PAMap an = fixtures::make_anchor();
  Partition ap = partition_XF(an);
  REQUIRE(ap.size() == 2);
  Point b = leftmost_anchor(an, ap.segments[0], 0, 50);
  CHECK(b == an.space.branch(0, rat(1, 3)));
  CHECK(evaluate(an, b) == b);
}

TEST_CASE("periodic points with prescribed mean") {
  PAMap m = fixtures::make_primary();
  const SigmaSpace& sp = m.space;
  Partition part = partition_XF(m);
  BranchSegment whole{0, rat(0), rat(1)};

  PeriodicResult half = find_periodic_mod1(m, 1, 2, whole, part);
  REQUIRE(half.found);
  CHECK(half.x == sp.branch(0, rat(1, 5)));
  CHECK(half.period == 2);
  CHECK(half.disp == 1);
  CHECK(iterate(m, half.x, half.period) == sp.translate(half.x, half.disp));

  PeriodicResult one = find_periodic_mod1(m, 1, 1, whole, part);
  REQUIRE(one.found);
  CHECK(one.x == sp.branch(0, rat(1)));
  CHECK(one.period == 1);
  CHECK(one.disp == 1);

  PeriodicResult zero = find_periodic_mod1(m, 0, 1, whole, part);
  REQUIRE(zero.found);
  CHECK(zero.x == sp.line(rat(0)));

  PeriodicResult third = find_periodic_mod1(m, 1, 3, whole, part);
  REQUIRE(third.found);
  CHECK(iterate(m, third.x, third.period) == sp.translate(third.x, third.disp));
  CHECK(rat(third.disp) / rat(long(third.period)) == rat(1, 3));

  PeriodicResult none = find_periodic_mod1(m, 2, 1, whole, part);
  CHECK(!none.found);
  CHECK(!none.note.empty());

  // Restricted region in the two-component example: mean 7/3 lives in the
  // upper component only.
  PAMap tc = fixtures::make_two_component();
  Partition tp = partition_XF(tc);
  BranchSegment upper{0, rat(5, 12), rat(1)};
  PeriodicResult sev = find_periodic_mod1(tc, 7, 3, upper, tp);
  REQUIRE(sev.found);
  CHECK(tc.space.segment_contains(upper, sev.x));
  CHECK(iterate(tc, sev.x, sev.period) == tc.space.translate(sev.x, sev.disp));
  CHECK(rat(sev.disp) * rat(3) == rat(7) * rat(long(sev.period)));
}
