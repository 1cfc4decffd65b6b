#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sigmarot/space.hpp"

#include <stdexcept>

using namespace sigmarot;

TEST_CASE("rational helpers") {
  CHECK(rat(2, 4) == rat(1, 2));
  CHECK(rat(-2, 4) == rat(-1, 2));
  CHECK(rat_str(rat(1, 2)) == "1/2");
  CHECK(rat_str(rat(5)) == "5/1");
  CHECK(rat_str(rat(0)) == "0/1");
  CHECK(rat_str(rat(-3, 4)) == "-3/4");
  CHECK(rat_pretty(rat(5)) == "5");
  CHECK(rat_pretty(rat(-3, 4)) == "-3/4");

  CHECK(floor_int(rat(7, 2)) == 3);
  CHECK(floor_int(rat(-7, 2)) == -4);
  CHECK(floor_int(rat(4)) == 4);
  CHECK(frac(rat(-7, 2)) == rat(1, 2));
  CHECK(frac(rat(3)) == rat(0));

  CHECK(rat_min(rat(1, 3), rat(1, 4)) == rat(1, 4));
  CHECK(rat_max(rat(1, 3), rat(1, 4)) == rat(1, 3));
  CHECK(rat_abs(rat(-5, 7)) == rat(5, 7));
  CHECK(rat_sign(rat(-5, 7)) == -1);
  CHECK(rat_sign(rat(0)) == 0);
  CHECK(rat_sign(rat(2)) == 1);

  CHECK(parse_rat("3/4").value() == rat(3, 4));
  CHECK(parse_rat("-3/4").value() == rat(-3, 4));
  CHECK(parse_rat("7").value() == rat(7));
  CHECK(parse_rat("+2/6").value() == rat(1, 3));
  CHECK(!parse_rat("1/0").has_value());
  CHECK(!parse_rat("abc").has_value());
  CHECK(!parse_rat("").has_value());
}

TEST_CASE("point canonicalization and translation") {
  SigmaSpace sp{rat(0)};

  // Height 0 is the attachment point itself.
  CHECK(sp.branch(0, rat(0)) == sp.line(rat(0)));
  CHECK(sp.branch(3, rat(0)) == sp.line(rat(3)));
  CHECK(sp.branch(0, rat(1, 2)).kind == PointKind::Branch);

  SigmaSpace sp2{rat(1, 2)};
  CHECK(sp2.branch(2, rat(0)) == sp2.line(rat(5, 2)));
  CHECK(sp2.attachment(0) == sp2.line(rat(1, 2)));

  CHECK(sp.translate(sp.line(rat(1, 3)), 2) == sp.line(rat(7, 3)));
  CHECK(sp.translate(sp.branch(0, rat(1, 5)), -3) == sp.branch(-3, rat(1, 5)));
  BranchSegment seg{0, rat(1, 4), rat(1, 2)};
  BranchSegment moved = sp.translate(seg, 5);
  CHECK(moved.copy == 5);
  CHECK(moved.lo == rat(1, 4));
  CHECK(moved.hi == rat(1, 2));

  CHECK(sp.retract(sp.line(rat(-7, 3))) == rat(-7, 3));
  CHECK(sp.retract(sp.branch(4, rat(1, 2))) == rat(4));
  CHECK(sp2.retract(sp2.branch(4, rat(1, 2))) == rat(9, 2));

  CHECK(sp.height(sp.line(rat(5))) == rat(0));
  CHECK(sp.height(sp.branch(1, rat(2, 3))) == rat(2, 3));
}

TEST_CASE("path lengths and geodesics") {
  SigmaSpace sp{rat(0)};
  Point a = sp.branch(0, rat(1, 2));
  Point b = sp.branch(1, rat(1, 2));

  CHECK(sp.path_length(sp.line(rat(0)), sp.line(rat(5, 4))) == rat(5, 4));
  CHECK(sp.path_length(a, sp.branch(0, rat(3, 4))) == rat(1, 4));
  CHECK(sp.path_length(a, b) == rat(2));
  CHECK(sp.path_length(a, sp.line(rat(1, 4))) == rat(3, 4));
  CHECK(sp.path_length(a, a) == rat(0));

  // Walk from one branch to the next: down, along the line, up.
  CHECK(sp.geodesic_eval(a, b, rat(0)) == a);
  CHECK(sp.geodesic_eval(a, b, rat(1, 4)) == sp.line(rat(0)));
  CHECK(sp.geodesic_eval(a, b, rat(1, 2)) == sp.line(rat(1, 2)));
  CHECK(sp.geodesic_eval(a, b, rat(7, 8)) == sp.branch(1, rat(1, 4)));
  CHECK(sp.geodesic_eval(a, b, rat(1)) == b);

  std::vector<Arc> arcs = sp.geodesic_arcs(a, b);
  REQUIRE(!arcs.empty());
  CHECK(arcs.front().a == a);
  CHECK(arcs.back().b == b);
  Rat total = rat(0);
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    total += sp.path_length(arcs[i].a, arcs[i].b);
    if (i + 1 < arcs.size()) CHECK(arcs[i].b == arcs[i + 1].a);
  }
  CHECK(total == rat(2));

  // Degenerate geodesic.
  std::vector<Arc> self = sp.geodesic_arcs(a, a);
  REQUIRE(self.size() == 1);
  CHECK(self[0].a == a);
  CHECK(self[0].b == a);
}

TEST_CASE("branch segments") {
  SigmaSpace sp{rat(0)};
  BranchSegment mid{0, rat(1, 4), rat(1, 2)};
  BranchSegment full{0, rat(0), rat(1, 2)};

  CHECK(sp.min_point(mid) == sp.branch(0, rat(1, 4)));
  CHECK(sp.max_point(mid) == sp.branch(0, rat(1, 2)));
  CHECK(sp.min_point(full) == sp.line(rat(0)));

  CHECK(sp.segment_contains(mid, sp.branch(0, rat(1, 4))));
  CHECK(sp.segment_contains(mid, sp.branch(0, rat(3, 8))));
  CHECK(sp.segment_contains(mid, sp.branch(0, rat(1, 2))));
  CHECK(!sp.segment_contains(mid, sp.line(rat(0))));
  CHECK(!sp.segment_contains(mid, sp.branch(0, rat(5, 8))));
  CHECK(!sp.segment_contains(mid, sp.branch(1, rat(3, 8))));
  CHECK(sp.segment_contains(full, sp.line(rat(0))));
  CHECK(!sp.segment_contains(full, sp.line(rat(1, 4))));

  // Retraction onto a segment: interior points stay, the line side lands on
  // the lowest point, points strictly above the segment are out of scope.
  CHECK(sp.retract_to_segment(sp.branch(0, rat(3, 8)), mid) ==
        sp.branch(0, rat(3, 8)));
  CHECK(sp.retract_to_segment(sp.line(rat(5)), mid) == sp.branch(0, rat(1, 4)));
  CHECK(sp.retract_to_segment(sp.branch(2, rat(1, 2)), mid) ==
        sp.branch(0, rat(1, 4)));
  CHECK_THROWS_AS(sp.retract_to_segment(sp.branch(0, rat(3, 4)), mid),
                  std::domain_error);
}

TEST_CASE("point text form") {
  SigmaSpace sp{rat(0)};
  CHECK(sp.point_str(sp.line(rat(0))) == "L 0/1");
  CHECK(sp.point_str(sp.line(rat(-2, 3))) == "L -2/3");
  CHECK(sp.point_str(sp.branch(0, rat(1, 5))) == "B 0 1/5");
  CHECK(sp.point_str(sp.branch(-2, rat(1))) == "B -2 1/1");

  CHECK(sp.parse_point("L 3/4").value() == sp.line(rat(3, 4)));
  CHECK(sp.parse_point("B -1 1/1").value() == sp.branch(-1, rat(1)));
  CHECK(sp.parse_point("B 0 0/1").value() == sp.line(rat(0)));
  CHECK(!sp.parse_point("X 1").has_value());
  CHECK(!sp.parse_point("B 0").has_value());
  CHECK(!sp.parse_point("B 0 3/2").has_value());
  CHECK(!sp.parse_point("L 1/2 junk").has_value());
  CHECK(!sp.parse_point("").has_value());

  // Round trips.
  for (const Point& p : {sp.line(rat(-7, 5)), sp.branch(3, rat(2, 9)),
                         sp.line(rat(0)), sp.branch(-1, rat(1))}) {
    CHECK(sp.parse_point(sp.point_str(p)).value() == p);
  }

  CHECK(point_less_on_branch(sp, sp.line(rat(0)), sp.branch(0, rat(1, 8))));
  CHECK(point_less_on_branch(sp, sp.branch(0, rat(1, 8)), sp.branch(0, rat(1))));
  CHECK(!point_less_on_branch(sp, sp.branch(0, rat(1)), sp.branch(0, rat(1, 8))));
}
