#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sigmarot/map_file.hpp"
#include "support/fixtures.hpp"

#include <stdexcept>

using namespace sigmarot;

namespace {

bool same_map(const PAMap& a, const PAMap& b) {
  if (a.space.attach_offset() != b.space.attach_offset()) return false;
  if (a.line.size() != b.line.size() || a.branch.size() != b.branch.size())
    return false;
  for (std::size_t i = 0; i < a.line.size(); ++i)
    if (a.line[i].x != b.line[i].x || a.line[i].img != b.line[i].img)
      return false;
  for (std::size_t i = 0; i < a.branch.size(); ++i)
    if (a.branch[i].x != b.branch[i].x || a.branch[i].img != b.branch[i].img)
      return false;
  return true;
}

int lineno_of(const std::string& text) {
  try {
    parse_map(text);
  } catch (const MapParseError& e) {
    return e.lineno;
  } catch (...) {
    return -2;
  }
  return -1;
}

}  // namespace

TEST_CASE("loading the shipped example") {
  PAMap m = load_map(std::string(SIGMAROT_DATA) + "/sigma_example.map");
  CHECK(same_map(m, fixtures::make_primary()));
}

TEST_CASE("write and parse round trip") {
  for (const PAMap& m :
       {fixtures::make_primary(), fixtures::make_two_component(),
        fixtures::make_no_edges(), fixtures::make_anchor(),
        fixtures::make_absorbed(), fixtures::make_rigid(-2, 3)}) {
    PAMap back = parse_map(write_map(m));
    CHECK(same_map(m, back));
  }
}

TEST_CASE("comments and blank lines are tolerated") {
  PAMap m = parse_map(
      "# heading\n"
      "\n"
      "attach = 0   # trailing comment\n"
      "line:\n"
      "  0 -> L 0\n"
      "\n"
      "  1 -> L 1\n"
      "branch:\n"
      "  0 -> L 0\n"
      "  1 -> L 0\n");
  CHECK(same_map(m, fixtures::make_rigid(0, 1)));
}

TEST_CASE("parse errors carry line numbers") {
  // Missing attach directive.
  CHECK(lineno_of("line:\n  0 -> L 0\n") == 1);
  // Malformed rational.
  CHECK(lineno_of("attach = x\n") == 1);
  CHECK(lineno_of("attach = 0\nline:\n  0/0 -> L 0\n") == 3);
  // Malformed point.
  CHECK(lineno_of("attach = 0\nline:\n  0 -> Q 1\n") == 3);
  // Entry before any section header.
  CHECK(lineno_of("attach = 0\n0 -> L 0\n") == 2);
  // Branch section before the line section.
  CHECK(lineno_of("attach = 0\nbranch:\n  0 -> L 0\n") == 2);
  // Attach offset out of range.
  CHECK(lineno_of("attach = 3/2\n") == 1);
  // Junk directive.
  CHECK(lineno_of("attach = 0\nline:\n  0 -> L 0\n  1 -> L 1\nwhat\n") == 5);
}

TEST_CASE("well-formed but inconsistent maps are rejected") {
  // Line endpoints do not differ by the unit translation.
  CHECK_THROWS_AS(parse_map("attach = 0\n"
                            "line:\n"
                            "  0 -> L 0\n"
                            "  1 -> L 3/2\n"
                            "branch:\n"
                            "  0 -> L 0\n"
                            "  1 -> L 0\n"),
                  std::invalid_argument);
  // Branch bottom image disagrees with the attachment image.
  CHECK_THROWS_AS(parse_map("attach = 0\n"
                            "line:\n"
                            "  0 -> L 0\n"
                            "  1 -> L 1\n"
                            "branch:\n"
                            "  0 -> L 1/2\n"
                            "  1 -> L 1/2\n"),
                  std::invalid_argument);
}
