#pragma once

// Text format for maps.  Grammar (one directive per line; '#' starts a
// comment; blank lines ignored):
//
//   attach = <rational>
//   line:
//     <rational> -> <point>
//     ...
//   branch:
//     <rational> -> <point>
//     ...
//
// where <rational> is "p" or "p/q" and <point> is "L <rational>" or
// "B <integer> <rational>".  Line coordinates must start at the attachment
// offset and end at attachment + 1; branch coordinates run from 0 to 1.

#include "sigmarot/pa_map.hpp"

#include <string>

namespace sigmarot {

struct MapParseError : std::runtime_error {
  int lineno;
  MapParseError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), lineno(line) {}
};

// Parses and validates; throws MapParseError with a 1-based line number on
// malformed input, std::invalid_argument on a well-formed but invalid map.
PAMap parse_map(const std::string& text);
PAMap load_map(const std::string& path);

std::string write_map(const PAMap& m);

}  // namespace sigmarot
