#include "sigmarot/map_file.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace sigmarot {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

PAMap parse_map(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;

  bool have_attach = false;
  Rat attach(0);
  int section = 0;  // 0: expecting attach, 1: line entries, 2: branch entries
  std::vector<BreakPair> line, branch;
  std::optional<SigmaSpace> sp;

  while (std::getline(in, raw)) {
    ++lineno;
    std::string s = raw;
    if (auto pos = s.find('#'); pos != std::string::npos) s.erase(pos);
    s = trim(s);
    if (s.empty()) continue;

    if (!have_attach) {
      auto eq = s.find('=');
      if (eq == std::string::npos || trim(s.substr(0, eq)) != "attach")
        throw MapParseError(lineno, "expected 'attach = <rational>' first");
      auto r = parse_rat(trim(s.substr(eq + 1)));
      if (!r) throw MapParseError(lineno, "malformed rational after 'attach ='");
      attach = *r;
      if (!(0 <= attach && attach < 1))
        throw MapParseError(lineno, "attachment offset must lie in [0, 1)");
      sp.emplace(attach);
      have_attach = true;
      continue;
    }
    if (s == "line:") {
      if (section != 0) throw MapParseError(lineno, "unexpected 'line:' section");
      section = 1;
      continue;
    }
    if (s == "branch:") {
      if (section != 1)
        throw MapParseError(lineno, "'branch:' must follow the line entries");
      section = 2;
      continue;
    }
    if (section == 0)
      throw MapParseError(lineno, "expected 'line:' before breakpoint entries");

    auto arrow = s.find("->");
    if (arrow == std::string::npos)
      throw MapParseError(lineno, "expected '<rational> -> <point>'");
    auto x = parse_rat(trim(s.substr(0, arrow)));
    if (!x) throw MapParseError(lineno, "malformed breakpoint coordinate");
    auto img = sp->parse_point(trim(s.substr(arrow + 2)));
    if (!img)
      throw MapParseError(lineno,
                          "malformed image point (want 'L <rational>' or "
                          "'B <integer> <rational>')");
    (section == 1 ? line : branch).push_back(BreakPair{*x, *img});
  }

  if (!have_attach) throw MapParseError(lineno ? lineno : 1, "missing 'attach ='");
  if (section < 2)
    throw MapParseError(lineno ? lineno : 1, "missing 'line:'/'branch:' sections");

  PAMap m{*sp, std::move(line), std::move(branch)};
  require_valid(m);
  return m;
}

PAMap load_map(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open map file: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return parse_map(os.str());
}

std::string write_map(const PAMap& m) {
  std::ostringstream os;
  os << "attach = " << rat_str(m.space.attach_offset()) << "\n";
  os << "line:\n";
  for (const BreakPair& bp : m.line)
    os << "  " << rat_str(bp.x) << " -> " << m.space.point_str(bp.img) << "\n";
  os << "branch:\n";
  for (const BreakPair& bp : m.branch)
    os << "  " << rat_str(bp.x) << " -> " << m.space.point_str(bp.img) << "\n";
  return os.str();
}

}  // namespace sigmarot
