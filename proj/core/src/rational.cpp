#include "sigmarot/rational.hpp"

#include <stdexcept>

namespace sigmarot {

Rat rat(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Int floor_int(const Rat& x) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  if (!q.fits_slong_p()) throw std::overflow_error("floor_int overflow");
  return static_cast<Int>(q.get_si());
}

Rat frac(const Rat& x) { return x - Rat(floor_int(x)); }

Rat rat_min(const Rat& a, const Rat& b) { return a <= b ? a : b; }
Rat rat_max(const Rat& a, const Rat& b) { return a >= b ? a : b; }
Rat rat_abs(const Rat& a) { return a < 0 ? Rat(-a) : a; }
int rat_sign(const Rat& a) { return sgn(a); }

std::string rat_str(const Rat& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string rat_pretty(const Rat& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return rat_str(x);
}

std::optional<Rat> parse_rat(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::string num, den = "1";
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    num = s;
  } else {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
    if (den.empty()) return std::nullopt;
  }
  auto valid = [](const std::string& t, bool sign_ok) {
    if (t.empty()) return false;
    std::size_t i = 0;
    if (sign_ok && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  if (!valid(num, true) || !valid(den, true)) return std::nullopt;
  if (num[0] == '+') num.erase(0, 1);  // mpq set_str rejects a leading '+'
  if (den[0] == '+') den.erase(0, 1);
  Rat r;
  if (r.set_str(num + "/" + den, 10) != 0) return std::nullopt;
  if (r.get_den() == 0) return std::nullopt;
  r.canonicalize();
  return r;
}

}  // namespace sigmarot
