#include "crn/rational.hpp"

#include <cctype>
#include <sstream>

namespace crn {

std::optional<Rat> rat_parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) return std::nullopt;

  auto is_int = [](const std::string& t) {
    size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };

  auto slash = s.find('/');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) return std::nullopt;
    mpz_class p(num), q(den);
    if (q == 0) return std::nullopt;
    Rat r(p, q);
    r.canonicalize();
    return r;
  }

  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string head = s.substr(0, dot), frac = s.substr(dot + 1);
    if (head.empty() || head == "+" || head == "-") head += "0";
    if (!is_int(head)) return std::nullopt;
    for (char c : frac)
      if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    bool neg = s[0] == '-';
    mpz_class whole(head);
    Rat r(whole, 1);
    if (!frac.empty()) {
      mpz_class num(frac);
      mpz_class den = 1;
      for (size_t i = 0; i < frac.size(); ++i) den *= 10;
      Rat tail(num, den);
      tail.canonicalize();
      r += neg ? -tail : tail;
    }
    return r;
  }

  if (!is_int(s)) return std::nullopt;
  return Rat(mpz_class(s), 1);
}

std::string rat_str(const Rat& q) {
  std::ostringstream os;
  os << q.get_num();
  if (q.get_den() != 1) os << "/" << q.get_den();
  return os.str();
}

std::string ratvec_str(const RatVec& v) {
  std::string out = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += rat_str(v[i]);
  }
  return out + ")";
}

RatVec to_ratvec(const IntVec& v) {
  RatVec out;
  out.reserve(v.size());
  for (long x : v) out.emplace_back(x, 1);
  return out;
}

std::vector<double> to_doubles(const RatVec& v) {
  std::vector<double> out;
  out.reserve(v.size());
  for (const Rat& q : v) out.push_back(q.get_d());
  return out;
}

RatVec normalize_max_abs(RatVec v) {
  Rat best = 0;
  for (const Rat& q : v) {
    Rat a = abs(q);
    if (a > best) best = a;
  }
  if (best == 0) return v;
  for (Rat& q : v) q /= best;
  return v;
}

}  // namespace crn
