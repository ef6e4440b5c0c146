#include "crn/network.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace crn {

int SpeciesTable::index(const std::string& name) const {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return -1;
}

IntVec ReactionNetwork::reaction_vector(int k) const {
  const IntVec& s = complexes[reactions[k].source].z;
  const IntVec& t = complexes[reactions[k].target].z;
  IntVec d(s.size());
  for (size_t j = 0; j < s.size(); ++j) d[j] = t[j] - s[j];
  return d;
}

std::string ReactionNetwork::complex_str(int i) const {
  const IntVec& z = complexes[i].z;
  std::string out;
  for (size_t j = 0; j < z.size(); ++j) {
    if (z[j] == 0) continue;
    if (!out.empty()) out += " + ";
    if (z[j] != 1) out += std::to_string(z[j]) + " ";
    out += species.names[j];
  }
  return out.empty() ? "0" : out;
}

namespace {

struct Cursor {
  const std::string& s;
  int line;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
  int col() const { return static_cast<int>(pos) + 1; }
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(line, col(), msg);
  }
  bool eat(const std::string& tok) {
    skip_ws();
    if (s.compare(pos, tok.size(), tok) == 0) {
      pos += tok.size();
      return true;
    }
    return false;
  }
  std::string ident() {
    skip_ws();
    size_t start = pos;
    auto ok = [&](char c, bool first) {
      return std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
             (!first && std::isdigit(static_cast<unsigned char>(c)));
    };
    while (pos < s.size() && ok(s[pos], pos == start)) ++pos;
    if (pos == start) fail("expected species identifier");
    return s.substr(start, pos - start);
  }
  long integer() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start) fail("expected integer");
    return std::stol(s.substr(start, pos - start));
  }
  std::string rate_token() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) ||
                              s[pos] == '.' || s[pos] == '/' || s[pos] == '-' ||
                              s[pos] == '+'))
      ++pos;
    if (pos == start) fail("expected rate");
    return s.substr(start, pos - start);
  }
};

struct Builder {
  ReactionNetwork net;
  bool declared = false;
  std::map<IntVec, int> complex_index;
  std::set<std::pair<int, int>> seen_pairs;

  int species_id(const std::string& name, Cursor& cur) {
    int id = net.species.index(name);
    if (id >= 0) return id;
    if (declared) cur.fail("unknown species '" + name + "'");
    net.species.names.push_back(name);
    // Widen previously built complexes.
    std::map<IntVec, int> rebuilt;
    for (auto& c : net.complexes) c.z.push_back(0);
    for (auto& [z, idx] : complex_index) {
      IntVec wide = z;
      wide.push_back(0);
      rebuilt[wide] = idx;
    }
    complex_index = std::move(rebuilt);
    return net.species.count() - 1;
  }

  IntVec parse_complex(Cursor& cur) {
    cur.skip_ws();
    IntVec z(net.species.count(), 0);
    if (cur.pos < cur.s.size() && cur.s[cur.pos] == '0' &&
        (cur.pos + 1 >= cur.s.size() ||
         !std::isalnum(static_cast<unsigned char>(cur.s[cur.pos + 1])))) {
      ++cur.pos;
      return z;
    }
    for (;;) {
      cur.skip_ws();
      long coeff = 1;
      if (cur.pos < cur.s.size() &&
          std::isdigit(static_cast<unsigned char>(cur.s[cur.pos]))) {
        coeff = cur.integer();
        if (coeff <= 0) cur.fail("coefficient must be positive");
      }
      int id = species_id(cur.ident(), cur);
      if (static_cast<int>(z.size()) < net.species.count())
        z.resize(net.species.count(), 0);
      z[id] += coeff;
      if (!cur.eat("+")) break;
    }
    return z;
  }

  int intern_complex(IntVec z) {
    z.resize(net.species.count(), 0);
    auto it = complex_index.find(z);
    if (it != complex_index.end()) return it->second;
    int idx = net.complex_count();
    net.complexes.push_back({z});
    complex_index[z] = idx;
    return idx;
  }

  void add_reaction(int src, int dst, const Rat& rate, Cursor& cur) {
    if (src == dst) cur.fail("reaction source and target complexes coincide");
    if (rate <= 0) cur.fail("rate must be positive");
    if (!seen_pairs.insert({src, dst}).second)
      cur.fail("duplicate reaction between the same complexes");
    net.reactions.push_back({src, dst, rate});
  }
};

}  // namespace

ReactionNetwork parse_network(const std::string& text) {
  Builder b;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool any_reaction = false;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
    Cursor cur{line, lineno};
    if (cur.done()) continue;

    if (cur.s.compare(cur.pos, 8, "species ") == 0 ||
        cur.s.substr(cur.pos) == "species") {
      if (any_reaction || b.declared)
        cur.fail("species declaration must appear once, before reactions");
      cur.pos += 7;
      while (!cur.done()) b.net.species.names.push_back(cur.ident());
      std::set<std::string> uniq(b.net.species.names.begin(),
                                 b.net.species.names.end());
      if (uniq.size() != b.net.species.names.size())
        cur.fail("duplicate species name in declaration");
      if (b.net.species.names.empty()) cur.fail("empty species declaration");
      b.declared = true;
      continue;
    }

    IntVec lhs = b.parse_complex(cur);
    bool reversible;
    if (cur.eat("<->")) {
      reversible = true;
    } else if (cur.eat("->")) {
      reversible = false;
    } else {
      cur.fail("expected '->' or '<->'");
    }
    IntVec rhs = b.parse_complex(cur);
    if (!cur.eat(";")) cur.fail("expected ';' before rates");

    auto read_rate = [&]() {
      std::string tok = cur.rate_token();
      auto r = rat_parse(tok);
      if (!r) cur.fail("malformed rate '" + tok + "'");
      return *r;
    };
    Rat fwd = read_rate();
    int src = b.intern_complex(lhs);
    int dst = b.intern_complex(rhs);
    b.add_reaction(src, dst, fwd, cur);
    if (reversible) {
      if (!cur.eat(",")) cur.fail("reversible reaction needs two rates");
      b.add_reaction(dst, src, read_rate(), cur);
    } else if (cur.eat(",")) {
      cur.fail("irreversible reaction takes exactly one rate");
    }
    if (!cur.done()) cur.fail("trailing input after reaction");
    any_reaction = true;
  }
  if (b.net.reactions.empty())
    throw ParseError(lineno ? lineno : 1, 1, "no reactions in input");
  // Earlier lines may have interned complexes before later species appeared.
  for (auto& c : b.net.complexes) c.z.resize(b.net.species.count(), 0);
  return b.net;
}

std::string serialize_network(const ReactionNetwork& net) {
  std::ostringstream os;
  os << "species";
  for (const auto& n : net.species.names) os << " " << n;
  os << "\n";
  for (const auto& r : net.reactions)
    os << net.complex_str(r.source) << " -> " << net.complex_str(r.target)
       << " ; " << rat_str(r.rate) << "\n";
  return os.str();
}

namespace {

// Exact row echelon over the rationals; returns indices of independent rows.
std::vector<int> independent_rows(const std::vector<IntVec>& rows, int cols) {
  std::vector<RatVec> work;
  std::vector<int> picked;
  for (size_t k = 0; k < rows.size(); ++k) {
    RatVec v = to_ratvec(rows[k]);
    for (const RatVec& w : work) {
      int p = -1;
      for (int j = 0; j < cols; ++j)
        if (w[j] != 0) { p = j; break; }
      if (p >= 0 && v[p] != 0) {
        Rat f = v[p] / w[p];
        for (int j = 0; j < cols; ++j) v[j] -= f * w[j];
      }
    }
    bool zero = true;
    for (int j = 0; j < cols; ++j) zero = zero && v[j] == 0;
    if (!zero) {
      work.push_back(std::move(v));
      // Keep eliminated rows sorted by pivot position.
      std::sort(work.begin(), work.end(), [&](const RatVec& a, const RatVec& b) {
        auto piv = [&](const RatVec& u) {
          for (int j = 0; j < cols; ++j)
            if (u[j] != 0) return j;
          return cols;
        };
        return piv(a) < piv(b);
      });
      picked.push_back(static_cast<int>(k));
    }
  }
  return picked;
}

}  // namespace

StoichiometricBasis stoichiometric_subspace(const ReactionNetwork& net) {
  std::vector<IntVec> rvs;
  for (int k = 0; k < net.reaction_count(); ++k)
    rvs.push_back(net.reaction_vector(k));
  StoichiometricBasis basis;
  for (int k : independent_rows(rvs, net.species_count()))
    basis.vectors.push_back(rvs[k]);
  return basis;
}

std::vector<IntVec> conserved_quantities(const ReactionNetwork& net) {
  int m = net.species_count();
  auto basis = stoichiometric_subspace(net).vectors;
  // Exact RREF of the basis rows, tracking pivot columns.
  std::vector<RatVec> rows;
  for (const auto& v : basis) rows.push_back(to_ratvec(v));
  std::vector<int> pivots;
  int rank = 0;
  for (int col = 0; col < m && rank < static_cast<int>(rows.size()); ++col) {
    int sel = -1;
    for (int i = rank; i < static_cast<int>(rows.size()); ++i)
      if (rows[i][col] != 0) { sel = i; break; }
    if (sel < 0) continue;
    std::swap(rows[rank], rows[sel]);
    Rat p = rows[rank][col];
    for (int j = 0; j < m; ++j) rows[rank][j] /= p;
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == rank || rows[i][col] == 0) continue;
      Rat f = rows[i][col];
      for (int j = 0; j < m; ++j) rows[i][j] -= f * rows[rank][j];
    }
    pivots.push_back(col);
    ++rank;
  }
  // Null space of the row span: free columns parametrize solutions of
  // <row, c> = 0.
  std::vector<bool> is_pivot(m, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<IntVec> out;
  for (int free = 0; free < m; ++free) {
    if (is_pivot[free]) continue;
    RatVec c(m, Rat(0));
    c[free] = 1;
    for (int i = 0; i < rank; ++i) c[pivots[i]] = -rows[i][free];
    // Clear denominators to a primitive integer vector.
    mpz_class lcm = 1;
    for (const Rat& q : c) {
      mpz_class d = q.get_den();
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), d.get_mpz_t());
      lcm = lcm / g * d;
    }
    IntVec iv(m, 0);
    mpz_class gcd = 0;
    std::vector<mpz_class> scaled(m);
    for (int j = 0; j < m; ++j) {
      scaled[j] = c[j].get_num() * (lcm / c[j].get_den());
      mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), scaled[j].get_mpz_t());
    }
    if (gcd == 0) gcd = 1;
    for (int j = 0; j < m; ++j) iv[j] = mpz_class(scaled[j] / gcd).get_si();
    out.push_back(std::move(iv));
  }
  return out;
}

double monomial(const std::vector<double>& x, const IntVec& z) {
  double v = 1.0;
  for (size_t j = 0; j < z.size(); ++j) {
    if (z[j] == 0) continue;  // 0^0 := 1
    for (long e = 0; e < z[j]; ++e) v *= x[j];
  }
  return v;
}

std::vector<double> mass_action_rhs(const ReactionNetwork& net,
                                    const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != net.species_count())
    throw std::invalid_argument("state dimension mismatch");
  for (double xi : x)
    if (xi < 0) throw std::invalid_argument("negative concentration");
  std::vector<double> f(x.size(), 0.0);
  for (int k = 0; k < net.reaction_count(); ++k) {
    const auto& r = net.reactions[k];
    double flux = r.rate.get_d() * monomial(x, net.complexes[r.source].z);
    IntVec d = net.reaction_vector(k);
    for (size_t j = 0; j < x.size(); ++j) f[j] += flux * d[j];
  }
  return f;
}

}  // namespace crn
