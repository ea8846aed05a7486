#pragma once

// Polynomials in the ambient coordinates z_1..z_n, the text parser for
// them, and the map onto lattice polynomials through the semigroup
// embedding. Family parameters (t, s) are carried symbolically only here;
// they are substituted by exact rationals before anything geometric runs.

#include <cctype>

#include "toricinv/newton.hpp"

namespace toricinv {

using ExpVec = std::vector<long>;

struct AmbientPoly {
  int nvars = 0;
  std::map<ExpVec, Rat> terms;

  void add_term(const ExpVec& e, const Rat& c) {
    if (c == 0) return;
    auto it = terms.find(e);
    if (it == terms.end()) {
      terms.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }

  bool zero() const { return terms.empty(); }
};

/// Ambient polynomial whose coefficients are polynomials in the family
/// parameters s and t.
struct ParamAmbientPoly {
  int nvars = 0;
  // exponent vector -> { (deg_s, deg_t) -> coefficient }
  std::map<ExpVec, std::map<std::pair<long, long>, Rat>> terms;

  void add_term(const ExpVec& e, long ds, long dt, const Rat& c) {
    if (c == 0) return;
    auto& m = terms[e];
    auto it = m.find({ds, dt});
    if (it == m.end()) {
      m.emplace(std::make_pair(ds, dt), c);
    } else {
      it->second += c;
      if (it->second == 0) m.erase(it);
    }
    if (m.empty()) terms.erase(e);
  }

  bool has_parameters() const {
    for (const auto& [e, m] : terms)
      for (const auto& [st, c] : m)
        if (st.first != 0 || st.second != 0) return true;
    return false;
  }

  AmbientPoly substitute(const Rat& s, const Rat& t) const {
    AmbientPoly out;
    out.nvars = nvars;
    for (const auto& [e, m] : terms)
      for (const auto& [st, c] : m)
        out.add_term(e, c * rat_pow(s, st.first) * rat_pow(t, st.second));
    return out;
  }
};

/// Σ e_i · μ_i : the lattice point of an ambient monomial.
inline LatticePoint monomial_to_lattice(const ExpVec& exponents,
                                        const IMat& generators) {
  if (exponents.size() != generators.size())
    throw Error("LengthMismatch",
                "exponent list length differs from the ambient dimension");
  LatticePoint p(generators.empty() ? 0 : generators[0].size(), 0);
  for (size_t i = 0; i < exponents.size(); ++i)
    for (size_t j = 0; j < p.size(); ++j)
      p[j] += Int(exponents[i]) * generators[i][j];
  return p;
}

/// Pushes an ambient polynomial through the semigroup embedding, combining
/// like terms (distinct monomials can land on one lattice point and cancel).
inline LatticePolynomial to_lattice_polynomial(const AmbientPoly& f,
                                               const IMat& generators) {
  LatticePolynomial out;
  for (const auto& [e, c] : f.terms)
    out.add_term(monomial_to_lattice(e, generators), c);
  return out;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace detail {

struct PolyParser {
  const std::string& text;
  size_t pos = 0;
  int nvars;
  bool allow_params;
  ParamAmbientPoly out;

  PolyParser(const std::string& s, int nvars_, bool params)
      : text(s), nvars(nvars_), allow_params(params) {
    out.nvars = nvars_;
  }

  [[noreturn]] void fail(const std::string& msg, const std::string& code =
                                                     "ParseError") const {
    throw Error(code, msg + " at position " + std::to_string(pos) + " in \"" +
                          text + "\"");
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  bool peek_factor_start() {
    skip_ws();
    if (pos >= text.size()) return false;
    char c = text[pos];
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'z' ||
           c == 'x' || c == 'y' || c == 't' || c == 's';
  }

  Int parse_uint() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == start) fail("expected a number");
    return Int(text.substr(start, pos - start));
  }

  Rat parse_number() {
    Int num = parse_uint();
    skip_ws();
    if (pos < text.size() && text[pos] == '/') {
      ++pos;
      Int den = parse_uint();
      if (den == 0) fail("zero denominator");
      Rat r(num, den);
      r.canonicalize();
      return r;
    }
    return Rat(num);
  }

  long parse_exponent() {
    skip_ws();
    if (pos < text.size() && text[pos] == '-')
      fail("negative exponent", "NegativeExponent");
    Int e = parse_uint();
    if (e > 64) fail("exponent too large");
    return e.get_si();
  }

  /// factor := number | variable [^exp] | parameter [^exp]
  void parse_factor(Rat& coeff, ExpVec& exps, long& ds, long& dt) {
    skip_ws();
    if (pos >= text.size()) fail("expected a factor");
    char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      coeff *= parse_number();
      return;
    }
    if (c == 't' || c == 's') {
      if (!allow_params)
        fail("parameter '" + std::string(1, c) +
                 "' allowed only inside family blocks",
             "UnknownVariable");
      ++pos;
      long e = 1;
      skip_ws();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        e = parse_exponent();
      }
      (c == 's' ? ds : dt) += e;
      return;
    }
    int var = -1;
    if (c == 'z' && pos + 1 < text.size() &&
        std::isdigit(static_cast<unsigned char>(text[pos + 1]))) {
      ++pos;
      Int idx = parse_uint();
      if (idx < 1 || idx > nvars)
        fail("variable z" + idx.get_str() + " out of range (n = " +
                 std::to_string(nvars) + ")",
             "UnknownVariable");
      var = static_cast<int>(idx.get_si()) - 1;
    } else if (c == 'x' || c == 'y' || c == 'z') {
      if (nvars > 3)
        fail("aliases x,y,z are only valid for n <= 3", "UnknownVariable");
      var = c == 'x' ? 0 : (c == 'y' ? 1 : 2);
      if (var >= nvars)
        fail("alias '" + std::string(1, c) + "' out of range",
             "UnknownVariable");
      ++pos;
    } else {
      fail("unexpected character '" + std::string(1, c) + "'");
    }
    long e = 1;
    skip_ws();
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      e = parse_exponent();
    }
    exps[var] += e;
  }

  void parse_term(int sign) {
    Rat coeff(sign);
    ExpVec exps(nvars, 0);
    long ds = 0, dt = 0;
    parse_factor(coeff, exps, ds, dt);
    while (true) {
      skip_ws();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        skip_ws();
        if (!peek_factor_start()) fail("expected a factor after '*'");
        parse_factor(coeff, exps, ds, dt);
        continue;
      }
      if (peek_factor_start()) {
        parse_factor(coeff, exps, ds, dt);
        continue;
      }
      break;
    }
    out.add_term(exps, ds, dt, coeff);
  }

  ParamAmbientPoly parse() {
    skip_ws();
    if (pos >= text.size()) fail("empty polynomial");
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
    }
    parse_term(sign);
    while (true) {
      skip_ws();
      if (pos >= text.size()) break;
      if (text[pos] == '+' || text[pos] == '-') {
        sign = text[pos] == '-' ? -1 : 1;
        ++pos;
        skip_ws();
        if (!peek_factor_start()) fail("expected a term");
        parse_term(sign);
      } else {
        fail("unexpected character '" + std::string(1, text[pos]) + "'");
      }
    }
    return out;
  }
};

}  // namespace detail

/// Infers the ambient dimension a polynomial text needs: the largest z-index
/// used, with the x,y,z aliases counting as indices 1..3.
inline int infer_nvars(const std::string& text) {
  int n = 1;
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == 'z' && i + 1 < text.size() &&
        std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
      size_t j = i + 1, start = j;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
        ++j;
      n = std::max(n, std::stoi(text.substr(start, j - start)));
      i = j - 1;
    } else if (c == 'x') {
      n = std::max(n, 1);
    } else if (c == 'y') {
      n = std::max(n, 2);
    } else if (c == 'z') {
      n = std::max(n, 3);
    }
  }
  return n;
}

inline ParamAmbientPoly parse_polynomial_params(const std::string& text,
                                                int nvars) {
  return detail::PolyParser(text, nvars, /*params=*/true).parse();
}

inline AmbientPoly parse_polynomial(const std::string& text, int nvars) {
  ParamAmbientPoly p =
      detail::PolyParser(text, nvars, /*params=*/false).parse();
  return p.substitute(Rat(0), Rat(0));
}

// ---------------------------------------------------------------------------
// Canonical printing (graded lex, explicit signs)
// ---------------------------------------------------------------------------

inline std::string format_monomial(const ExpVec& e) {
  std::string s;
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += "z" + std::to_string(i + 1);
    if (e[i] != 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

inline std::string format_polynomial(const AmbientPoly& f) {
  if (f.terms.empty()) return "0";
  std::vector<std::pair<ExpVec, Rat>> ts(f.terms.begin(), f.terms.end());
  // graded order: total degree ascending, lexicographically largest first
  // within a degree (so "z1*z3 - z2^2", "z2^2 - z1^3")
  std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
    long da = 0, db = 0;
    for (long e : a.first) da += e;
    for (long e : b.first) db += e;
    if (da != db) return da < db;
    return a.first > b.first;
  });
  std::string s;
  for (size_t i = 0; i < ts.size(); ++i) {
    Rat c = ts[i].second;
    bool neg = c < 0;
    if (neg) c = -c;
    if (i == 0)
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    std::string mono = format_monomial(ts[i].first);
    if (mono.empty()) {
      s += to_string(c);
    } else if (c == 1) {
      s += mono;
    } else {
      s += to_string(c) + "*" + mono;
    }
  }
  return s;
}

}  // namespace toricinv
