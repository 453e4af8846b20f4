#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qcomm/param_scalar.hpp"

namespace qcomm {

/// Exponent vector over at most 32 generators or variables.
struct Monomial {
  std::array<std::uint8_t, 32> e{};

  int degree() const {
    int d = 0;
    for (auto x : e) d += x;
    return d;
  }
  bool is_one() const { return degree() == 0; }
  /// Largest index with a nonzero exponent, -1 for the unit monomial.
  int last() const {
    for (int i = 31; i >= 0; --i)
      if (e[static_cast<std::size_t>(i)]) return i;
    return -1;
  }
  std::uint8_t operator[](int i) const { return e[static_cast<std::size_t>(i)]; }
  void bump(int i, int by = 1) {
    int v = e[static_cast<std::size_t>(i)] + by;
    if (v < 0 || v > 255) throw std::overflow_error("monomial exponent out of range");
    e[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
  }
  static Monomial unit(int i) {
    Monomial m;
    m.e[static_cast<std::size_t>(i)] = 1;
    return m;
  }
  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < 32; ++i) {
      int v = e[i] + o.e[i];
      if (v > 255) throw std::overflow_error("monomial exponent out of range");
      r.e[i] = static_cast<std::uint8_t>(v);
    }
    return r;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return a.e != b.e; }
};

/// Graded lexicographic order; earlier indices are more significant.
struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    for (std::size_t i = 0; i < 32; ++i)
      if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
    return false;
  }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const {
    std::uint64_t w[4];
    std::memcpy(w, m.e.data(), 32);
    std::uint64_t h = w[0] * 0x9e3779b97f4a7c15ull;
    h ^= (w[1] + 0x7f4a7c159e3779b9ull) * 0xbf58476d1ce4e5b9ull;
    h ^= (w[2] + (h << 6) + (h >> 2)) * 0x94d049bb133111ebull;
    h ^= w[3] + (h << 7) + (h >> 3);
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

struct Term {
  Monomial mono;
  ParamScalar coeff;
};

using TermAccumulator = std::unordered_map<Monomial, ParamScalar, MonomialHash>;

inline void accumulate(TermAccumulator& acc, const Monomial& m, const ParamScalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = acc.try_emplace(m, c);
  if (!fresh) it->second += c;
}

/// Drops zeros and sorts ascending in graded-lex order.
inline std::vector<Term> finish_terms(TermAccumulator&& acc) {
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!c.is_zero()) out.push_back({m, std::move(c)});
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return GradedLex{}(a.mono, b.mono); });
  return out;
}

/// Merge of two sorted term lists, b scaled by s.
inline std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, const ParamScalar& s) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  GradedLex lt;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && lt(a[i].mono, b[j].mono))) {
      out.push_back(a[i++]);
    } else if (i == a.size() || lt(b[j].mono, a[i].mono)) {
      out.push_back({b[j].mono, b[j].coeff * s});
      ++j;
    } else {
      ParamScalar c = a[i].coeff + b[j].coeff * s;
      if (!c.is_zero()) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace qcomm
