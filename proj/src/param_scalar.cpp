#include "qcomm/param_scalar.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace qcomm {

namespace {

struct RegistryData {
  std::mutex mu;
  std::vector<std::string> names;
};

RegistryData& registry() {
  static RegistryData r;
  return r;
}

}  // namespace

int ParamRegistry::intern(std::string_view name) {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  for (std::size_t i = 0; i < r.names.size(); ++i)
    if (r.names[i] == name) return static_cast<int>(i);
  if (static_cast<int>(r.names.size()) >= kMaxParams)
    throw std::length_error("too many scalar parameters (limit 4): " + std::string(name));
  r.names.emplace_back(name);
  return static_cast<int>(r.names.size()) - 1;
}

int ParamRegistry::find(std::string_view name) {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  for (std::size_t i = 0; i < r.names.size(); ++i)
    if (r.names[i] == name) return static_cast<int>(i);
  return -1;
}

std::string ParamRegistry::name(int index) {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  return r.names.at(static_cast<std::size_t>(index));
}

int ParamRegistry::size() {
  auto& r = registry();
  std::lock_guard lock(r.mu);
  return static_cast<int>(r.names.size());
}

namespace param_key {

ParamKey single(int param, int exp) {
  if (exp <= -kBias || exp >= kBias) throw std::overflow_error("parameter exponent out of range");
  ParamKey k = kOne;
  return k + (static_cast<ParamKey>(static_cast<std::int64_t>(exp)) << (16 * param));
}

int total_degree(ParamKey k) {
  int d = 0;
  for (int i = 0; i < ParamRegistry::kMaxParams; ++i) d += exponent(k, i);
  return d;
}

bool is_one(ParamKey k) { return k == kOne; }

std::string to_string(ParamKey k) {
  std::string out;
  for (int i = 0; i < ParamRegistry::kMaxParams; ++i) {
    int e = exponent(k, i);
    if (e == 0) continue;
    if (!out.empty()) out += '*';
    out += ParamRegistry::name(i);
    if (e != 1) out += '^' + std::to_string(e);
  }
  return out;
}

}  // namespace param_key

std::string to_string(const Rational& q) { return q.get_str(); }

// ---------------------------------------------------------------------------
// LaurentPoly

LaurentPoly::LaurentPoly(const Rational& c) {
  if (sgn(c) != 0) terms_.emplace_back(param_key::kOne, c);
}

LaurentPoly LaurentPoly::monomial(ParamKey k, const Rational& c) {
  LaurentPoly p;
  if (sgn(c) != 0) p.terms_.emplace_back(k, c);
  return p;
}

bool LaurentPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first == param_key::kOne);
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

namespace {

template <bool Sub>
void merge_into(std::vector<LaurentPoly::Term>& a, const std::vector<LaurentPoly::Term>& b) {
  std::vector<LaurentPoly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(std::move(a[i++]));
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, Sub ? Rational(-b[j].second) : b[j].second);
      ++j;
    } else {
      Rational c = Sub ? Rational(a[i].second - b[j].second) : Rational(a[i].second + b[j].second);
      if (sgn(c) != 0) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  a = std::move(out);
}

}  // namespace

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.terms_.empty()) return *this;
  merge_into<false>(terms_, o.terms_);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  if (o.terms_.empty()) return *this;
  merge_into<true>(terms_, o.terms_);
  return *this;
}

void LaurentPoly::normalize_unsorted() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& x, const Term& y) { return x.first < y.first; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first)
      out.back().second += t.second;
    else
      out.push_back(std::move(t));
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return sgn(t.second) == 0; }),
            out.end());
  terms_ = std::move(out);
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r;
  if (a.terms_.empty() || b.terms_.empty()) return r;
  if (a.terms_.size() == 1) return b.scaled(a.terms_[0].second, a.terms_[0].first);
  if (b.terms_.size() == 1) return a.scaled(b.terms_[0].second, b.terms_[0].first);
  r.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) r.terms_.emplace_back(param_key::times(x.first, y.first), x.second * y.second);
  r.normalize_unsorted();
  return r;
}

LaurentPoly LaurentPoly::scaled(const Rational& c, ParamKey k) const {
  LaurentPoly r;
  if (sgn(c) == 0) return r;
  r.terms_.reserve(terms_.size());
  // Multiplying by a monomial preserves the key order.
  for (const auto& t : terms_) r.terms_.emplace_back(param_key::times(t.first, k), t.second * c);
  return r;
}

ParamKey LaurentPoly::min_key() const {
  ParamKey out = 0;
  for (int i = 0; i < ParamRegistry::kMaxParams; ++i) {
    int lo = 0;
    bool first = true;
    for (const auto& t : terms_) {
      int e = param_key::exponent(t.first, i);
      if (first || e < lo) lo = e;
      first = false;
    }
    out |= static_cast<ParamKey>(lo + param_key::kBias) << (16 * i);
  }
  return out;
}

bool LaurentPoly::has_negative_exponents() const {
  for (const auto& t : terms_)
    for (int i = 0; i < ParamRegistry::kMaxParams; ++i)
      if (param_key::exponent(t.first, i) < 0) return true;
  return false;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

std::size_t LaurentPoly::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (const auto& t : terms_) {
    h ^= std::hash<std::uint64_t>{}(t.first) + 0x9e3779b9 + (h << 6) + (h >> 2);
    h ^= std::hash<std::string>{}(t.second.get_str()) + (h << 6) + (h >> 2);
  }
  return h;
}

// ---------------------------------------------------------------------------
// Integer multivariate polynomials with non-negative exponents, used only for
// gcd computations. Term order is the key order, which is lex with the
// highest parameter index most significant.

namespace {

using ZTerm = std::pair<ParamKey, Integer>;
using ZPoly = std::vector<ZTerm>;  // sorted ascending, no zeros

void z_normalize(ZPoly& p) {
  std::sort(p.begin(), p.end(), [](const ZTerm& a, const ZTerm& b) { return a.first < b.first; });
  ZPoly out;
  out.reserve(p.size());
  for (auto& t : p) {
    if (!out.empty() && out.back().first == t.first)
      out.back().second += t.second;
    else
      out.push_back(std::move(t));
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const ZTerm& t) { return sgn(t.second) == 0; }),
            out.end());
  p = std::move(out);
}

ZPoly z_mul(const ZPoly& a, const ZPoly& b) {
  ZPoly r;
  r.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) r.emplace_back(param_key::times(x.first, y.first), x.second * y.second);
  z_normalize(r);
  return r;
}

ZPoly z_sub(const ZPoly& a, const ZPoly& b) {
  ZPoly r = a;
  for (const auto& t : b) r.emplace_back(t.first, -t.second);
  z_normalize(r);
  return r;
}

bool key_divides(ParamKey d, ParamKey n) {
  for (int i = 0; i < ParamRegistry::kMaxParams; ++i)
    if (param_key::exponent(d, i) > param_key::exponent(n, i)) return false;
  return true;
}

ParamKey key_quot(ParamKey n, ParamKey d) { return n - d + param_key::kOne; }

// Exact division; throws if b does not divide a.
ZPoly z_divexact(ZPoly a, const ZPoly& b) {
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  if (b.size() == 1 && b[0].first == param_key::kOne) {
    for (auto& t : a) {
      if (!mpz_divisible_p(t.second.get_mpz_t(), b[0].second.get_mpz_t()))
        throw std::logic_error("inexact polynomial division");
      mpz_divexact(t.second.get_mpz_t(), t.second.get_mpz_t(), b[0].second.get_mpz_t());
    }
    return a;
  }
  const ZTerm& lb = b.back();
  ZPoly q;
  while (!a.empty()) {
    const ZTerm& la = a.back();
    if (!key_divides(lb.first, la.first) || !mpz_divisible_p(la.second.get_mpz_t(), lb.second.get_mpz_t()))
      throw std::logic_error("inexact polynomial division");
    ZTerm t{key_quot(la.first, lb.first), Integer(la.second / lb.second)};
    ZPoly tb;
    tb.reserve(b.size());
    for (const auto& y : b) tb.emplace_back(param_key::times(y.first, t.first), y.second * t.second);
    q.push_back(std::move(t));
    a = z_sub(a, tb);
  }
  z_normalize(q);
  return q;
}

int z_deg(const ZPoly& p, int v) {
  int d = -1;
  for (const auto& t : p) d = std::max(d, param_key::exponent(t.first, v));
  return d;
}

int z_top_var(const ZPoly& p) {
  int top = -1;
  for (const auto& t : p)
    for (int i = ParamRegistry::kMaxParams - 1; i > top; --i)
      if (param_key::exponent(t.first, i) > 0) {
        top = i;
        break;
      }
  return top;
}

// Coefficient of v^e, as a polynomial free of v.
ZPoly z_coeff(const ZPoly& p, int v, int e) {
  ZPoly r;
  ParamKey shift = param_key::single(v, -e);
  for (const auto& t : p)
    if (param_key::exponent(t.first, v) == e) r.emplace_back(param_key::times(t.first, shift), t.second);
  return r;
}

Integer z_int_content(const ZPoly& p) {
  Integer g = 0;
  for (const auto& t : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.second.get_mpz_t());
  return g;
}

void z_make_positive(ZPoly& p) {
  if (!p.empty() && sgn(p.back().second) < 0)
    for (auto& t : p) t.second = -t.second;
}

ZPoly z_gcd(const ZPoly& a, const ZPoly& b);

// Content of p regarded as a polynomial in v.
ZPoly z_content(const ZPoly& p, int v) {
  int d = z_deg(p, v);
  ZPoly g;
  for (int e = d; e >= 0; --e) {
    ZPoly c = z_coeff(p, v, e);
    if (c.empty()) continue;
    g = g.empty() ? c : z_gcd(g, c);
    if (g.size() == 1 && g[0].first == param_key::kOne && abs(g[0].second) == 1) break;
  }
  z_make_positive(g);
  return g;
}

ZPoly z_prem(ZPoly a, const ZPoly& b, int v) {
  int db = z_deg(b, v);
  ZPoly lb = z_coeff(b, v, db);
  while (!a.empty()) {
    int da = z_deg(a, v);
    if (da < db) break;
    ZPoly la = z_coeff(a, v, da);
    ParamKey shift = param_key::single(v, da - db);
    ZPoly sb = z_mul(la, b);
    for (auto& t : sb) t.first = param_key::times(t.first, shift);
    a = z_sub(z_mul(lb, a), sb);
  }
  return a;
}

ZPoly z_gcd(const ZPoly& a, const ZPoly& b) {
  if (a.empty()) {
    ZPoly r = b;
    z_make_positive(r);
    return r;
  }
  if (b.empty()) {
    ZPoly r = a;
    z_make_positive(r);
    return r;
  }
  int v = std::max(z_top_var(a), z_top_var(b));
  if (v < 0) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a[0].second.get_mpz_t(), b[0].second.get_mpz_t());
    return {{param_key::kOne, g}};
  }
  ZPoly ca = z_content(a, v), cb = z_content(b, v);
  ZPoly cont = z_gcd(ca, cb);
  ZPoly pa = z_divexact(a, ca), pb = z_divexact(b, cb);
  if (z_deg(pa, v) < z_deg(pb, v)) std::swap(pa, pb);
  ZPoly g;
  while (true) {
    if (pb.empty()) {
      g = pa;
      break;
    }
    if (z_deg(pb, v) == 0) {
      g = {{param_key::kOne, Integer(1)}};
      break;
    }
    ZPoly r = z_prem(pa, pb, v);
    pa = std::move(pb);
    if (r.empty()) {
      pb.clear();
    } else {
      ZPoly c = z_content(r, v);
      pb = z_divexact(r, c);
    }
  }
  if (g.size() > 1 || g[0].first != param_key::kOne) {
    ZPoly c = z_content(g, v);
    g = z_divexact(g, c);
  } else {
    g = {{param_key::kOne, Integer(1)}};
  }
  ZPoly r = z_mul(cont, g);
  z_make_positive(r);
  return r;
}

// Splits a Laurent polynomial into rational scale, monomial shift, and a
// primitive integer polynomial with non-negative exponents and positive
// leading coefficient: p = scale * x^shift * z.
void to_primitive(const LaurentPoly& p, Rational& scale, ParamKey& shift, ZPoly& z) {
  shift = p.min_key();
  ParamKey inv = param_key::inverse(shift);
  Integer l = 1;
  for (const auto& t : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.second.get_den_mpz_t());
  z.clear();
  z.reserve(p.size());
  for (const auto& t : p.terms()) {
    Rational c = t.second * l;
    z.emplace_back(param_key::times(t.first, inv), c.get_num());
  }
  Integer g = z_int_content(z);
  if (sgn(z.back().second) < 0) g = -g;
  for (auto& t : z) mpz_divexact(t.second.get_mpz_t(), t.second.get_mpz_t(), g.get_mpz_t());
  scale = Rational(g) / Rational(l);
}

LaurentPoly from_z(const ZPoly& z, const Rational& scale, ParamKey shift) {
  LaurentPoly r;
  for (const auto& t : z) r += LaurentPoly::monomial(param_key::times(t.first, shift), Rational(t.second) * scale);
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// ParamScalar

ParamScalar::ParamScalar(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("division by zero scalar");
  normalize();
}

ParamScalar ParamScalar::param(std::string_view name, int exp) {
  return from_key(param_key::single(ParamRegistry::intern(name), exp));
}

ParamScalar ParamScalar::from_key(ParamKey k, const Rational& c) {
  return ParamScalar(LaurentPoly::monomial(k, c));
}

bool ParamScalar::is_one() const {
  return den_.is_zero() && num_.size() == 1 && num_.terms()[0].first == param_key::kOne &&
         num_.terms()[0].second == 1;
}

Rational ParamScalar::constant_value() const {
  if (num_.is_zero()) return 0;
  return num_.terms()[0].second;
}

void ParamScalar::normalize() {
  if (den_.is_zero()) return;
  if (num_.is_zero()) {
    den_ = LaurentPoly();
    return;
  }
  if (den_.is_monomial()) {
    const auto& t = den_.terms()[0];
    num_ = num_.scaled(Rational(1) / t.second, param_key::inverse(t.first));
    den_ = LaurentPoly();
    return;
  }
  Rational ns, ds;
  ParamKey nk, dk;
  ZPoly nz, dz;
  to_primitive(num_, ns, nk, nz);
  to_primitive(den_, ds, dk, dz);
  ZPoly g = z_gcd(nz, dz);
  if (g.size() > 1 || g[0].first != param_key::kOne) {
    nz = z_divexact(nz, g);
    dz = z_divexact(dz, g);
  }
  Rational scale = ns / ds;
  ParamKey shift = param_key::times(nk, param_key::inverse(dk));
  if (dz.size() == 1) {
    // Only a monomial survives; it is 1 since dz is primitive and content-free.
    num_ = from_z(nz, scale / Rational(dz[0].second), param_key::times(shift, param_key::inverse(dz[0].first)));
    den_ = LaurentPoly();
    return;
  }
  num_ = from_z(nz, scale, shift);
  den_ = from_z(dz, 1, param_key::kOne);
}

ParamScalar ParamScalar::operator-() const {
  ParamScalar r = *this;
  r.num_ = -r.num_;
  return r;
}

ParamScalar& ParamScalar::operator+=(const ParamScalar& o) {
  if (o.is_zero()) return *this;
  if (den_.is_zero() && o.den_.is_zero()) {
    num_ += o.num_;
    return *this;
  }
  if (den_ == o.den_) {
    num_ += o.num_;
    normalize();
    return *this;
  }
  if (o.den_.is_zero()) {
    num_ += o.num_ * den_;
    normalize();
    return *this;
  }
  if (den_.is_zero()) {
    num_ = num_ * o.den_ + o.num_;
    den_ = o.den_;
    normalize();
    return *this;
  }
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

ParamScalar& ParamScalar::operator-=(const ParamScalar& o) { return *this += -o; }

ParamScalar& ParamScalar::operator*=(const ParamScalar& o) {
  if (den_.is_zero() && o.den_.is_zero()) {
    num_ = num_ * o.num_;
    return *this;
  }
  if (is_zero() || o.is_zero()) {
    *this = ParamScalar();
    return *this;
  }
  num_ = num_ * o.num_;
  if (den_.is_zero())
    den_ = o.den_;
  else if (!o.den_.is_zero())
    den_ = den_ * o.den_;
  normalize();
  return *this;
}

ParamScalar ParamScalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero scalar");
  ParamScalar r;
  if (num_.is_monomial()) {
    const auto& t = num_.terms()[0];
    LaurentPoly d = den_.is_zero() ? LaurentPoly(Rational(1)) : den_;
    r.num_ = d.scaled(Rational(1) / t.second, param_key::inverse(t.first));
    return r;
  }
  r.num_ = den_.is_zero() ? LaurentPoly(Rational(1)) : den_;
  r.den_ = num_;
  r.normalize();
  return r;
}

ParamScalar& ParamScalar::operator/=(const ParamScalar& o) {
  if (o.is_zero()) throw std::domain_error("division by zero scalar");
  if (o.den_.is_zero() && o.num_.is_monomial()) {
    const auto& t = o.num_.terms()[0];
    num_ = num_.scaled(Rational(1) / t.second, param_key::inverse(t.first));
    return *this;
  }
  return *this *= o.inverse();
}

namespace {

Rational eval_poly(const LaurentPoly& p, const std::vector<Rational>& values) {
  Rational s = 0;
  for (const auto& t : p.terms()) {
    Rational term = t.second;
    for (int i = 0; i < ParamRegistry::kMaxParams; ++i) {
      int e = param_key::exponent(t.first, i);
      if (e == 0) continue;
      if (static_cast<std::size_t>(i) >= values.size()) throw std::invalid_argument("missing parameter value");
      const Rational& v = values[static_cast<std::size_t>(i)];
      if (e < 0 && sgn(v) == 0) throw std::domain_error("parameter value makes a denominator vanish");
      Rational base = e > 0 ? v : Rational(1) / v;
      for (int k = 0; k < std::abs(e); ++k) term *= base;
    }
    s += term;
  }
  return s;
}

}  // namespace

Rational ParamScalar::evaluate(const std::vector<Rational>& values) const {
  Rational n = eval_poly(num_, values);
  if (den_.is_zero()) return n;
  Rational d = eval_poly(den_, values);
  if (sgn(d) == 0) throw std::domain_error("parameter value makes a denominator vanish");
  return n / d;
}

int ParamScalar::max_exponent(int param) const {
  int best = 0;
  bool first = true;
  for (const auto& t : num_.terms()) {
    int e = param_key::exponent(t.first, param);
    if (first || e > best) best = e;
    first = false;
  }
  return best;
}

std::size_t ParamScalar::hash() const { return num_.hash() * 31 + den_.hash(); }

namespace {

std::vector<LaurentPoly::Term> display_order(const LaurentPoly& p) {
  auto terms = p.terms();
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    int da = param_key::total_degree(a.first), db = param_key::total_degree(b.first);
    if (da != db) return da > db;
    return a.first > b.first;
  });
  return terms;
}

std::string poly_text(const LaurentPoly& p, bool latex) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : display_order(p)) {
    Rational a = abs(c);
    bool neg = sgn(c) < 0;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    std::string mono;
    for (int i = 0; i < ParamRegistry::kMaxParams; ++i) {
      int e = param_key::exponent(k, i);
      if (e == 0) continue;
      std::string nm = ParamRegistry::name(i);
      if (latex && nm == "lambda") nm = "\\lambda";
      if (!mono.empty()) mono += latex ? " " : "*";
      mono += nm;
      if (e != 1) mono += latex ? "^{" + std::to_string(e) + "}" : "^" + std::to_string(e);
    }
    std::string coeff;
    if (latex && a.get_den() != 1)
      coeff = "\\frac{" + a.get_num().get_str() + "}{" + a.get_den().get_str() + "}";
    else
      coeff = a.get_str();
    if (mono.empty())
      out += coeff;
    else if (a == 1)
      out += mono;
    else
      out += coeff + (latex ? " " : "*") + mono;
  }
  return out;
}

}  // namespace

std::string ParamScalar::to_string() const {
  if (den_.is_zero()) return poly_text(num_, false);
  return "(" + poly_text(num_, false) + ")/(" + poly_text(den_, false) + ")";
}

std::string ParamScalar::to_latex() const {
  if (den_.is_zero()) return poly_text(num_, true);
  return "\\frac{" + poly_text(num_, true) + "}{" + poly_text(den_, true) + "}";
}

}  // namespace qcomm
