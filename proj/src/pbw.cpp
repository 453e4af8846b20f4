#include "qcomm/pbw.hpp"

#include <numeric>

namespace qcomm {

namespace {

struct PairKey {
  Monomial u;
  Monomial v;
  friend bool operator==(const PairKey& a, const PairKey& b) { return a.u == b.u && a.v == b.v; }
};

struct PairKeyHash {
  std::size_t operator()(const PairKey& k) const {
    MonomialHash h;
    std::size_t a = h(k.u), b = h(k.v);
    return a ^ (b * 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2));
  }
};

constexpr std::size_t kMemoCap = 1u << 21;

// Products u * v of PBW monomials, for one algebra. A single generator v is the
// base case of the recursion.
struct MemoTable {
  std::unordered_map<PairKey, std::vector<Term>, PairKeyHash> products;
};

thread_local std::unordered_map<std::uint64_t, MemoTable> t_memo;

MemoTable& memo_for(const LieAlgebra& a) {
  auto& t = t_memo[a.id()];
  if (t.products.size() > kMemoCap) t.products.clear();
  return t;
}

const std::vector<Term>& mono_mono(const LieAlgebra& A, MemoTable& T, const Monomial& u, const Monomial& v);

// acc += c * u * X_j
void mono_gen_into(const LieAlgebra& A, MemoTable& T, const Monomial& u, int j, const ParamScalar& c,
                   TermAccumulator& acc) {
  if (u.last() <= j) {
    Monomial w = u;
    w.bump(j);
    accumulate(acc, w, c);
    return;
  }
  const auto& r = mono_mono(A, T, u, Monomial::unit(j));
  for (const auto& t : r) accumulate(acc, t.mono, t.coeff * c);
}

int first_index(const Monomial& m) {
  for (int i = 0; i < 32; ++i)
    if (m[i]) return i;
  return 32;
}

const std::vector<Term>& mono_mono(const LieAlgebra& A, MemoTable& T, const Monomial& u, const Monomial& v) {
  PairKey key{u, v};
  auto it = T.products.find(key);
  if (it != T.products.end()) return it->second;

  TermAccumulator acc;
  const int l = v.last();
  if (v.degree() == 1) {
    // u = u' X_k with k > l:  u X_l = (u' X_l) X_k + u' [X_k, X_l]
    const int k = u.last();
    Monomial up = u;
    up.bump(k, -1);
    if (up.last() <= l) {
      Monomial w = up;
      w.bump(l);
      w.bump(k);
      accumulate(acc, w, 1);
    } else {
      // Table entries are never erased during a product, so references stay valid.
      const auto& first = mono_mono(A, T, up, v);
      for (const auto& t : first) mono_gen_into(A, T, t.mono, k, t.coeff, acc);
    }
    for (const auto& bt : A.bracket(k, l)) {
      if (bt.is_unit())
        accumulate(acc, up, bt.coeff);
      else
        mono_gen_into(A, T, up, bt.target, bt.coeff, acc);
    }
  } else {
    Monomial vp = v;
    vp.bump(l, -1);
    if (u.last() <= first_index(vp)) {
      mono_gen_into(A, T, u * vp, l, 1, acc);
    } else {
      const auto& left = mono_mono(A, T, u, vp);
      for (const auto& t : left) mono_gen_into(A, T, t.mono, l, t.coeff, acc);
    }
  }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!c.is_zero()) out.push_back({m, std::move(c)});
  auto [pos, fresh] = T.products.emplace(std::move(key), std::move(out));
  (void)fresh;
  return pos->second;
}

// acc += c * u * v
void mono_mono_into(const LieAlgebra& A, MemoTable& T, const Monomial& u, const Monomial& v, const ParamScalar& c,
                    TermAccumulator& acc) {
  if (v.is_one()) {
    accumulate(acc, u, c);
    return;
  }
  if (u.last() <= first_index(v)) {
    accumulate(acc, u * v, c);
    return;
  }
  const auto& r = mono_mono(A, T, u, v);
  for (const auto& t : r) accumulate(acc, t.mono, t.coeff * c);
}

}  // namespace

void clear_pbw_memo() { t_memo.clear(); }

std::size_t pbw_memo_size() {
  std::size_t s = 0;
  for (const auto& [id, t] : t_memo) s += t.products.size();
  return s;
}

PBWElement PBWElement::scalar(AlgebraPtr a, const ParamScalar& c) { return monomial(std::move(a), Monomial{}, c); }

PBWElement PBWElement::generator(AlgebraPtr a, int i) {
  if (i < 0 || i >= a->dim()) throw InputError("generator index out of range");
  return monomial(std::move(a), Monomial::unit(i));
}

PBWElement PBWElement::generator(AlgebraPtr a, const std::string& symbol) {
  int i = a->index_of(symbol);
  if (i < 0) throw InputError("unknown generator " + symbol);
  return generator(std::move(a), i);
}

PBWElement PBWElement::monomial(AlgebraPtr a, const Monomial& m, const ParamScalar& c) {
  PBWElement e(std::move(a));
  if (!c.is_zero()) e.terms_.push_back({m, c});
  return e;
}

ParamScalar PBWElement::scalar_value() const {
  if (!terms_.empty() && terms_[0].mono.is_one()) return terms_[0].coeff;
  return 0;
}

ParamScalar PBWElement::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& k) { return GradedLex{}(t.mono, k); });
  if (it != terms_.end() && it->mono == m) return it->coeff;
  return 0;
}

PBWElement PBWElement::homogeneous_part(int d) const {
  PBWElement r(alg_);
  for (const auto& t : terms_)
    if (t.mono.degree() == d) r.terms_.push_back(t);
  return r;
}

void PBWElement::check_same(const PBWElement& o) const {
  if (alg_ != o.alg_ && alg_->id() != o.alg_->id()) throw InputError("elements of different algebras");
}

PBWElement PBWElement::operator-() const {
  PBWElement r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

PBWElement& PBWElement::operator+=(const PBWElement& o) {
  check_same(o);
  terms_ = merge_terms(terms_, o.terms_, 1);
  return *this;
}

PBWElement& PBWElement::operator-=(const PBWElement& o) {
  check_same(o);
  terms_ = merge_terms(terms_, o.terms_, -1);
  return *this;
}

PBWElement& PBWElement::operator*=(const ParamScalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= s;
  return *this;
}

PBWElement operator*(const PBWElement& a, const PBWElement& b) { return mul(a, b); }

PBWElement PBWElement::pow(int k) const {
  if (k < 0) throw InputError("negative power of an element");
  PBWElement r = scalar(alg_, 1);
  for (int i = 0; i < k; ++i) r = mul(r, *this);
  return r;
}

bool operator==(const PBWElement& a, const PBWElement& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

PBWElement mul(const PBWElement& a, const PBWElement& b) {
  if (a.algebra() != b.algebra() && a.algebra()->id() != b.algebra()->id())
    throw InputError("elements of different algebras");
  const LieAlgebra& A = *a.algebra();
  MemoTable& T = memo_for(A);
  TermAccumulator acc;
  for (const auto& x : a.terms())
    for (const auto& y : b.terms()) mono_mono_into(A, T, x.mono, y.mono, x.coeff * y.coeff, acc);
  return PBWElement(a.algebra(), finish_terms(std::move(acc)));
}

PBWElement mul_generator(const PBWElement& a, int g) {
  const LieAlgebra& A = *a.algebra();
  MemoTable& T = memo_for(A);
  TermAccumulator acc;
  for (const auto& x : a.terms()) mono_gen_into(A, T, x.mono, g, x.coeff, acc);
  return PBWElement(a.algebra(), finish_terms(std::move(acc)));
}

PBWElement commutator(const PBWElement& a, const PBWElement& b) { return mul(a, b) - mul(b, a); }

PBWElement normalize(const AlgebraPtr& a, const std::vector<int>& word, const ParamScalar& coeff) {
  PBWElement e = PBWElement::scalar(a, coeff);
  for (int g : word) {
    if (g < 0 || g >= a->dim()) throw InputError("generator index out of range");
    e = mul_generator(e, g);
  }
  return e;
}

PBWElement normalize(const AlgebraPtr& a, const std::vector<std::string>& word, const ParamScalar& coeff) {
  ParamScalar c = coeff;
  std::vector<int> idx;
  for (const auto& s : word) {
    int i = a->index_of(s);
    if (i >= 0) {
      idx.push_back(i);
      continue;
    }
    if (std::find(a->parameters().begin(), a->parameters().end(), s) != a->parameters().end()) {
      c *= ParamScalar::param(s);
      continue;
    }
    throw InputError("unknown symbol " + s);
  }
  return normalize(a, idx, c);
}

namespace {

void sym_dfs(const PBWElement& prefix, std::array<int, 32>& remaining, int left, TermAccumulator& out) {
  if (left == 0) {
    for (const auto& t : prefix.terms()) accumulate(out, t.mono, t.coeff);
    return;
  }
  for (int i = 0; i < 32; ++i) {
    if (!remaining[static_cast<std::size_t>(i)]) continue;
    --remaining[static_cast<std::size_t>(i)];
    sym_dfs(mul_generator(prefix, i), remaining, left - 1, out);
    ++remaining[static_cast<std::size_t>(i)];
  }
}

}  // namespace

PBWElement symmetrize(const SymPolynomial& p) {
  const AlgebraPtr& a = p.algebra();
  PBWElement result(a);
  for (const auto& t : p.terms()) {
    const int s = t.mono.degree();
    if (s <= 1) {
      result += PBWElement::monomial(a, t.mono, t.coeff);
      continue;
    }
    std::array<int, 32> rem{};
    Integer count;
    mpz_fac_ui(count.get_mpz_t(), static_cast<unsigned long>(s));
    for (int i = 0; i < 32; ++i) {
      rem[static_cast<std::size_t>(i)] = t.mono[i];
      Integer f;
      mpz_fac_ui(f.get_mpz_t(), t.mono[i]);
      count /= f;
    }
    TermAccumulator acc;
    sym_dfs(PBWElement::scalar(a, 1), rem, s, acc);
    PBWElement sum(a, finish_terms(std::move(acc)));
    result += sum * (t.coeff / ParamScalar(Rational(count)));
  }
  return result;
}

SymPolynomial symbol_of(const PBWElement& e) {
  SymPolynomial p(e.algebra());
  if (e.is_zero()) return p;
  int d = e.degree();
  std::vector<Term> top;
  for (const auto& t : e.terms())
    if (t.mono.degree() == d) top.push_back(t);
  return SymPolynomial(e.algebra(), std::move(top));
}

}  // namespace qcomm
