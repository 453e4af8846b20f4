#include "qcomm/coadjoint.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "qcomm/expr.hpp"
#include "qcomm/linear_solve.hpp"

namespace qcomm {

SymPolynomial VectorField::apply(const SymPolynomial& p) const {
  TermAccumulator acc;
  for (const auto& t : p.terms()) {
    for (const auto& ft : terms_) {
      const int k = t.mono[ft.target];
      if (!k) continue;
      Monomial m = t.mono;
      m.bump(ft.target, -1);
      if (ft.source >= 0) m.bump(ft.source);
      accumulate(acc, m, t.coeff * ft.coeff * ParamScalar(static_cast<long>(k)));
    }
  }
  return SymPolynomial(p.algebra(), finish_terms(std::move(acc)));
}

std::string VectorField::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& ft : terms_) {
    SymPolynomial c = ft.source >= 0 ? SymPolynomial::variable(alg_, ft.source) * ft.coeff
                                     : SymPolynomial::constant(alg_, ft.coeff);
    std::string s = format(c);
    bool neg = !s.empty() && s[0] == '-';
    bool compound = c.terms().size() > 1 || (!ft.coeff.is_laurent()) || ft.coeff.numerator().size() > 1;
    if (!first) os << (neg && !compound ? " - " : " + ");
    if (neg && !compound && !first) s = s.substr(1);
    if (compound) s = "(" + s + ")";
    if (s == "1")
      s.clear();
    else if (s == "-1")
      s = "-";
    else
      s += "*";
    os << s << "d" << variable_name(*alg_, ft.target);
    first = false;
  }
  return first ? "0" : os.str();
}

VectorField coadjoint_field(const AlgebraPtr& a, const PBWElement& y) {
  if (y.degree() > 1) throw InputError("coadjoint field needs a linear element");
  std::map<std::pair<int, int>, ParamScalar> acc;  // (target, source)
  for (const auto& t : y.terms()) {
    if (t.mono.is_one()) continue;
    const int i = t.mono.last();
    for (int j = 0; j < a->dim(); ++j)
      for (const auto& bt : a->bracket(i, j)) {
        auto& slot = acc[{j, bt.is_unit() ? -1 : bt.target}];
        slot += t.coeff * bt.coeff;
      }
  }
  std::vector<FieldTerm> terms;
  for (auto& [key, c] : acc)
    if (!c.is_zero()) terms.push_back({c, key.second, key.first});
  return VectorField(a, std::move(terms), format(y));
}

VectorField coadjoint_field(const AlgebraPtr& a, const std::string& y) {
  auto f = coadjoint_field(a, parse_pbw(a, y));
  return VectorField(a, f.terms(), y);
}

namespace {

void enumerate(const LieAlgebra& a, const std::vector<int>* w, int var, int left, int weight, Monomial& cur,
               std::optional<int> target, std::vector<Monomial>& out, std::size_t max_size) {
  if (var == a.dim()) {
    if (!target || weight == *target) {
      if (out.size() >= max_size)
        throw ResourceError("ansatz exceeds " + std::to_string(max_size) + " monomials", out.size() + 1);
      out.push_back(cur);
    }
    return;
  }
  for (int k = 0; k <= left; ++k) {
    enumerate(a, w, var + 1, left - k, weight + (w ? k * (*w)[static_cast<std::size_t>(var)] : 0), cur, target,
              out, max_size);
    if (k < left) cur.bump(var);
  }
  cur.e[static_cast<std::size_t>(var)] = 0;
}

struct ImageKey {
  Monomial mono;
  int field;
};

struct ImageLess {
  bool operator()(const ImageKey& x, const ImageKey& y) const {
    if (x.mono != y.mono) return GradedLex{}(x.mono, y.mono);
    return x.field < y.field;
  }
};

}  // namespace

std::vector<Monomial> ansatz_monomials(const LieAlgebra& a, int d, std::optional<int> weight, std::size_t max_size) {
  const std::vector<int>* w = nullptr;
  if (weight) {
    if (!a.weights()) throw InputError("weight filter needs weight metadata on " + a.name());
    w = &*a.weights();
  }
  std::vector<Monomial> out;
  Monomial cur;
  enumerate(a, w, 0, d, 0, cur, weight, out, max_size);
  std::sort(out.begin(), out.end(), GradedLex{});
  return out;
}

SolutionSpace solve_degree(const std::vector<VectorField>& fields, int d, const SolveOptions& opts) {
  if (fields.empty()) throw InputError("no annihilators");
  if (d < 0) throw InputError("negative degree");
  const AlgebraPtr& a = fields[0].algebra();
  SolutionSpace sp;
  sp.degree = d;
  for (const auto& f : fields) sp.annihilators.push_back(f.label());
  std::vector<Monomial> ansatz;
  try {
    ansatz = ansatz_monomials(*a, d, opts.weight, opts.max_ansatz);
  } catch (const ResourceError& e) {
    throw ResourceError("ansatz dimension above " + std::to_string(opts.max_ansatz) + " at degree " +
                            std::to_string(d),
                        e.dimension());
  }
  sp.ansatz_dimension = ansatz.size();

  LeadingEchelon<ImageKey, ParamScalar, ImageLess> ech;
  for (const auto& u : ansatz) {
    std::vector<std::pair<ImageKey, ParamScalar>> img;
    SymPolynomial mono = SymPolynomial::monomial(a, u);
    for (std::size_t fi = 0; fi < fields.size(); ++fi) {
      const SymPolynomial im = fields[fi].apply(mono);
      for (const auto& t : im.terms()) img.push_back({{t.mono, static_cast<int>(fi)}, t.coeff});
    }
    auto ins = ech.insert(img);
    if (ins.independent) {
      if (!ins.pivot.is_constant()) sp.assumptions.push_back(ins.pivot);
      continue;
    }
    TermAccumulator acc;
    for (const auto& [id, c] : ins.dependency) accumulate(acc, ansatz[static_cast<std::size_t>(id)], c);
    sp.basis.push_back(SymPolynomial(a, finish_terms(std::move(acc))).normalized());
  }
  sp.solution_dimension = sp.basis.size();
  return sp;
}

SolutionSpace solve_degree(const AlgebraPtr& a, const std::vector<std::string>& annihilators, int d,
                           const SolveOptions& opts) {
  std::vector<VectorField> fields;
  for (const auto& y : annihilators) fields.push_back(coadjoint_field(a, y));
  return solve_degree(fields, d, opts);
}

std::vector<std::vector<Rational>> sample_points(int dim, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(1, 97);
  std::vector<std::vector<Rational>> pts;
  for (int c = 0; c < count; ++c) {
    std::vector<Rational> p;
    for (int i = 0; i < dim; ++i) {
      int v = dist(rng);
      if (rng() & 1) v = -v;
      p.emplace_back(v);
    }
    pts.push_back(std::move(p));
  }
  return pts;
}

std::vector<SymPolynomial> independent_subset(const std::vector<SymPolynomial>& polys, std::uint64_t seed) {
  std::vector<SymPolynomial> kept;
  if (polys.empty()) return kept;
  auto pts = sample_points(polys[0].algebra()->dim(), 3, seed);
  for (const auto& p : polys) {
    auto trial = kept;
    trial.push_back(p);
    int best = 0;
    for (const auto& pt : pts) best = std::max(best, jacobian_rank(trial, pt));
    if (best == static_cast<int>(trial.size())) kept = std::move(trial);
  }
  return kept;
}

namespace {

using SymEchelon = LeadingEchelon<Monomial, ParamScalar, GradedLex>;

std::vector<std::pair<Monomial, ParamScalar>> as_vec(const SymPolynomial& p) {
  std::vector<std::pair<Monomial, ParamScalar>> v;
  for (const auto& t : p.terms()) v.emplace_back(t.mono, t.coeff);
  return v;
}

void products_rec(const std::vector<SymPolynomial>& polys, std::size_t from, const SymPolynomial& cur, int left,
                  std::vector<SymPolynomial>& out) {
  out.push_back(cur);
  for (std::size_t i = from; i < polys.size(); ++i) {
    const int di = polys[i].degree();
    if (di <= 0 || di > left) continue;
    products_rec(polys, i, cur * polys[i], left - di, out);
  }
}

}  // namespace

std::vector<SymPolynomial> products_up_to(const std::vector<SymPolynomial>& polys, int d) {
  std::vector<SymPolynomial> out;
  if (polys.empty()) return out;
  products_rec(polys, 0, SymPolynomial::constant(polys[0].algebra(), 1), d, out);
  return out;
}

bool in_linear_span(const SymPolynomial& p, const std::vector<SymPolynomial>& span) {
  SymEchelon ech;
  for (const auto& s : span) ech.insert(as_vec(s));
  return ech.in_span(as_vec(p));
}

SymPolynomial reduce_modulo(const SymPolynomial& p, const std::vector<SymPolynomial>& span) {
  SymEchelon ech;
  for (const auto& s : span) ech.insert(as_vec(s));
  auto v = ech.reduce(as_vec(p));
  std::vector<Term> terms;
  for (auto& [k, c] : v) terms.push_back({k, c});
  return SymPolynomial(p.algebra(), std::move(terms));
}

std::vector<SymPolynomial> integrity_basis_candidate(const std::vector<VectorField>& fields, int max_degree,
                                                     const SolveOptions& opts) {
  std::vector<SymPolynomial> kept;
  for (int k = 1; k <= max_degree; ++k) {
    auto sp = solve_degree(fields, k, opts);
    SymEchelon ech;
    if (kept.empty())
      ech.insert(as_vec(SymPolynomial::constant(fields[0].algebra(), 1)));
    else
      for (const auto& q : products_up_to(kept, k)) ech.insert(as_vec(q));
    // graded-lex greatest first within a degree
    for (auto it = sp.basis.rbegin(); it != sp.basis.rend(); ++it)
      if (ech.insert(as_vec(*it)).independent) kept.push_back(*it);
  }
  return kept;
}

std::vector<SymPolynomial> integrity_basis_candidate(const AlgebraPtr& a, const std::vector<std::string>& annihilators,
                                                     int max_degree, const SolveOptions& opts) {
  std::vector<VectorField> fields;
  for (const auto& y : annihilators) fields.push_back(coadjoint_field(a, y));
  return integrity_basis_candidate(fields, max_degree, opts);
}

}  // namespace qcomm
