#include "qcomm/closure.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "qcomm/expr.hpp"
#include "qcomm/linear_solve.hpp"

namespace qcomm {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Solver: return "solver";
    case Provenance::Adjoined: return "adjoined";
    case Provenance::User: return "user";
  }
  return "user";
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::Abelian: return "abelian";
    case Classification::Lie: return "lie";
    case Classification::Quadratic: return "quadratic";
    case Classification::NonClosing: return "non-closing";
  }
  return "non-closing";
}

int worker_count() {
  if (const char* s = std::getenv("QCOMM_THREADS")) {
    int n = std::atoi(s);
    if (n > 0) return n;
  }
  unsigned h = std::thread::hardware_concurrency();
  return h ? static_cast<int>(h) : 1;
}

namespace {

template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(worker_count()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace

// ---------------------------------------------------------------- generator sets

GeneratorSet::GeneratorSet(PBWElement hamiltonian, std::vector<NamedElement> generators)
    : h_(std::move(hamiltonian)) {
  for (auto& g : generators) add(std::move(g));
}

void GeneratorSet::add(NamedElement e) {
  if (e.value.algebra() != h_.algebra()) throw InputError("generator " + e.name + " lives in another algebra");
  if (index_of(e.name) >= 0) throw InputError("duplicate generator name " + e.name);
  if (!commutator(h_, e.value).is_zero()) throw InputError("generator " + e.name + " does not commute with the Hamiltonian");
  gens_.push_back(std::move(e));
}

int GeneratorSet::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name == name) return static_cast<int>(i);
  return -1;
}

std::vector<PBWElement> GeneratorSet::values() const {
  std::vector<PBWElement> v;
  for (const auto& g : gens_) v.push_back(g.value);
  return v;
}

std::vector<std::string> GeneratorSet::names() const {
  std::vector<std::string> v;
  for (const auto& g : gens_) v.push_back(g.name);
  return v;
}

std::map<std::string, PBWElement> GeneratorSet::environment() const {
  std::map<std::string, PBWElement> env;
  for (const auto& g : gens_) env.emplace(g.name, g.value);
  return env;
}

GeneratorSet GeneratorSet::without(int i) const {
  GeneratorSet s;
  s.h_ = h_;
  for (int k = 0; k < size(); ++k)
    if (k != i) s.gens_.push_back(gens_[static_cast<std::size_t>(k)]);
  return s;
}

CommuteResult commutes(const PBWElement& a, const PBWElement& h) {
  CommuteResult r;
  r.residual = commutator(h, a);
  r.commutes = r.residual.is_zero();
  return r;
}

// ---------------------------------------------------------------- expansions

bool QuadraticExpansion::has_quadratic_part() const {
  for (const auto& t : terms)
    if (t.is_quadratic() && !t.coeff.is_zero()) return true;
  return false;
}

namespace {

PBWElement product_of(const PBWElement& x, const PBWElement& y, ProductOrder order, bool same) {
  if (order == ProductOrder::AsWritten || same) return x * y;
  return (x * y + y * x) * ParamScalar(Rational(1, 2));
}

std::string latex_name(const std::string& n) {
  std::size_t k = n.size();
  while (k > 0 && std::isdigit(static_cast<unsigned char>(n[k - 1]))) --k;
  if (k == 0 || k == n.size()) return n;
  return n.substr(0, k) + "_{" + n.substr(k) + "}";
}

std::string basis_label(const ExpansionTerm& t, const std::vector<std::string>& names, Style style) {
  auto nm = [&](int i) {
    const std::string& s = names.at(static_cast<std::size_t>(i));
    return style == Style::Latex ? latex_name(s) : s;
  };
  if (t.p < 0) return {};
  if (t.q < 0) return nm(t.p);
  if (t.p == t.q) return nm(t.p) + (style == Style::Latex ? "^{2}" : "^2");
  return nm(t.p) + (style == Style::Latex ? " " : "*") + nm(t.q);
}

std::string combination(const std::vector<ExpansionTerm>& terms, const std::vector<std::string>& names, Style style) {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms) {
    if (t.coeff.is_zero()) continue;
    std::string label = basis_label(t, names, style);
    std::string c = format_scalar(t.coeff, style);
    bool neg = !c.empty() && c[0] == '-';
    const bool single = t.coeff.is_laurent() && t.coeff.numerator().size() == 1;
    std::string body;
    if (label.empty()) {
      body = c;
      if (!single) body = "(" + c + ")", neg = false;
    } else if (single) {
      std::string mag = neg ? c.substr(1) : c;
      if (mag == "1")
        body = (neg ? "-" : "") + label;
      else
        body = (neg ? "-" : "") + mag + (style == Style::Latex ? " " : "*") + label;
    } else {
      body = "(" + c + ")" + (style == Style::Latex ? " " : "*") + label;
      neg = false;
    }
    if (!first) {
      if (neg)
        os << " - " << body.substr(1);
      else
        os << " + " << body;
    } else {
      os << body;
    }
    first = false;
  }
  return first ? "0" : os.str();
}

}  // namespace

PBWElement QuadraticExpansion::evaluate(const std::vector<PBWElement>& gens, ProductOrder order) const {
  if (gens.empty()) throw InputError("no generators");
  PBWElement out(gens[0].algebra());
  for (const auto& t : terms) {
    if (t.p < 0)
      out += PBWElement::scalar(gens[0].algebra(), t.coeff);
    else if (t.q < 0)
      out += gens[static_cast<std::size_t>(t.p)] * t.coeff;
    else
      out += product_of(gens[static_cast<std::size_t>(t.p)], gens[static_cast<std::size_t>(t.q)], order, t.p == t.q) *
             t.coeff;
  }
  return out;
}

std::string QuadraticExpansion::to_string(const std::vector<std::string>& names) const {
  return combination(terms, names, Style::Text);
}

std::string QuadraticExpansion::to_latex(const std::vector<std::string>& names) const {
  return combination(terms, names, Style::Latex);
}

namespace {

struct RowKey {
  Monomial mono;
  ParamKey key;
};

struct RowLess {
  bool operator()(const RowKey& a, const RowKey& b) const {
    if (a.mono != b.mono) return GradedLex{}(a.mono, b.mono);
    return a.key < b.key;
  }
};

struct KeyLess {
  bool operator()(ParamKey a, ParamKey b) const {
    int da = param_key::total_degree(a), db = param_key::total_degree(b);
    if (da != db) return da < db;
    return a < b;
  }
};

using FieldEchelon = LeadingEchelon<Monomial, ParamScalar, GradedLex>;
using QEchelon = LeadingEchelon<RowKey, Rational, RowLess>;

std::vector<std::pair<Monomial, ParamScalar>> field_vec(const PBWElement& e) {
  std::vector<std::pair<Monomial, ParamScalar>> v;
  v.reserve(e.terms().size());
  for (const auto& t : e.terms()) v.emplace_back(t.mono, t.coeff);
  return v;
}

PBWElement from_field_vec(const AlgebraPtr& a, const std::vector<std::pair<Monomial, ParamScalar>>& v) {
  TermAccumulator acc;
  for (const auto& [m, c] : v) accumulate(acc, m, c);
  return PBWElement(a, finish_terms(std::move(acc)));
}

bool all_laurent(const PBWElement& e) {
  for (const auto& t : e.terms())
    if (!t.coeff.is_laurent()) return false;
  return true;
}

// Exponent range [lo, hi] of each parameter over the numerators.
void param_range(const PBWElement& e, std::map<int, std::pair<int, int>>& out) {
  for (const auto& t : e.terms())
    for (const auto& [k, c] : t.coeff.numerator().terms())
      for (int p = 0; p < ParamRegistry::size(); ++p) {
        int x = param_key::exponent(k, p);
        if (x == 0) continue;
        auto [it, fresh] = out.try_emplace(p, std::min(0, x), std::max(0, x));
        if (!fresh) it->second = {std::min(it->second.first, x), std::max(it->second.second, x)};
      }
}

}  // namespace

struct Expander::Impl {
  std::vector<PBWElement> gens;
  ExpandOptions opts;
  AlgebraPtr alg;
  bool laurent = true;
  std::map<int, std::pair<int, int>> gen_params;
  std::map<std::pair<int, int>, PBWElement> products;

  struct FieldBasis {
    std::vector<ExpansionTerm> columns;  // coefficient unused
    FieldEchelon ech;
  };
  std::map<int, FieldBasis> field_cache;  // by max column degree
  std::unique_ptr<FieldEchelon> linear;

  int gen_degree(int p) const { return gens[static_cast<std::size_t>(p)].degree(); }

  const PBWElement& prod(int p, int q) {
    auto key = std::make_pair(p, q);
    auto it = products.find(key);
    if (it != products.end()) return it->second;
    auto e = product_of(gens[static_cast<std::size_t>(p)], gens[static_cast<std::size_t>(q)], opts.order, p == q);
    return products.emplace(key, std::move(e)).first->second;
  }

  PBWElement column_value(const ExpansionTerm& c) {
    if (c.p < 0) return PBWElement::scalar(alg, 1);
    if (c.q < 0) return gens[static_cast<std::size_t>(c.p)];
    return prod(c.p, c.q);
  }

  std::vector<ExpansionTerm> columns_up_to(int deg) {
    std::vector<ExpansionTerm> cols;
    cols.push_back({-1, -1, {}});
    const int n = static_cast<int>(gens.size());
    for (int p = 0; p < n; ++p)
      if (gen_degree(p) <= deg) cols.push_back({p, -1, {}});
    for (int p = 0; p < n; ++p)
      for (int q = p; q < n; ++q)
        if (gen_degree(p) >= 0 && gen_degree(q) >= 0 && gen_degree(p) + gen_degree(q) <= deg) cols.push_back({p, q, {}});
    return cols;
  }

  FieldBasis& field_basis(int deg) {
    auto it = field_cache.find(deg);
    if (it != field_cache.end()) return it->second;
    FieldBasis fb;
    fb.columns = columns_up_to(deg);
    for (const auto& c : fb.columns) fb.ech.insert(field_vec(column_value(c)));
    return field_cache.emplace(deg, std::move(fb)).first->second;
  }

  // Over Q with one unknown per (basis element, parameter monomial).
  bool q_solve(const PBWElement& target, std::vector<ExpansionTerm>& terms) {
    if (!all_laurent(target) || !laurent) return false;
    const int deg = std::max(0, target.degree()) + opts.degree_slack;
    auto ranges = gen_params;
    param_range(target, ranges);
    const int m = ParamRegistry::find("m");
    std::vector<ParamKey> kappa{param_key::kOne};
    for (auto& [p, r] : ranges) {
      int lo, hi;
      if (p == m) {
        lo = std::min(0, r.first);
        hi = opts.m_degree_bound >= 0 ? opts.m_degree_bound : std::max({2, target.degree(), r.second});
      } else {
        lo = std::min(-opts.laurent_bound, r.first);
        hi = std::max(opts.laurent_bound, r.second);
      }
      std::vector<ParamKey> next;
      for (ParamKey k : kappa)
        for (int x = lo; x <= hi; ++x) next.push_back(param_key::times(k, param_key::single(p, x)));
      kappa = std::move(next);
    }
    std::sort(kappa.begin(), kappa.end(), KeyLess{});

    auto cols = columns_up_to(deg);
    std::vector<std::pair<std::size_t, ParamKey>> ids;
    QEchelon ech;
    for (std::size_t ci = 0; ci < cols.size(); ++ci) {
      PBWElement v = column_value(cols[ci]);
      for (ParamKey k : kappa) {
        QEchelon::Vec vec;
        for (const auto& t : v.terms())
          for (const auto& [pk, c] : t.coeff.numerator().terms()) vec.push_back({{t.mono, param_key::times(pk, k)}, c});
        ech.insert(vec);
        ids.emplace_back(ci, k);
      }
    }
    QEchelon::Vec tv;
    for (const auto& t : target.terms())
      for (const auto& [pk, c] : t.coeff.numerator().terms()) tv.push_back({{t.mono, pk}, c});
    QEchelon::Combo combo;
    if (!ech.reduce(tv, &combo).empty()) return false;
    std::vector<ParamScalar> coeff(cols.size());
    for (const auto& [id, c] : combo) {
      const auto& [ci, k] = ids[static_cast<std::size_t>(id)];
      coeff[ci] += ParamScalar::from_key(k, c);
    }
    terms.clear();
    for (std::size_t ci = 0; ci < cols.size(); ++ci)
      if (!coeff[ci].is_zero()) terms.push_back({cols[ci].p, cols[ci].q, coeff[ci]});
    return true;
  }
};

Expander::Expander(std::vector<PBWElement> gens, ExpandOptions opts) : impl_(new Impl) {
  if (gens.empty()) throw InputError("empty generator list");
  impl_->alg = gens[0].algebra();
  impl_->gens = std::move(gens);
  impl_->opts = opts;
  for (const auto& g : impl_->gens) {
    impl_->laurent = impl_->laurent && all_laurent(g);
    param_range(g, impl_->gen_params);
  }
}

Expander::~Expander() { delete impl_; }

const PBWElement& Expander::product(int p, int q) { return impl_->prod(p, q); }

QuadraticExpansion Expander::expand(const PBWElement& target) {
  QuadraticExpansion out;
  out.target = target;
  out.residual = PBWElement(impl_->alg);
  if (target.is_zero()) return out;
  auto& fb = impl_->field_basis(std::max(0, target.degree()) + impl_->opts.degree_slack);
  FieldEchelon::Combo combo;
  auto nf = fb.ech.reduce(field_vec(target), &combo);
  if (!nf.empty()) {
    out.residual = from_field_vec(impl_->alg, nf);
    return out;
  }
  bool laurent = true;
  for (const auto& [id, c] : combo) {
    const auto& col = fb.columns[static_cast<std::size_t>(id)];
    out.terms.push_back({col.p, col.q, c});
    laurent = laurent && c.is_laurent();
  }
  if (!laurent) {
    std::vector<ExpansionTerm> poly;
    if (impl_->q_solve(target, poly)) out.terms = std::move(poly);
  }
  return out;
}

PBWElement Expander::linear_residual(const PBWElement& target) {
  if (!impl_->linear) {
    impl_->linear = std::make_unique<FieldEchelon>();
    impl_->linear->insert(field_vec(PBWElement::scalar(impl_->alg, 1)));
    for (const auto& g : impl_->gens) impl_->linear->insert(field_vec(g));
  }
  return from_field_vec(impl_->alg, impl_->linear->reduce(field_vec(target)));
}

QuadraticExpansion quadratic_expand(const PBWElement& target, const GeneratorSet& set, const ExpandOptions& opts) {
  Expander ex(set.values(), opts);
  return ex.expand(target);
}

// ---------------------------------------------------------------- closure

const QuadraticExpansion& ClosureReport::entry(int i, int j) const {
  if (i > j) std::swap(i, j);
  const int n = set.size();
  if (i < 0 || i == j || j >= n) throw InputError("no table entry for this pair");
  const std::size_t idx = static_cast<std::size_t>(i * (2 * n - i - 1) / 2 + (j - i - 1));
  return table.at(idx);
}

namespace {

using PairKey = std::pair<std::string, std::string>;

struct TableState {
  std::map<PairKey, PBWElement> commutators;  // by generator names
};

std::vector<QuadraticExpansion> build_table(const GeneratorSet& set, const ExpandOptions& opts, TableState& st,
                                            Expander& ex) {
  const int n = set.size();
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<std::pair<int, int>> todo;
  for (auto [i, j] : pairs)
    if (!st.commutators.count({set.name(i), set.name(j)})) todo.emplace_back(i, j);
  std::vector<PBWElement> fresh(todo.size(), PBWElement(set.algebra()));
  parallel_for(todo.size(), [&](std::size_t k) { fresh[k] = commutator(set[todo[k].first], set[todo[k].second]); });
  for (std::size_t k = 0; k < todo.size(); ++k)
    st.commutators.emplace(PairKey{set.name(todo[k].first), set.name(todo[k].second)}, std::move(fresh[k]));
  (void)opts;
  std::vector<QuadraticExpansion> table;
  for (auto [i, j] : pairs) {
    auto e = ex.expand(st.commutators.at({set.name(i), set.name(j)}));
    e.i = i;
    e.j = j;
    table.push_back(std::move(e));
  }
  return table;
}

PBWElement monic(const PBWElement& e) {
  if (e.is_zero()) return e;
  return e * e.terms().back().coeff.inverse();
}

// New commutant elements suggested by one failed expansion.
std::vector<PBWElement> candidates_for(const PBWElement& h0, const QuadraticExpansion& e, Expander& ex) {
  std::vector<PBWElement> out;
  const AlgebraPtr& a = h0.algebra();
  PBWElement top = e.residual.homogeneous_part(e.residual.degree());
  bool monomials = true;
  for (const auto& t : top.terms()) {
    PBWElement u = PBWElement::monomial(a, t.mono);
    if (!commutator(h0, u).is_zero()) {
      monomials = false;
      break;
    }
    out.push_back(std::move(u));
  }
  if (monomials && !out.empty()) {
    std::reverse(out.begin(), out.end());  // leading monomial first
    return out;
  }
  out.clear();
  PBWElement l = ex.linear_residual(e.target);
  if (!l.is_zero()) out.push_back(monic(l));
  return out;
}

bool lead_greater(const PBWElement& x, const PBWElement& y) {
  if (x.degree() != y.degree()) return x.degree() > y.degree();
  return GradedLex{}(y.terms().back().mono, x.terms().back().mono);
}

}  // namespace

ClosureReport closure_table(const GeneratorSet& set, const ExpandOptions& opts) {
  ClosureReport r{set, {}, false, false, 0, {}, {}, {}, {}, {}, {}};
  TableState st;
  Expander ex(set.values(), opts);
  r.table = build_table(set, opts, st, ex);
  r.rounds = 1;
  r.closed = std::all_of(r.table.begin(), r.table.end(), [](const QuadraticExpansion& e) { return e.success(); });
  return r;
}

ClosureReport close_set(const GeneratorSet& set, const ClosureOptions& opts) {
  ClosureReport r{set, {}, false, false, 0, {}, {}, {}, {}, {}, {}};
  TableState st;
  GeneratorSet cur = set;
  std::vector<std::pair<int, PBWElement>> first_round;  // (round, element)
  int zcount = 0;

  for (int round = 1; round <= opts.max_rounds; ++round) {
    r.rounds = round;
    Expander ex(cur.values(), opts.expand);
    r.set = cur;
    r.table = build_table(cur, opts.expand, st, ex);
    std::vector<const QuadraticExpansion*> failures;
    for (const auto& e : r.table)
      if (!e.success()) failures.push_back(&e);
    if (failures.empty()) {
      r.closed = true;
      break;
    }
    // candidates, deduplicated over Q(params) against the linear span of the set
    FieldEchelon span;
    span.insert(field_vec(PBWElement::scalar(cur.algebra(), 1)));
    for (const auto& g : cur.values()) span.insert(field_vec(g));
    std::vector<std::pair<PBWElement, const QuadraticExpansion*>> accepted;
    for (const auto* f : failures) {
      auto cands = candidates_for(cur.hamiltonian(), *f, ex);
      for (auto& c : cands)
        if (span.insert(field_vec(c)).independent) accepted.emplace_back(std::move(c), f);
    }
    int top = 0;
    for (const auto& [c, f] : accepted) top = std::max(top, c.degree());
    if (accepted.empty()) {
      r.notes.push_back("round " + std::to_string(round) + ": failures left no independent candidate");
      r.budget_exceeded = true;
      break;
    }
    if (top > opts.max_degree) {
      r.notes.push_back("round " + std::to_string(round) + ": candidate of degree " + std::to_string(top) +
                        " exceeds the cap " + std::to_string(opts.max_degree));
      r.budget_exceeded = true;
      break;
    }
    if (round == opts.max_rounds) {
      r.notes.push_back("round cap " + std::to_string(opts.max_rounds) + " reached");
      r.budget_exceeded = true;
      break;
    }
    if (cur.size() + accepted.size() > opts.max_generators) {
      r.notes.push_back("generator cap " + std::to_string(opts.max_generators) + " reached");
      r.budget_exceeded = true;
      break;
    }
    for (auto& [c, f] : accepted) {
      std::string name;
      do name = "Z" + std::to_string(++zcount);
      while (cur.index_of(name) >= 0);
      Adjunction adj{name, round, -1, -1, c.degree()};
      const std::string pi = cur.name(f->i), pj = cur.name(f->j);
      if (round == 1) first_round.emplace_back(round, c);
      cur.add({name, std::move(c), Provenance::Adjoined});
      adj.parent_i = cur.index_of(pi);
      adj.parent_j = cur.index_of(pj);
      r.adjoined.push_back(adj);
    }
  }

  // escalation chain: each link is judged against the original generators
  // plus the earlier links only
  if (!first_round.empty()) {
    std::vector<PBWElement> low;
    int dmin = first_round.front().second.degree();
    for (const auto& [rd, e] : first_round) dmin = std::min(dmin, e.degree());
    for (const auto& [rd, e] : first_round)
      if (e.degree() == dmin) low.push_back(e);
    PBWElement z = low.front();
    for (const auto& e : low)
      if (lead_greater(e, z)) z = e;
    GeneratorSet chain_set = set;
    for (std::size_t k = 0; k < 8; ++k) {
      r.chain.push_back(z);
      if (z.degree() > opts.max_degree) break;
      const int zi = chain_set.size();
      chain_set.add({"L" + std::to_string(k + 1), z, Provenance::Adjoined});
      Expander ex(chain_set.values(), opts.expand);
      std::optional<PBWElement> best;
      for (int x = 0; x < zi; ++x) {
        auto e = ex.expand(commutator(chain_set[zi], chain_set[x]));
        if (e.success()) continue;
        for (const auto& c : candidates_for(chain_set.hamiltonian(), e, ex))
          if (!best || lead_greater(c, *best)) best = c;
      }
      if (!best) break;
      z = *best;
    }
  }
  return r;
}

std::vector<bool> minimality_check(const ClosureReport& report, const ExpandOptions& opts) {
  std::vector<bool> flags;
  const int n = report.set.size();
  TableState st;
  for (const auto& e : report.table)
    st.commutators.emplace(PairKey{report.set.name(e.i), report.set.name(e.j)}, e.target);
  for (int i = 0; i < n; ++i) {
    GeneratorSet reduced = report.set.without(i);
    if (reduced.size() == 0) {
      flags.push_back(true);
      continue;
    }
    Expander ex(reduced.values(), opts);
    auto table = build_table(reduced, opts, st, ex);
    bool closes = true, quadratic = false, nonzero = false;
    for (const auto& e : table) {
      closes = closes && e.success();
      quadratic = quadratic || e.has_quadratic_part();
      nonzero = nonzero || !e.is_zero();
    }
    // removable only if the rest still closes with a genuine quadratic part
    flags.push_back(!(closes && quadratic && nonzero));
  }
  return flags;
}

namespace {

using SmallEchelon = LeadingEchelon<int, ParamScalar>;

// Linear bracket vector of a table entry over the generator indices, or empty
// optional when a constant term or quadratic term is present.
std::optional<std::vector<std::pair<int, ParamScalar>>> linear_vector(const QuadraticExpansion& e) {
  std::vector<std::pair<int, ParamScalar>> v;
  for (const auto& t : e.terms) {
    if (t.coeff.is_zero()) continue;
    if (t.p < 0 || t.q >= 0) return std::nullopt;
    v.emplace_back(t.p, t.coeff);
  }
  return v;
}

std::string lie_pattern(const ClosureReport& r) {
  if (r.set.size() != 3) return {};
  std::vector<std::vector<std::pair<int, ParamScalar>>> br(9);
  for (const auto& e : r.table) {
    auto v = linear_vector(e);
    if (!v) return {};
    br[static_cast<std::size_t>(e.i * 3 + e.j)] = *v;
    std::vector<std::pair<int, ParamScalar>> neg;
    for (auto& [k, c] : *v) neg.emplace_back(k, -c);
    br[static_cast<std::size_t>(e.j * 3 + e.i)] = neg;
  }
  SmallEchelon derived;
  std::vector<std::pair<int, ParamScalar>> w;
  for (const auto& e : r.table)
    if (derived.insert(br[static_cast<std::size_t>(e.i * 3 + e.j)]).independent && w.empty())
      w = br[static_cast<std::size_t>(e.i * 3 + e.j)];
  if (derived.rank() != 1) return {};
  for (int x = 0; x < 3; ++x) {
    std::map<int, ParamScalar> xw;
    for (const auto& [k, c] : w)
      for (const auto& [l, d] : br[static_cast<std::size_t>(x * 3 + k)]) xw[l] += c * d;
    // xw = lambda * w with lambda != 0
    std::optional<ParamScalar> lambda;
    bool prop = true;
    for (const auto& [k, c] : w) {
      ParamScalar ratio = xw[k] / c;
      if (!lambda) lambda = ratio;
      prop = prop && ratio == *lambda;
    }
    for (const auto& [k, c] : xw) {
      bool in_w = std::any_of(w.begin(), w.end(), [&](const auto& p) { return p.first == k; });
      if (!in_w && !c.is_zero()) prop = false;
    }
    if (prop && lambda && !lambda->is_zero()) return "b+R";
  }
  return {};
}

}  // namespace

Classification classify(ClosureReport& report) {
  Classification c;
  report.lie_pattern.clear();
  if (!report.closed) {
    c = Classification::NonClosing;
  } else if (std::all_of(report.table.begin(), report.table.end(),
                         [](const QuadraticExpansion& e) { return e.is_zero(); })) {
    c = Classification::Abelian;
  } else if (std::none_of(report.table.begin(), report.table.end(),
                          [](const QuadraticExpansion& e) { return e.has_quadratic_part(); })) {
    c = Classification::Lie;
    report.lie_pattern = lie_pattern(report);
  } else {
    c = Classification::Quadratic;
  }
  report.classification = c;
  return c;
}

}  // namespace qcomm
