#include "qcomm/lie_algebra.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <regex>

namespace qcomm {

namespace {

std::uint64_t next_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1);
}

BracketValue canonical(BracketValue v) {
  std::map<int, ParamScalar> acc;
  for (auto& t : v) acc[t.target] += t.coeff;
  BracketValue out;
  for (auto& [target, c] : acc)
    if (!c.is_zero()) out.push_back({c, target});
  return out;
}

BracketValue negated(const BracketValue& v) {
  BracketValue out = v;
  for (auto& t : out) t.coeff = -t.coeff;
  return out;
}

}  // namespace

LieAlgebra::LieAlgebra(std::string name, std::vector<std::string> basis, std::vector<std::string> parameters)
    : name_(std::move(name)), basis_(std::move(basis)), parameters_(std::move(parameters)), id_(next_id()) {
  if (basis_.empty()) throw InputError("algebra has no generators");
  if (dim() > kMaxGenerators) throw InputError("algebra has more than 32 generators");
  for (std::size_t i = 0; i < basis_.size(); ++i)
    for (std::size_t j = i + 1; j < basis_.size(); ++j)
      if (basis_[i] == basis_[j]) throw InputError("duplicate generator " + basis_[i]);
  for (const auto& p : parameters_) {
    if (std::find(basis_.begin(), basis_.end(), p) != basis_.end())
      throw InputError("parameter " + p + " is also a generator");
    ParamRegistry::intern(p);
  }
  table_.resize(basis_.size() * basis_.size());
}

int LieAlgebra::index_of(const std::string& symbol) const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i] == symbol) return static_cast<int>(i);
  return -1;
}

void LieAlgebra::set_bracket(int i, int j, BracketValue value) {
  if (i < 0 || j < 0 || i >= dim() || j >= dim()) throw InputError("bracket index out of range");
  if (i == j) throw InputError("bracket of " + symbol(i) + " with itself");
  for (const auto& t : value)
    if (t.target >= dim()) throw InputError("bracket target out of range");
  value = canonical(std::move(value));
  table_[static_cast<std::size_t>(j * dim() + i)] = negated(value);
  table_[static_cast<std::size_t>(i * dim() + j)] = std::move(value);
  id_ = next_id();
}

void LieAlgebra::set_bracket(const std::string& x, const std::string& y, BracketValue value) {
  int i = index_of(x), j = index_of(y);
  if (i < 0) throw InputError("unknown generator " + x);
  if (j < 0) throw InputError("unknown generator " + y);
  set_bracket(i, j, std::move(value));
}

void LieAlgebra::set_weights(std::vector<int> w) {
  if (static_cast<int>(w.size()) != dim()) throw InputError("weight vector has wrong length");
  weights_ = std::move(w);
}

namespace {

// [v, X_k] for a linear combination v; unit terms are central.
void add_bracket_with(const LieAlgebra& a, const BracketValue& v, int k, const ParamScalar& sign,
                      std::map<int, ParamScalar>& acc) {
  for (const auto& t : v) {
    if (t.is_unit()) continue;
    for (const auto& u : a.bracket(t.target, k)) acc[u.target] += sign * t.coeff * u.coeff;
  }
}

}  // namespace

ValidationReport validate(const LieAlgebra& a) {
  ValidationReport rep;
  const int n = a.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        std::map<int, ParamScalar> acc;
        add_bracket_with(a, a.bracket(i, j), k, 1, acc);
        add_bracket_with(a, a.bracket(j, k), i, 1, acc);
        add_bracket_with(a, a.bracket(k, i), j, 1, acc);
        BracketValue res;
        for (auto& [t, c] : acc)
          if (!c.is_zero()) res.push_back({c, t});
        if (!res.empty()) rep.violations.push_back({i, j, k, std::move(res)});
      }
  if (a.weights()) {
    const auto& w = *a.weights();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (const auto& t : a.bracket(i, j)) {
          int wt = t.is_unit() ? 0 : w[static_cast<std::size_t>(t.target)];
          if (wt != w[static_cast<std::size_t>(i)] + w[static_cast<std::size_t>(j)])
            rep.weight_errors.push_back("[" + a.symbol(i) + "," + a.symbol(j) + "]");
        }
  }
  rep.passed = rep.violations.empty();
  return rep;
}

std::string format_bracket_value(const LieAlgebra& a, const BracketValue& v) {
  if (v.empty()) return "0";
  std::string out;
  for (const auto& t : v) {
    std::string c = t.coeff.to_string();
    bool neg = !c.empty() && c[0] == '-' && t.coeff.numerator().size() == 1;
    if (neg) c = c.substr(1);
    if (!out.empty())
      out += neg ? " - " : " + ";
    else if (neg)
      out += "-";
    bool compound = t.coeff.numerator().size() > 1 || !t.coeff.is_laurent();
    if (compound) c = "(" + c + ")";
    if (t.is_unit())
      out += c;
    else if (c == "1")
      out += a.symbol(t.target);
    else
      out += c + "*" + a.symbol(t.target);
  }
  return out;
}

Integer heisenberg_constant(int two_j, int r) {
  Integer fr, fs;
  mpz_fac_ui(fr.get_mpz_t(), static_cast<unsigned long>(two_j - r));
  mpz_fac_ui(fs.get_mpz_t(), static_cast<unsigned long>(r));
  Integer v = fr * fs;
  // exponent r + j + 1/2 = r + (two_j + 1) / 2
  if ((r + (two_j + 1) / 2) % 2 != 0) v = -v;
  return v;
}

namespace {

AlgebraPtr build_schrodinger(int n) {
  std::vector<std::string> basis{"H", "E", "F"};
  for (int s = 0; s <= n; ++s) basis.push_back("P" + std::to_string(s));
  if (static_cast<int>(basis.size()) > LieAlgebra::kMaxGenerators) throw InputError("two_j too large");
  auto a = std::make_shared<LieAlgebra>("S(" + std::to_string(n) + ")", basis, std::vector<std::string>{"m"});
  auto P = [](int s) { return 3 + s; };
  const ParamScalar m = ParamScalar::param("m");
  a->set_bracket(0, 1, {{2, 1}});
  a->set_bracket(0, 2, {{-2, 2}});
  a->set_bracket(1, 2, {{1, 0}});
  for (int s = 0; s <= n; ++s) {
    if (n - 2 * s != 0) a->set_bracket(0, P(s), {{n - 2 * s, P(s)}});
    if (s >= 1) a->set_bracket(1, P(s), {{s, P(s - 1)}});
    if (s <= n - 1) a->set_bracket(2, P(s), {{n - s, P(s + 1)}});
  }
  for (int r = 0; 2 * r < n; ++r) a->set_bracket(P(r), P(n - r), {{m * Rational(heisenberg_constant(n, r)), -1}});
  std::vector<int> w{0, 2, -2};
  for (int s = 0; s <= n; ++s) w.push_back(n - 2 * s);
  a->set_weights(w);
  return a;
}

}  // namespace

// one instance per n, so elements built in different places can be mixed
AlgebraPtr schrodinger(int two_j) {
  if (two_j < 1 || two_j % 2 == 0) throw InputError("two_j must be odd and positive, got " + std::to_string(two_j));
  static std::mutex mu;
  static std::map<int, AlgebraPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[two_j];
  if (!slot) slot = build_schrodinger(two_j);
  return slot;
}

AlgebraPtr r3() {
  auto a = std::make_shared<LieAlgebra>("r3", std::vector<std::string>{"X1", "X2", "X3"});
  a->set_bracket("X3", "X1", {{1, 1}});
  a->set_bracket("X3", "X2", {{-1, 0}});
  return a;
}

AlgebraPtr sl2() {
  auto a = std::make_shared<LieAlgebra>("sl2", std::vector<std::string>{"H", "E", "F"});
  a->set_bracket(0, 1, {{2, 1}});
  a->set_bracket(0, 2, {{-2, 2}});
  a->set_bracket(1, 2, {{1, 0}});
  a->set_weights({0, 2, -2});
  return a;
}

AlgebraPtr heisenberg(int k) {
  if (k < 1) throw InputError("heisenberg needs k >= 1");
  std::vector<std::string> basis;
  for (int i = 1; i <= k; ++i) basis.push_back("X" + std::to_string(i));
  for (int i = 1; i <= k; ++i) basis.push_back("Y" + std::to_string(i));
  basis.push_back("Z");
  auto a = std::make_shared<LieAlgebra>("heisenberg(" + std::to_string(k) + ")", basis);
  for (int i = 0; i < k; ++i) a->set_bracket(i, k + i, {{1, 2 * k}});
  return a;
}

AlgebraPtr weyl(const std::vector<std::string>& vars, std::vector<std::string> parameters) {
  if (vars.empty()) throw InputError("weyl algebra needs at least one variable");
  std::vector<std::string> basis = vars;
  for (const auto& v : vars) basis.push_back("D" + v);
  std::string name = "weyl(";
  for (std::size_t i = 0; i < vars.size(); ++i) name += (i ? "," : "") + vars[i];
  name += ")";
  auto a = std::make_shared<LieAlgebra>(name, basis, std::move(parameters));
  const int k = static_cast<int>(vars.size());
  // [Du, u] = 1, stored as [u, Du] = -1
  for (int i = 0; i < k; ++i) a->set_bracket(i, k + i, {{-1, -1}});
  return a;
}

AlgebraPtr build_named(const std::string& id) {
  static const std::regex call(R"(^\s*([A-Za-z0-9_]+)\s*(?:\((.*)\))?\s*$)");
  std::smatch mt;
  if (!std::regex_match(id, mt, call)) throw InputError("unknown algebra id: " + id);
  std::string head = mt[1];
  std::string args = mt[2];
  std::vector<std::string> list;
  {
    std::string cur;
    for (char c : args) {
      if (c == ',') {
        list.push_back(cur);
        cur.clear();
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        cur += c;
      }
    }
    if (!cur.empty()) list.push_back(cur);
  }
  auto int_arg = [&](const std::string& s) {
    try {
      std::size_t pos = 0;
      int v = std::stoi(s, &pos);
      if (pos != s.size()) throw InputError("bad integer " + s);
      return v;
    } catch (const std::logic_error&) {
      throw InputError("bad integer argument in " + id);
    }
  };
  if (head == "r3" && list.empty()) return r3();
  if (head == "sl2" && list.empty()) return sl2();
  if (head == "heisenberg" && list.size() == 1) return heisenberg(int_arg(list[0]));
  if (head == "weyl" && !list.empty()) return weyl(list);
  if (head == "schrodinger" && list.size() == 1) return schrodinger(int_arg(list[0]));
  if (head.size() > 1 && head[0] == 's' && list.empty() &&
      std::all_of(head.begin() + 1, head.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    return schrodinger(int_arg(head.substr(1)));
  throw InputError("unknown algebra id: " + id);
}

}  // namespace qcomm
