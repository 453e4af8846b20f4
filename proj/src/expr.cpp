#include "qcomm/expr.hpp"

#include <cctype>
#include <functional>
#include <memory>
#include <sstream>

namespace qcomm {

namespace {

struct Node {
  enum Kind { Number, Symbol, Sum, Product, Quotient, Power, Negate } kind;
  Rational number;
  std::string symbol;
  std::vector<std::unique_ptr<Node>> kids;
  std::vector<int> signs;  // Sum only
  int exponent = 1;
  std::size_t pos = 0;
};

using NodePtr = std::unique_ptr<Node>;

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  NodePtr parse() {
    skip();
    if (i_ >= s_.size()) throw ParseError("empty expression", i_);
    NodePtr n = expr();
    skip();
    if (i_ < s_.size()) throw ParseError(std::string("unexpected '") + s_[i_] + "'", i_);
    return n;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    auto sum = std::make_unique<Node>();
    sum->kind = Node::Sum;
    sum->pos = i_;
    int sign = 1;
    skip();
    if (eat('-'))
      sign = -1;
    else
      eat('+');
    sum->kids.push_back(term());
    sum->signs.push_back(sign);
    while (true) {
      skip();
      if (eat('+'))
        sign = 1;
      else if (eat('-'))
        sign = -1;
      else
        break;
      sum->kids.push_back(term());
      sum->signs.push_back(sign);
    }
    if (sum->kids.size() == 1 && sum->signs[0] == 1) return std::move(sum->kids[0]);
    return sum;
  }

  NodePtr term() {
    NodePtr left = factor();
    while (true) {
      skip();
      if (i_ < s_.size() && s_[i_] == '*') {
        ++i_;
        NodePtr right = factor();
        auto p = std::make_unique<Node>();
        p->kind = Node::Product;
        p->pos = right->pos;
        p->kids.push_back(std::move(left));
        p->kids.push_back(std::move(right));
        left = std::move(p);
      } else if (i_ < s_.size() && s_[i_] == '/') {
        ++i_;
        NodePtr right = factor();
        auto q = std::make_unique<Node>();
        q->kind = Node::Quotient;
        q->pos = right->pos;
        q->kids.push_back(std::move(left));
        q->kids.push_back(std::move(right));
        left = std::move(q);
      } else {
        break;
      }
    }
    return left;
  }

  NodePtr factor() {
    skip();
    std::size_t start = i_;
    NodePtr base;
    if (i_ >= s_.size()) throw ParseError("unexpected end of expression", i_);
    char c = s_[i_];
    if (c == '-') {
      ++i_;
      auto n = std::make_unique<Node>();
      n->kind = Node::Negate;
      n->pos = start;
      n->kids.push_back(factor());
      return n;
    }
    if (c == '(') {
      ++i_;
      base = expr();
      if (!eat(')')) throw ParseError("expected ')'", i_);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i_;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      base = std::make_unique<Node>();
      base->kind = Node::Number;
      base->number = Rational(Integer(s_.substr(i_, j - i_)));
      i_ = j;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || static_cast<unsigned char>(c) >= 0x80) {
      std::size_t j = i_;
      while (j < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_' ||
                               static_cast<unsigned char>(s_[j]) >= 0x80))
        ++j;
      base = std::make_unique<Node>();
      base->kind = Node::Symbol;
      base->symbol = s_.substr(i_, j - i_);
      i_ = j;
    } else {
      throw ParseError(std::string("unexpected '") + c + "'", i_);
    }
    base->pos = start;
    skip();
    if (i_ < s_.size() && s_[i_] == '^') {
      ++i_;
      skip();
      bool neg = false;
      if (i_ < s_.size() && s_[i_] == '-') {
        neg = true;
        ++i_;
      } else if (i_ < s_.size() && s_[i_] == '(') {
        // allow ^(-1) and ^(2)
        std::size_t save = i_;
        ++i_;
        skip();
        if (i_ < s_.size() && s_[i_] == '-') {
          neg = true;
          ++i_;
        }
        std::size_t j = i_;
        while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
        if (j == i_) throw ParseError("expected integer exponent", save);
        int e = std::stoi(s_.substr(i_, j - i_));
        i_ = j;
        if (!eat(')')) throw ParseError("expected ')'", i_);
        auto p = std::make_unique<Node>();
        p->kind = Node::Power;
        p->pos = start;
        p->exponent = neg ? -e : e;
        p->kids.push_back(std::move(base));
        return p;
      }
      std::size_t j = i_;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      if (j == i_) throw ParseError("expected integer exponent", i_);
      if (j - i_ > 4) throw ParseError("exponent too large", i_);
      int e = std::stoi(s_.substr(i_, j - i_));
      i_ = j;
      auto p = std::make_unique<Node>();
      p->kind = Node::Power;
      p->pos = start;
      p->exponent = neg ? -e : e;
      p->kids.push_back(std::move(base));
      return p;
    }
    return base;
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

bool is_parameter_name(const std::string& s) { return s == "m" || s == "lambda" || s == "\xce\xbb"; }

std::string canonical_parameter(const std::string& s) { return s == "\xce\xbb" ? "lambda" : s; }

// Evaluation into a value type V offering: scalar(c), is_scalar(), scalar_value(), +, -, *, *scalar.
template <class V, class Resolve>
V eval(const Node& n, const Resolve& resolve, const std::function<V(const ParamScalar&)>& make_scalar) {
  switch (n.kind) {
    case Node::Number:
      return make_scalar(ParamScalar(n.number));
    case Node::Symbol:
      return resolve(n.symbol, n.pos);
    case Node::Negate:
      return -eval<V>(*n.kids[0], resolve, make_scalar);
    case Node::Sum: {
      V acc = make_scalar(0);
      for (std::size_t i = 0; i < n.kids.size(); ++i) {
        V t = eval<V>(*n.kids[i], resolve, make_scalar);
        if (n.signs[i] < 0)
          acc -= t;
        else
          acc += t;
      }
      return acc;
    }
    case Node::Product:
      return eval<V>(*n.kids[0], resolve, make_scalar) * eval<V>(*n.kids[1], resolve, make_scalar);
    case Node::Quotient: {
      V num = eval<V>(*n.kids[0], resolve, make_scalar);
      V den = eval<V>(*n.kids[1], resolve, make_scalar);
      if (!den.is_scalar()) throw ParseError("division by a non-scalar", n.pos);
      ParamScalar d = den.scalar_value();
      if (d.is_zero()) throw ParseError("division by zero", n.pos);
      return num * d.inverse();
    }
    case Node::Power: {
      V base = eval<V>(*n.kids[0], resolve, make_scalar);
      if (n.exponent < 0) {
        if (!base.is_scalar() || base.scalar_value().is_zero())
          throw ParseError("negative power of a non-scalar", n.pos);
        ParamScalar inv = base.scalar_value().inverse();
        ParamScalar r = 1;
        for (int k = 0; k < -n.exponent; ++k) r *= inv;
        return make_scalar(r);
      }
      V r = make_scalar(1);
      for (int k = 0; k < n.exponent; ++k) r = r * base;
      return r;
    }
  }
  throw ParseError("bad expression node", n.pos);
}

// Scalar-valued wrapper so the evaluator can be reused for parse_scalar.
struct ScalarValue {
  ParamScalar v;
  bool is_scalar() const { return true; }
  ParamScalar scalar_value() const { return v; }
  ScalarValue operator-() const { return {-v}; }
  ScalarValue& operator+=(const ScalarValue& o) {
    v += o.v;
    return *this;
  }
  ScalarValue& operator-=(const ScalarValue& o) {
    v -= o.v;
    return *this;
  }
  friend ScalarValue operator*(const ScalarValue& a, const ScalarValue& b) { return {a.v * b.v}; }
  friend ScalarValue operator*(const ScalarValue& a, const ParamScalar& b) { return {a.v * b}; }
};

// Adapter giving SymPolynomial the evaluator's interface.
struct SymValue {
  SymPolynomial p;
  bool is_scalar() const { return p.is_constant(); }
  ParamScalar scalar_value() const { return p.constant_term(); }
  SymValue operator-() const { return {-p}; }
  SymValue& operator+=(const SymValue& o) {
    p += o.p;
    return *this;
  }
  SymValue& operator-=(const SymValue& o) {
    p -= o.p;
    return *this;
  }
  friend SymValue operator*(const SymValue& a, const SymValue& b) { return {a.p * b.p}; }
  friend SymValue operator*(const SymValue& a, const ParamScalar& b) { return {a.p * b}; }
};

struct PBWValue {
  PBWElement e;
  bool is_scalar() const { return e.is_scalar(); }
  ParamScalar scalar_value() const { return e.scalar_value(); }
  PBWValue operator-() const { return {-e}; }
  PBWValue& operator+=(const PBWValue& o) {
    e += o.e;
    return *this;
  }
  PBWValue& operator-=(const PBWValue& o) {
    e -= o.e;
    return *this;
  }
  friend PBWValue operator*(const PBWValue& a, const PBWValue& b) { return {mul(a.e, b.e)}; }
  friend PBWValue operator*(const PBWValue& a, const ParamScalar& b) { return {a.e * b}; }
};

}  // namespace

PBWElement parse_pbw(const AlgebraPtr& a, const std::string& text, const Environment* env) {
  Parser p(text);
  NodePtr root = p.parse();
  auto resolve = [&](const std::string& sym, std::size_t pos) -> PBWValue {
    if (env) {
      auto it = env->find(sym);
      if (it != env->end()) return {it->second};
    }
    int i = a->index_of(sym);
    if (i >= 0) return {PBWElement::generator(a, i)};
    if (is_parameter_name(sym)) return {PBWElement::scalar(a, ParamScalar::param(canonical_parameter(sym)))};
    for (const auto& par : a->parameters())
      if (par == sym) return {PBWElement::scalar(a, ParamScalar::param(sym))};
    throw ParseError("unknown symbol '" + sym + "'", pos);
  };
  std::function<PBWValue(const ParamScalar&)> mk = [&](const ParamScalar& c) { return PBWValue{PBWElement::scalar(a, c)}; };
  return eval<PBWValue>(*root, resolve, mk).e;
}

SymPolynomial parse_sym(const AlgebraPtr& a, const std::string& text) {
  Parser p(text);
  NodePtr root = p.parse();
  auto resolve = [&](const std::string& sym, std::size_t pos) -> SymValue {
    for (int i = 0; i < a->dim(); ++i)
      if (variable_name(*a, i) == sym) return {SymPolynomial::variable(a, i)};
    if (is_parameter_name(sym)) return {SymPolynomial::constant(a, ParamScalar::param(canonical_parameter(sym)))};
    for (const auto& par : a->parameters())
      if (par == sym) return {SymPolynomial::constant(a, ParamScalar::param(sym))};
    throw ParseError("unknown symbol '" + sym + "'", pos);
  };
  std::function<SymValue(const ParamScalar&)> mk = [&](const ParamScalar& c) { return SymValue{SymPolynomial::constant(a, c)}; };
  return eval<SymValue>(*root, resolve, mk).p;
}

ParamScalar parse_scalar(const std::string& text) {
  Parser p(text);
  NodePtr root = p.parse();
  auto resolve = [&](const std::string& sym, std::size_t pos) -> ScalarValue {
    if (is_parameter_name(sym) || ParamRegistry::find(sym) >= 0) return {ParamScalar::param(canonical_parameter(sym))};
    throw ParseError("unknown parameter '" + sym + "'", pos);
  };
  std::function<ScalarValue(const ParamScalar&)> mk = [](const ParamScalar& c) { return ScalarValue{c}; };
  return eval<ScalarValue>(*root, resolve, mk).v;
}

std::string format_scalar(const ParamScalar& s, Style style) {
  return style == Style::Latex ? s.to_latex() : s.to_string();
}

namespace {

std::string latex_symbol(const std::string& s) {
  // P12 -> P_{12}, Dx0 -> \partial_{x0}
  if (s.size() > 1 && s[0] == 'D' && std::islower(static_cast<unsigned char>(s[1])))
    return "\\partial_{" + s.substr(1) + "}";
  std::size_t k = s.size();
  while (k > 0 && std::isdigit(static_cast<unsigned char>(s[k - 1]))) --k;
  if (k == s.size() || k == 0) return s;
  return s.substr(0, k) + "_{" + s.substr(k) + "}";
}

std::string format_terms(const std::vector<Term>& terms, const std::function<std::string(int)>& name, Style style) {
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  const std::string mulsep = style == Style::Latex ? " " : "*";
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const Term& t = *it;
    std::string mono;
    for (int i = 0; i < 32; ++i) {
      int e = t.mono[i];
      if (!e) continue;
      if (!mono.empty()) mono += mulsep;
      std::string nm = name(i);
      if (style == Style::Latex) nm = latex_symbol(nm);
      mono += nm;
      if (e > 1) mono += style == Style::Latex ? "^{" + std::to_string(e) + "}" : "^" + std::to_string(e);
    }
    const ParamScalar& c = t.coeff;
    bool simple = c.is_laurent() && c.numerator().size() == 1;
    bool neg = false;
    std::string cs;
    if (simple) {
      const auto& term = c.numerator().terms()[0];
      neg = sgn(term.second) < 0;
      cs = format_scalar(neg ? -c : c, style);
    } else {
      cs = format_scalar(c, style);
      if (c.is_laurent() || style == Style::Text) cs = "(" + cs + ")";
    }
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    if (mono.empty())
      out += cs;
    else if (cs == "1")
      out += mono;
    else
      out += cs + mulsep + mono;
  }
  return out;
}

}  // namespace

std::string format(const PBWElement& e, Style style) {
  const auto& a = *e.algebra();
  return format_terms(e.terms(), [&](int i) { return a.symbol(i); }, style);
}

std::string format(const SymPolynomial& p, Style style) {
  const auto& a = *p.algebra();
  return format_terms(p.terms(), [&](int i) { return variable_name(a, i); }, style);
}

std::vector<NamedLine> split_expression_lines(const std::string& text) {
  std::vector<NamedLine> out;
  std::istringstream in(text);
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    line = line.substr(b);
    line = line.substr(0, line.find_last_not_of(" \t\r") + 1);
    NamedLine nl;
    nl.line = no;
    auto eq = line.find('=');
    if (eq != std::string::npos) {
      std::string name = line.substr(0, eq);
      name = name.substr(0, name.find_last_not_of(" \t") + 1);
      bool ident = !name.empty();
      for (char c : name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') ident = false;
      if (!ident) throw ParseError("bad name on line " + std::to_string(no), 0);
      nl.name = name;
      std::string rhs = line.substr(eq + 1);
      auto rb = rhs.find_first_not_of(" \t");
      nl.expr = rb == std::string::npos ? "" : rhs.substr(rb);
    } else {
      nl.expr = line;
    }
    out.push_back(std::move(nl));
  }
  return out;
}

}  // namespace qcomm
