#pragma once

#include <map>
#include <string>
#include <vector>

#include "qcomm/pbw.hpp"
#include "qcomm/sym_poly.hpp"

namespace qcomm {

class ParseError : public InputError {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : InputError(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// Named PBW elements that may appear in expressions (A1, M2, ...).
using Environment = std::map<std::string, PBWElement>;

/// Parses an enveloping-algebra expression; products are normal-ordered in
/// the written order. Symbols resolve to the environment first, then to
/// generators, then to parameters ("m", "lambda"; "λ" is accepted).
PBWElement parse_pbw(const AlgebraPtr& a, const std::string& text, const Environment* env = nullptr);
/// Parses a commutative polynomial in the lowercase variable names.
SymPolynomial parse_sym(const AlgebraPtr& a, const std::string& text);
/// Parses a scalar in Q(params).
ParamScalar parse_scalar(const std::string& text);

enum class Style { Text, Latex };

std::string format(const PBWElement& e, Style style = Style::Text);
std::string format(const SymPolynomial& p, Style style = Style::Text);
std::string format_scalar(const ParamScalar& s, Style style = Style::Text);

struct NamedLine {
  std::string name;  // empty when the line had no "name =" prefix
  std::string expr;
  int line = 0;
};

/// One expression per line; '#' starts a comment; "name = expr" names it.
std::vector<NamedLine> split_expression_lines(const std::string& text);

}  // namespace qcomm
