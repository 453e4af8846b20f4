#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcomm/closure.hpp"
#include "qcomm/coadjoint.hpp"
#include "qcomm/expr.hpp"

namespace qcomm {

enum class VerifyMode { Strict, Advisory };

struct ExpectedEntry {
  std::string left, right;  // generator names
  std::string rhs;          // as printed, products as written
  std::string label;        // where the line sits in its table
  bool required = false;    // must match even in advisory mode
};

struct NamedExpr {
  std::string name;
  std::string expr;
};

struct SolverExpectation {
  std::vector<std::string> annihilators;
  int degree = 0;
  std::optional<int> weight;
  std::vector<std::string> seeds;  // commutative polynomials the solver must reproduce
  /// Enveloping-algebra elements that must commute with every annihilator.
  std::vector<std::string> commutant_seeds;
  int count = -1;  // expected number of independent members
};

struct SubsetCheck {
  std::vector<NamedExpr> generators;  // names or expressions over the case generators
  std::string classification;         // expected, "" = no expectation
  std::string pattern;                // e.g. "b+R"
  std::optional<std::vector<std::string>> removable;  // minimality expectation
};

struct AdjunctionCheck {
  std::vector<std::string> start;  // subset of generator names
  int degree = 0;                  // expected degree of the single adjunction
  std::string reproduces;          // generator expressible through it
};

struct CaseSpec {
  std::string id;
  std::string title;
  std::string algebra;  // builder id, e.g. "schrodinger(1)"
  std::string hamiltonian;
  std::vector<NamedExpr> generators;
  std::vector<ExpectedEntry> expected;
  bool unlisted_zero = false;  // pairs not listed must commute
  std::string classification;  // expected classification of the full set
  std::vector<std::string> chain;
  VerifyMode mode = VerifyMode::Strict;
  std::optional<SolverExpectation> solver;
  std::vector<SubsetCheck> subsets;
  std::optional<AdjunctionCheck> adjunction;
  std::vector<std::string> notes;
};

struct Realization {
  std::string id;
  std::string algebra;
  std::vector<std::string> vars;
  std::vector<NamedExpr> images;  // generator -> Weyl-algebra element
  VerifyMode mode = VerifyMode::Strict;
  std::vector<std::pair<std::string, std::string>> required;  // pairs that must have zero residual
};

std::vector<std::string> scenario_ids();
CaseSpec scenario(const std::string& id);
CaseSpec parse_case_json(const std::string& text);
std::vector<std::string> realization_ids();
Realization realization(const std::string& id);

// -------- general-n formulas

/// Exact value of the generating function Omega(l, q).
Rational omega(int l, int q);

/// Printed: the closed forms as usually stated. Corrected: index shift in alpha_s,
/// (n-1)! on the central terms and p_s p_{n+1-s} in I3, matching the solver.
enum class FormulaVariant { Printed, Corrected };

SymPolynomial j2_polynomial(int n, FormulaVariant v = FormulaVariant::Printed);
std::vector<SymPolynomial> i_solutions(int n, FormulaVariant v = FormulaVariant::Printed);
/// I1, I2, I3 from the solver: annihilated by the P_l fields, weights -1, 2, -2.
std::vector<SymPolynomial> i_solutions_solved(int n);
/// (J41, J42) = (I1^2 I2, I2 I3).
std::pair<SymPolynomial, SymPolynomial> quartic_seeds(const std::vector<SymPolynomial>& i);
/// Degree-4 solution of the full system reduced modulo span{1, J2, J2^2, J41, J42}.
SymPolynomial third_quartic(int n, const SymPolynomial& j2, const SymPolynomial& j41, const SymPolynomial& j42);
PBWElement extended_cartan_hamiltonian(int n);
/// C0 of S(1) and the quartic C0 of S(3). Corrected carries m^2 on the sl2
/// Casimir part of the quartic, as P -> tP, m -> t^2 m requires.
PBWElement schrodinger_casimir(int n, FormulaVariant v = FormulaVariant::Printed);
/// H and P_l for (n+1)/2 <= l <= n.
std::vector<std::string> extended_cartan_annihilators(int n);

// -------- verification

struct EntryCheck {
  std::string left, right, label;
  std::string expected_text;
  bool as_written = false;
  bool symmetrized = false;
  std::string computed;  // computed commutator
  std::string expansion; // quadratic expansion of the computed value, if any
  std::string residual;  // computed - expected (as written)
  bool matched() const { return as_written || symmetrized; }
};

struct CheckLine {
  std::string name;
  bool passed = false;
  std::string detail;
  bool required = true;  // false: reported, does not affect the verdict
};

struct CaseResult {
  std::string id;
  VerifyMode mode = VerifyMode::Strict;
  bool advisory_products = false;
  std::vector<EntryCheck> entries;
  std::vector<CheckLine> checks;
  std::optional<ClosureReport> closure;
  std::vector<std::string> notes;
  int matched = 0;
  int total = 0;
  bool passed() const;
  /// 0 ok, 1 mismatch in strict mode, 2 expected closure not found.
  int exit_code() const;
};

/// Verifies a case: expected entries, closure, classification, subsets, solver seeds.
CaseResult verify_case(const CaseSpec& spec, bool advisory = false);
CaseResult verify_extcartan_sn(int n);

struct PairResidual {
  std::string left, right;
  std::string image_commutator;
  std::string expected;
  std::string residual;
  bool zero = false;
};

struct RealizationReport {
  std::string id;
  VerifyMode mode = VerifyMode::Strict;
  std::vector<PairResidual> pairs;
  int zero_pairs = 0;
  bool required_ok = true;
};

RealizationReport verify_realization(const Realization& r);

/// A case's generator set built from its expressions.
GeneratorSet build_generator_set(const CaseSpec& spec);

/// RHS parsed with commutative products of generators read as symmetrized.
PBWElement parse_symmetrized(const GeneratorSet& set, const std::string& rhs);

}  // namespace qcomm
