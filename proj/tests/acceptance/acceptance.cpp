// One PASS/FAIL line per acceptance criterion.
//
//   acceptance                      exit 1 if any criterion fails
//   acceptance --expect-fail 2,4    exit 0 iff exactly these fail
//   acceptance --only 3,7           run a subset
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "../common/properties.hpp"
#include "qcomm/casebook.hpp"
#include "qcomm/coadjoint.hpp"
#include "qcomm/expr.hpp"

using namespace qcomm;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::set<int> parse_set(const std::string& s) {
  std::set<int> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');)
    if (!tok.empty()) out.insert(std::stoi(tok));
  return out;
}

const EntryCheck* entry(const CaseResult& r, const std::string& x, const std::string& y) {
  for (const auto& e : r.entries)
    if (e.left == x && e.right == y) return &e;
  return nullptr;
}

std::string failing_entries(const CaseResult& r) {
  std::string s;
  for (const auto& e : r.entries)
    if (!e.matched()) s += (s.empty() ? "" : " ") + ("[" + e.left + "," + e.right + "]");
  return s;
}

std::string failing_checks(const CaseResult& r) {
  std::string s;
  for (const auto& c : r.checks)
    if (c.required && !c.passed) s += (s.empty() ? "" : "; ") + c.name;
  return s;
}

std::string summary(const CaseResult& r) {
  std::string s = r.id + " " + std::to_string(r.matched) + "/" + std::to_string(r.total);
  auto fe = failing_entries(r), fc = failing_checks(r);
  if (!fe.empty()) s += ", mismatched " + fe;
  if (!fc.empty()) s += ", failed: " + fc;
  return s;
}

int nonzero_entries(const ClosureReport& r) {
  int k = 0;
  for (const auto& e : r.table) k += e.target.is_zero() ? 0 : 1;
  return k;
}

int distinct_values(const ClosureReport& r) {
  std::vector<const PBWElement*> seen;
  for (const auto& e : r.table) {
    if (e.target.is_zero()) continue;
    bool dup = false;
    for (const auto* p : seen) dup = dup || *p == e.target;
    if (!dup) seen.push_back(&e.target);
  }
  return static_cast<int>(seen.size());
}

Outcome c1() {
  std::vector<std::pair<std::string, AlgebraPtr>> algs{{"r3", r3()}, {"S(1)", schrodinger(1)}, {"S(3)", schrodinger(3)}};
  for (int n : {5, 7, 9, 11, 13}) algs.emplace_back("S(" + std::to_string(n) + ")", schrodinger(n));
  std::string bad;
  for (const auto& [name, a] : algs)
    if (!validate(*a).passed) bad += " " + name;
  return {bad.empty(), bad.empty() ? "Jacobi holds for r3, S(1), S(3), S(5..13)" : "Jacobi fails:" + bad};
}

Outcome c2() {
  std::string detail;
  bool ok = true;
  for (int n : {1, 3}) {
    auto c0 = schrodinger_casimir(n);
    const auto& a = c0.algebra();
    std::string nz;
    for (int i = 0; i < a->dim(); ++i) {
      auto r = commutator(c0, PBWElement::generator(a, i));
      if (!r.is_zero()) nz += " [C0," + a->symbol(i) + "]=" + format(r);
    }
    ok = ok && nz.empty();
    detail += "S(" + std::to_string(n) + "): " + (nz.empty() ? "central" : "not central," + nz) + "; ";
  }
  auto fixed = schrodinger_casimir(3, FormulaVariant::Corrected);
  bool fixed_ok = true;
  for (int i = 0; i < fixed.algebra()->dim(); ++i)
    fixed_ok = fixed_ok && commutator(fixed, PBWElement::generator(fixed.algebra(), i)).is_zero();
  detail += std::string("with m^2 on the sl2 part: ") + (fixed_ok ? "central" : "not central");
  return {ok, detail};
}

Outcome c3() {
  auto a = schrodinger(1);
  auto cand = integrity_basis_candidate(a, {"H"}, 3);
  auto indep = independent_subset(cand);
  std::vector<SymPolynomial> listed;
  for (const auto& s : {"h", "p1*p0", "e*f", "e*p1^2"}) listed.push_back(parse_sym(a, s));
  auto field = coadjoint_field(a, "H");
  auto prods = products_up_to(cand, 3);
  bool solver = independent_subset(listed).size() == listed.size() && indep.size() == listed.size();
  for (const auto& p : listed) solver = solver && field.apply(p).is_zero() && in_linear_span(p, prods);
  auto r = verify_case(scenario("cartan-s1"));
  auto e23 = entry(r, "A2", "A3"), e24 = entry(r, "A2", "A4");
  bool named = e23 && e23->as_written && e24 && e24->as_written;
  bool table = r.matched == r.total && r.passed();
  std::string d = std::string("integrity basis ") + (solver ? "reproduced" : "NOT reproduced") + " (" +
                  std::to_string(indep.size()) + " independent); [A2,A3], [A2,A4] " + (named ? "exact" : "differ") +
                  "; " + summary(r);
  return {solver && named && table, d};
}

Outcome c4() {
  auto r = verify_case(scenario("extcartan-s1"));
  bool subsets = true;
  for (const auto& c : r.checks)
    if (c.name.rfind("subset", 0) == 0) subsets = subsets && c.passed;
  return {r.passed() && r.matched == 6 && subsets,
          summary(r) + (subsets ? "; minimality and b+R subsets ok" : "; subset checks fail")};
}

Outcome c5() {
  auto r = verify_case(scenario("extborel-s1"));
  bool adj = false;
  for (const auto& c : r.checks)
    if (c.name == "closure by adjunction") adj = c.passed;
  int nz = r.closure ? nonzero_entries(*r.closure) : -1;
  int distinct = r.closure ? distinct_values(*r.closure) : -1;
  return {r.passed() && adj && distinct == 5,
          summary(r) + "; degree-4 adjunction " + (adj ? "found" : "missing") + "; " + std::to_string(nz) +
              " nonzero commutators, " + std::to_string(distinct) + " distinct"};
}

Outcome c6() {
  auto r = verify_case(scenario("borel-s1"));
  bool req = true;
  for (auto [x, y] : std::vector<std::pair<const char*, const char*>>{{"A2", "A4"}, {"A3", "A4"}, {"A4", "A5"}, {"A4", "A8"}}) {
    auto e = entry(r, x, y);
    req = req && e && e->matched();
  }
  int garbled = 0, reported = 0;
  for (const auto& e : r.entries)
    if (!e.matched()) {
      ++garbled;
      reported += e.computed.empty() ? 0 : 1;
    }
  return {req && r.exit_code() == 0 && garbled == reported,
          "required entries " + std::string(req ? "exact" : "differ") + "; " + std::to_string(garbled) +
              " garbled lines reported with computed values; exit " + std::to_string(r.exit_code())};
}

Outcome c7() {
  auto esc = verify_case(scenario("cartan-s3-escape"));
  auto sub = verify_case(scenario("cartan-s3-subalgebra"));
  std::string chain;
  if (esc.closure)
    for (std::size_t i = 0; i < esc.closure->chain.size() && i < 3; ++i) chain += " " + format(esc.closure->chain[i]);
  bool nonclosing = esc.closure && !esc.closure->closed;
  return {esc.passed() && nonclosing && sub.passed() && sub.matched == 7,
          "escape " + std::string(nonclosing ? "non-closing" : "closed") + ", chain" + chain + "; " + summary(sub)};
}

Outcome c8() {
  auto b = verify_case(scenario("extborel-s3"));
  auto c = verify_case(scenario("extcartan-s3"));
  return {b.passed() && c.passed(), summary(b) + " | " + summary(c)};
}

Outcome c9() {
  bool ok = true;
  std::string d;
  for (int n : {5, 7}) {
    auto r = verify_extcartan_sn(n);
    ok = ok && r.passed();
    d += "n=" + std::to_string(n) + ": " + (r.passed() ? "ok" : "failed: " + failing_checks(r)) + "; ";
  }
  return {ok, d};
}

Outcome c10() {
  auto suites = props::all_suites(2024);
  bool ok = true;
  std::string d;
  for (const auto& s : suites) {
    ok = ok && s.ok();
    if (!s.ok()) d += s.name + " (" + std::to_string(s.failures) + " of " + std::to_string(s.trials) + ") ";
  }
  return {ok, ok ? std::to_string(suites.size()) + " suites, all exact" : d};
}

Outcome c11() {
  auto r3 = verify_realization(realization("rea3"));
  auto r1 = verify_realization(realization("rea1"));
  return {r3.required_ok && !r1.pairs.empty(),
          "rea3 " + std::to_string(r3.zero_pairs) + "/" + std::to_string(r3.pairs.size()) + " zero, required pairs " +
              (r3.required_ok ? "zero" : "nonzero") + "; rea1 advisory " + std::to_string(r1.zero_pairs) + "/" +
              std::to_string(r1.pairs.size()) + " zero"};
}

struct Criterion {
  int id;
  const char* title;
  double budget;  // seconds
  std::function<Outcome()> fn;
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> expect_fail, only;
  bool expect_mode = false;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--expect-fail" && i + 1 < argc) {
      expect_fail = parse_set(argv[++i]);
      expect_mode = true;
    } else if (a == "--only" && i + 1 < argc) {
      only = parse_set(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--only 1,2] [--expect-fail 3,4]\n";
      return 3;
    }
  }
  const std::vector<Criterion> all{
      {1, "structure validation", 5, c1},
      {2, "Casimir operators", 10, c2},
      {3, "Cartan S(1)", 30, c3},
      {4, "extended Cartan S(1)", 30, c4},
      {5, "extended Borel S(1)", 120, c5},
      {6, "Borel S(1) advisory", 300, c6},
      {7, "S(3) Cartan escape", 300, c7},
      {8, "S(3) extended Borel and Cartan", 600, c8},
      {9, "S(n) extended Cartan, n = 5, 7", 600, c9},
      {10, "property suites", 300, c10},
      {11, "realizations", 60, c11},
  };
  std::set<int> failed;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s > c.budget) {
      o.pass = false;
      o.detail += "; over the time budget";
    }
    if (!o.pass) failed.insert(c.id);
    std::cout << (o.pass ? "PASS " : "FAIL ") << std::setw(2) << c.id << "  " << c.title << " [" << std::fixed
              << std::setprecision(2) << s << " s] " << o.detail << std::endl;
  }
  if (expect_mode) {
    if (failed == expect_fail) return 0;
    std::cout << "failing set differs from the expected one\n";
    return 1;
  }
  return failed.empty() ? 0 : 1;
}
