#include "qcomm/report.hpp"

#include <cctype>
#include <sstream>

#include "qcomm/expr.hpp"

namespace qcomm {

using nlohmann::json;

ReportFormat parse_report_format(const std::string& s) {
  if (s == "text") return ReportFormat::Text;
  if (s == "json") return ReportFormat::Json;
  if (s == "latex") return ReportFormat::Latex;
  throw InputError("unknown format " + s + " (text, json, latex)");
}

json to_json(const RunReport& r) {
  json t = json::array();
  for (const auto& [k, v] : r.timings) t.push_back({{"phase", k}, {"seconds", v}});
  return {{"schema", kReportSchema}, {"command", r.command}, {"exit_code", r.exit_code},
          {"timings", t}, {"payload", r.payload}};
}

RunReport run_report_from_json(const json& j) {
  try {
    if (j.at("schema").get<std::string>() != kReportSchema)
      throw InputError("unsupported report schema " + j.at("schema").get<std::string>());
    RunReport r;
    r.command = j.at("command").get<std::vector<std::string>>();
    r.exit_code = j.at("exit_code").get<int>();
    for (const auto& t : j.value("timings", json::array()))
      r.timings.emplace_back(t.at("phase").get<std::string>(), t.at("seconds").get<double>());
    r.payload = j.at("payload");
    return r;
  } catch (const json::exception& e) {
    throw InputError(std::string("report: ") + e.what());
  }
}

json validation_payload(const LieAlgebra& a, const ValidationReport& v) {
  json viol = json::array();
  for (const auto& x : v.violations)
    viol.push_back({{"triple", {a.symbol(x.i), a.symbol(x.j), a.symbol(x.k)}},
                    {"residual", format_bracket_value(a, x.residual)}});
  return {{"kind", "validation"}, {"algebra", a.name()},      {"dim", a.dim()},
          {"passed", v.passed},   {"violations", viol},        {"weight_errors", v.weight_errors}};
}

namespace {

json poly_list(const std::vector<SymPolynomial>& ps) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(format(p));
  return out;
}

std::string pair_text(const std::string& a, const std::string& b) { return "[" + a + "," + b + "]"; }

}  // namespace

json solve_payload(const SolutionSpace& s, const std::vector<SymPolynomial>& candidates,
                   const std::vector<SymPolynomial>& independent) {
  json as = json::array();
  for (const auto& p : s.assumptions) as.push_back(format_scalar(p));
  return {{"kind", "solve"},
          {"degree", s.degree},
          {"annihilators", s.annihilators},
          {"ansatz_dimension", s.ansatz_dimension},
          {"solution_dimension", s.solution_dimension},
          {"basis", poly_list(s.basis)},
          {"candidates", poly_list(candidates)},
          {"independent", poly_list(independent)},
          {"assumptions", as}};
}

json closure_payload(const ClosureReport& r) {
  const auto& set = r.set;
  auto names = set.names();
  json gens = json::array();
  for (const auto& g : set.generators())
    gens.push_back({{"name", g.name}, {"value", format(g.value)}, {"provenance", to_string(g.provenance)}});
  json table = json::array();
  for (const auto& e : r.table) {
    json row = {{"pair", {set.name(e.i), set.name(e.j)}}, {"expressible", e.success()}};
    if (e.success()) {
      row["value"] = e.to_string(names);
      row["quadratic"] = e.has_quadratic_part();
    } else {
      row["value"] = format(e.target);
      row["residual"] = format(e.residual);
    }
    table.push_back(row);
  }
  json adj = json::array();
  for (const auto& a : r.adjoined)
    adj.push_back({{"name", a.name}, {"round", a.round}, {"degree", a.degree},
                   {"parents", {a.parent_i >= 0 ? set.name(a.parent_i) : "", a.parent_j >= 0 ? set.name(a.parent_j) : ""}}});
  json chain = json::array();
  for (const auto& c : r.chain) chain.push_back(format(c));
  json j = {{"kind", "closure"},
            {"hamiltonian", format(set.hamiltonian())},
            {"generators", gens},
            {"closed", r.closed},
            {"budget_exceeded", r.budget_exceeded},
            {"rounds", r.rounds},
            {"table", table},
            {"adjoined", adj},
            {"chain", chain},
            {"notes", r.notes}};
  if (r.classification) j["classification"] = to_string(*r.classification);
  if (!r.lie_pattern.empty()) j["lie_pattern"] = r.lie_pattern;
  if (!r.minimal_flags.empty()) {
    json removable = json::array();
    for (std::size_t i = 0; i < r.minimal_flags.size(); ++i)
      if (!r.minimal_flags[i]) removable.push_back(set.name(static_cast<int>(i)));
    j["removable"] = removable;
  }
  return j;
}

json case_payload(const CaseResult& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    json row = {{"pair", {e.left, e.right}},
                {"printed", e.expected_text},
                {"as_written", e.as_written},
                {"symmetrized", e.symmetrized},
                {"matched", e.matched()},
                {"computed", e.computed}};
    if (!e.label.empty()) row["label"] = e.label;
    if (!e.expansion.empty()) row["expansion"] = e.expansion;
    if (!e.matched()) row["residual"] = e.residual;
    entries.push_back(row);
  }
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"required", c.required}, {"detail", c.detail}});
  json j = {{"kind", "case"},
            {"id", r.id},
            {"mode", r.mode == VerifyMode::Advisory ? "advisory" : "strict"},
            {"matched", r.matched},
            {"total", r.total},
            {"passed", r.passed()},
            {"exit_code", r.exit_code()},
            {"entries", entries},
            {"checks", checks},
            {"notes", r.notes}};
  if (r.closure) j["closure"] = closure_payload(*r.closure);
  return j;
}

json realization_payload(const RealizationReport& r) {
  json pairs = json::array();
  for (const auto& p : r.pairs)
    pairs.push_back({{"pair", {p.left, p.right}},
                     {"image_commutator", p.image_commutator},
                     {"expected", p.expected},
                     {"residual", p.residual},
                     {"zero", p.zero}});
  return {{"kind", "realization"},
          {"id", r.id},
          {"mode", r.mode == VerifyMode::Advisory ? "advisory" : "strict"},
          {"zero_pairs", r.zero_pairs},
          {"required_ok", r.required_ok},
          {"pairs", pairs}};
}

std::string latex_expr(const std::string& text) {
  std::string out;
  std::size_t i = 0;
  auto ident = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
  while (i < text.size()) {
    char c = text[i];
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t k = i;
      while (k < text.size() && ident(text[k])) ++k;
      std::string s = text.substr(i, k - i);
      std::size_t d = s.size();
      while (d > 0 && std::isdigit(static_cast<unsigned char>(s[d - 1]))) --d;
      if (s == "lambda")
        out += "\\lambda";
      else if (s.size() > 1 && s[0] == 'D' && std::islower(static_cast<unsigned char>(s[1])))
        out += "\\partial_{" + s.substr(1) + "}";
      else if (d > 0 && d < s.size())
        out += s.substr(0, d) + "_{" + s.substr(d) + "}";
      else
        out += s;
      i = k;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t k = i;
      while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
      std::string num = text.substr(i, k - i);
      if (k + 1 < text.size() && text[k] == '/' && std::isdigit(static_cast<unsigned char>(text[k + 1]))) {
        std::size_t q = k + 1;
        while (q < text.size() && std::isdigit(static_cast<unsigned char>(text[q]))) ++q;
        out += "\\frac{" + num + "}{" + text.substr(k + 1, q - k - 1) + "}";
        k = q;
      } else {
        out += num;
      }
      i = k;
    } else if (c == '^') {
      std::size_t k = i + 1;
      if (k < text.size() && text[k] == '-') ++k;
      while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
      out += "^{" + text.substr(i + 1, k - i - 1) + "}";
      i = k;
    } else if (c == '*') {
      out += ' ';
      ++i;
    } else {
      out += c;
      ++i;
    }
  }
  return out;
}

namespace {

std::string yes(bool b) { return b ? "yes" : "no"; }

void text_closure(std::ostringstream& o, const json& c) {
  o << "hamiltonian: " << c.at("hamiltonian").get<std::string>() << "\n";
  for (const auto& g : c.at("generators"))
    o << "  " << g.at("name").get<std::string>() << " = " << g.at("value").get<std::string>() << "  ("
      << g.at("provenance").get<std::string>() << ")\n";
  o << "closed: " << yes(c.at("closed").get<bool>());
  if (c.contains("classification")) o << ", classification: " << c.at("classification").get<std::string>();
  if (c.contains("lie_pattern")) o << " (" << c.at("lie_pattern").get<std::string>() << ")";
  o << ", rounds: " << c.at("rounds").get<int>();
  if (c.at("budget_exceeded").get<bool>()) o << ", budget exceeded";
  o << "\n";
  for (const auto& t : c.at("table")) {
    auto p = t.at("pair");
    auto v = t.at("value").get<std::string>();
    if (v == "0") continue;
    o << "  " << pair_text(p[0], p[1]) << " = " << v;
    if (!t.at("expressible").get<bool>()) o << "   [not expressible]";
    o << "\n";
  }
  if (!c.at("adjoined").empty()) {
    o << "adjoined:\n";
    for (const auto& a : c.at("adjoined"))
      o << "  " << a.at("name").get<std::string>() << " degree " << a.at("degree").get<int>() << " round "
        << a.at("round").get<int>() << " from " << pair_text(a.at("parents")[0], a.at("parents")[1]) << "\n";
  }
  if (!c.at("chain").empty()) {
    o << "escalation chain:";
    for (const auto& z : c.at("chain")) o << "\n  " << z.get<std::string>();
    o << "\n";
  }
  if (c.contains("removable")) {
    o << "removable:";
    for (const auto& n : c.at("removable")) o << " " << n.get<std::string>();
    o << "\n";
  }
  for (const auto& n : c.at("notes")) o << "note: " << n.get<std::string>() << "\n";
}

void text_case(std::ostringstream& o, const json& c) {
  o << "case " << c.at("id").get<std::string>() << " (" << c.at("mode").get<std::string>() << "): "
    << c.at("matched").get<int>() << "/" << c.at("total").get<int>() << " entries matched, "
    << (c.at("passed").get<bool>() ? "PASS" : "FAIL") << "\n";
  for (const auto& e : c.at("entries")) {
    auto p = e.at("pair");
    o << (e.at("matched").get<bool>() ? "  ok   " : "  FAIL ") << pair_text(p[0], p[1]) << " = "
      << e.at("printed").get<std::string>();
    if (e.at("symmetrized").get<bool>() && !e.at("as_written").get<bool>()) o << "   (symmetrized reading)";
    o << "\n";
    if (!e.at("matched").get<bool>()) {
      o << "       computed: " << e.at("computed").get<std::string>() << "\n";
      if (e.contains("expansion")) o << "       expansion: " << e.at("expansion").get<std::string>() << "\n";
      o << "       residual: " << e.at("residual").get<std::string>() << "\n";
    }
  }
  for (const auto& k : c.at("checks")) {
    o << (k.at("passed").get<bool>() ? "  ok   " : "  FAIL ") << (k.at("required").get<bool>() ? "" : "(info) ")
      << k.at("name").get<std::string>();
    auto d = k.at("detail").get<std::string>();
    if (!d.empty()) o << ": " << d;
    o << "\n";
  }
  for (const auto& n : c.at("notes")) o << "  note: " << n.get<std::string>() << "\n";
}

void text_payload(std::ostringstream& o, const json& p) {
  auto kind = p.at("kind").get<std::string>();
  if (kind == "validation") {
    o << "algebra " << p.at("algebra").get<std::string>() << " (dim " << p.at("dim").get<int>() << "): Jacobi "
      << (p.at("passed").get<bool>() ? "passed" : "FAILED") << "\n";
    for (const auto& v : p.at("violations")) {
      auto t = v.at("triple");
      o << "  (" << t[0].get<std::string>() << ", " << t[1].get<std::string>() << ", " << t[2].get<std::string>()
        << "): " << v.at("residual").get<std::string>() << "\n";
    }
    for (const auto& w : p.at("weight_errors")) o << "  weight: " << w.get<std::string>() << "\n";
  } else if (kind == "algebra") {
    o << p.at("algebra").dump(2) << "\n";
  } else if (kind == "solve") {
    o << "degree <= " << p.at("degree").get<int>() << ", annihilators";
    for (const auto& a : p.at("annihilators")) o << " " << a.get<std::string>();
    o << "\nansatz " << p.at("ansatz_dimension").get<std::size_t>() << ", solutions "
      << p.at("solution_dimension").get<std::size_t>() << "\n";
    o << "integrity basis:\n";
    for (const auto& x : p.at("independent")) o << "  " << x.get<std::string>() << "\n";
    auto& cand = p.at("candidates");
    if (cand.size() != p.at("independent").size()) {
      o << "span-filtered candidates:\n";
      for (const auto& x : cand) o << "  " << x.get<std::string>() << "\n";
    }
    for (const auto& x : p.at("assumptions")) o << "assuming " << x.get<std::string>() << " != 0\n";
  } else if (kind == "closure") {
    text_closure(o, p);
  } else if (kind == "case") {
    text_case(o, p);
  } else if (kind == "realization") {
    o << "realization " << p.at("id").get<std::string>() << " (" << p.at("mode").get<std::string>() << "): "
      << p.at("zero_pairs").get<int>() << "/" << p.at("pairs").size() << " pairs with zero residual, required pairs "
      << (p.at("required_ok").get<bool>() ? "ok" : "FAIL") << "\n";
    for (const auto& x : p.at("pairs")) {
      auto q = x.at("pair");
      o << (x.at("zero").get<bool>() ? "  ok   " : "  FAIL ") << pair_text(q[0], q[1]);
      if (!x.at("zero").get<bool>()) o << ": residual " << x.at("residual").get<std::string>();
      o << "\n";
    }
  } else if (kind == "cases") {
    for (const auto& c : p.at("cases")) {
      text_payload(o, c);
      o << "\n";
    }
  } else {
    throw InputError("unknown payload kind " + kind);
  }
}

void latex_table(std::ostringstream& o, const std::vector<std::pair<std::string, std::string>>& rows) {
  o << "\\begin{align*}\n";
  for (std::size_t i = 0; i < rows.size(); ++i)
    o << rows[i].first << " &= " << rows[i].second << (i + 1 < rows.size() ? " \\\\" : "") << "\n";
  o << "\\end{align*}\n";
}

std::string latex_pair(const json& p) {
  return "[" + latex_expr(p[0].get<std::string>()) + ", " + latex_expr(p[1].get<std::string>()) + "]";
}

void latex_payload(std::ostringstream& o, const json& p) {
  auto kind = p.at("kind").get<std::string>();
  o << "% " << kind;
  if (p.contains("id")) o << " " << p.at("id").get<std::string>();
  o << "\n";
  if (kind == "closure") {
    std::vector<std::pair<std::string, std::string>> gens, rows;
    for (const auto& g : p.at("generators"))
      gens.emplace_back(latex_expr(g.at("name").get<std::string>()), latex_expr(g.at("value").get<std::string>()));
    latex_table(o, gens);
    for (const auto& t : p.at("table")) {
      auto v = t.at("value").get<std::string>();
      if (v == "0") continue;
      rows.emplace_back(latex_pair(t.at("pair")), latex_expr(v));
    }
    if (!rows.empty()) latex_table(o, rows);
  } else if (kind == "case") {
    std::vector<std::pair<std::string, std::string>> rows;
    for (const auto& e : p.at("entries")) {
      std::string v = e.contains("expansion") ? e.at("expansion").get<std::string>() : e.at("computed").get<std::string>();
      rows.emplace_back(latex_pair(e.at("pair")), latex_expr(v));
    }
    if (!rows.empty()) latex_table(o, rows);
    for (const auto& e : p.at("entries"))
      if (!e.at("matched").get<bool>())
        o << "% mismatch " << pair_text(e.at("pair")[0], e.at("pair")[1]) << ": printed "
          << e.at("printed").get<std::string>() << "\n";
    if (p.contains("closure")) latex_payload(o, p.at("closure"));
  } else if (kind == "solve") {
    std::vector<std::pair<std::string, std::string>> rows;
    int k = 1;
    for (const auto& x : p.at("independent")) rows.emplace_back("Q_{" + std::to_string(k++) + "}", latex_expr(x.get<std::string>()));
    latex_table(o, rows);
  } else if (kind == "realization") {
    std::vector<std::pair<std::string, std::string>> rows;
    for (const auto& x : p.at("pairs")) rows.emplace_back(latex_pair(x.at("pair")), latex_expr(x.at("image_commutator").get<std::string>()));
    latex_table(o, rows);
  } else if (kind == "cases") {
    for (const auto& c : p.at("cases")) latex_payload(o, c);
  } else {
    // no table form: fall back to the text report as comments
    std::ostringstream t;
    text_payload(t, p);
    std::istringstream lines(t.str());
    for (std::string line; std::getline(lines, line);) o << "% " << line << "\n";
  }
}

}  // namespace

std::string render(const RunReport& r, ReportFormat f, bool with_timings) {
  std::ostringstream o;
  try {
    switch (f) {
      case ReportFormat::Json: {
        auto j = to_json(r);
        if (!with_timings) j.erase("timings");
        o << j.dump(2) << "\n";
        break;
      }
      case ReportFormat::Text:
        text_payload(o, r.payload);
        if (with_timings)
          for (const auto& [k, v] : r.timings) o << "time " << k << ": " << v << " s\n";
        break;
      case ReportFormat::Latex:
        latex_payload(o, r.payload);
        break;
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("report payload: ") + e.what());
  }
  return o.str();
}

}  // namespace qcomm
