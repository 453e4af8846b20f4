#include "qcomm/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "qcomm/algebra_io.hpp"
#include "qcomm/casebook.hpp"
#include "qcomm/expr.hpp"

namespace qcomm {

using nlohmann::json;

namespace {

class Timer {
 public:
  explicit Timer(RunReport& r) : r_(r) {}
  template <class F>
  auto phase(const std::string& name, F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<decltype(f())>) {
      f();
      record(name, t0);
    } else {
      auto v = f();
      record(name, t0);
      return v;
    }
  }

 private:
  void record(const std::string& name, std::chrono::steady_clock::time_point t0) {
    r_.timings.emplace_back(name, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  RunReport& r_;
};

std::vector<std::string> split_list(const std::vector<std::string>& in) {
  std::vector<std::string> out;
  for (const auto& s : in) {
    std::string cur;
    for (char c : s) {
      if (c == ',') {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
      } else if (c != ' ') {
        cur += c;
      }
    }
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

int realization_exit(const RealizationReport& r) {
  return r.mode == VerifyMode::Advisory || r.required_ok ? kExitOk : kExitMismatch;
}

bool is_generic_extcartan(const std::string& id, int& n) {
  const std::string pre = "extcartan-s";
  if (id.rfind(pre, 0) != 0) return false;
  auto rest = id.substr(pre.size());
  if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos) return false;
  n = std::stoi(rest);
  return n >= 5;
}

CaseResult verify_by_id(const std::string& id, bool advisory) {
  int n = 0;
  if (is_generic_extcartan(id, n)) return verify_extcartan_sn(n);
  return verify_case(scenario(id), advisory);
}

int worst(int a, int b) {
  // non-closure outranks a plain mismatch
  auto rank = [](int e) { return e == kExitNonClosure ? 2 : e == kExitMismatch ? 1 : 0; };
  return rank(a) >= rank(b) ? a : b;
}

struct Selection {
  std::vector<std::string> cases;
  std::vector<std::string> case_files;
  std::vector<std::string> realizations;
  bool all = false;
  bool advisory = false;
};

void add_selection(CLI::App* c, Selection& s) {
  c->add_option("--case", s.cases, "case id (see --list), or extcartan-s<n> for odd n >= 5");
  c->add_option("--case-file", s.case_files, "case description in JSON");
  c->add_option("--realization", s.realizations, "realization id");
  c->add_flag("--all", s.all, "every shipped case and realization");
  c->add_flag("--advisory", s.advisory, "count only required entries");
}

void run_selection(const Selection& s, RunReport& rep, Timer& timer) {
  std::vector<std::string> cases = s.cases, reals = s.realizations;
  if (s.all) {
    cases = scenario_ids();
    cases.push_back("extcartan-s5");
    cases.push_back("extcartan-s7");
    reals = realization_ids();
  }
  if (cases.empty() && reals.empty() && s.case_files.empty()) throw InputError("nothing selected: use --case, --realization or --all");
  json list = json::array();
  int code = kExitOk;
  for (const auto& id : cases) {
    auto r = timer.phase("case " + id, [&] { return verify_by_id(id, s.advisory); });
    list.push_back(case_payload(r));
    code = worst(code, r.exit_code());
  }
  for (const auto& path : s.case_files) {
    auto spec = parse_case_json(read_text_file(path));
    auto r = timer.phase("case " + spec.id, [&] { return verify_case(spec, s.advisory); });
    list.push_back(case_payload(r));
    code = worst(code, r.exit_code());
  }
  for (const auto& id : reals) {
    auto r = timer.phase("realization " + id, [&] { return verify_realization(realization(id)); });
    list.push_back(realization_payload(r));
    code = worst(code, realization_exit(r));
  }
  rep.payload = list.size() == 1 ? list[0] : json{{"kind", "cases"}, {"cases", list}};
  rep.exit_code = code;
}

std::vector<NamedElement> read_generators(const AlgebraPtr& a, const std::string& source, Environment& env) {
  std::string text = source;
  std::error_code ec;
  if (std::filesystem::is_regular_file(source, ec))
    text = read_text_file(source);
  else
    for (auto& c : text)
      if (c == ';') c = '\n';
  std::vector<NamedElement> gens;
  int k = 0;
  for (const auto& line : split_expression_lines(text)) {
    std::string name = line.name.empty() ? "A" + std::to_string(++k) : line.name;
    if (!line.name.empty()) ++k;
    PBWElement v(nullptr);
    try {
      v = parse_pbw(a, line.expr, &env);
    } catch (const ParseError& e) {
      throw InputError("generator line " + std::to_string(line.line) + ": " + e.what());
    }
    env.emplace(name, v);
    gens.push_back({name, v, Provenance::User});
  }
  if (gens.empty()) throw InputError("no generators in " + source);
  return gens;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, RunReport* report_out) {
  CLI::App app{"qcomm: quadratic algebras in the commutant of algebraic Hamiltonians"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path, format = "text";
  std::uint64_t seed = 1;
  bool no_timings = false;
  app.add_option("--out", out_path, "write the report to a file");
  app.add_option("--format", format, "text, json or latex")->check(CLI::IsMember({"text", "json", "latex"}));
  app.add_option("--seed", seed, "seed for the random independence points");
  app.add_flag("--no-timings", no_timings, "omit the timing block");

  std::string algebra_arg;
  auto* alg = app.add_subcommand("algebra", "algebra files");
  alg->require_subcommand(1);
  auto* validate_cmd = alg->add_subcommand("validate", "check Jacobi and weight additivity");
  validate_cmd->add_option("algebra,--algebra", algebra_arg, "algebra file or builder id")->required();
  auto* show_cmd = alg->add_subcommand("show", "print an algebra as JSON");
  show_cmd->add_option("algebra,--algebra", algebra_arg, "algebra file or builder id")->required();

  int two_j = 0;
  auto* sch = app.add_subcommand("schrodinger", "emit the Schrodinger algebra S(n) as JSON");
  sch->add_option("--two-j", two_j, "n = 2j, odd")->required();

  std::vector<std::string> annihilators;
  int degree = 0;
  std::optional<int> weight;
  auto* solve_cmd = app.add_subcommand("solve", "polynomial solutions of the coadjoint system");
  solve_cmd->add_option("--algebra", algebra_arg, "algebra file or builder id")->required();
  solve_cmd->add_option("--annihilators", annihilators, "comma-separated linear elements")->required();
  solve_cmd->add_option("--degree", degree, "maximal degree")->required()->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--weight", weight, "restrict to one H-weight");

  std::string hamiltonian, generators;
  ClosureOptions copts;
  bool table_only = false, minimality = false;
  auto* close_cmd = app.add_subcommand("close", "close a generator set under quadratic expansion");
  close_cmd->add_option("--algebra", algebra_arg, "algebra file or builder id")->required();
  close_cmd->add_option("--hamiltonian", hamiltonian, "expression, may use generator names")->required();
  close_cmd->add_option("--generators", generators, "file with one expression per line, or ';'-separated list")
      ->required();
  close_cmd->add_option("--max-degree", copts.max_degree, "degree cap for adjoined elements");
  close_cmd->add_option("--max-rounds", copts.max_rounds, "adjunction rounds");
  close_cmd->add_flag("--table-only", table_only, "no adjunction");
  close_cmd->add_flag("--minimality", minimality, "flag removable generators");

  Selection sel;
  bool list = false;
  auto* verify_cmd = app.add_subcommand("verify", "check the casebook");
  add_selection(verify_cmd, sel);
  verify_cmd->add_flag("--list", list, "list case and realization ids");

  std::string in_path;
  auto* report_cmd = app.add_subcommand("report", "render a saved report or a verification run");
  add_selection(report_cmd, sel);
  report_cmd->add_option("--in", in_path, "saved JSON report");

  RunReport rep;
  rep.command = args;
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInput;
  }

  Timer timer(rep);
  try {
    if (report_cmd->parsed() && !app.count("--format")) format = "json";
    auto fmt = parse_report_format(format);
    bool raw_algebra = false;
    if (validate_cmd->parsed()) {
      auto a = load_algebra(algebra_arg);
      auto v = timer.phase("validate", [&] { return validate(*a); });
      rep.payload = validation_payload(*a, v);
      rep.exit_code = v.passed ? kExitOk : kExitMismatch;
    } else if (show_cmd->parsed() || sch->parsed()) {
      auto a = sch->parsed() ? schrodinger(two_j) : load_algebra(algebra_arg);
      rep.payload = {{"kind", "algebra"}, {"algebra", json::parse(algebra_to_json(*a))}};
      raw_algebra = fmt == ReportFormat::Text;
    } else if (solve_cmd->parsed()) {
      auto a = load_algebra(algebra_arg);
      auto ann = split_list(annihilators);
      SolveOptions so;
      so.weight = weight;
      auto space = timer.phase("solve", [&] { return solve_degree(a, ann, degree, so); });
      auto cand = timer.phase("integrity basis", [&] { return integrity_basis_candidate(a, ann, degree, so); });
      auto indep = timer.phase("independence", [&] { return independent_subset(cand, seed); });
      rep.payload = solve_payload(space, cand, indep);
      rep.exit_code = kExitOk;
    } else if (close_cmd->parsed()) {
      auto a = load_algebra(algebra_arg);
      Environment env;
      auto gens = read_generators(a, generators, env);
      PBWElement h(nullptr);
      try {
        h = parse_pbw(a, hamiltonian, &env);
      } catch (const ParseError& e) {
        throw InputError(std::string("hamiltonian: ") + e.what());
      }
      GeneratorSet set(h, gens);
      auto r = timer.phase("close", [&] { return table_only ? closure_table(set, copts.expand) : close_set(set, copts); });
      classify(r);
      if (minimality && r.closed) r.minimal_flags = timer.phase("minimality", [&] { return minimality_check(r, copts.expand); });
      rep.payload = closure_payload(r);
      rep.exit_code = r.closed ? kExitOk : kExitNonClosure;
    } else if (verify_cmd->parsed() && list) {
      json ids = json::array();
      for (const auto& id : scenario_ids()) ids.push_back(id);
      ids.push_back("extcartan-s5");
      ids.push_back("extcartan-s7");
      json reals = json::array();
      for (const auto& id : realization_ids()) reals.push_back(id);
      out << "cases:";
      for (const auto& i : ids) out << " " << i.get<std::string>();
      out << "\nrealizations:";
      for (const auto& i : reals) out << " " << i.get<std::string>();
      out << "\n";
      return kExitOk;
    } else if (report_cmd->parsed() && !in_path.empty()) {
      json j;
      try {
        j = json::parse(read_text_file(in_path));
      } catch (const json::parse_error& e) {
        throw InputError(std::string("report file: ") + e.what());
      }
      rep = run_report_from_json(j);
    } else {
      run_selection(sel, rep, timer);
    }

    std::string text = raw_algebra ? rep.payload.at("algebra").dump(2) + "\n" : render(rep, fmt, !no_timings);
    if (out_path.empty()) {
      out << text;
    } else {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw InputError("cannot write " + out_path);
      f << text;
    }
    if (report_out) *report_out = rep;
    return rep.exit_code;
  } catch (const InputError& e) {
    err << "qcomm: " << e.what() << "\n";
    return kExitInput;
  } catch (const ResourceError& e) {
    err << "qcomm: " << e.what() << " (dimension " << e.dimension() << ")\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "qcomm: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace qcomm
