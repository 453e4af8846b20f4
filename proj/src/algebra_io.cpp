#include "qcomm/algebra_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qcomm/expr.hpp"

namespace qcomm {

using nlohmann::json;

namespace {

BracketValue parse_bracket_value(const AlgebraPtr& flat, const std::string& text) {
  auto e = parse_pbw(flat, text);
  if (e.degree() > 1) throw InputError("bracket value is not linear: " + text);
  BracketValue out;
  for (const auto& t : e.terms()) {
    int target = -1;
    if (!t.mono.is_one())
      for (int i = 0; i < flat->dim(); ++i)
        if (t.mono[i] == 1) target = i;
    out.push_back({t.coeff, target});
  }
  return out;
}

}  // namespace

AlgebraPtr algebra_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("algebra file: ") + e.what());
  }
  try {
    auto basis = j.at("basis").get<std::vector<std::string>>();
    auto params = j.value("parameters", std::vector<std::string>{});
    std::string name = j.value("name", std::string("algebra"));
    if (basis.empty()) throw InputError("algebra file: empty basis");
    if (static_cast<int>(basis.size()) > LieAlgebra::kMaxGenerators) throw InputError("algebra file: basis too large");
    // values are parsed in the abelian algebra on the same symbols
    auto flat = std::make_shared<LieAlgebra>(name, basis, params);
    auto a = std::make_shared<LieAlgebra>(name, basis, params);
    for (const auto& b : j.value("brackets", json::array())) {
      auto pair = b.at("pair").get<std::vector<std::string>>();
      if (pair.size() != 2) throw InputError("algebra file: bracket pair needs two symbols");
      int x = a->index_of(pair[0]), y = a->index_of(pair[1]);
      if (x < 0 || y < 0) throw InputError("algebra file: unknown symbol in [" + pair[0] + "," + pair[1] + "]");
      if (x == y) throw InputError("algebra file: [" + pair[0] + "," + pair[0] + "] must be zero");
      a->set_bracket(x, y, parse_bracket_value(flat, b.at("value").get<std::string>()));
    }
    if (j.contains("weights")) {
      std::vector<int> w(basis.size(), 0);
      for (const auto& [k, v] : j.at("weights").items()) {
        int i = a->index_of(k);
        if (i < 0) throw InputError("algebra file: weight for unknown symbol " + k);
        w[static_cast<std::size_t>(i)] = v.get<int>();
      }
      a->set_weights(w);
    }
    return a;
  } catch (const json::exception& e) {
    throw InputError(std::string("algebra file: ") + e.what());
  }
}

std::string algebra_to_json(const LieAlgebra& a) {
  json j;
  j["name"] = a.name();
  j["basis"] = a.basis();
  j["parameters"] = a.parameters();
  json br = json::array();
  for (int i = 0; i < a.dim(); ++i)
    for (int k = i + 1; k < a.dim(); ++k)
      if (!a.bracket(i, k).empty())
        br.push_back({{"pair", {a.symbol(i), a.symbol(k)}}, {"value", format_bracket_value(a, a.bracket(i, k))}});
  j["brackets"] = br;
  if (a.weights()) {
    json w = json::object();
    for (int i = 0; i < a.dim(); ++i) w[a.symbol(i)] = (*a.weights())[static_cast<std::size_t>(i)];
    j["weights"] = w;
  }
  return j.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

AlgebraPtr load_algebra(const std::string& spec) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(spec, ec)) return algebra_from_json(read_text_file(spec));
  if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") throw InputError("cannot read " + spec);
  return build_named(spec);
}

}  // namespace qcomm
