#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "maxent/cli.hpp"
#include "maxent/divergence.hpp"

namespace maxent::cli {
namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

void only_keys(const Json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  if (!obj.is_object()) fail(where + " must be an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) fail("unknown key '" + key + "' in " + where);
}

double real(const Json& v, const std::string& where) {
  if (!v.is_number()) fail(where + " must be a number");
  return v.get<double>();
}

std::vector<double> reals(const Json& v, const std::string& where) {
  if (!v.is_array()) fail(where + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(real(x, where));
  return out;
}

std::vector<double> reals_of_size(const Json& v, std::size_t n, const std::string& where) {
  auto out = reals(v, where);
  if (out.size() != n) fail(where + " must have " + std::to_string(n) + " entries");
  return out;
}

std::vector<std::string> strings(const Json& v, const std::string& where) {
  if (!v.is_array()) fail(where + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& x : v) {
    if (!x.is_string()) fail(where + " must be an array of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

LossSpec parse_loss(const Json& j) {
  only_keys(j, "loss", {"kind", "params"});
  if (!j.contains("kind") || !j["kind"].is_string()) fail("loss.kind must be a string");
  LossSpec l;
  l.kind = j["kind"].get<std::string>();
  const Json params = j.value("params", Json::object());
  if (l.kind == "brier" || l.kind == "log" || l.kind == "zero_one") {
    only_keys(params, "loss.params", {});
  } else if (l.kind == "quadratic") {
    only_keys(params, "loss.params", {"values"});
    if (!params.contains("values")) fail("quadratic loss needs params.values");
    l.values = reals(params["values"], "loss.params.values");
  } else if (l.kind == "bregman") {
    only_keys(params, "loss.params", {"generator", "exponent", "offset"});
    if (!params.contains("generator") || !params["generator"].is_string())
      fail("bregman loss needs params.generator");
    l.generator = params["generator"].get<std::string>();
    if (params.contains("exponent")) l.exponent = real(params["exponent"], "loss.params.exponent");
    if (params.contains("offset")) l.offset = real(params["offset"], "loss.params.offset");
    if (l.generator == "power" && !l.exponent) fail("power generator needs params.exponent");
    if (l.generator != "entropy" && l.generator != "square" && l.generator != "power")
      fail("unknown generator '" + l.generator + "'");
  } else {
    fail("unknown loss kind '" + l.kind + "'");
  }
  return l;
}

std::optional<ActKind> act_kind_from(std::string_view s) {
  for (ActKind k : {ActKind::Probability, ActKind::Density, ActKind::Randomized, ActKind::Scalar})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

}  // namespace

ProblemSpec parse_spec(std::string_view json_text) {
  Json j;
  try {
    j = Json::parse(json_text.begin(), json_text.end());
  } catch (const nlohmann::json::exception& e) {
    fail(e.what());
  }
  only_keys(j, "spec", {"outcomes", "base_measure", "loss", "statistic", "constraint", "reference", "model",
                        "model_labels"});
  ProblemSpec s;
  if (!j.contains("outcomes")) fail("missing outcomes");
  s.outcomes = strings(j["outcomes"], "outcomes");
  const std::size_t n = s.outcomes.size();
  if (n == 0) fail("outcomes must not be empty");
  if (j.contains("base_measure")) s.base_measure = reals_of_size(j["base_measure"], n, "base_measure");
  if (!j.contains("loss")) fail("missing loss");
  s.loss = parse_loss(j["loss"]);
  if (j.contains("statistic")) {
    if (!j["statistic"].is_array()) fail("statistic must be an array of rows");
    for (const auto& row : j["statistic"]) s.statistic.push_back(reals_of_size(row, n, "statistic row"));
  }
  if (j.contains("constraint")) {
    const auto& c = j["constraint"];
    only_keys(c, "constraint", {"tau", "tau_grid"});
    if (c.contains("tau") == c.contains("tau_grid")) fail("constraint needs exactly one of tau, tau_grid");
    if (c.contains("tau")) s.tau = reals_of_size(c["tau"], s.statistic.size(), "constraint.tau");
    if (c.contains("tau_grid")) {
      const auto& g = c["tau_grid"];
      only_keys(g, "constraint.tau_grid", {"from", "to", "steps"});
      if (!g.contains("from") || !g.contains("to") || !g.contains("steps"))
        fail("tau_grid needs from, to and steps");
      if (!g["steps"].is_number_unsigned() || g["steps"].get<std::size_t>() == 0)
        fail("tau_grid.steps must be a positive integer");
      s.tau_grid = GridSpec{real(g["from"], "tau_grid.from"), real(g["to"], "tau_grid.to"),
                            g["steps"].get<std::size_t>()};
    }
  }
  if (j.contains("reference")) {
    const auto& r = j["reference"];
    only_keys(r, "reference", {"act", "distribution"});
    if (r.contains("act") == r.contains("distribution")) fail("reference needs exactly one of act, distribution");
    ReferenceSpec ref;
    if (r.contains("distribution")) {
      ref.values = reals_of_size(r["distribution"], n, "reference.distribution");
    } else {
      const auto& a = r["act"];
      only_keys(a, "reference.act", {"kind", "values"});
      if (!a.contains("kind") || !a["kind"].is_string() || !act_kind_from(a["kind"].get<std::string>()))
        fail("reference.act.kind must be probability, density, randomized or scalar");
      if (!a.contains("values")) fail("reference.act needs values");
      ref.act_kind = a["kind"].get<std::string>();
      ref.values = reals(a["values"], "reference.act.values");
    }
    s.reference = ref;
  }
  if (j.contains("model")) {
    if (!j["model"].is_array()) fail("model must be an array of distributions");
    for (const auto& row : j["model"]) s.model.push_back(reals_of_size(row, n, "model member"));
  }
  if (j.contains("model_labels")) {
    s.model_labels = strings(j["model_labels"], "model_labels");
    if (s.model_labels.size() != s.model.size()) fail("model_labels must match the model list");
  }
  return s;
}

ProblemSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

std::string serialize_spec(const ProblemSpec& s) {
  Json j;
  j["outcomes"] = s.outcomes;
  if (s.base_measure) j["base_measure"] = *s.base_measure;
  Json loss;
  loss["kind"] = s.loss.kind;
  Json params = Json::object();
  if (s.loss.kind == "quadratic") params["values"] = s.loss.values;
  if (s.loss.kind == "bregman") {
    params["generator"] = s.loss.generator;
    if (s.loss.exponent) params["exponent"] = *s.loss.exponent;
    if (s.loss.offset) params["offset"] = *s.loss.offset;
  }
  if (!params.empty()) loss["params"] = params;
  j["loss"] = loss;
  if (!s.statistic.empty()) j["statistic"] = s.statistic;
  if (s.tau) j["constraint"]["tau"] = *s.tau;
  if (s.tau_grid) j["constraint"]["tau_grid"] = {{"from", s.tau_grid->from}, {"to", s.tau_grid->to},
                                                 {"steps", s.tau_grid->steps}};
  if (s.reference) {
    if (s.reference->act_kind)
      j["reference"]["act"] = {{"kind", *s.reference->act_kind}, {"values", s.reference->values}};
    else
      j["reference"]["distribution"] = s.reference->values;
  }
  if (!s.model.empty()) j["model"] = s.model;
  if (!s.model_labels.empty()) j["model_labels"] = s.model_labels;
  return j.dump(2) + "\n";
}

GridSpec parse_grid(std::string_view text) {
  GridSpec g;
  const auto a = text.find(':');
  const auto b = a == std::string_view::npos ? a : text.find(':', a + 1);
  if (b == std::string_view::npos) fail("grid must be from:to:steps");
  auto num = [&](std::string_view part, auto& value) {
    const auto r = std::from_chars(part.data(), part.data() + part.size(), value);
    if (r.ec != std::errc() || r.ptr != part.data() + part.size()) fail("bad grid field '" + std::string(part) + "'");
  };
  num(text.substr(0, a), g.from);
  num(text.substr(a + 1, b - a - 1), g.to);
  num(text.substr(b + 1), g.steps);
  if (g.steps == 0) fail("grid steps must be positive");
  return g;
}

std::vector<double> parse_tau(std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find(',', start), text.size());
    const auto part = text.substr(start, end - start);
    double v = 0;
    const auto r = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || r.ec != std::errc() || r.ptr != part.data() + part.size())
      fail("bad tau value '" + std::string(part) + "'");
    out.push_back(v);
    start = end + 1;
  }
  return out;
}

Problem build_problem(const ProblemSpec& s) {
  const std::size_t n = s.outcomes.size();
  SampleSpace space(s.outcomes);
  const BaseMeasure mu = s.base_measure ? BaseMeasure(*s.base_measure) : BaseMeasure::counting(n);
  LossModelPtr base;
  if (s.loss.kind == "brier") base = brier_model(space);
  else if (s.loss.kind == "log") base = log_model(space, mu);
  else if (s.loss.kind == "zero_one") base = zero_one_model(space);
  else if (s.loss.kind == "quadratic") base = quadratic_model(space, s.loss.values);
  else if (s.loss.kind == "bregman") {
    ConvexGenerator gen = s.loss.generator == "entropy" ? ConvexGenerator::entropy()
                          : s.loss.generator == "square" ? ConvexGenerator::square(s.loss.offset.value_or(0.0))
                                                         : ConvexGenerator::power(*s.loss.exponent);
    base = bregman_model(space, mu, std::move(gen));
  } else {
    fail("unknown loss kind '" + s.loss.kind + "'");
  }

  Problem p{space, base, base, std::nullopt, std::nullopt};
  if (!s.statistic.empty()) {
    std::vector<double> rows;
    for (const auto& r : s.statistic) rows.insert(rows.end(), r.begin(), r.end());
    p.statistic = Statistic(s.statistic.size(), n, std::move(rows));
  }
  if (s.reference) {
    Act act;
    if (s.reference->act_kind) {
      act = Act{*act_kind_from(*s.reference->act_kind), s.reference->values};
      base->validate_act(act);
    } else {
      act = base->bayes_act(validate_distribution(s.reference->values, n)).act;
    }
    p.reference = act;
    p.model = relative_model(base, act);
  }
  return p;
}

std::vector<std::vector<double>> tau_points(const ProblemSpec& s, const std::optional<GridSpec>& grid) {
  const auto g = grid ? grid : s.tau_grid;
  if (g) {
    if (s.statistic.size() != 1) fail("a tau grid needs a one-row statistic");
    return linear_grid(g->from, g->to, g->steps);
  }
  if (s.tau) return {*s.tau};
  fail("no constraint: give constraint.tau, constraint.tau_grid or --grid");
}

}  // namespace maxent::cli
