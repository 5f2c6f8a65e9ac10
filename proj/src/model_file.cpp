#include "mshaz/model_file.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mshaz/errors.hpp"
#include "mshaz/special_functions.hpp"

namespace mshaz {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigurationError(path + ": " + msg);
}

/// json accessor carrying its document path for diagnostics.
struct Cursor {
  const json* node;
  std::string path;

  const json& ref() const { return *node; }

  Cursor at(const std::string& key) const {
    return {&(*node)[key], path + "." + key};
  }
  Cursor at(size_t index) const {
    return {&(*node)[index], path + "[" + std::to_string(index) + "]"};
  }

  void require_object(const std::set<std::string>& allowed,
                      const std::set<std::string>& required) const {
    if (!node->is_object()) fail(path, "expected an object");
    for (const auto& [key, value] : node->items()) {
      if (!allowed.contains(key)) fail(path + "." + key, "unknown field '" + key + "'");
    }
    for (const auto& key : required) {
      if (!node->contains(key)) fail(path, "missing required field '" + key + "'");
    }
  }

  bool has(const std::string& key) const { return node->contains(key); }

  double number(const std::string& key) const {
    const Cursor c = at(key);
    if (!c.ref().is_number()) fail(c.path, "expected a number");
    return c.ref().get<double>();
  }

  double number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
  }

  int integer(const std::string& key) const {
    const Cursor c = at(key);
    if (!c.ref().is_number_integer()) fail(c.path, "expected an integer");
    return c.ref().get<int>();
  }

  std::string text(const std::string& key) const {
    const Cursor c = at(key);
    if (!c.ref().is_string()) fail(c.path, "expected a string");
    return c.ref().get<std::string>();
  }

  bool boolean_or(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const Cursor c = at(key);
    if (!c.ref().is_boolean()) fail(c.path, "expected a boolean");
    return c.ref().get<bool>();
  }

  size_t array_size(const std::string& key) const {
    const Cursor c = at(key);
    if (!c.ref().is_array()) fail(c.path, "expected an array");
    return c.ref().size();
  }

  std::vector<double> number_array(const std::string& key) const {
    const Cursor c = at(key);
    if (!c.ref().is_array()) fail(c.path, "expected an array");
    std::vector<double> out;
    out.reserve(c.ref().size());
    for (size_t i = 0; i < c.ref().size(); ++i) {
      const Cursor e = c.at(i);
      if (!e.ref().is_number()) fail(e.path, "expected a number");
      out.push_back(e.ref().get<double>());
    }
    return out;
  }
};

StepDistribution parse_step(const Cursor& c) {
  if (!c.ref().is_object()) fail(c.path, "expected a distribution object");
  if (!c.has("dist")) fail(c.path, "missing required field 'dist'");
  const std::string kind = c.text("dist");
  try {
    if (kind == "exponential") {
      c.require_object({"dist", "rate"}, {"rate"});
      return StepDistribution(Exponential{c.number("rate")});
    }
    if (kind == "gamma") {
      c.require_object({"dist", "shape", "rate"}, {"shape", "rate"});
      return StepDistribution(Gamma{c.number("shape"), c.number("rate")});
    }
    if (kind == "weibull2") {
      c.require_object({"dist", "b"}, {"b"});
      return StepDistribution(Weibull2{c.number("b")});
    }
    if (kind == "powerlaw_hazard") {
      c.require_object({"dist", "coeff", "exponent"}, {"coeff", "exponent"});
      return StepDistribution(PowerLawHazard{c.number("coeff"), c.number("exponent")});
    }
    if (kind == "logistic_detection") {
      c.require_object({"dist", "detection_rate", "growth_rate", "cells"},
                       {"detection_rate", "growth_rate", "cells"});
      return StepDistribution(LogisticDetection{c.number("detection_rate"),
                                                c.number("growth_rate"), c.number("cells")});
    }
    if (kind == "tabulated") {
      c.require_object({"dist", "times", "density", "improper"}, {"times", "density"});
      return StepDistribution(Tabulated{
          TimeGrid(c.number_array("times"), TimeGrid::Spacing::kUniform),
          c.number_array("density"), c.boolean_or("improper", false)});
    }
  } catch (const InvalidParameterError& e) {
    fail(c.path, e.what());
  }
  fail(c.path + ".dist", "unknown distribution '" + kind + "'");
}

std::vector<StepDistribution> parse_steps(const Cursor& c, const std::string& key) {
  const size_t n = c.array_size(key);
  if (n == 0) fail(c.path + "." + key, "step list must be non-empty");
  std::vector<StepDistribution> steps;
  steps.reserve(n);
  const Cursor arr = c.at(key);
  for (size_t i = 0; i < n; ++i) steps.push_back(parse_step(arr.at(i)));
  return steps;
}

std::vector<std::pair<double, double>> parse_powerlaw_terms(const Cursor& c,
                                                            const std::string& key) {
  const size_t n = c.array_size(key);
  if (n == 0) fail(c.path + "." + key, "term list must be non-empty");
  std::vector<std::pair<double, double>> terms;
  const Cursor arr = c.at(key);
  for (size_t i = 0; i < n; ++i) {
    const Cursor e = arr.at(i);
    e.require_object({"coeff", "exponent"}, {"coeff", "exponent"});
    terms.emplace_back(e.number("coeff"), e.number("exponent"));
  }
  return terms;
}

CascadeSpec parse_cascade(const Cursor& c) {
  c.require_object({"components", "base_laws", "modifiers"}, {"components", "base_laws"});
  const size_t n = c.array_size("components");
  std::vector<std::string> names;
  const Cursor comps = c.at("components");
  for (size_t i = 0; i < n; ++i) {
    const Cursor e = comps.at(i);
    if (!e.ref().is_string()) fail(e.path, "expected a component name");
    names.push_back(e.ref().get<std::string>());
  }
  auto index_of = [&](const std::string& name, const std::string& where) -> int {
    for (size_t i = 0; i < names.size(); ++i) {
      if (names[i] == name) return static_cast<int>(i);
    }
    fail(where, "unknown component '" + name + "'");
  };

  const Cursor base = c.at("base_laws");
  if (!base.ref().is_object()) fail(base.path, "expected an object");
  for (const auto& [key, value] : base.ref().items()) {
    index_of(key, base.path + "." + key);
  }
  std::vector<StepDistribution> base_laws;
  for (const auto& name : names) {
    if (!base.has(name)) fail(base.path, "missing base law for component '" + name + "'");
    base_laws.push_back(parse_step(base.at(name)));
  }

  std::vector<CascadeSpec::Override> overrides;
  if (c.has("modifiers")) {
    const size_t k = c.array_size("modifiers");
    const Cursor mods = c.at("modifiers");
    for (size_t i = 0; i < k; ++i) {
      const Cursor e = mods.at(i);
      e.require_object({"failed", "component", "law"}, {"failed", "component", "law"});
      CascadeSpec::Override ov{{}, index_of(e.text("component"), e.path + ".component"),
                               parse_step(e.at("law"))};
      const size_t nf = e.array_size("failed");
      const Cursor failed = e.at("failed");
      for (size_t j = 0; j < nf; ++j) {
        const Cursor name = failed.at(j);
        if (!name.ref().is_string()) fail(name.path, "expected a component name");
        ov.required_failed.push_back(index_of(name.ref().get<std::string>(), name.path));
      }
      overrides.push_back(std::move(ov));
    }
  }
  try {
    return CascadeSpec::from_base_and_overrides(std::move(names), std::move(base_laws), overrides);
  } catch (const Error& e) {
    fail(c.path, e.what());
  }
}

RouteSpec parse_route(const Cursor& c) {
  if (!c.ref().is_object()) fail(c.path, "expected a route object");
  if (!c.has("type")) fail(c.path, "missing required field 'type'");
  const std::string type = c.text("type");
  if (type == "sequential") {
    c.require_object({"type", "steps"}, {"steps"});
    return SequentialRoute{parse_steps(c, "steps")};
  }
  if (type == "unordered") {
    c.require_object({"type", "steps"}, {"steps"});
    return UnorderedRoute{parse_steps(c, "steps")};
  }
  if (type == "powerlaw") {
    c.require_object({"type", "terms"}, {"terms"});
    return PowerLawRoute{parse_powerlaw_terms(c, "terms")};
  }
  if (type == "cascade") {
    c.require_object({"type", "cascade"}, {"cascade"});
    return CascadeRoute{parse_cascade(c.at("cascade"))};
  }
  fail(c.path + ".type", "unknown route type '" + type + "'");
}

GridSettings parse_grid(const Cursor& c) {
  GridSettings out;
  if (!c.has("grid")) return out;
  const Cursor g = c.at("grid");
  g.require_object({"t_max", "points", "spacing"}, {});
  out.t_max = g.number_or("t_max", 0.0);
  if (out.t_max < 0.0 || !std::isfinite(out.t_max)) fail(g.path + ".t_max", "must be >= 0");
  if (g.has("points")) {
    out.points = g.integer("points");
    if (out.points < 2) fail(g.path + ".points", "must be >= 2");
  }
  if (g.has("spacing")) {
    const std::string s = g.text("spacing");
    if (s == "uniform") {
      out.spacing = TimeGrid::Spacing::kUniform;
    } else if (s == "logarithmic") {
      out.spacing = TimeGrid::Spacing::kLogarithmic;
    } else {
      fail(g.path + ".spacing", "expected 'uniform' or 'logarithmic'");
    }
  }
  return out;
}

}  // namespace

std::string kind_name(ModelFile::Kind kind) {
  switch (kind) {
    case ModelFile::Kind::kSystem: return "system";
    case ModelFile::Kind::kCascade: return "cascade";
    case ModelFile::Kind::kMicroEnv: return "microenv";
    case ModelFile::Kind::kLifetimeRisk: return "lifetime-risk";
  }
  return "?";
}

ModelFile parse_model_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigurationError(std::string("model file is not valid JSON: ") + e.what());
  }
  const Cursor root{&doc, "$"};
  if (!doc.is_object()) fail("$", "expected a JSON object");
  if (!root.has("schema_version")) fail("$", "missing required field 'schema_version'");
  if (root.integer("schema_version") != 1) {
    fail("$.schema_version", "unsupported schema version (expected 1)");
  }
  if (!root.has("kind")) fail("$", "missing required field 'kind'");
  const std::string kind = root.text("kind");

  ModelFile model;
  if (kind == "system") {
    root.require_object({"schema_version", "kind", "multiplicity", "routes", "grid"}, {"routes"});
    model.kind = ModelFile::Kind::kSystem;
    if (root.has("multiplicity")) {
      const int ns = root.integer("multiplicity");
      if (ns < 1) fail("$.multiplicity", "must be >= 1");
      model.system.multiplicity = ns;
    }
    const size_t n = root.array_size("routes");
    if (n == 0) fail("$.routes", "need at least one route");
    const Cursor routes = root.at("routes");
    for (size_t i = 0; i < n; ++i) model.system.routes.push_back(parse_route(routes.at(i)));
  } else if (kind == "cascade") {
    root.require_object(
        {"schema_version", "kind", "components", "base_laws", "modifiers", "grid"},
        {"components", "base_laws"});
    model.kind = ModelFile::Kind::kCascade;
    model.cascade = parse_cascade(root);
  } else if (kind == "microenv") {
    root.require_object({"schema_version", "kind", "mu0", "mu1", "grid"}, {"mu0", "mu1"});
    model.kind = ModelFile::Kind::kMicroEnv;
    model.microenv.base_rates = root.number_array("mu0");
    model.microenv.drift_rates = root.number_array("mu1");
    try {
      model.microenv.validate();
    } catch (const Error& e) {
      fail("$.mu0", e.what());
    }
  } else if (kind == "lifetime-risk") {
    root.require_object(
        {"schema_version", "kind", "mutation_probability", "divisions", "steps", "cells"},
        {"mutation_probability", "divisions", "steps", "cells"});
    model.kind = ModelFile::Kind::kLifetimeRisk;
    model.risk.mutation_prob = root.number("mutation_probability");
    model.risk.divisions = root.number("divisions");
    model.risk.steps = root.integer("steps");
    model.risk.cells = root.number("cells");
    try {
      lifetime_risk(model.risk.mutation_prob, model.risk.divisions, model.risk.steps,
                    model.risk.cells);
    } catch (const Error& e) {
      fail("$", e.what());
    }
  } else {
    fail("$.kind", "unknown kind '" + kind + "'");
  }
  model.grid = parse_grid(root);
  return model;
}

ModelFile load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigurationError("cannot open model file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model_json(buf.str());
}

TimeGrid model_grid(const ModelFile& model, double t_max_override, int points_override) {
  double t_max = t_max_override > 0.0 ? t_max_override : model.grid.t_max;
  if (t_max <= 0.0) {
    switch (model.kind) {
      case ModelFile::Kind::kSystem:
        t_max = estimate_horizon(model.system);
        break;
      case ModelFile::Kind::kCascade:
        t_max = estimate_horizon(model.cascade);
        break;
      case ModelFile::Kind::kMicroEnv: {
        // Small-t regime bound: leading-term cumulative hazard reaches 0.05.
        const MicroEnvCoeffs coeffs = microenv_coeffs(model.microenv);
        const int m = model.microenv.steps();
        t_max = std::pow(0.05 * m * sf::factorial(m - 1) / coeffs.leading, 1.0 / m);
        break;
      }
      case ModelFile::Kind::kLifetimeRisk:
        throw InvalidArgumentError("model_grid: lifetime-risk models have no evaluation grid");
    }
  }
  const int points = points_override > 0 ? points_override : model.grid.points;
  if (model.grid.spacing == TimeGrid::Spacing::kLogarithmic) {
    return TimeGrid::logarithmic(t_max * 1e-6, t_max, points);
  }
  return TimeGrid::uniform(0.0, t_max, points);
}

CurveSet eval_model_curves(const ModelFile& model, const TimeGrid& grid) {
  switch (model.kind) {
    case ModelFile::Kind::kSystem:
      return combine_routes(model.system, grid);
    case ModelFile::Kind::kCascade:
      return cascade_survival(model.cascade, grid).system;
    case ModelFile::Kind::kMicroEnv:
      return microenv_pdf(model.microenv, grid).curves;
    case ModelFile::Kind::kLifetimeRisk:
      break;
  }
  throw InvalidArgumentError("eval_model_curves: lifetime-risk models have no curves");
}

}  // namespace mshaz
