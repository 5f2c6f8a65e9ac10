#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "mshaz/csv.hpp"
#include "mshaz/errors.hpp"
#include "mshaz/mc_oracle.hpp"
#include "mshaz/model_file.hpp"
#include "mshaz/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;       // parse/validation errors
constexpr int kExitNumerical = 3;   // flagged numerical issues

struct CommonArgs {
  std::string model_path;
  std::string out_path = "-";
  double t_max = 0.0;
  int points = 0;
  int64_t samples = 100000;
  uint64_t seed = 12345;
  double tolerance = 0.0;
  double corrupt = 1.0;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_grid, bool with_mc) {
  cmd->add_option("--model", args.model_path, "Model file (JSON)")->required();
  cmd->add_option("--out", args.out_path, "Output path ('-' for stdout)");
  if (with_grid) {
    cmd->add_option("--t-max", args.t_max, "Grid horizon override");
    cmd->add_option("--points", args.points, "Grid point count override");
  }
  if (with_mc) {
    cmd->add_option("--samples", args.samples, "Monte Carlo sample count");
    cmd->add_option("--seed", args.seed, "Monte Carlo seed");
  }
}

/// Stream to --out, or stdout for "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw mshaz::ConfigurationError("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

int run_eval(const CommonArgs& args) {
  const mshaz::ModelFile model = mshaz::load_model_file(args.model_path);
  if (model.kind == mshaz::ModelFile::Kind::kLifetimeRisk) {
    throw mshaz::ConfigurationError("eval: lifetime-risk models have no curves (use `risk`)");
  }
  const mshaz::TimeGrid grid = mshaz::model_grid(model, args.t_max, args.points);
  const mshaz::CurveSet curves = mshaz::eval_model_curves(model, grid);
  Output out(args.out_path);
  mshaz::write_curves_csv(out.stream(), curves);
  if (curves.negative) {
    std::cerr << "numerical flag: density went negative on the grid\n";
    return kExitNumerical;
  }
  return kExitOk;
}

int run_simulate(const CommonArgs& args) {
  const mshaz::ModelFile model = mshaz::load_model_file(args.model_path);
  std::vector<double> times;
  if (model.kind == mshaz::ModelFile::Kind::kSystem) {
    times = mshaz::simulate_system(model.system, args.samples, args.seed).times;
  } else if (model.kind == mshaz::ModelFile::Kind::kCascade) {
    times = mshaz::simulate_cascade_race(model.cascade, args.samples, args.seed).times;
  } else {
    throw mshaz::ConfigurationError("simulate: supported kinds are 'system' and 'cascade'");
  }
  Output out(args.out_path);
  mshaz::write_samples_csv(out.stream(), times);
  return kExitOk;
}

int run_verify(const CommonArgs& args) {
  const mshaz::ModelFile model = mshaz::load_model_file(args.model_path);
  mshaz::VerifyOptions options;
  options.samples = args.samples;
  options.seed = args.seed;
  options.tolerance = args.tolerance;
  options.corrupt = args.corrupt;
  options.t_max = args.t_max;
  options.points = args.points;
  const mshaz::VerifyReport report = mshaz::verify_model(model, options);
  Output out(args.out_path);
  out.stream() << report.text();
  return report.all_pass() ? kExitOk : 1;
}

int run_cascade(const CommonArgs& args) {
  const mshaz::ModelFile model = mshaz::load_model_file(args.model_path);
  if (model.kind != mshaz::ModelFile::Kind::kCascade) {
    throw mshaz::ConfigurationError("cascade: model kind must be 'cascade'");
  }
  const mshaz::TimeGrid grid = mshaz::model_grid(model, args.t_max, args.points);
  const mshaz::CascadeResult result = mshaz::cascade_survival(model.cascade, grid);
  const mshaz::CascadeSamples race =
      mshaz::simulate_cascade_race(model.cascade, args.samples, args.seed);
  std::vector<int64_t> counts(result.orderings.size(), 0);
  for (int idx : race.route_index) ++counts[static_cast<size_t>(idx)];

  Output out(args.out_path);
  auto& os = out.stream();
  os << "ordering,probability\n";
  for (size_t r = 0; r < result.orderings.size(); ++r) {
    std::string name;
    for (size_t i = 0; i < result.orderings[r].size(); ++i) {
      if (i) name += ">";
      name += model.cascade.components[static_cast<size_t>(result.orderings[r][i])];
    }
    os << name << ','
       << mshaz::format_g17(static_cast<double>(counts[r]) / static_cast<double>(args.samples))
       << '\n';
  }
  os << '\n';
  os << "t,f,F,S,h,H";
  for (size_t r = 0; r < result.orderings.size(); ++r) {
    std::string name;
    for (size_t i = 0; i < result.orderings[r].size(); ++i) {
      if (i) name += ">";
      name += model.cascade.components[static_cast<size_t>(result.orderings[r][i])];
    }
    os << ",S[" << name << "]";
  }
  os << '\n';
  for (int i = 0; i < grid.size(); ++i) {
    const size_t j = static_cast<size_t>(i);
    const auto& sys = result.system;
    os << mshaz::format_g17(grid[i]) << ',' << mshaz::format_g17(sys.f[j]) << ','
       << mshaz::format_g17(sys.F[j]) << ',' << mshaz::format_g17(sys.S[j]) << ','
       << mshaz::format_g17(sys.h[j]) << ',' << mshaz::format_g17(sys.H[j]);
    for (const auto& route : result.routes) {
      os << ',' << mshaz::format_g17(route.S[j]);
    }
    os << '\n';
  }
  return kExitOk;
}

int run_risk(const CommonArgs& args) {
  const mshaz::ModelFile model = mshaz::load_model_file(args.model_path);
  if (model.kind != mshaz::ModelFile::Kind::kLifetimeRisk) {
    throw mshaz::ConfigurationError("risk: model kind must be 'lifetime-risk'");
  }
  const mshaz::LifetimeRisk risk = mshaz::lifetime_risk(
      model.risk.mutation_prob, model.risk.divisions, model.risk.steps, model.risk.cells);
  Output out(args.out_path);
  out.stream() << "exact=" << mshaz::format_g17(risk.exact)
               << " approx=" << mshaz::format_g17(risk.approximation)
               << " relative_gap=" << mshaz::format_g17(risk.relative_gap) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-stage failure-time models: curves, samples, and verification"};
  app.require_subcommand(1);

  CommonArgs eval_args, sim_args, verify_args, cascade_args, risk_args;
  add_common(app.add_subcommand("eval", "Write t,f,F,S,h,H curves as CSV"), eval_args, true,
             false);
  add_common(app.add_subcommand("simulate", "Write Monte Carlo samples as CSV"), sim_args, false,
             true);
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Cross-check every evaluation path and report pass/fail");
  add_common(verify_cmd, verify_args, true, true);
  verify_cmd->add_option("--tolerance", verify_args.tolerance,
                         "Override the default comparison tolerance");
  verify_cmd->add_option("--corrupt", verify_args.corrupt,
                         "Negative control: scale the analytic side by this factor");
  add_common(app.add_subcommand("cascade", "Write per-ordering route probabilities and curves"),
             cascade_args, true, true);
  add_common(app.add_subcommand("risk", "Print exact lifetime risk, approximation, and gap"),
             risk_args, false, false);

  try {
    app.parse(argc, argv);
    if (app.got_subcommand("eval")) return run_eval(eval_args);
    if (app.got_subcommand("simulate")) return run_simulate(sim_args);
    if (app.got_subcommand("verify")) return run_verify(verify_args);
    if (app.got_subcommand("cascade")) return run_cascade(cascade_args);
    if (app.got_subcommand("risk")) return run_risk(risk_args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const mshaz::ConfigurationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const mshaz::InvalidParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const mshaz::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}
