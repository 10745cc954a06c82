#include "microepi/cli.hpp"

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "microepi/csv.hpp"
#include "microepi/nash.hpp"

namespace microepi::cli {

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

const char* kTopUsage =
    "microepi: microscopic epidemic studies\n"
    "\n"
    "usage: microepi <simulate|nash|learn|si> [flags]\n"
    "       microepi --config <file.json>\n"
    "\n"
    "subcommands:\n"
    "  simulate  Monte Carlo intervention study of the agent model\n"
    "  nash      stage game equilibrium, system optimum and welfare loss\n"
    "  learn     shared-table Q-learning over the agent model\n"
    "  si        macroscopic susceptible-infected reference curve\n"
    "\n"
    "run 'microepi <subcommand> --help' for the flags; every flag can also be\n"
    "given as a key in the JSON config file (flags win over the file).\n";

std::optional<Subcommand> subcommand_from_string(const std::string& name) {
  if (name == "simulate") return Subcommand::simulate;
  if (name == "nash") return Subcommand::nash;
  if (name == "learn") return Subcommand::learn;
  if (name == "si") return Subcommand::si;
  return std::nullopt;
}

// ---- JSON config handling ---------------------------------------------

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file " + path);
  json cfg;
  try {
    in >> cfg;
  } catch (const json::exception& e) {
    throw UsageError("config file " + path + " is not valid JSON: " + e.what());
  }
  if (!cfg.is_object()) throw UsageError("config file " + path + " must hold a JSON object");
  return cfg;
}

void reject_unknown_keys(const json& cfg, const std::set<std::string>& allowed,
                         const std::string& sub) {
  for (const auto& item : cfg.items()) {
    if (item.key() == "subcommand" || item.key() == "artifact_version") continue;
    if (!allowed.contains(item.key())) {
      throw UsageError("unknown config key '" + item.key() + "' for subcommand " + sub);
    }
  }
}

int get_int(const json& cfg, const char* key) {
  const json& v = cfg.at(key);
  if (!v.is_number_integer() && !v.is_number_unsigned()) {
    throw UsageError(std::string("config key '") + key + "' must be an integer");
  }
  return v.get<int>();
}

double get_double(const json& cfg, const char* key) {
  const json& v = cfg.at(key);
  if (!v.is_number()) {
    throw UsageError(std::string("config key '") + key + "' must be a number");
  }
  return v.get<double>();
}

bool get_bool(const json& cfg, const char* key) {
  const json& v = cfg.at(key);
  if (!v.is_boolean()) {
    throw UsageError(std::string("config key '") + key + "' must be a boolean");
  }
  return v.get<bool>();
}

std::string get_string(const json& cfg, const char* key) {
  const json& v = cfg.at(key);
  if (!v.is_string()) {
    throw UsageError(std::string("config key '") + key + "' must be a string");
  }
  return v.get<std::string>();
}

std::uint64_t get_seed(const json& cfg, const char* key) {
  const json& v = cfg.at(key);
  if (!(v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0))) {
    throw UsageError(std::string("config key '") + key + "' must be a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

std::vector<double> get_number_array(const json& cfg, const char* key) {
  const json& v = cfg.at(key);
  if (!v.is_array()) {
    throw UsageError(std::string("config key '") + key + "' must be an array of numbers");
  }
  std::vector<double> out;
  for (const json& e : v) {
    if (!e.is_number()) {
      throw UsageError(std::string("config key '") + key + "' must be an array of numbers");
    }
    out.push_back(e.get<double>());
  }
  return out;
}

// ---- CLI11 glue --------------------------------------------------------

// Returns false when help was requested (after printing it); throws
// UsageError on parse problems.
bool parse_flags(CLI::App& app, const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("microepi");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return false;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return false;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  return true;
}

template <typename Fn>
void validate_as_usage(Fn&& fn) {
  try {
    fn();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

// ---- per-subcommand parsers ---------------------------------------------

std::optional<RunConfig> parse_simulate(const std::vector<std::string>& args,
                                        const json& cfg) {
  RunConfig rc;
  rc.subcommand = Subcommand::simulate;
  ScenarioSpec& spec = rc.scenario;
  std::string case_name = to_string(spec.scenario);

  reject_unknown_keys(cfg,
                      {"case", "M", "m0", "u", "u_star", "T", "horizon", "runs",
                       "seed", "per_run", "out"},
                      "simulate");
  if (cfg.contains("case")) case_name = get_string(cfg, "case");
  if (cfg.contains("M")) spec.population = get_int(cfg, "M");
  if (cfg.contains("m0")) spec.initially_infected = get_int(cfg, "m0");
  if (cfg.contains("u")) spec.normal_level = get_double(cfg, "u");
  if (cfg.contains("u_star")) spec.reduced_level = get_double(cfg, "u_star");
  if (cfg.contains("T")) spec.isolation_delay = get_int(cfg, "T");
  if (cfg.contains("horizon")) spec.horizon = get_int(cfg, "horizon");
  if (cfg.contains("runs")) spec.runs = get_int(cfg, "runs");
  if (cfg.contains("seed")) rc.seed = get_seed(cfg, "seed");
  if (cfg.contains("per_run")) rc.per_run = get_bool(cfg, "per_run");
  if (cfg.contains("out")) rc.out_dir = get_string(cfg, "out");

  CLI::App app{"Monte Carlo intervention study of the agent model"};
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; flags override its values");
  app.add_option("--case", case_name,
                 "intervention: no_intervention | immediate | delayed | lockdown");
  app.add_option("--M", spec.population, "population size");
  app.add_option("--m0", spec.initially_infected, "initially infected count");
  app.add_option("--u", spec.normal_level, "normal activity level");
  app.add_option("--u-star", spec.reduced_level, "reduced activity level");
  app.add_option("--T", spec.isolation_delay, "isolation delay in days (delayed case)");
  app.add_option("--horizon", spec.horizon, "days per trajectory");
  app.add_option("--runs", spec.runs, "trajectories in the ensemble");
  app.add_option("--seed", rc.seed, "master random seed");
  app.add_flag("--per-run", rc.per_run, "also write the per-run trajectories CSV");
  app.add_option("--out", rc.out_dir, "output directory");
  if (!parse_flags(app, args)) return std::nullopt;

  spec.scenario = scenario_case_from_string(case_name);
  spec.seed = rc.seed;
  validate_as_usage([&] { spec.validate(); });
  return rc;
}

std::optional<RunConfig> parse_nash(const std::vector<std::string>& args,
                                    const json& cfg) {
  RunConfig rc;
  rc.subcommand = Subcommand::nash;
  NashQuery& q = rc.nash_query;

  reject_unknown_keys(cfg, {"m", "M", "alpha", "shaped", "seed", "out"}, "nash");
  if (cfg.contains("m")) q.infected_count = get_int(cfg, "m");
  if (cfg.contains("M")) q.population = get_int(cfg, "M");
  if (cfg.contains("alpha")) q.alpha = get_double(cfg, "alpha");
  if (cfg.contains("shaped")) q.shaped = get_bool(cfg, "shaped");
  if (cfg.contains("seed")) rc.seed = get_seed(cfg, "seed");
  if (cfg.contains("out")) rc.out_dir = get_string(cfg, "out");

  CLI::App app{"stage game equilibrium, system optimum and welfare loss"};
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; flags override its values");
  app.add_option("--m", q.infected_count, "infected count");
  app.add_option("--M", q.population, "population size");
  app.add_option("--alpha", q.alpha, "activity penalty weight");
  app.add_flag("--shaped", q.shaped, "add the shaping term q(u) = u for infected agents");
  app.add_option("--seed", rc.seed, "recorded in the manifest (the solver is deterministic)");
  app.add_option("--out", rc.out_dir, "output directory");
  if (!parse_flags(app, args)) return std::nullopt;

  validate_as_usage([&] {
    if (q.population < 1) throw std::invalid_argument("population must be >= 1");
    if (q.infected_count < 0 || q.infected_count > q.population) {
      throw std::invalid_argument("infected count must lie in [0, population]");
    }
    nash::CostParams params;
    params.alpha = q.alpha;
    params.validate();
  });
  return rc;
}

std::optional<RunConfig> parse_learn(const std::vector<std::string>& args,
                                     const json& cfg) {
  RunConfig rc;
  rc.subcommand = Subcommand::learn;
  marl::TrainConfig& train = rc.train;

  reject_unknown_keys(cfg,
                      {"M", "m0", "alpha", "gamma", "eta", "episodes", "horizon",
                       "shaped", "q_init", "actions", "seed", "out"},
                      "learn");
  if (cfg.contains("M")) train.population = get_int(cfg, "M");
  if (cfg.contains("m0")) train.initially_infected = get_int(cfg, "m0");
  if (cfg.contains("alpha")) train.alpha = get_double(cfg, "alpha");
  if (cfg.contains("gamma")) train.gamma = get_double(cfg, "gamma");
  if (cfg.contains("eta")) train.eta = get_double(cfg, "eta");
  if (cfg.contains("episodes")) train.max_episodes = get_int(cfg, "episodes");
  if (cfg.contains("horizon")) train.horizon = get_int(cfg, "horizon");
  if (cfg.contains("shaped")) train.shaped = get_bool(cfg, "shaped");
  if (cfg.contains("q_init")) train.q_init = get_double(cfg, "q_init");
  if (cfg.contains("actions")) train.action_levels = get_number_array(cfg, "actions");
  if (cfg.contains("seed")) rc.seed = get_seed(cfg, "seed");
  if (cfg.contains("out")) rc.out_dir = get_string(cfg, "out");

  CLI::App app{"shared-table Q-learning over the agent model"};
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; flags override its values");
  app.add_option("--M", train.population, "population size");
  app.add_option("--m0", train.initially_infected, "initially infected count");
  app.add_option("--alpha", train.alpha, "activity penalty weight");
  app.add_option("--gamma", train.gamma, "discount factor");
  app.add_option("--eta", train.eta, "learning rate");
  app.add_option("--episodes", train.max_episodes, "training episodes");
  app.add_option("--horizon", train.horizon, "days per episode");
  app.add_flag("--shaped", train.shaped, "charge infected agents the shaping term q(u) = u");
  app.add_option("--q-init", train.q_init, "initial table value");
  app.add_option("--actions", train.action_levels,
                 "selectable activity levels (default 0 1/M 10/M)");
  app.add_option("--seed", rc.seed, "master random seed");
  app.add_option("--out", rc.out_dir, "output directory");
  if (!parse_flags(app, args)) return std::nullopt;

  train.seed = rc.seed;
  validate_as_usage([&] { train.validate(); });
  return rc;
}

std::optional<RunConfig> parse_si(const std::vector<std::string>& args,
                                  const json& cfg) {
  RunConfig rc;
  rc.subcommand = Subcommand::si;
  std::optional<double> beta;
  std::optional<double> s0;

  reject_unknown_keys(cfg, {"beta", "s0", "days", "dt", "seed", "out"}, "si");
  if (cfg.contains("beta")) beta = get_double(cfg, "beta");
  if (cfg.contains("s0")) s0 = get_double(cfg, "s0");
  if (cfg.contains("days")) rc.si_params.days = get_int(cfg, "days");
  if (cfg.contains("dt")) rc.si_params.dt = get_double(cfg, "dt");
  if (cfg.contains("seed")) rc.seed = get_seed(cfg, "seed");
  if (cfg.contains("out")) rc.out_dir = get_string(cfg, "out");

  CLI::App app{"macroscopic susceptible-infected reference curve"};
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; flags override its values");
  app.add_option("--beta", beta, "contact rate per day (required)");
  app.add_option("--s0", s0, "initial infected fraction (required)");
  app.add_option("--days", rc.si_params.days, "duration in days");
  app.add_option("--dt", rc.si_params.dt, "integration step in days");
  app.add_option("--seed", rc.seed, "recorded in the manifest (the integrator is deterministic)");
  app.add_option("--out", rc.out_dir, "output directory");
  if (!parse_flags(app, args)) return std::nullopt;

  if (!beta) throw UsageError("--beta is required for si");
  if (!s0) throw UsageError("--s0 is required for si");
  rc.si_params.beta = *beta;
  rc.si_params.initial_fraction = *s0;
  validate_as_usage([&] { rc.si_params.validate(); });
  return rc;
}

// ---- manifest -----------------------------------------------------------

json manifest_json(const RunConfig& c) {
  json j;
  j["artifact_version"] = kVersion;
  j["subcommand"] = to_string(c.subcommand);
  j["seed"] = c.seed;
  j["out"] = c.out_dir;
  switch (c.subcommand) {
    case Subcommand::simulate:
      j["case"] = to_string(c.scenario.scenario);
      j["M"] = c.scenario.population;
      j["m0"] = c.scenario.initially_infected;
      j["u"] = c.scenario.normal_level;
      j["u_star"] = c.scenario.reduced_level;
      j["T"] = c.scenario.isolation_delay;
      j["horizon"] = c.scenario.horizon;
      j["runs"] = c.scenario.runs;
      j["per_run"] = c.per_run;
      break;
    case Subcommand::nash:
      j["m"] = c.nash_query.infected_count;
      j["M"] = c.nash_query.population;
      j["alpha"] = c.nash_query.alpha;
      j["shaped"] = c.nash_query.shaped;
      break;
    case Subcommand::learn:
      j["M"] = c.train.population;
      j["m0"] = c.train.initially_infected;
      j["alpha"] = c.train.alpha;
      j["gamma"] = c.train.gamma;
      j["eta"] = c.train.eta;
      j["episodes"] = c.train.max_episodes;
      j["horizon"] = c.train.horizon;
      j["shaped"] = c.train.shaped;
      j["q_init"] = c.train.q_init;
      j["actions"] = c.train.effective_action_levels();
      break;
    case Subcommand::si:
      j["beta"] = c.si_params.beta;
      j["s0"] = c.si_params.initial_fraction;
      j["days"] = c.si_params.days;
      j["dt"] = c.si_params.dt;
      break;
  }
  return j;
}

fs::path write_manifest(const RunConfig& c, const fs::path& dir) {
  const fs::path path = dir / "manifest.json";
  io::write_text(path, manifest_json(c).dump(2) + "\n");
  return path;
}

// ---- output writers ------------------------------------------------------

std::vector<fs::path> execute_simulate(const RunConfig& c) {
  ScenarioSpec spec = c.scenario;
  spec.seed = c.seed;
  const EnsembleResult result = monte_carlo(spec, c.per_run);
  const fs::path dir(c.out_dir);
  std::vector<fs::path> written;

  std::vector<std::string> rows;
  rows.reserve(result.mean.size());
  for (std::size_t day = 0; day < result.mean.size(); ++day) {
    rows.push_back(std::to_string(day) + "," + io::format_double(result.mean[day]) +
                   "," + std::to_string(result.min[day]) + "," +
                   std::to_string(result.max[day]));
  }
  written.push_back(dir / "envelope.csv");
  io::write_csv(written.back(), "day,mean,min,max", rows);

  if (c.per_run) {
    std::vector<std::string> long_rows;
    long_rows.reserve(result.runs.size() * result.mean.size());
    for (std::size_t r = 0; r < result.runs.size(); ++r) {
      for (std::size_t day = 0; day < result.runs[r].size(); ++day) {
        long_rows.push_back(std::to_string(r) + "," + std::to_string(day) + "," +
                            std::to_string(result.runs[r][day]));
      }
    }
    written.push_back(dir / "runs.csv");
    io::write_csv(written.back(), "run,day,m", long_rows);
  }
  written.push_back(write_manifest(c, dir));
  return written;
}

std::vector<fs::path> execute_nash(const RunConfig& c) {
  nash::CostParams params;
  params.alpha = c.nash_query.alpha;
  const int m = c.nash_query.infected_count;
  const int M = c.nash_query.population;

  const nash::StageEquilibrium eq = nash::stage_nash(m, M, params, c.nash_query.shaped);
  const nash::SystemOptimum opt = nash::system_optimum(m, M, params);
  // The reported gap always compares the unshaped equilibrium to the optimum;
  // shaping exists precisely to close it.
  const double loss = nash::welfare_loss(m, M, params);

  std::ostringstream row;
  row << m << "," << M << "," << io::format_double(c.nash_query.alpha) << ","
      << (c.nash_query.shaped ? 1 : 0) << "," << io::format_double(eq.u_healthy)
      << "," << io::format_double(eq.u_infected) << ","
      << io::format_double(eq.cost_healthy) << ","
      << io::format_double(eq.cost_infected) << ","
      << io::format_double(eq.system_cost) << ","
      << io::format_double(opt.total_cost) << "," << io::format_double(loss);

  const fs::path dir(c.out_dir);
  std::vector<fs::path> written;
  written.push_back(dir / "report.csv");
  io::write_csv(written.back(),
                "m,M,alpha,shaped,u_healthy,u_infected,cost_healthy,cost_infected,"
                "L_star,L_opt,welfare_loss",
                {row.str()});
  written.push_back(write_manifest(c, dir));
  return written;
}

std::vector<fs::path> execute_learn(const RunConfig& c) {
  marl::TrainConfig cfg = c.train;
  cfg.seed = c.seed;
  const marl::TrainResult result = marl::train(cfg);
  const fs::path dir(c.out_dir);
  std::vector<fs::path> written;

  std::vector<std::string> table_rows;
  const marl::QTable& table = result.table;
  for (int x = 0; x <= 1; ++x) {
    const AgentState state = x == 0 ? AgentState::healthy : AgentState::infected;
    for (int m = 0; m <= table.population; ++m) {
      for (int a = 0; a < table.actions(); ++a) {
        table_rows.push_back(std::to_string(x) + "," + std::to_string(m) + "," +
                             io::format_double(table.action_levels[a]) + "," +
                             io::format_double(table.q(state, m, a)) + "," +
                             std::to_string(table.visit_count(state, m, a)));
      }
    }
  }
  written.push_back(dir / "q_table.csv");
  io::write_csv(written.back(), "x,m,action_level,q_value,visits", table_rows);

  std::vector<std::string> trajectory_rows;
  std::vector<std::string> summary_rows;
  for (std::size_t e = 0; e < result.episodes.size(); ++e) {
    const marl::EpisodeRecord& rec = result.episodes[e];
    const int episode = static_cast<int>(e) + 1;
    for (std::size_t day = 0; day < rec.m_trajectory.size(); ++day) {
      trajectory_rows.push_back(std::to_string(episode) + "," + std::to_string(day) +
                                "," + std::to_string(rec.m_trajectory[day]));
    }
    summary_rows.push_back(std::to_string(episode) + "," +
                           io::format_double(rec.epsilon) + "," +
                           std::to_string(rec.final_m()) + "," +
                           io::format_double(rec.cumulative_cost()));
  }
  written.push_back(dir / "trajectories.csv");
  io::write_csv(written.back(), "episode,day,m", trajectory_rows);
  written.push_back(dir / "summary.csv");
  io::write_csv(written.back(), "episode,epsilon,final_m,cumulative_cost", summary_rows);
  written.push_back(write_manifest(c, dir));
  return written;
}

std::vector<fs::path> execute_si(const RunConfig& c) {
  const std::vector<si::TimePoint> curve = si::integrate(c.si_params);
  std::vector<std::string> rows;
  rows.reserve(curve.size());
  for (const si::TimePoint& p : curve) {
    rows.push_back(io::format_double(p.t) + "," + io::format_double(p.s));
  }
  const fs::path dir(c.out_dir);
  std::vector<fs::path> written;
  written.push_back(dir / "si.csv");
  io::write_csv(written.back(), "t,s", rows);
  written.push_back(write_manifest(c, dir));
  return written;
}

}  // namespace

std::string to_string(Subcommand sub) {
  switch (sub) {
    case Subcommand::simulate: return "simulate";
    case Subcommand::nash: return "nash";
    case Subcommand::learn: return "learn";
    case Subcommand::si: return "si";
  }
  throw std::invalid_argument("unknown subcommand");
}

std::string to_string(ScenarioCase scenario) {
  switch (scenario) {
    case ScenarioCase::no_intervention: return "no_intervention";
    case ScenarioCase::immediate_isolation: return "immediate";
    case ScenarioCase::delayed_isolation: return "delayed";
    case ScenarioCase::lockdown: return "lockdown";
  }
  throw std::invalid_argument("unknown scenario case");
}

ScenarioCase scenario_case_from_string(const std::string& name) {
  if (name == "no_intervention") return ScenarioCase::no_intervention;
  if (name == "immediate") return ScenarioCase::immediate_isolation;
  if (name == "delayed") return ScenarioCase::delayed_isolation;
  if (name == "lockdown") return ScenarioCase::lockdown;
  throw UsageError("unknown scenario case '" + name +
                   "' (expected no_intervention | immediate | delayed | lockdown)");
}

std::optional<RunConfig> parse_args(const std::vector<std::string>& args) {
  if (args.empty()) throw UsageError(std::string("missing subcommand\n\n") + kTopUsage);
  if (args[0] == "--help" || args[0] == "-h" || args[0] == "help") {
    std::cout << kTopUsage;
    return std::nullopt;
  }

  std::optional<Subcommand> sub = subcommand_from_string(args[0]);
  std::vector<std::string> rest(sub ? args.begin() + 1 : args.begin(), args.end());

  // The config file is loaded up front so flags parsed afterwards override it.
  std::optional<std::string> config_path;
  for (std::size_t i = 0; i < rest.size(); ++i) {
    if (rest[i] == "--config") {
      if (i + 1 >= rest.size()) throw UsageError("missing value after --config");
      config_path = rest[i + 1];
    } else if (rest[i].rfind("--config=", 0) == 0) {
      config_path = rest[i].substr(std::string("--config=").size());
    }
  }

  json cfg = json::object();
  if (config_path) cfg = load_config_file(*config_path);

  if (cfg.contains("subcommand")) {
    const std::string name = get_string(cfg, "subcommand");
    const std::optional<Subcommand> from_cfg = subcommand_from_string(name);
    if (!from_cfg) throw UsageError("unknown subcommand '" + name + "' in config file");
    if (sub && *sub != *from_cfg) {
      throw UsageError("subcommand '" + to_string(*sub) +
                       "' does not match config file subcommand '" + name + "'");
    }
    sub = from_cfg;
  }
  if (!sub) {
    throw UsageError(std::string("missing subcommand\n\n") + kTopUsage);
  }

  switch (*sub) {
    case Subcommand::simulate: return parse_simulate(rest, cfg);
    case Subcommand::nash: return parse_nash(rest, cfg);
    case Subcommand::learn: return parse_learn(rest, cfg);
    case Subcommand::si: return parse_si(rest, cfg);
  }
  throw UsageError("unknown subcommand");
}

std::vector<std::filesystem::path> execute(const RunConfig& config) {
  switch (config.subcommand) {
    case Subcommand::simulate: return execute_simulate(config);
    case Subcommand::nash: return execute_nash(config);
    case Subcommand::learn: return execute_learn(config);
    case Subcommand::si: return execute_si(config);
  }
  throw std::invalid_argument("unknown subcommand");
}

int run_main(const std::vector<std::string>& args) {
  try {
    const std::optional<RunConfig> config = parse_args(args);
    if (!config) return 0;
    const std::vector<std::filesystem::path> files = execute(*config);
    for (const std::filesystem::path& p : files) {
      std::cout << "wrote " << p.string() << "\n";
    }
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace microepi::cli
