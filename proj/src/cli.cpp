#include "gapdiff/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gapdiff/chain_model.hpp"
#include "gapdiff/error.hpp"
#include "gapdiff/io.hpp"
#include "gapdiff/jfraction.hpp"
#include "gapdiff/levy_measure.hpp"
#include "gapdiff/mc_simulator.hpp"
#include "gapdiff/refinement.hpp"
#include "gapdiff/spectral_measure.hpp"

namespace gapdiff::cli {

namespace {

constexpr int kUsageError = 2;
constexpr int kRuntimeError = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check_config(const CommandConfig& c) {
  if (c.input.empty()) throw UsageError("--input is required");
  if (c.zn < 2 || c.yn < 2) throw UsageError("grid counts must be at least 2");
  if (!(c.zmin > 0.0) || !(c.zmax > c.zmin)) throw UsageError("z grid must satisfy 0 < zmin < zmax");
  if (!(c.ymin > 0.0) || !(c.ymax > c.ymin)) throw UsageError("y grid must satisfy 0 < ymin < ymax");
  if (c.spacing != "lin" && c.spacing != "log") throw UsageError("--spacing must be lin or log");
  if (c.convention != "chain" && c.convention != "speed") throw UsageError("--convention must be chain or speed");
}

/// Opens `path` for writing, or hands back `fallback` when the path is empty.
class Sink {
public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error("cli_toolkit", "cannot write '" + path + "'");
      os_ = &file_;
    }
  }
  std::ostream& stream() { return *os_; }

private:
  std::ofstream file_;
  std::ostream* os_;
};

std::vector<double> z_grid(const CommandConfig& c) {
  return io::make_grid(c.zmin, c.zmax, c.zn, io::spacing_from_string(c.spacing));
}
std::vector<double> y_grid(const CommandConfig& c) {
  return io::make_grid(c.ymin, c.ymax, c.yn, io::spacing_from_string(c.spacing));
}

LevyRepresentation representation_for(const CommandConfig& c, const io::ChainFile& f) {
  const auto conv = convention_from_string(c.convention);
  if (conv == LocalTimeConvention::SpeedUnits && !f.speed_mass_at_zero)
    throw UsageError("--convention speed needs \"speed_mass_at_zero\" in the chain file");
  return levy_representation(f.chain, conv, f.speed_mass_at_zero.value_or(0.0));
}

void cmd_spectrum(const CommandConfig& c, std::ostream& out) {
  const auto f = io::chain_from_json(io::read_json_file(c.input));
  const SpectralMeasure sm = spectrum(jfraction_from_chain(f.chain));
  Sink sink(c.output, out);
  sink.stream() << io::spectral_measure_to_json(sm).dump() << '\n';
}

void cmd_levy(const CommandConfig& c, std::ostream& out, std::ostream& err) {
  const auto f = io::chain_from_json(io::read_json_file(c.input));
  const LevyRepresentation rep = representation_for(c, f);
  const auto ys = y_grid(c);
  std::vector<double> values;
  for (double y : ys) values.push_back(levy_density(rep, y));
  Sink sink(c.output, out);
  io::write_xy_csv(sink.stream(), "y,n_y", ys, values);

  io::Json summary = io::representation_to_json(rep);
  summary["knight"] = knight_functional(rep);
  Sink side(c.summary, err);
  side.stream() << summary.dump() << '\n';
}

void cmd_exponent(const CommandConfig& c, std::ostream& out) {
  const auto f = io::chain_from_json(io::read_json_file(c.input));
  const LevyRepresentation rep = representation_for(c, f);
  const auto zs = z_grid(c);
  std::vector<double> values;
  for (double z : zs) values.push_back(laplace_exponent(rep, z));
  Sink sink(c.output, out);
  io::write_xy_csv(sink.stream(), "z,psi_z", zs, values);
}

void cmd_oracle(const CommandConfig& c, std::ostream& out) {
  const auto f = io::chain_from_json(io::read_json_file(c.input));
  const auto zs = z_grid(c);
  std::vector<double> values;
  for (double z : zs) values.push_back(first_passage_transform(f.chain, z));
  Sink sink(c.output, out);
  io::write_xy_csv(sink.stream(), "z,T_z", zs, values);
}

void cmd_simulate(const CommandConfig& c, std::ostream& out, std::ostream& err) {
  if (!c.seed) throw UsageError("simulate requires --seed");
  if (c.replicas < 1) throw UsageError("--replicas must be positive");
  const auto f = io::chain_from_json(io::read_json_file(c.input));
  const EmpiricalSummary s = simulate_replicas(f.chain, c.budget, c.replicas, *c.seed, c.threads);
  Sink sink(c.output, out);
  sink.stream() << "duration\n";
  for (double d : s.excursion_durations) sink.stream() << io::format_number(d) << '\n';
  Sink side(c.summary, err);
  side.stream() << io::counts_to_json(s, c.replicas, c.budget).dump() << '\n';
}

void write_table(const std::string& path, const ConvergenceReport& report, bool over_z,
                 std::vector<double> ConvergenceRow::*column) {
  std::ofstream os(path);
  if (!os) throw Error("cli_toolkit", "cannot write '" + path + "'");
  os << "N,z_or_y,value\n";
  const auto& grid = over_z ? report.z_grid : report.y_grid;
  for (const auto& row : report.rows) {
    const auto& values = row.*column;
    for (std::size_t i = 0; i < grid.size(); ++i)
      os << row.cells << ',' << io::format_number(grid[i]) << ',' << io::format_number(values[i]) << '\n';
  }
}

void cmd_refine(const CommandConfig& c, std::ostream& out) {
  const auto f = io::speed_measure_from_json(io::read_json_file(c.input));
  const auto zs = z_grid(c);
  const auto ys = y_grid(c);
  RefinementPlan plan;
  plan.target = f.measure;
  plan.sizes = c.sizes;
  plan.convention = LocalTimeConvention::SpeedUnits;
  if (c.cutoff)
    plan.domain_cutoff = *c.cutoff;
  else if (f.cutoff)
    plan.domain_cutoff = *f.cutoff;
  else if (f.measure.endpoint)
    plan.domain_cutoff = *f.measure.endpoint;
  else
    plan.domain_cutoff = default_domain_cutoff(ys);

  const ConvergenceReport report = convergence_experiment(plan, zs, ys, c.threads);
  const io::Json summary = io::report_summary_to_json(report);
  if (!c.output.empty()) {
    write_table(c.output + "_psi.csv", report, true, &ConvergenceRow::psi);
    write_table(c.output + "_density.csv", report, false, &ConvergenceRow::density);
    write_table(c.output + "_tail.csv", report, false, &ConvergenceRow::tail);
  }
  const std::string summary_path =
      !c.summary.empty() ? c.summary : (c.output.empty() ? std::string{} : c.output + "_summary.json");
  Sink side(summary_path, out);
  side.stream() << summary.dump(2) << '\n';
}

}  // namespace

int run(const CommandConfig& config, std::ostream& out, std::ostream& err) {
  try {
    check_config(config);
    const auto& s = config.subcommand;
    if (s == "spectrum")
      cmd_spectrum(config, out);
    else if (s == "levy")
      cmd_levy(config, out, err);
    else if (s == "exponent")
      cmd_exponent(config, out);
    else if (s == "oracle")
      cmd_oracle(config, out);
    else if (s == "simulate")
      cmd_simulate(config, out, err);
    else if (s == "refine")
      cmd_refine(config, out);
    else
      throw UsageError("unknown subcommand '" + s + "'");
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return 0;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Levy measures of inverse local times of gap diffusions"};
  app.require_subcommand(1);
  CommandConfig config;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"spectrum", "chain JSON -> spectral atoms JSON"},
      {"levy", "chain JSON -> Levy density CSV over the y grid, Knight value in the summary"},
      {"exponent", "chain JSON -> Laplace exponent CSV over the z grid"},
      {"oracle", "chain JSON -> first-passage transform CSV over the z grid"},
      {"simulate", "chain JSON -> excursion durations CSV and counts JSON"},
      {"refine", "speed-measure JSON -> refinement convergence report"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--input,-i", config.input, "input JSON file")->required();
    sub->add_option("--output,-o", config.output, "output file (refine: path prefix); default stdout");
    sub->add_option("--summary", config.summary, "side JSON output");
    sub->add_option("--zmin", config.zmin);
    sub->add_option("--zmax", config.zmax);
    sub->add_option("--zn", config.zn);
    sub->add_option("--ymin", config.ymin);
    sub->add_option("--ymax", config.ymax);
    sub->add_option("--yn", config.yn);
    sub->add_option("--spacing", config.spacing)->check(CLI::IsMember({"lin", "log"}));
    sub->add_option("--convention", config.convention)->check(CLI::IsMember({"chain", "speed"}));
    sub->add_option("--seed", config.seed, "master seed (required by simulate)");
    sub->add_option("--replicas", config.replicas);
    sub->add_option("--budget", config.budget, "local-time budget per replica");
    sub->add_option("--sizes", config.sizes, "refinement sizes, e.g. 25,50,100,200")->delimiter(',');
    sub->add_option("--cutoff", config.cutoff, "domain cutoff L for unbounded targets");
    sub->add_option("--threads", config.threads);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  }
  config.subcommand = app.get_subcommands().front()->get_name();
  return run(config, out, err);
}

}  // namespace gapdiff::cli
