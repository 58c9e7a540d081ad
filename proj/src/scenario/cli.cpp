#include "edgesim/scenario/cli.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "edgesim/des/engine.hpp"
#include "edgesim/scenario/config.hpp"
#include "edgesim/scenario/metrics.hpp"
#include "edgesim/scenario/runner.hpp"

namespace edgesim::scenario {

int cli_main(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Discrete-event simulator for deep learning at the network edge"};
  app.name("edgesim");

  std::string config_path;
  std::optional<std::uint64_t> seed_override;
  std::optional<double> until_seconds;
  std::string trace_path = "trace.txt";
  std::string metrics_path = "metrics.txt";
  bool quiet = false;

  app.add_option("--config", config_path, "Scenario config file")->required();
  app.add_option("--seed", seed_override, "Override the scenario seed");
  app.add_option("--until", until_seconds,
                 "Override the stop time, in seconds");
  app.add_option("--trace-out", trace_path, "Trace output path");
  app.add_option("--metrics-out", metrics_path, "Metrics output path");
  app.add_flag("--quiet", quiet, "Suppress the metrics summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return 1;
  }

  std::ifstream in(config_path);
  if (!in) {
    err << "cannot open config file: " << config_path << "\n";
    return 1;
  }
  std::ostringstream text;
  text << in.rdbuf();

  ParseResult parsed = parse_config(text.str());
  if (!parsed.config) {
    err << "config errors in " << config_path << ":\n";
    for (const auto& e : parsed.errors) {
      err << "  " << e << "\n";
    }
    return 1;
  }
  ScenarioConfig config = std::move(*parsed.config);
  if (seed_override) {
    config.seed = *seed_override;
  }
  if (until_seconds) {
    if (*until_seconds <= 0.0) {
      err << "--until must be > 0\n";
      return 1;
    }
    config.stop_at_ns =
        static_cast<std::uint64_t>(std::llround(*until_seconds * 1e9));
  }

  try {
    MetricsSummary metrics = run_scenario(config, trace_path, metrics_path);
    if (!quiet) {
      out << render_metrics_human(metrics);
      out << "trace written to " << trace_path << ", metrics to "
          << metrics_path << "\n";
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace edgesim::scenario
