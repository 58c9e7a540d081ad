#include "edgesim/scenario/metrics.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "edgesim/des/trace.hpp"

namespace edgesim::scenario {

std::string render_metrics_file(const MetricsSummary& m) {
  std::ostringstream out;
  out << "format = 1\n";
  out << "packets.sent = " << m.packets.sent << "\n";
  out << "packets.delivered = " << m.packets.delivered << "\n";
  out << "packets.dropped_queue = " << m.packets.dropped_queue << "\n";
  out << "packets.dropped_no_route = " << m.packets.dropped_no_route << "\n";
  out << "packets.dropped_app_stopped = " << m.packets.dropped_app_stopped
      << "\n";
  out << "packets.in_flight = " << m.packets.in_flight() << "\n";
  for (const auto& edge : m.edges) {
    const std::string prefix = "edge." + edge.name + ".";
    out << prefix << "cache_hits = " << edge.cache_hits << "\n";
    out << prefix << "cache_misses = " << edge.cache_misses << "\n";
    out << prefix << "cache_evictions = " << edge.cache_evictions << "\n";
    out << prefix << "epochs_run = " << edge.epochs_run << "\n";
    out << prefix << "final_loss = " << des::format_double(edge.final_loss)
        << "\n";
    out << prefix << "training_duration_ns = " << edge.training_duration_ns
        << "\n";
    out << prefix << "training_samples = " << edge.training_samples << "\n";
    out << prefix << "digest = " << edge.digest << "\n";
  }
  out << "ensemble.ready = " << (m.ensemble.ready ? "true" : "false") << "\n";
  out << "ensemble.submodels = " << m.ensemble.submodels << "\n";
  for (std::size_t i = 0; i < m.ensemble.submodel_accuracy.size(); ++i) {
    out << "ensemble.submodel_accuracy." << i << " = "
        << des::format_double(m.ensemble.submodel_accuracy[i]) << "\n";
  }
  for (std::size_t i = 0; i < m.ensemble.submodel_loss.size(); ++i) {
    out << "ensemble.submodel_loss." << i << " = "
        << des::format_double(m.ensemble.submodel_loss[i]) << "\n";
  }
  if (m.ensemble.ensemble_accuracy) {
    out << "ensemble.accuracy = "
        << des::format_double(*m.ensemble.ensemble_accuracy) << "\n";
  }
  if (m.ensemble.ensemble_loss) {
    out << "ensemble.loss = " << des::format_double(*m.ensemble.ensemble_loss)
        << "\n";
  }
  return out.str();
}

void write_metrics_file(const MetricsSummary& metrics, const std::string& path) {
  std::ofstream out(path, std::ios::out | std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot open metrics file: " + path);
  }
  out << render_metrics_file(metrics);
}

std::string render_metrics_human(const MetricsSummary& m) {
  std::ostringstream out;
  out << "packets: sent=" << m.packets.sent << " delivered=" << m.packets.delivered
      << " dropped_queue=" << m.packets.dropped_queue
      << " dropped_no_route=" << m.packets.dropped_no_route
      << " dropped_app_stopped=" << m.packets.dropped_app_stopped
      << " in_flight=" << m.packets.in_flight() << "\n";
  for (const auto& edge : m.edges) {
    out << "edge " << edge.name << ": samples=" << edge.training_samples
        << " epochs=" << edge.epochs_run
        << " final_loss=" << des::format_double(edge.final_loss)
        << " duration_ms="
        << des::format_double(static_cast<double>(edge.training_duration_ns) /
                              1e6)
        << " hits=" << edge.cache_hits << " evictions=" << edge.cache_evictions
        << "\n";
  }
  out << "ensemble: ready=" << (m.ensemble.ready ? "yes" : "no")
      << " submodels=" << m.ensemble.submodels;
  if (m.ensemble.ensemble_accuracy) {
    out << " accuracy=" << des::format_double(*m.ensemble.ensemble_accuracy);
    out << " (submodels:";
    for (double a : m.ensemble.submodel_accuracy) {
      out << ' ' << des::format_double(a);
    }
    out << ")";
  }
  out << "\n";
  out << "wall_seconds = " << des::format_double(m.wall_seconds) << "\n";
  return out.str();
}

std::vector<std::pair<std::string, std::string>> read_metrics_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open metrics file: " + path);
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    auto strip = [](std::string& s) {
      while (!s.empty() && s.front() == ' ') s.erase(s.begin());
      while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.pop_back();
    };
    strip(key);
    strip(value);
    pairs.emplace_back(std::move(key), std::move(value));
  }
  return pairs;
}

}  // namespace edgesim::scenario
