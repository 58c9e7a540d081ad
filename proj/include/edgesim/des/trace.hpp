#pragma once

#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "edgesim/des/engine.hpp"
#include "edgesim/des/sim_time.hpp"

namespace edgesim::des {

// Renders a primitive trace value as a space-free token. Doubles use
// shortest-round-trip formatting so identical runs give identical bytes.
struct TraceValue {
  std::string text;

  TraceValue(std::uint64_t v);
  TraceValue(std::int64_t v);
  TraceValue(int v);
  TraceValue(unsigned v);
  TraceValue(double v);
  TraceValue(std::string_view v) : text(v) {}
  TraceValue(const char* v) : text(v) {}
  TraceValue(const std::string& v) : text(v) {}
};

struct TraceRecord {
  SimTime time;
  std::optional<std::uint32_t> node;
  std::string kind;
  EventId event = 0;
  std::vector<std::pair<std::string, std::string>> detail;

  // Linear scan; detail maps are tiny.
  const std::string* find(std::string_view key) const;
};

// Line-delimited structured trace writer. One record per line, fixed field
// order so byte-identity checks between runs are meaningful:
//
//   time_ns=<ns> node=<id|-> kind=<KIND> event=<id> key=value ...
//
// The executing event id is stamped automatically from the attached engine.
// Files start with a "format = 1" header line.
class Tracer {
 public:
  Tracer() = default;

  void attach(const Engine& engine) { engine_ = &engine; }
  void open(const std::string& path);
  void close();
  bool is_open() const { return out_.is_open(); }

  void emit(std::optional<std::uint32_t> node, std::string_view kind,
            std::initializer_list<std::pair<std::string_view, TraceValue>> detail);
  void emit(std::optional<std::uint32_t> node, std::string_view kind,
            const std::vector<std::pair<std::string, std::string>>& detail);

  std::uint64_t records_written() const { return records_written_; }

 private:
  void write_line(std::optional<std::uint32_t> node, std::string_view kind,
                  const std::vector<std::pair<std::string, std::string>>& detail);

  const Engine* engine_ = nullptr;
  std::ofstream out_;
  std::uint64_t records_written_ = 0;
};

inline constexpr std::string_view kTraceFormatHeader = "format = 1";

// Parses one trace line; returns nullopt for the header or malformed lines.
std::optional<TraceRecord> parse_trace_line(std::string_view line);

// Reads a whole trace file (skipping the header). Throws on I/O failure.
std::vector<TraceRecord> read_trace_file(const std::string& path);

std::string format_double(double v);

}  // namespace edgesim::des
