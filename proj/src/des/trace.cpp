#include "edgesim/des/trace.hpp"

#include <charconv>
#include <stdexcept>
#include <system_error>

namespace edgesim::des {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) {
    throw std::runtime_error("format_double: to_chars failed");
  }
  return std::string(buf, ptr);
}

TraceValue::TraceValue(std::uint64_t v) : text(std::to_string(v)) {}
TraceValue::TraceValue(std::int64_t v) : text(std::to_string(v)) {}
TraceValue::TraceValue(int v) : text(std::to_string(v)) {}
TraceValue::TraceValue(unsigned v) : text(std::to_string(v)) {}
TraceValue::TraceValue(double v) : text(format_double(v)) {}

const std::string* TraceRecord::find(std::string_view key) const {
  for (const auto& [k, v] : detail) {
    if (k == key) return &v;
  }
  return nullptr;
}

void Tracer::open(const std::string& path) {
  close();
  out_.open(path, std::ios::out | std::ios::trunc);
  if (!out_) {
    throw std::runtime_error("Tracer: cannot open trace file: " + path);
  }
  out_ << kTraceFormatHeader << '\n';
}

void Tracer::close() {
  if (out_.is_open()) {
    out_.close();
  }
}

void Tracer::emit(std::optional<std::uint32_t> node, std::string_view kind,
                  std::initializer_list<std::pair<std::string_view, TraceValue>> detail) {
  if (!out_.is_open()) return;
  std::vector<std::pair<std::string, std::string>> pairs;
  pairs.reserve(detail.size());
  for (const auto& [k, v] : detail) {
    pairs.emplace_back(std::string(k), v.text);
  }
  write_line(node, kind, pairs);
}

void Tracer::emit(std::optional<std::uint32_t> node, std::string_view kind,
                  const std::vector<std::pair<std::string, std::string>>& detail) {
  if (!out_.is_open()) return;
  write_line(node, kind, detail);
}

void Tracer::write_line(std::optional<std::uint32_t> node, std::string_view kind,
                        const std::vector<std::pair<std::string, std::string>>& detail) {
  const std::uint64_t time_ns = engine_ ? engine_->now().ns : 0;
  const EventId event = engine_ ? engine_->current_event() : 0;
  out_ << "time_ns=" << time_ns << " node=";
  if (node) {
    out_ << *node;
  } else {
    out_ << '-';
  }
  out_ << " kind=" << kind << " event=" << event;
  for (const auto& [k, v] : detail) {
    out_ << ' ' << k << '=' << v;
  }
  out_ << '\n';
  ++records_written_;
}

namespace {

bool parse_u64(std::string_view s, std::uint64_t& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

std::optional<TraceRecord> parse_trace_line(std::string_view line) {
  if (line.empty() || line == kTraceFormatHeader) return std::nullopt;
  TraceRecord rec;
  std::size_t field = 0;
  std::size_t pos = 0;
  while (pos < line.size()) {
    std::size_t end = line.find(' ', pos);
    if (end == std::string_view::npos) end = line.size();
    std::string_view token = line.substr(pos, end - pos);
    pos = end + 1;
    if (token.empty()) continue;
    std::size_t eq = token.find('=');
    if (eq == std::string_view::npos) return std::nullopt;
    std::string_view key = token.substr(0, eq);
    std::string_view value = token.substr(eq + 1);
    switch (field) {
      case 0: {
        if (key != "time_ns" || !parse_u64(value, rec.time.ns)) return std::nullopt;
        break;
      }
      case 1: {
        if (key != "node") return std::nullopt;
        if (value != "-") {
          std::uint64_t id = 0;
          if (!parse_u64(value, id)) return std::nullopt;
          rec.node = static_cast<std::uint32_t>(id);
        }
        break;
      }
      case 2: {
        if (key != "kind") return std::nullopt;
        rec.kind = std::string(value);
        break;
      }
      case 3: {
        if (key != "event" || !parse_u64(value, rec.event)) return std::nullopt;
        break;
      }
      default:
        rec.detail.emplace_back(std::string(key), std::string(value));
    }
    ++field;
  }
  if (field < 4) return std::nullopt;
  return rec;
}

std::vector<TraceRecord> read_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("read_trace_file: cannot open: " + path);
  }
  std::vector<TraceRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (auto rec = parse_trace_line(line)) {
      records.push_back(std::move(*rec));
    }
  }
  return records;
}

}  // namespace edgesim::des
