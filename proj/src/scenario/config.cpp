#include "edgesim/scenario/config.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

#include "edgesim/des/trace.hpp"

namespace edgesim::scenario {

std::string_view to_string(NodeRole role) {
  switch (role) {
    case NodeRole::Terminal: return "TERMINAL";
    case NodeRole::Edge: return "EDGE";
    case NodeRole::Gateway: return "GATEWAY";
    case NodeRole::DataCenter: return "DATA_CENTER";
  }
  return "UNKNOWN";
}

const NodeSpec* ScenarioConfig::find_node(const std::string& name) const {
  for (const auto& node : nodes) {
    if (node.name == name) return &node;
  }
  return nullptr;
}

std::optional<std::size_t> ScenarioConfig::node_index(
    const std::string& name) const {
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].name == name) return i;
  }
  return std::nullopt;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    if (comma == std::string_view::npos) comma = s.size();
    auto item = trim(s.substr(pos, comma - pos));
    if (!item.empty()) out.emplace_back(item);
    pos = comma + 1;
  }
  return out;
}

// Accumulates key = value pairs for one parse pass.
struct Parser {
  std::vector<std::string>& errors;
  int line_no = 0;

  void error(const std::string& message) {
    errors.push_back("line " + std::to_string(line_no) + ": " + message);
  }

  bool parse_u64(std::string_view value, std::uint64_t& out) {
    auto t = trim(value);
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    if (ec != std::errc() || ptr != t.data() + t.size()) {
      error("expected an unsigned integer, got '" + std::string(t) + "'");
      return false;
    }
    return true;
  }

  bool parse_size(std::string_view value, std::size_t& out) {
    std::uint64_t v = 0;
    if (!parse_u64(value, v)) return false;
    out = static_cast<std::size_t>(v);
    return true;
  }

  bool parse_double(std::string_view value, double& out) {
    auto t = trim(value);
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
    if (ec != std::errc() || ptr != t.data() + t.size()) {
      error("expected a number, got '" + std::string(t) + "'");
      return false;
    }
    return true;
  }

  bool parse_bool(std::string_view value, bool& out) {
    auto t = trim(value);
    if (t == "true") {
      out = true;
      return true;
    }
    if (t == "false") {
      out = false;
      return true;
    }
    error("expected true or false, got '" + std::string(t) + "'");
    return false;
  }

  bool parse_size_list(std::string_view value, std::vector<std::size_t>& out) {
    out.clear();
    for (const auto& item : split_list(value)) {
      std::size_t v = 0;
      if (!parse_size(item, v)) return false;
      out.push_back(v);
    }
    return true;
  }
};

enum class Section {
  None,
  Scenario,
  Dataset,
  Model,
  Training,
  Apps,
  Node,
  Link,
  Skip,  // unknown section already reported; swallow its keys
};

}  // namespace

ParseResult parse_config(std::string_view text) {
  ParseResult result;
  Parser p{result.errors};
  ScenarioConfig config;

  Section section = Section::None;
  NodeSpec* current_node = nullptr;
  LinkSpec* current_link = nullptr;
  bool saw_format = false;
  bool saw_seed = false;
  bool saw_stop = false;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view raw = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++p.line_no;

    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      if (pos > text.size()) break;
      continue;
    }

    if (line.front() == '[') {
      if (line.back() != ']') {
        p.error("unterminated section header");
        section = Section::Skip;
        continue;
      }
      std::string_view inner = trim(line.substr(1, line.size() - 2));
      std::istringstream words{std::string(inner)};
      std::string head;
      words >> head;
      current_node = nullptr;
      current_link = nullptr;
      if (head == "scenario") {
        section = Section::Scenario;
      } else if (head == "dataset") {
        section = Section::Dataset;
      } else if (head == "model") {
        section = Section::Model;
      } else if (head == "training") {
        section = Section::Training;
      } else if (head == "apps") {
        section = Section::Apps;
      } else if (head == "node") {
        std::string name;
        words >> name;
        if (name.empty()) {
          p.error("[node] needs a name: [node <name>]");
          section = Section::Skip;
          continue;
        }
        if (config.find_node(name)) {
          p.error("duplicate node name '" + name + "'");
          section = Section::Skip;
          continue;
        }
        config.nodes.emplace_back();
        config.nodes.back().name = name;
        current_node = &config.nodes.back();
        section = Section::Node;
      } else if (head == "link") {
        std::string a, b;
        words >> a >> b;
        if (a.empty() || b.empty()) {
          p.error("[link] needs two endpoints: [link <a> <b>]");
          section = Section::Skip;
          continue;
        }
        config.links.emplace_back();
        config.links.back().a = a;
        config.links.back().b = b;
        current_link = &config.links.back();
        section = Section::Link;
      } else {
        p.error("unknown section '" + head + "'");
        section = Section::Skip;
      }
      continue;
    }

    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      p.error("expected 'key = value'");
      continue;
    }
    std::string key{trim(line.substr(0, eq))};
    std::string_view value = trim(line.substr(eq + 1));

    if (section == Section::None) {
      if (key == "format") {
        std::uint64_t v = 0;
        if (p.parse_u64(value, v) && v != 1) {
          p.error("unsupported format version " + std::to_string(v));
        }
        saw_format = true;
      } else {
        p.error("key '" + key + "' before any section");
      }
      continue;
    }

    switch (section) {
      case Section::Scenario:
        if (key == "seed") {
          saw_seed = p.parse_u64(value, config.seed) || saw_seed;
        } else if (key == "stop_at_ns") {
          saw_stop = p.parse_u64(value, config.stop_at_ns) || saw_stop;
        } else {
          p.error("unknown key '" + key + "' in [scenario]");
        }
        break;
      case Section::Dataset:
        if (key == "kind") {
          config.dataset.kind = std::string(value);
        } else if (key == "features") {
          p.parse_size(value, config.dataset.features);
        } else if (key == "classes") {
          p.parse_size(value, config.dataset.classes);
        } else if (key == "eval_samples") {
          p.parse_size(value, config.dataset.eval_samples);
        } else if (key == "path") {
          config.dataset.path = std::string(value);
        } else {
          p.error("unknown key '" + key + "' in [dataset]");
        }
        break;
      case Section::Model:
        if (key == "kind") {
          config.model.kind = std::string(value);
        } else if (key == "hidden") {
          p.parse_size_list(value, config.model.hidden);
        } else if (key == "hidden_activation") {
          config.model.hidden_activation = std::string(value);
        } else if (key == "output_activation") {
          config.model.output_activation = std::string(value);
        } else if (key == "probabilistic") {
          p.parse_bool(value, config.model.probabilistic);
        } else if (key == "image_h") {
          p.parse_size(value, config.model.image_h);
        } else if (key == "image_w") {
          p.parse_size(value, config.model.image_w);
        } else if (key == "image_c") {
          p.parse_size(value, config.model.image_c);
        } else {
          p.error("unknown key '" + key + "' in [model]");
        }
        break;
      case Section::Training:
        if (key == "loss") {
          config.training.loss = std::string(value);
        } else if (key == "learning_rate") {
          p.parse_double(value, config.training.learning_rate);
        } else if (key == "batch_size") {
          p.parse_size(value, config.training.batch_size);
        } else if (key == "max_epochs") {
          p.parse_size(value, config.training.max_epochs);
        } else if (key == "loss_goal") {
          p.parse_double(value, config.training.loss_goal);
        } else if (key == "sufficiency_threshold") {
          p.parse_size(value, config.training.sufficiency_threshold);
        } else if (key == "compute_ns_per_sample_epoch") {
          p.parse_u64(value, config.training.compute_ns_per_sample_epoch);
        } else if (key == "reply_timeout_ns") {
          p.parse_u64(value, config.training.reply_timeout_ns);
        } else {
          p.error("unknown key '" + key + "' in [training]");
        }
        break;
      case Section::Apps:
        if (key == "terminal_start_ns") {
          p.parse_u64(value, config.apps.terminal_start_ns);
        } else if (key == "terminal_stop_ns") {
          p.parse_u64(value, config.apps.terminal_stop_ns);
        } else if (key == "edge_start_ns") {
          p.parse_u64(value, config.apps.edge_start_ns);
        } else if (key == "edge_stop_ns") {
          p.parse_u64(value, config.apps.edge_stop_ns);
        } else if (key == "center_start_ns") {
          p.parse_u64(value, config.apps.center_start_ns);
        } else if (key == "center_stop_ns") {
          p.parse_u64(value, config.apps.center_stop_ns);
        } else {
          p.error("unknown key '" + key + "' in [apps]");
        }
        break;
      case Section::Node:
        if (key == "role") {
          if (value == "TERMINAL") {
            current_node->role = NodeRole::Terminal;
          } else if (value == "EDGE") {
            current_node->role = NodeRole::Edge;
          } else if (value == "GATEWAY") {
            current_node->role = NodeRole::Gateway;
          } else if (value == "DATA_CENTER") {
            current_node->role = NodeRole::DataCenter;
          } else {
            p.error("unknown role '" + std::string(value) + "'");
          }
        } else if (key == "cache_capacity") {
          p.parse_size(value, current_node->cache_capacity);
        } else if (key == "target") {
          current_node->target = std::string(value);
        } else if (key == "samples") {
          p.parse_u64(value, current_node->samples);
        } else if (key == "send_gap_ns") {
          p.parse_u64(value, current_node->send_gap_ns);
        } else if (key == "neighbors") {
          for (const auto& n : split_list(value)) {
            current_node->neighbors.push_back(n);
          }
        } else {
          p.error("unknown key '" + key + "' in [node " + current_node->name +
                  "]");
        }
        break;
      case Section::Link:
        if (key == "rate_bps") {
          p.parse_u64(value, current_link->rate_bps);
        } else if (key == "delay_ns") {
          p.parse_u64(value, current_link->delay_ns);
        } else if (key == "queue_capacity") {
          p.parse_size(value, current_link->queue_capacity);
        } else {
          p.error("unknown key '" + key + "' in [link " + current_link->a +
                  " " + current_link->b + "]");
        }
        break;
      case Section::Skip:
        break;
      case Section::None:
        break;
    }
    if (pos > text.size()) break;
  }

  if (!saw_format) {
    result.errors.push_back("missing 'format = 1' header");
  }
  if (!saw_seed) {
    result.errors.push_back("[scenario]: missing required key 'seed'");
  }
  if (!saw_stop) {
    result.errors.push_back("[scenario]: missing required key 'stop_at_ns'");
  }

  auto semantic = validate_config(config);
  result.errors.insert(result.errors.end(), semantic.begin(), semantic.end());
  if (result.errors.empty()) {
    result.config = std::move(config);
  }
  return result;
}

std::vector<std::string> validate_config(const ScenarioConfig& config) {
  std::vector<std::string> errors;
  auto error = [&errors](const std::string& message) {
    errors.push_back(message);
  };

  if (config.stop_at_ns == 0) {
    error("[scenario]: stop_at_ns must be > 0");
  }
  if (config.nodes.empty()) {
    error("no nodes declared");
  }

  std::vector<std::string> centers;
  for (const auto& node : config.nodes) {
    switch (node.role) {
      case NodeRole::Terminal: {
        if (node.target.empty()) {
          error("[node " + node.name + "]: TERMINAL requires 'target'");
        } else {
          const NodeSpec* target = config.find_node(node.target);
          if (!target) {
            error("[node " + node.name + "]: target '" + node.target +
                  "' is not a declared node");
          } else if (target->role != NodeRole::Edge) {
            error("[node " + node.name + "]: target '" + node.target +
                  "' must be an EDGE node");
          }
        }
        if (node.send_gap_ns == 0 && node.samples > 1) {
          error("[node " + node.name + "]: send_gap_ns must be > 0");
        }
        break;
      }
      case NodeRole::Edge: {
        if (node.cache_capacity < 1) {
          error("[node " + node.name + "]: EDGE requires cache_capacity >= 1");
        }
        for (const auto& neighbor : node.neighbors) {
          const NodeSpec* other = config.find_node(neighbor);
          if (!other) {
            error("[node " + node.name + "]: neighbor '" + neighbor +
                  "' is not a declared node");
          } else if (other->role != NodeRole::Edge) {
            error("[node " + node.name + "]: neighbor '" + neighbor +
                  "' must be an EDGE node");
          }
        }
        break;
      }
      case NodeRole::Gateway:
        break;
      case NodeRole::DataCenter:
        centers.push_back(node.name);
        break;
    }
  }
  if (centers.empty()) {
    if (!config.nodes.empty()) {
      error("exactly one DATA_CENTER required, none declared");
    }
  } else if (centers.size() > 1) {
    std::string names = centers[0];
    for (std::size_t i = 1; i < centers.size(); ++i) names += ", " + centers[i];
    error("exactly one DATA_CENTER required, got: " + names);
  }

  for (const auto& link : config.links) {
    if (!config.find_node(link.a)) {
      error("[link " + link.a + " " + link.b + "]: dangling endpoint '" +
            link.a + "'");
    }
    if (!config.find_node(link.b)) {
      error("[link " + link.a + " " + link.b + "]: dangling endpoint '" +
            link.b + "'");
    }
    if (link.a == link.b) {
      error("[link " + link.a + " " + link.b + "]: endpoints must differ");
    }
    if (link.rate_bps == 0) {
      error("[link " + link.a + " " + link.b + "]: rate_bps must be > 0");
    }
  }

  if (config.dataset.kind == "two_gaussians") {
    if (config.dataset.classes != 2) {
      error("[dataset]: two_gaussians requires classes = 2");
    }
    if (config.dataset.features < 1) {
      error("[dataset]: features must be >= 1");
    }
  } else if (config.dataset.kind == "xor") {
    if (config.dataset.features != 2 || config.dataset.classes != 2) {
      error("[dataset]: xor requires features = 2 and classes = 2");
    }
  } else if (config.dataset.kind == "file") {
    if (config.dataset.path.empty()) {
      error("[dataset]: file kind requires 'path'");
    }
  } else {
    error("[dataset]: unknown kind '" + config.dataset.kind + "'");
  }

  if (config.model.kind == "mlp") {
    auto check_act = [&](const std::string& act, const char* key) {
      if (act != "linear" && act != "logistic" && act != "tanh" &&
          act != "relu") {
        error(std::string("[model]: unknown ") + key + " '" + act + "'");
      }
    };
    check_act(config.model.hidden_activation, "hidden_activation");
    check_act(config.model.output_activation, "output_activation");
  } else if (config.model.kind == "lenet") {
    if (config.model.image_h * config.model.image_w * config.model.image_c !=
        config.dataset.features) {
      error("[model]: lenet image_h*image_w*image_c must equal dataset "
            "features");
    }
  } else {
    error("[model]: unknown kind '" + config.model.kind + "'");
  }

  if (config.training.loss != "mse" && config.training.loss != "cross_entropy") {
    error("[training]: unknown loss '" + config.training.loss + "'");
  }
  if (config.training.loss == "cross_entropy" && config.model.kind == "mlp" &&
      !config.model.probabilistic) {
    error("[training]: cross_entropy requires probabilistic model output");
  }
  if (!(config.training.learning_rate > 0.0)) {
    error("[training]: learning_rate must be > 0");
  }
  if (config.training.batch_size < 1) {
    error("[training]: batch_size must be >= 1");
  }
  if (config.training.max_epochs < 1) {
    error("[training]: max_epochs must be >= 1");
  }
  if (config.training.sufficiency_threshold < 1) {
    error("[training]: sufficiency_threshold must be >= 1");
  }

  auto check_window = [&](std::uint64_t start, std::uint64_t stop,
                          const char* role) {
    if (!(start < stop)) {
      error(std::string("[apps]: ") + role + " start must be < stop");
    }
  };
  check_window(config.apps.terminal_start_ns, config.apps.terminal_stop_ns,
               "terminal");
  check_window(config.apps.edge_start_ns, config.apps.edge_stop_ns, "edge");
  check_window(config.apps.center_start_ns, config.apps.center_stop_ns,
               "center");

  return errors;
}

namespace {

std::string join_sizes(const std::vector<std::size_t>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(values[i]);
  }
  return out;
}

std::string join_strings(const std::vector<std::string>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += values[i];
  }
  return out;
}

}  // namespace

std::string render_config(const ScenarioConfig& config) {
  std::ostringstream out;
  out << "format = 1\n\n";
  out << "[scenario]\n";
  out << "seed = " << config.seed << "\n";
  out << "stop_at_ns = " << config.stop_at_ns << "\n\n";

  out << "[dataset]\n";
  out << "kind = " << config.dataset.kind << "\n";
  out << "features = " << config.dataset.features << "\n";
  out << "classes = " << config.dataset.classes << "\n";
  out << "eval_samples = " << config.dataset.eval_samples << "\n";
  if (!config.dataset.path.empty()) {
    out << "path = " << config.dataset.path << "\n";
  }
  out << "\n[model]\n";
  out << "kind = " << config.model.kind << "\n";
  if (config.model.kind == "mlp") {
    out << "hidden = " << join_sizes(config.model.hidden) << "\n";
    out << "hidden_activation = " << config.model.hidden_activation << "\n";
    out << "output_activation = " << config.model.output_activation << "\n";
    out << "probabilistic = " << (config.model.probabilistic ? "true" : "false")
        << "\n";
  } else {
    out << "image_h = " << config.model.image_h << "\n";
    out << "image_w = " << config.model.image_w << "\n";
    out << "image_c = " << config.model.image_c << "\n";
  }
  out << "\n[training]\n";
  out << "loss = " << config.training.loss << "\n";
  out << "learning_rate = " << des::format_double(config.training.learning_rate)
      << "\n";
  out << "batch_size = " << config.training.batch_size << "\n";
  out << "max_epochs = " << config.training.max_epochs << "\n";
  out << "loss_goal = " << des::format_double(config.training.loss_goal) << "\n";
  out << "sufficiency_threshold = " << config.training.sufficiency_threshold
      << "\n";
  out << "compute_ns_per_sample_epoch = "
      << config.training.compute_ns_per_sample_epoch << "\n";
  out << "reply_timeout_ns = " << config.training.reply_timeout_ns << "\n";

  out << "\n[apps]\n";
  out << "terminal_start_ns = " << config.apps.terminal_start_ns << "\n";
  out << "terminal_stop_ns = " << config.apps.terminal_stop_ns << "\n";
  out << "edge_start_ns = " << config.apps.edge_start_ns << "\n";
  out << "edge_stop_ns = " << config.apps.edge_stop_ns << "\n";
  out << "center_start_ns = " << config.apps.center_start_ns << "\n";
  out << "center_stop_ns = " << config.apps.center_stop_ns << "\n";

  for (const auto& node : config.nodes) {
    out << "\n[node " << node.name << "]\n";
    out << "role = " << to_string(node.role) << "\n";
    switch (node.role) {
      case NodeRole::Terminal:
        out << "target = " << node.target << "\n";
        out << "samples = " << node.samples << "\n";
        out << "send_gap_ns = " << node.send_gap_ns << "\n";
        break;
      case NodeRole::Edge:
        out << "cache_capacity = " << node.cache_capacity << "\n";
        if (!node.neighbors.empty()) {
          out << "neighbors = " << join_strings(node.neighbors) << "\n";
        }
        break;
      case NodeRole::Gateway:
      case NodeRole::DataCenter:
        break;
    }
  }
  for (const auto& link : config.links) {
    out << "\n[link " << link.a << " " << link.b << "]\n";
    out << "rate_bps = " << link.rate_bps << "\n";
    out << "delay_ns = " << link.delay_ns << "\n";
    out << "queue_capacity = " << link.queue_capacity << "\n";
  }
  return out.str();
}

}  // namespace edgesim::scenario
