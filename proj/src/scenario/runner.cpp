#include "edgesim/scenario/runner.hpp"

#include <chrono>
#include <memory>
#include <stdexcept>

#include "edgesim/apps/data_generator_app.hpp"
#include "edgesim/apps/ensemble_aggregator_app.hpp"
#include "edgesim/apps/sample_source.hpp"
#include "edgesim/apps/training_app.hpp"
#include "edgesim/des/engine.hpp"
#include "edgesim/des/trace.hpp"
#include "edgesim/net/network.hpp"

namespace edgesim::scenario {

namespace {

std::unique_ptr<apps::SampleSource> make_source(const DatasetSpec& dataset,
                                                des::RandomStream stream) {
  if (dataset.kind == "two_gaussians") {
    return std::make_unique<apps::TwoGaussiansSource>(dataset.features,
                                                      std::move(stream));
  }
  if (dataset.kind == "xor") {
    return std::make_unique<apps::XorSource>(std::move(stream));
  }
  return std::make_unique<apps::FileSource>(dataset.path, dataset.features,
                                            dataset.classes);
}

apps::ModelSpec make_model_spec(const ModelConfig& model) {
  apps::ModelSpec spec;
  if (model.kind == "lenet") {
    spec.kind = apps::ModelSpec::Kind::Lenet;
    spec.image_h = model.image_h;
    spec.image_w = model.image_w;
    spec.image_c = model.image_c;
  } else {
    spec.kind = apps::ModelSpec::Kind::Mlp;
    spec.hidden = model.hidden;
    spec.hidden_activation = dl::activation_from_string(model.hidden_activation);
    spec.output_activation = dl::activation_from_string(model.output_activation);
    spec.probabilistic_output = model.probabilistic;
  }
  return spec;
}

}  // namespace

MetricsSummary run_scenario(const ScenarioConfig& config,
                            const std::string& trace_path,
                            const std::string& metrics_path) {
  const auto started = std::chrono::steady_clock::now();

  auto errors = validate_config(config);
  if (!errors.empty()) {
    std::string all = "invalid scenario config:";
    for (const auto& e : errors) all += "\n  " + e;
    throw std::invalid_argument(all);
  }

  des::Engine engine(config.seed);
  des::Tracer tracer;
  tracer.attach(engine);
  tracer.open(trace_path);
  net::Network network(engine, tracer);

  // Step 1: nodes, in declaration order.
  network.create_nodes(config.nodes.size());
  for (std::size_t i = 0; i < config.nodes.size(); ++i) {
    if (config.nodes[i].cache_capacity > 0) {
      network.node(static_cast<net::NodeId>(i))
          .enable_cache(config.nodes[i].cache_capacity);
    }
  }

  // Step 2: point-to-point links.
  for (const auto& link : config.links) {
    const auto a = config.node_index(link.a);
    const auto b = config.node_index(link.b);
    network.connect_p2p(static_cast<net::NodeId>(*a),
                        static_cast<net::NodeId>(*b), link.rate_bps,
                        link.delay_ns, link.queue_capacity);
  }

  // Step 3: protocol stack (addresses + static routing).
  network.install_stack();
  auto address_of = [&](const std::string& name) {
    return network.node(static_cast<net::NodeId>(*config.node_index(name)))
        .address();
  };

  // Steps 4-5: sender/receiver wiring and application installation.
  std::size_t edge_count = 0;
  std::string center_name;
  for (const auto& node : config.nodes) {
    if (node.role == NodeRole::Edge) ++edge_count;
    if (node.role == NodeRole::DataCenter) center_name = node.name;
  }
  const net::Address center_address = address_of(center_name);

  const dl::LossIndex loss = dl::loss_from_string(config.training.loss);
  const apps::ModelSpec model_spec = make_model_spec(config.model);

  std::vector<std::pair<net::NodeId, std::shared_ptr<apps::TrainingApp>>>
      edge_apps;
  std::shared_ptr<apps::EnsembleAggregatorApp> aggregator;

  for (std::size_t i = 0; i < config.nodes.size(); ++i) {
    const NodeSpec& spec = config.nodes[i];
    const auto node_id = static_cast<net::NodeId>(i);
    switch (spec.role) {
      case NodeRole::Terminal: {
        apps::DataGeneratorApp::Config app_config;
        app_config.target = address_of(spec.target);
        app_config.samples_to_send = spec.samples;
        app_config.inter_send_gap_ns = spec.send_gap_ns;
        app_config.sample_id_base = static_cast<std::uint64_t>(node_id) << 32;
        auto app = std::make_shared<apps::DataGeneratorApp>(
            app_config, make_source(config.dataset,
                                    engine.rng_stream("gen/" + spec.name)));
        network.install_application(node_id, app,
                                    {config.apps.terminal_start_ns},
                                    {config.apps.terminal_stop_ns});
        break;
      }
      case NodeRole::Edge: {
        apps::TrainingApp::Config app_config;
        app_config.model = model_spec;
        app_config.strategy.loss = loss;
        app_config.strategy.optimizer.learning_rate =
            config.training.learning_rate;
        app_config.strategy.optimizer.batch_size = config.training.batch_size;
        app_config.strategy.max_epochs = config.training.max_epochs;
        app_config.strategy.loss_goal = config.training.loss_goal;
        app_config.strategy.seed =
            config.seed ^ des::fnv1a64("train/" + spec.name);
        app_config.sufficiency_threshold =
            config.training.sufficiency_threshold;
        for (const auto& neighbor : spec.neighbors) {
          app_config.neighbors.push_back(address_of(neighbor));
        }
        app_config.center = center_address;
        app_config.compute_ns_per_sample_epoch =
            config.training.compute_ns_per_sample_epoch;
        app_config.reply_timeout_ns = config.training.reply_timeout_ns;
        app_config.feature_count = config.dataset.features;
        app_config.target_count = config.dataset.classes;
        auto app = std::make_shared<apps::TrainingApp>(std::move(app_config));
        network.install_application(node_id, app, {config.apps.edge_start_ns},
                                    {config.apps.edge_stop_ns});
        edge_apps.emplace_back(node_id, app);
        break;
      }
      case NodeRole::DataCenter: {
        apps::EnsembleAggregatorApp::Config app_config;
        app_config.expected_submodels = edge_count;
        app_config.evaluation_loss = loss;
        if (config.dataset.eval_samples > 0) {
          auto source = make_source(config.dataset, engine.rng_stream("eval"));
          dl::DataSet eval = dl::DataSet::with_layout(config.dataset.features,
                                                      config.dataset.classes);
          for (std::size_t s = 0; s < config.dataset.eval_samples; ++s) {
            auto sample = source->next(s);
            std::vector<double> row = sample.features;
            row.insert(row.end(), sample.targets.begin(), sample.targets.end());
            eval.add_row(row, dl::Split::Test);
          }
          app_config.evaluation = std::move(eval);
        }
        aggregator = std::make_shared<apps::EnsembleAggregatorApp>(
            std::move(app_config));
        network.install_application(node_id, aggregator,
                                    {config.apps.center_start_ns},
                                    {config.apps.center_stop_ns});
        break;
      }
      case NodeRole::Gateway:
        break;  // pure forwarder
    }
  }

  engine.run_until({config.stop_at_ns});
  tracer.close();

  MetricsSummary metrics;
  metrics.packets = network.stats();
  for (const auto& [node_id, app] : edge_apps) {
    EdgeNodeMetrics edge;
    edge.name = config.nodes[node_id].name;
    edge.cache_hits = app->cache_hits();
    edge.cache_misses = app->cache_misses();
    edge.cache_evictions = app->cache_evictions();
    if (app->report()) {
      edge.epochs_run = app->report()->epochs_run();
      edge.final_loss = app->report()->final_loss();
    }
    edge.training_duration_ns = app->training_duration_ns();
    edge.training_samples = app->training_samples();
    edge.digest = app->model_result_digest();
    metrics.edges.push_back(std::move(edge));
  }
  if (aggregator) {
    metrics.ensemble.ready = aggregator->aggregated();
    metrics.ensemble.submodels = aggregator->received().size();
    for (const auto& report : aggregator->submodel_reports()) {
      if (report.accuracy) {
        metrics.ensemble.submodel_accuracy.push_back(*report.accuracy);
      }
      metrics.ensemble.submodel_loss.push_back(report.loss);
    }
    if (aggregator->ensemble_report()) {
      metrics.ensemble.ensemble_loss = aggregator->ensemble_report()->loss;
      if (aggregator->ensemble_report()->accuracy) {
        metrics.ensemble.ensemble_accuracy =
            aggregator->ensemble_report()->accuracy;
      }
    }
  }
  metrics.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();

  write_metrics_file(metrics, metrics_path);
  return metrics;
}

}  // namespace edgesim::scenario
