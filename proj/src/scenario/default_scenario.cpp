#include "edgesim/scenario/default_scenario.hpp"

namespace edgesim::scenario {

namespace {

// Link delay is not a published figure; 2 ms is a plausible WAN-edge value.
constexpr std::string_view kDefaultScenario = R"(format = 1

[scenario]
seed = 42
stop_at_ns = 5000000000

[dataset]
kind = two_gaussians
features = 2
classes = 2
eval_samples = 200

[model]
kind = mlp
hidden = 8
hidden_activation = tanh
output_activation = linear
probabilistic = true

[training]
loss = cross_entropy
learning_rate = 0.1
batch_size = 16
max_epochs = 60
loss_goal = 0.05
sufficiency_threshold = 100
compute_ns_per_sample_epoch = 1000
reply_timeout_ns = 100000000

[apps]
terminal_start_ns = 1000000000
terminal_stop_ns = 4500000000
edge_start_ns = 500000000
edge_stop_ns = 4900000000
center_start_ns = 500000000
center_stop_ns = 4900000000

[node terminal0]
role = TERMINAL
target = edge0
samples = 50
send_gap_ns = 1000000

[node terminal1]
role = TERMINAL
target = edge0
samples = 50
send_gap_ns = 1000000

[node terminal2]
role = TERMINAL
target = edge1
samples = 50
send_gap_ns = 1000000

[node terminal3]
role = TERMINAL
target = edge1
samples = 50
send_gap_ns = 1000000

[node edge0]
role = EDGE
cache_capacity = 256
neighbors = edge1

[node edge1]
role = EDGE
cache_capacity = 256
neighbors = edge0

[node gateway0]
role = GATEWAY

[node center0]
role = DATA_CENTER

[link terminal0 edge0]
rate_bps = 1000000000
delay_ns = 2000000
queue_capacity = 100

[link terminal1 edge0]
rate_bps = 1000000000
delay_ns = 2000000
queue_capacity = 100

[link terminal2 edge1]
rate_bps = 1000000000
delay_ns = 2000000
queue_capacity = 100

[link terminal3 edge1]
rate_bps = 1000000000
delay_ns = 2000000
queue_capacity = 100

[link edge0 gateway0]
rate_bps = 1000000000
delay_ns = 2000000
queue_capacity = 100

[link edge1 gateway0]
rate_bps = 1000000000
delay_ns = 2000000
queue_capacity = 100

[link gateway0 center0]
rate_bps = 1000000000
delay_ns = 2000000
queue_capacity = 100
)";

}  // namespace

std::string_view default_scenario_text() { return kDefaultScenario; }

}  // namespace edgesim::scenario
