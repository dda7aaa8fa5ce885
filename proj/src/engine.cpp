#include "hcr/engine.hpp"

namespace hcr {

void NetworkConfig::validate() const {
  if (l_prime_max < 1) throw ParameterError("network needs at least one non-input layer");
  if (static_cast<int>(widths.size()) != l_prime_max + 1) {
    throw ParameterError("expected " + std::to_string(l_prime_max + 1) + " layer widths, got " +
                         std::to_string(widths.size()));
  }
  for (int w : widths) {
    if (w < 1) throw ParameterError("every layer needs at least one neuron");
  }
  if (tau < 0) throw ParameterError("firing threshold must be non-negative, got " + to_string(tau));
}

Network::Network(NetworkConfig config) : config_(std::move(config)) {
  config_.validate();
  const auto& tau = config_.tau;
  min_potential_ = tau.numerator() / tau.denominator() + (tau.numerator() % tau.denominator() != 0 ? 1 : 0);
  const auto layers = static_cast<std::size_t>(config_.l_prime_max + 1);
  incoming_.resize(layers);
  failed_.reserve(layers);
  for (std::size_t l = 0; l < layers; ++l) {
    failed_.emplace_back(static_cast<std::size_t>(config_.widths[l]));
    if (l == 0) continue;
    incoming_[l].assign(static_cast<std::size_t>(config_.widths[l]),
                        BitVector(static_cast<std::size_t>(config_.widths[l - 1])));
  }
}

int Network::width(int layer) const {
  if (layer < 0 || layer > config_.l_prime_max) throw LookupError("no layer " + std::to_string(layer));
  return config_.widths[static_cast<std::size_t>(layer)];
}

std::size_t Network::neuron_count() const {
  std::size_t n = 0;
  for (int w : config_.widths) n += static_cast<std::size_t>(w);
  return n;
}

bool Network::contains(NeuronId v) const {
  return v.layer >= 0 && v.layer <= config_.l_prime_max && v.index >= 0 &&
         v.index < config_.widths[static_cast<std::size_t>(v.layer)];
}

const BitVector& Network::incoming(NeuronId v) const {
  if (!contains(v)) throw LookupError("unknown neuron " + to_string(v));
  if (v.layer == 0) throw ContractError("input neuron " + to_string(v) + " has no incoming weights");
  return incoming_[static_cast<std::size_t>(v.layer)][static_cast<std::size_t>(v.index)];
}

bool Network::weight(NeuronId from, NeuronId to) const {
  if (!contains(from)) throw LookupError("unknown neuron " + to_string(from));
  if (to.layer != from.layer + 1) return false;
  return incoming(to).test(static_cast<std::size_t>(from.index));
}

bool Network::is_failed(NeuronId v) const {
  if (!contains(v)) throw LookupError("unknown neuron " + to_string(v));
  return failed_[static_cast<std::size_t>(v.layer)].test(static_cast<std::size_t>(v.index));
}

NeuronSet Network::failed() const {
  NeuronSet out;
  for (std::size_t l = 0; l < failed_.size(); ++l) {
    for (auto i : failed_[l].set_bits()) out.insert({static_cast<int>(l), static_cast<int>(i)});
  }
  return out;
}

std::vector<Edge> Network::edges() const {
  std::vector<Edge> out;
  for (std::size_t l = 1; l < incoming_.size(); ++l) {
    for (std::size_t i = 0; i < incoming_[l].size(); ++i) {
      const NeuronId to{static_cast<int>(l), static_cast<int>(i)};
      for (auto j : incoming_[l][i].set_bits()) out.push_back({{static_cast<int>(l) - 1, static_cast<int>(j)}, to});
    }
  }
  return out;
}

std::size_t Network::edge_count() const {
  std::size_t n = 0;
  for (const auto& layer : incoming_) {
    for (const auto& mask : layer) n += mask.count();
  }
  return n;
}

Firing Network::silent() const {
  Firing f;
  f.reserve(config_.widths.size());
  for (int w : config_.widths) f.emplace_back(static_cast<std::size_t>(w));
  return f;
}

NetworkBuilder::NetworkBuilder(NetworkConfig config) : net_(std::move(config)) {}

NetworkBuilder& NetworkBuilder::connect(NeuronId from, NeuronId to) {
  if (!net_.contains(from)) throw LookupError("unknown neuron " + to_string(from));
  if (!net_.contains(to)) throw LookupError("unknown neuron " + to_string(to));
  if (to.layer != from.layer + 1) {
    throw ContractError("edge " + to_string(from) + " -> " + to_string(to) + " does not join successive layers");
  }
  net_.incoming_[static_cast<std::size_t>(to.layer)][static_cast<std::size_t>(to.index)].set(
      static_cast<std::size_t>(from.index));
  return *this;
}

NetworkBuilder& NetworkBuilder::fail(NeuronId v) {
  if (!net_.contains(v)) throw LookupError("unknown neuron " + to_string(v));
  net_.failed_[static_cast<std::size_t>(v.layer)].set(static_cast<std::size_t>(v.index));
  return *this;
}

Network NetworkBuilder::build() && {
  return std::move(net_);
}

std::vector<NeuronId> ExecutionTrace::firing_at(int t) const {
  std::vector<NeuronId> out;
  const auto& f = at(t);
  for (std::size_t l = 0; l < f.size(); ++l) {
    for (auto i : f[l].set_bits()) out.push_back({static_cast<int>(l), static_cast<int>(i)});
  }
  return out;
}

Rational potential(const Network& net, NeuronId v, const BitVector& prev_layer) {
  if (!net.contains(v)) throw LookupError("unknown neuron " + to_string(v));
  if (v.layer == 0) throw ContractError("potential is undefined for input neuron " + to_string(v));
  if (prev_layer.size() != static_cast<std::size_t>(net.width(v.layer - 1))) {
    throw ContractError("previous-layer firing vector has wrong width");
  }
  return Rational(static_cast<std::int64_t>(net.incoming(v).intersect_count(prev_layer)));
}

Firing step(const Network& net, const Firing& prev) {
  if (prev.size() != static_cast<std::size_t>(net.l_prime_max() + 1)) {
    throw ContractError("firing pattern has wrong layer count");
  }
  Firing next = net.silent();
  const auto min_potential = net.min_potential();
  for (int l = 1; l <= net.l_prime_max(); ++l) {
    const auto& below = prev[static_cast<std::size_t>(l - 1)];
    auto& here = next[static_cast<std::size_t>(l)];
    if (min_potential > 0 && !below.any()) continue;
    const auto& failed = net.failed_mask(l);
    for (int i = 0; i < net.width(l); ++i) {
      const auto idx = static_cast<std::size_t>(i);
      if (failed.test(idx)) continue;
      const auto pot = net.incoming({l, i}).intersect_count(below);
      if (static_cast<std::int64_t>(pot) >= min_potential) here.set(idx);
    }
  }
  return next;
}

namespace {

ExecutionTrace run_from(const Network& net, Firing first) {
  std::vector<Firing> times;
  times.reserve(static_cast<std::size_t>(net.l_prime_max() + 1));
  times.push_back(std::move(first));
  for (int t = 1; t <= net.l_prime_max(); ++t) times.push_back(step(net, times.back()));
  return ExecutionTrace(std::move(times));
}

}  // namespace

ExecutionTrace execute(const Network& net, const Presentation& p) {
  Firing first = net.silent();
  for (auto u : p.fire_at_zero) {
    if (!net.contains(u)) throw ContractError("presentation names unknown neuron " + to_string(u));
    if (u.layer != 0) throw ContractError("presentation names non-input neuron " + to_string(u));
    if (net.is_failed(u)) throw ContractError("presentation fires failed neuron " + to_string(u));
    first[0].set(static_cast<std::size_t>(u.index));
  }
  return run_from(net, std::move(first));
}

ExecutionTrace execute(const Network& net, BitVector fire_at_zero) {
  if (fire_at_zero.size() != static_cast<std::size_t>(net.width(0))) {
    throw ContractError("input mask has wrong width");
  }
  BitVector both = fire_at_zero;
  both.clear_bits(net.failed_mask(0));
  if (!(both == fire_at_zero)) throw ContractError("input mask fires a failed neuron");
  Firing first = net.silent();
  first[0] = std::move(fire_at_zero);
  return run_from(net, std::move(first));
}

}  // namespace hcr
