#pragma once

#include <cstddef>
#include <vector>

#include "hcr/bitvector.hpp"
#include "hcr/common.hpp"

namespace hcr {

struct NetworkConfig {
  /// Number of non-input layers; layers are numbered 0 .. l_prime_max.
  int l_prime_max = 1;
  /// widths[l] = number of neurons in layer l, for l = 0 .. l_prime_max.
  std::vector<int> widths;
  Rational tau{0};

  void validate() const;
  bool operator==(const NetworkConfig&) const = default;
};

struct Edge {
  NeuronId from;
  NeuronId to;
  auto operator<=>(const Edge&) const = default;
};

/// Per-layer firing pattern at one instant; index l holds layer l.
using Firing = std::vector<BitVector>;

/// Layered feed-forward threshold network with binary weights and initial
/// stopping failures. Immutable; assemble one with NetworkBuilder.
class Network {
 public:
  const NetworkConfig& config() const { return config_; }
  int l_prime_max() const { return config_.l_prime_max; }
  const Rational& tau() const { return config_.tau; }
  /// Smallest integer potential that reaches tau.
  std::int64_t min_potential() const { return min_potential_; }
  int width(int layer) const;
  std::size_t neuron_count() const;
  bool contains(NeuronId v) const;

  /// Weight-1 predecessors of v as a mask over layer(v)-1.
  const BitVector& incoming(NeuronId v) const;
  bool weight(NeuronId from, NeuronId to) const;
  bool is_failed(NeuronId v) const;
  const BitVector& failed_mask(int layer) const { return failed_[static_cast<std::size_t>(layer)]; }
  NeuronSet failed() const;

  /// All weight-1 edges in (to, from) lexicographic order.
  std::vector<Edge> edges() const;
  std::size_t edge_count() const;

  /// Fresh all-silent firing pattern shaped for this network.
  Firing silent() const;

  bool operator==(const Network&) const = default;

 private:
  friend class NetworkBuilder;
  explicit Network(NetworkConfig config);

  NetworkConfig config_;
  std::vector<std::vector<BitVector>> incoming_;  // [layer][index], empty for layer 0
  std::vector<BitVector> failed_;                 // [layer]
  std::int64_t min_potential_ = 0;                // ceil(tau): potentials are integers
};

class NetworkBuilder {
 public:
  explicit NetworkBuilder(NetworkConfig config);

  /// Sets weight^to_from = 1. Requires layer(to) = layer(from) + 1.
  NetworkBuilder& connect(NeuronId from, NeuronId to);
  NetworkBuilder& fail(NeuronId v);

  Network build() &&;
  const Network& peek() const { return net_; }

 private:
  Network net_;
};

struct Presentation {
  NeuronSet fire_at_zero;
};

/// Full time x neuron firing matrix for times 0 .. l_prime_max.
class ExecutionTrace {
 public:
  ExecutionTrace() = default;
  explicit ExecutionTrace(std::vector<Firing> times) : times_(std::move(times)) {}

  std::size_t time_count() const { return times_.size(); }
  const Firing& at(int t) const { return times_[static_cast<std::size_t>(t)]; }
  bool fires(int t, NeuronId v) const {
    if (t < 0 || static_cast<std::size_t>(t) >= times_.size()) return false;
    const auto& f = times_[static_cast<std::size_t>(t)];
    if (v.layer < 0 || static_cast<std::size_t>(v.layer) >= f.size()) return false;
    const auto& layer = f[static_cast<std::size_t>(v.layer)];
    return v.index >= 0 && static_cast<std::size_t>(v.index) < layer.size() &&
           layer.test(static_cast<std::size_t>(v.index));
  }
  std::vector<NeuronId> firing_at(int t) const;

  bool operator==(const ExecutionTrace&) const = default;

 private:
  std::vector<Firing> times_;
};

/// Sum of weight^v_j * x_j over layer(v)-1. Throws ContractError for
/// input neurons or a mis-sized previous-layer vector.
Rational potential(const Network& net, NeuronId v, const BitVector& prev_layer);

/// One synchronous transition. Input neurons are silent after time 0,
/// failed neurons never fire, every other neuron fires iff potential >= tau.
Firing step(const Network& net, const Firing& prev);

/// Time 0 is the presentation, times 1 .. l_prime_max come from step().
/// Throws ContractError if the presentation names a failed, unknown or
/// non-input neuron.
ExecutionTrace execute(const Network& net, const Presentation& p);
/// Same, with the time-0 firing given as a mask over layer 0.
ExecutionTrace execute(const Network& net, BitVector fire_at_zero);

}  // namespace hcr
