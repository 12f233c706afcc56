#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace nbts {

// Output and input cardinalities for every party. Values of outputs and inputs
// are the consecutive integers 0..d-1 and 0..m-1.
class Scenario {
 public:
  Scenario(std::vector<std::size_t> outputs, std::vector<std::size_t> inputs);

  /// Two-party shorthand in the (A, B, X, Y) order.
  static Scenario bipartite(std::size_t a, std::size_t b, std::size_t x, std::size_t y);

  std::size_t party_count() const noexcept { return outputs_.size(); }
  const std::vector<std::size_t>& outputs() const noexcept { return outputs_; }
  const std::vector<std::size_t>& inputs() const noexcept { return inputs_; }

  std::size_t output_tuple_count() const noexcept { return output_tuples_; }
  std::size_t input_tuple_count() const noexcept { return input_tuples_; }
  /// Number of coordinates p(a|x): product of all output and input cardinalities.
  std::size_t coordinate_count() const noexcept { return output_tuples_ * input_tuples_; }

  std::string to_string() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;

 private:
  std::vector<std::size_t> outputs_;
  std::vector<std::size_t> inputs_;
  std::size_t output_tuples_ = 1;
  std::size_t input_tuples_ = 1;
};

// Bijection between (output tuple, input tuple) and flat coordinates. Inputs
// are outermost in party order, then outputs in party order; the last party's
// output varies fastest.
class CoordinateIndex {
 public:
  explicit CoordinateIndex(Scenario scenario) : scenario_(std::move(scenario)) {}

  const Scenario& scenario() const noexcept { return scenario_; }
  std::size_t size() const noexcept { return scenario_.coordinate_count(); }

  std::size_t flat(const std::vector<std::size_t>& outputs,
                   const std::vector<std::size_t>& inputs) const;
  std::size_t flat(std::size_t output_tuple, std::size_t input_tuple) const noexcept {
    return input_tuple * scenario_.output_tuple_count() + output_tuple;
  }

  std::size_t output_tuple_index(const std::vector<std::size_t>& outputs) const;
  std::size_t input_tuple_index(const std::vector<std::size_t>& inputs) const;
  std::vector<std::size_t> output_tuple(std::size_t index) const;
  std::vector<std::size_t> input_tuple(std::size_t index) const;

 private:
  Scenario scenario_;
};

struct Indefinite {
  friend bool operator==(const Indefinite&, const Indefinite&) = default;
};
struct Parallel {
  friend bool operator==(const Parallel&, const Parallel&) = default;
};
struct Sequential {
  std::vector<std::size_t> order;  // party indices, earliest first
  friend bool operator==(const Sequential&, const Sequential&) = default;
};

class TimingRegime {
 public:
  TimingRegime() = default;
  TimingRegime(Indefinite tag) : tag_(tag) {}
  TimingRegime(Parallel tag) : tag_(tag) {}
  TimingRegime(Sequential tag) : tag_(std::move(tag)) {}

  static TimingRegime indefinite() { return Indefinite{}; }
  static TimingRegime parallel() { return Parallel{}; }
  static TimingRegime sequential(std::vector<std::size_t> order) {
    return Sequential{std::move(order)};
  }

  bool is_indefinite() const noexcept { return std::holds_alternative<Indefinite>(tag_); }
  bool is_parallel() const noexcept { return std::holds_alternative<Parallel>(tag_); }
  bool is_sequential() const noexcept { return std::holds_alternative<Sequential>(tag_); }
  const std::vector<std::size_t>& order() const;

  /// For each party j, whether party `party`'s marginal must be independent of x_j.
  /// Indefinite: only its own input. Parallel: every input. Sequential: its own
  /// input and the inputs of every party after it in the order.
  std::vector<bool> forbidden_inputs(std::size_t party, std::size_t party_count) const;

  /// "indefinite", "parallel" or "seq:AB"-style names.
  std::string name() const;
  static TimingRegime parse(const std::string& text);

  friend bool operator==(const TimingRegime&, const TimingRegime&) = default;

 private:
  std::variant<Indefinite, Parallel, Sequential> tag_{Indefinite{}};
};

}  // namespace nbts
