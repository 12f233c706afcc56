#include "nbts/scenario.hpp"

#include <algorithm>
#include <sstream>

#include "nbts/error.hpp"

namespace nbts {

Scenario::Scenario(std::vector<std::size_t> outputs, std::vector<std::size_t> inputs)
    : outputs_(std::move(outputs)), inputs_(std::move(inputs)) {
  if (outputs_.empty()) throw Error(ErrorKind::InvalidArgument, "scenario needs at least one party");
  if (outputs_.size() != inputs_.size()) {
    throw Error(ErrorKind::InvalidArgument, "outputs and inputs list different party counts");
  }
  for (std::size_t i = 0; i < outputs_.size(); ++i) {
    if (outputs_[i] < 1 || inputs_[i] < 1) {
      throw Error(ErrorKind::InvalidArgument, "cardinalities must be >= 1");
    }
    output_tuples_ *= outputs_[i];
    input_tuples_ *= inputs_[i];
  }
}

Scenario Scenario::bipartite(std::size_t a, std::size_t b, std::size_t x, std::size_t y) {
  return Scenario({a, b}, {x, y});
}

std::string Scenario::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < outputs_.size(); ++i) out << (i ? "," : "") << outputs_[i];
  for (std::size_t m : inputs_) out << "," << m;
  return out.str();
}

namespace {

std::size_t mixed_radix_index(const std::vector<std::size_t>& digits,
                              const std::vector<std::size_t>& radix) {
  if (digits.size() != radix.size()) {
    throw Error(ErrorKind::IndexOutOfRange, "tuple has wrong party count");
  }
  std::size_t index = 0;
  for (std::size_t i = 0; i < radix.size(); ++i) {
    if (digits[i] >= radix[i]) throw Error(ErrorKind::IndexOutOfRange, "tuple entry out of range");
    index = index * radix[i] + digits[i];
  }
  return index;
}

std::vector<std::size_t> mixed_radix_digits(std::size_t index,
                                            const std::vector<std::size_t>& radix) {
  std::vector<std::size_t> digits(radix.size());
  for (std::size_t i = radix.size(); i-- > 0;) {
    digits[i] = index % radix[i];
    index /= radix[i];
  }
  return digits;
}

}  // namespace

std::size_t CoordinateIndex::flat(const std::vector<std::size_t>& outputs,
                                  const std::vector<std::size_t>& inputs) const {
  return flat(output_tuple_index(outputs), input_tuple_index(inputs));
}

std::size_t CoordinateIndex::output_tuple_index(const std::vector<std::size_t>& outputs) const {
  return mixed_radix_index(outputs, scenario_.outputs());
}

std::size_t CoordinateIndex::input_tuple_index(const std::vector<std::size_t>& inputs) const {
  return mixed_radix_index(inputs, scenario_.inputs());
}

std::vector<std::size_t> CoordinateIndex::output_tuple(std::size_t index) const {
  return mixed_radix_digits(index, scenario_.outputs());
}

std::vector<std::size_t> CoordinateIndex::input_tuple(std::size_t index) const {
  return mixed_radix_digits(index, scenario_.inputs());
}

const std::vector<std::size_t>& TimingRegime::order() const {
  if (const auto* seq = std::get_if<Sequential>(&tag_)) return seq->order;
  throw Error(ErrorKind::InvalidArgument, "regime " + name() + " has no party order");
}

std::vector<bool> TimingRegime::forbidden_inputs(std::size_t party, std::size_t party_count) const {
  if (party >= party_count) throw Error(ErrorKind::IndexOutOfRange, "party index out of range");
  std::vector<bool> forbidden(party_count, false);
  if (is_indefinite()) {
    forbidden[party] = true;
  } else if (is_parallel()) {
    std::fill(forbidden.begin(), forbidden.end(), true);
  } else {
    const auto& ord = order();
    std::vector<std::size_t> sorted = ord;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (sorted.size() != party_count || sorted[i] != i) {
        throw Error(ErrorKind::InvalidArgument,
                    "sequential order is not a permutation of the scenario's parties");
      }
    }
    const auto pos = std::find(ord.begin(), ord.end(), party);
    for (auto it = pos; it != ord.end(); ++it) forbidden[*it] = true;
  }
  return forbidden;
}

std::string TimingRegime::name() const {
  if (is_indefinite()) return "indefinite";
  if (is_parallel()) return "parallel";
  std::string out = "seq:";
  for (std::size_t p : std::get<Sequential>(tag_).order) out += static_cast<char>('A' + p);
  return out;
}

TimingRegime TimingRegime::parse(const std::string& text) {
  if (text == "indefinite") return indefinite();
  if (text == "parallel") return parallel();
  if (text.rfind("seq:", 0) == 0 && text.size() > 4) {
    std::vector<std::size_t> order;
    for (char c : text.substr(4)) {
      if (c < 'A' || c > 'Z') throw Error(ErrorKind::ParseError, "bad party letter in " + text);
      const std::size_t p = static_cast<std::size_t>(c - 'A');
      if (std::find(order.begin(), order.end(), p) != order.end()) {
        throw Error(ErrorKind::ParseError, "repeated party in " + text);
      }
      order.push_back(p);
    }
    return sequential(std::move(order));
  }
  throw Error(ErrorKind::ParseError, "unknown regime '" + text + "'");
}

}  // namespace nbts
