#pragma once

#include <complex>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

namespace nbts::twotime {

using Complex = std::complex<double>;

inline constexpr double kDefaultTol = 1e-9;

enum class Side { Ket, Bra };
enum class Variance { Up, Down };

struct WireIndex {
  std::string wire;
  Side side = Side::Ket;
  Variance var = Variance::Up;
  std::size_t dim = 2;

  bool same_slot(const WireIndex& o) const { return wire == o.wire && side == o.side && var == o.var; }
  bool contracts_with(const WireIndex& o) const {
    return wire == o.wire && side == o.side && var != o.var;
  }
  friend bool operator==(const WireIndex&, const WireIndex&) = default;
};

std::string to_string(const WireIndex& i);

// Dense complex array over an ordered list of wire indices, row-major with the
// last index fastest. A tensor with no indices is a scalar.
class LabeledTensor {
 public:
  LabeledTensor() : entries_(1, Complex(0)) {}
  LabeledTensor(std::vector<WireIndex> indices, std::vector<Complex> entries);

  static LabeledTensor scalar(Complex value);
  static LabeledTensor zeros(std::vector<WireIndex> indices);

  const std::vector<WireIndex>& indices() const noexcept { return indices_; }
  const std::vector<Complex>& entries() const noexcept { return entries_; }
  std::vector<Complex>& entries() noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  std::size_t rank() const noexcept { return indices_.size(); }

  Complex& at(const std::vector<std::size_t>& multi);
  const Complex& at(const std::vector<std::size_t>& multi) const;

  bool is_scalar() const noexcept { return indices_.empty(); }
  /// Throws NonScalarResult if indices remain.
  Complex value() const;

  std::set<std::string> wires() const;
  /// Position of the index with this (wire, side, variance), or npos.
  std::size_t find(const std::string& wire, Side side, Variance var) const;

  /// Same tensor with indices reordered to `order` (a permutation of ours).
  LabeledTensor aligned_to(const std::vector<WireIndex>& order) const;
  LabeledTensor relabeled(const std::string& from, const std::string& to) const;

  LabeledTensor& operator*=(Complex s);
  friend LabeledTensor operator*(Complex s, LabeledTensor t) { return t *= s; }
  /// Sum over the same index set (the right operand is realigned).
  friend LabeledTensor operator+(const LabeledTensor& a, const LabeledTensor& b);
  friend LabeledTensor operator-(const LabeledTensor& a, const LabeledTensor& b);

 private:
  std::size_t offset(const std::vector<std::size_t>& multi) const;

  std::vector<WireIndex> indices_;
  std::vector<Complex> entries_;
};

/// Contracts every (wire, side) pair with opposite variance, multiplying
/// entries without conjugation; remaining indices are left's then right's.
/// Throws IndexCollision if both sides carry an identical index, and
/// DimensionMismatch if a contracted pair disagrees on dimension.
LabeledTensor bullet(const LabeledTensor& left, const LabeledTensor& right);

/// Left fold of bullet over the list.
LabeledTensor bullet_all(const std::vector<const LabeledTensor*>& parts);

/// Max entrywise |a - b| after aligning b to a. Throws WrongWireSet if the index
/// sets differ.
double max_abs_diff(const LabeledTensor& a, const LabeledTensor& b);

double max_abs(const LabeledTensor& t);

}  // namespace nbts::twotime
