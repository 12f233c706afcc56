#include "nbts/twotime/tensor.hpp"

#include <algorithm>
#include <cmath>

#include "nbts/error.hpp"

namespace nbts::twotime {

namespace {

std::size_t volume(const std::vector<WireIndex>& idx) {
  std::size_t n = 1;
  for (const auto& i : idx) n *= i.dim;
  return n;
}

std::vector<std::size_t> strides_of(const std::vector<WireIndex>& idx) {
  std::vector<std::size_t> s(idx.size(), 1);
  for (std::size_t k = idx.size(); k-- > 1;) s[k - 1] = s[k] * idx[k].dim;
  return s;
}

}  // namespace

std::string to_string(const WireIndex& i) {
  return i.wire + (i.side == Side::Ket ? "/ket" : "/bra") + (i.var == Variance::Up ? "^" : "_") +
         std::to_string(i.dim);
}

LabeledTensor::LabeledTensor(std::vector<WireIndex> indices, std::vector<Complex> entries)
    : indices_(std::move(indices)), entries_(std::move(entries)) {
  for (std::size_t a = 0; a < indices_.size(); ++a) {
    if (indices_[a].dim == 0) throw Error(ErrorKind::InvalidArgument, "zero index dimension");
    for (std::size_t b = a + 1; b < indices_.size(); ++b)
      if (indices_[a].same_slot(indices_[b])) {
        throw Error(ErrorKind::IndexCollision, "duplicate index " + to_string(indices_[a]));
      }
  }
  if (entries_.size() != volume(indices_)) {
    throw Error(ErrorKind::DimensionMismatch, "entry count " + std::to_string(entries_.size()) +
                                                  " does not match index dimensions");
  }
}

LabeledTensor LabeledTensor::scalar(Complex value) { return LabeledTensor({}, {value}); }

LabeledTensor LabeledTensor::zeros(std::vector<WireIndex> indices) {
  const std::size_t n = volume(indices);
  return LabeledTensor(std::move(indices), std::vector<Complex>(n));
}

std::size_t LabeledTensor::offset(const std::vector<std::size_t>& multi) const {
  if (multi.size() != indices_.size()) throw Error(ErrorKind::IndexOutOfRange, "multi-index rank");
  std::size_t off = 0;
  for (std::size_t k = 0; k < multi.size(); ++k) {
    if (multi[k] >= indices_[k].dim) throw Error(ErrorKind::IndexOutOfRange, "multi-index value");
    off = off * indices_[k].dim + multi[k];
  }
  return off;
}

Complex& LabeledTensor::at(const std::vector<std::size_t>& multi) { return entries_[offset(multi)]; }
const Complex& LabeledTensor::at(const std::vector<std::size_t>& multi) const {
  return entries_[offset(multi)];
}

Complex LabeledTensor::value() const {
  if (!is_scalar()) {
    throw Error(ErrorKind::NonScalarResult, std::to_string(indices_.size()) + " indices remain uncontracted");
  }
  return entries_[0];
}

std::set<std::string> LabeledTensor::wires() const {
  std::set<std::string> out;
  for (const auto& i : indices_) out.insert(i.wire);
  return out;
}

std::size_t LabeledTensor::find(const std::string& wire, Side side, Variance var) const {
  for (std::size_t k = 0; k < indices_.size(); ++k)
    if (indices_[k].wire == wire && indices_[k].side == side && indices_[k].var == var) return k;
  return static_cast<std::size_t>(-1);
}

LabeledTensor LabeledTensor::aligned_to(const std::vector<WireIndex>& order) const {
  if (order.size() != indices_.size()) throw Error(ErrorKind::WrongWireSet, "index sets differ");
  std::vector<std::size_t> source(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t pos = find(order[k].wire, order[k].side, order[k].var);
    if (pos == static_cast<std::size_t>(-1) || indices_[pos].dim != order[k].dim) {
      throw Error(ErrorKind::WrongWireSet, "index " + to_string(order[k]) + " not present");
    }
    source[k] = pos;
  }
  const auto old_strides = strides_of(indices_);
  LabeledTensor out = zeros(order);
  std::vector<std::size_t> digit(order.size(), 0);
  for (std::size_t flat = 0; flat < out.entries_.size(); ++flat) {
    std::size_t off = 0;
    for (std::size_t k = 0; k < order.size(); ++k) off += digit[k] * old_strides[source[k]];
    out.entries_[flat] = entries_[off];
    for (std::size_t k = order.size(); k-- > 0;) {
      if (++digit[k] < order[k].dim) break;
      digit[k] = 0;
    }
  }
  return out;
}

LabeledTensor LabeledTensor::relabeled(const std::string& from, const std::string& to) const {
  LabeledTensor out = *this;
  for (auto& i : out.indices_)
    if (i.wire == from) i.wire = to;
  return LabeledTensor(std::move(out.indices_), std::move(out.entries_));
}

LabeledTensor& LabeledTensor::operator*=(Complex s) {
  for (auto& e : entries_) e *= s;
  return *this;
}

LabeledTensor operator+(const LabeledTensor& a, const LabeledTensor& b) {
  LabeledTensor out = a;
  const LabeledTensor bb = b.aligned_to(a.indices());
  for (std::size_t k = 0; k < out.entries_.size(); ++k) out.entries_[k] += bb.entries_[k];
  return out;
}

LabeledTensor operator-(const LabeledTensor& a, const LabeledTensor& b) {
  LabeledTensor out = a;
  const LabeledTensor bb = b.aligned_to(a.indices());
  for (std::size_t k = 0; k < out.entries_.size(); ++k) out.entries_[k] -= bb.entries_[k];
  return out;
}

LabeledTensor bullet(const LabeledTensor& left, const LabeledTensor& right) {
  const auto& li = left.indices();
  const auto& ri = right.indices();
  std::vector<long> partner(li.size(), -1);  // left index -> contracted right index
  std::vector<bool> right_used(ri.size(), false);
  for (std::size_t a = 0; a < li.size(); ++a) {
    for (std::size_t b = 0; b < ri.size(); ++b) {
      if (li[a].same_slot(ri[b])) throw Error(ErrorKind::IndexCollision, "both operands carry " + to_string(li[a]));
      if (li[a].contracts_with(ri[b])) {
        if (li[a].dim != ri[b].dim) {
          throw Error(ErrorKind::DimensionMismatch, "contracted pair " + to_string(li[a]) + " vs " + to_string(ri[b]));
        }
        partner[a] = static_cast<long>(b);
        right_used[b] = true;
      }
    }
  }

  // loop space: free left, free right, then contracted pairs
  std::vector<WireIndex> result;
  std::vector<std::size_t> dims, lstride_of, rstride_of;
  const auto ls = strides_of(li);
  const auto rs = strides_of(ri);
  for (std::size_t a = 0; a < li.size(); ++a)
    if (partner[a] < 0) {
      result.push_back(li[a]);
      dims.push_back(li[a].dim);
      lstride_of.push_back(ls[a]);
      rstride_of.push_back(0);
    }
  for (std::size_t b = 0; b < ri.size(); ++b)
    if (!right_used[b]) {
      result.push_back(ri[b]);
      dims.push_back(ri[b].dim);
      lstride_of.push_back(0);
      rstride_of.push_back(rs[b]);
    }
  const std::size_t free_count = dims.size();
  for (std::size_t a = 0; a < li.size(); ++a)
    if (partner[a] >= 0) {
      dims.push_back(li[a].dim);
      lstride_of.push_back(ls[a]);
      rstride_of.push_back(rs[static_cast<std::size_t>(partner[a])]);
    }

  LabeledTensor out = LabeledTensor::zeros(result);
  std::size_t inner = 1;
  for (std::size_t k = free_count; k < dims.size(); ++k) inner *= dims[k];
  std::vector<std::size_t> digit(dims.size(), 0);
  std::size_t loff = 0, roff = 0;
  const auto& le = left.entries();
  const auto& re = right.entries();
  auto& oe = out.entries();
  for (std::size_t o = 0; o < oe.size(); ++o) {
    Complex acc = 0;
    for (std::size_t c = 0; c < inner; ++c) {
      acc += le[loff] * re[roff];
      for (std::size_t k = dims.size(); k-- > free_count;) {
        loff += lstride_of[k];
        roff += rstride_of[k];
        if (++digit[k] < dims[k]) break;
        loff -= lstride_of[k] * dims[k];
        roff -= rstride_of[k] * dims[k];
        digit[k] = 0;
      }
    }
    oe[o] = acc;
    for (std::size_t k = free_count; k-- > 0;) {
      loff += lstride_of[k];
      roff += rstride_of[k];
      if (++digit[k] < dims[k]) break;
      loff -= lstride_of[k] * dims[k];
      roff -= rstride_of[k] * dims[k];
      digit[k] = 0;
    }
  }
  return out;
}

LabeledTensor bullet_all(const std::vector<const LabeledTensor*>& parts) {
  if (parts.empty()) return LabeledTensor::scalar(1);
  LabeledTensor acc = *parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k) acc = bullet(acc, *parts[k]);
  return acc;
}

double max_abs_diff(const LabeledTensor& a, const LabeledTensor& b) {
  const LabeledTensor bb = b.aligned_to(a.indices());
  double m = 0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a.entries()[k] - bb.entries()[k]));
  return m;
}

double max_abs(const LabeledTensor& t) {
  double m = 0;
  for (const auto& e : t.entries()) m = std::max(m, std::abs(e));
  return m;
}

}  // namespace nbts::twotime
