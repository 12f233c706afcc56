#include "nbts/twotime/processes.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "nbts/error.hpp"

namespace nbts::twotime {

namespace {

std::size_t total_dim(const std::vector<Wire>& wires) {
  std::size_t n = 1;
  for (const auto& w : wires) n *= w.dim;
  return n;
}

// kets then bras, one pair per wire
std::vector<WireIndex> pair_indices(const std::vector<Wire>& wires, Variance ket_var) {
  const Variance bra_var = ket_var == Variance::Up ? Variance::Down : Variance::Up;
  std::vector<WireIndex> out;
  for (const auto& w : wires) out.push_back({w.name, Side::Ket, ket_var, w.dim});
  for (const auto& w : wires) out.push_back({w.name, Side::Bra, bra_var, w.dim});
  return out;
}

void require_psd(const CMatrix& m, double tol, const char* what) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::DimensionMismatch, std::string(what) + " is not square");
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol) throw Error(ErrorKind::NotPositive, std::string(what) + " is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es((m + m.adjoint()) / 2.0);
  if (es.eigenvalues().minCoeff() < -tol) {
    throw Error(ErrorKind::NotPositive, std::string(what) + " has a negative eigenvalue");
  }
}

LabeledTensor operator_tensor(const CMatrix& m, const std::vector<Wire>& wires, Variance ket_var, bool transpose) {
  const std::size_t n = total_dim(wires);
  if (static_cast<std::size_t>(m.rows()) != n || static_cast<std::size_t>(m.cols()) != n) {
    throw Error(ErrorKind::DimensionMismatch, "operator size does not match wires");
  }
  std::vector<Complex> entries(n * n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t b = 0; b < n; ++b)
      entries[k * n + b] = transpose ? m(static_cast<long>(b), static_cast<long>(k))
                                     : m(static_cast<long>(k), static_cast<long>(b));
  return LabeledTensor(pair_indices(wires, ket_var), std::move(entries));
}

}  // namespace

LabeledTensor state(const CMatrix& rho, const std::vector<Wire>& wires, double tol) {
  require_psd(rho, tol, "state");
  return operator_tensor(rho, wires, Variance::Up, false);
}

LabeledTensor effect(const CMatrix& e, const std::vector<Wire>& wires, double tol) {
  require_psd(e, tol, "effect");
  return operator_tensor(e, wires, Variance::Down, true);
}

LabeledTensor identity_vector(const std::string& wire, std::size_t dim, Variance var) {
  const CMatrix id = CMatrix::Identity(static_cast<long>(dim), static_cast<long>(dim));
  return operator_tensor(id, {{wire, dim}}, var, false);
}

LabeledTensor channel_from_kraus(const std::vector<CMatrix>& kraus, const std::vector<Wire>& in,
                                 const std::vector<Wire>& out) {
  const std::size_t ni = total_dim(in), no = total_dim(out);
  std::vector<WireIndex> idx = pair_indices(out, Variance::Up);
  const auto in_idx = pair_indices(in, Variance::Down);
  idx.insert(idx.end(), in_idx.begin(), in_idx.end());
  std::vector<Complex> entries(no * no * ni * ni);
  for (const auto& k : kraus) {
    if (static_cast<std::size_t>(k.rows()) != no || static_cast<std::size_t>(k.cols()) != ni) {
      throw Error(ErrorKind::DimensionMismatch, "Kraus operator shape does not match wires");
    }
    for (std::size_t ok = 0; ok < no; ++ok)
      for (std::size_t ob = 0; ob < no; ++ob)
        for (std::size_t ik = 0; ik < ni; ++ik)
          for (std::size_t ib = 0; ib < ni; ++ib)
            entries[((ok * no + ob) * ni + ik) * ni + ib] +=
                k(static_cast<long>(ok), static_cast<long>(ik)) * std::conj(k(static_cast<long>(ob), static_cast<long>(ib)));
  }
  // (out kets, out bras, in kets, in bras) row-major equals the tuple layout
  return LabeledTensor(std::move(idx), std::move(entries));
}

LabeledTensor unitary_channel(const CMatrix& u, const Wire& in, const Wire& out) {
  return channel_from_kraus({u}, {in}, {out});
}

LabeledTensor identity_channel(const std::string& in_wire, const std::string& out_wire, std::size_t dim) {
  return unitary_channel(CMatrix::Identity(static_cast<long>(dim), static_cast<long>(dim)), {in_wire, dim},
                         {out_wire, dim});
}

LabeledTensor throw_away_replace(const std::string& in_wire, const std::string& out_wire, std::size_t in_dim,
                                 std::size_t out_dim) {
  LabeledTensor t = bullet(identity_vector(out_wire, out_dim, Variance::Up), identity_vector(in_wire, in_dim));
  t *= Complex(1.0 / static_cast<double>(out_dim));
  return t;
}

LabeledTensor Measurement::total() const {
  if (elements.empty()) throw Error(ErrorKind::InvalidArgument, "measurement has no outcomes");
  LabeledTensor sum = elements.front();
  for (std::size_t k = 1; k < elements.size(); ++k) sum = sum + elements[k];
  return sum;
}

Measurement basis_measurement(std::string name, const CMatrix& basis, const Wire& in, const Wire& out,
                              std::optional<std::size_t> reprepare) {
  const long di = static_cast<long>(in.dim), dout = static_cast<long>(out.dim);
  if (basis.rows() != di || basis.cols() != di) throw Error(ErrorKind::DimensionMismatch, "basis size");
  if (!reprepare && di != dout) {
    throw Error(ErrorKind::DimensionMismatch, "non-destructive measurement needs equal dimensions");
  }
  if (reprepare && static_cast<long>(*reprepare) >= dout) {
    throw Error(ErrorKind::IndexOutOfRange, "re-prepared state outside output wire");
  }
  Measurement m;
  m.name = std::move(name);
  for (long a = 0; a < di; ++a) {
    CMatrix k;
    if (reprepare) {
      k = CMatrix::Zero(dout, di);
      k.row(static_cast<long>(*reprepare)) = basis.col(a).adjoint();
    } else {
      k = basis.col(a) * basis.col(a).adjoint();
    }
    m.elements.push_back(channel_from_kraus({k}, {in}, {out}));
  }
  return m;
}

Measurement computational_measurement(const Wire& in, const Wire& out, std::optional<std::size_t> reprepare) {
  const long d = static_cast<long>(in.dim);
  return basis_measurement("computational", CMatrix::Identity(d, d), in, out, reprepare);
}

Measurement superposition_measurement(std::size_t r, std::size_t s, bool imaginary, const Wire& in,
                                      const Wire& out, std::optional<std::size_t> reprepare) {
  const long d = static_cast<long>(in.dim);
  if (r == s || r >= in.dim || s >= in.dim) throw Error(ErrorKind::InvalidArgument, "need distinct r, s < d");
  CMatrix basis = CMatrix::Identity(d, d);
  const double h = 1.0 / std::sqrt(2.0);
  const Complex phase = imaginary ? Complex(0, 1) : Complex(1, 0);
  const long rl = static_cast<long>(r), sl = static_cast<long>(s);
  basis.col(rl).setZero();
  basis.col(sl).setZero();
  basis(rl, rl) = h;
  basis(sl, rl) = h * phase;
  basis(rl, sl) = h;
  basis(sl, sl) = -h * phase;
  const std::string name = std::string(imaginary ? "plus-i" : "plus") + "(" + std::to_string(r) + "," +
                           std::to_string(s) + ")";
  return basis_measurement(name, basis, in, out, reprepare);
}

Measurement discard_and_randomize(const Wire& in, const Wire& out) {
  const long di = static_cast<long>(in.dim), dout = static_cast<long>(out.dim);
  Measurement m;
  m.name = "discard";
  const double w = 1.0 / std::sqrt(static_cast<double>(dout));
  for (long a = 0; a < dout; ++a) {
    std::vector<CMatrix> kraus;
    for (long i = 0; i < di; ++i) {
      CMatrix k = CMatrix::Zero(dout, di);
      k(a, i) = w;
      kraus.push_back(std::move(k));
    }
    m.elements.push_back(channel_from_kraus(kraus, {in}, {out}));
  }
  return m;
}

CMatrix complete_to_unitary(const Eigen::VectorXcd& v) {
  const long d = v.size();
  CMatrix u = CMatrix::Zero(d, d);
  u.col(0) = v.normalized();
  long col = 1;
  for (long e = 0; e < d && col < d; ++e) {
    Eigen::VectorXcd c = Eigen::VectorXcd::Unit(d, e);
    for (long j = 0; j < col; ++j) c -= u.col(j) * (u.col(j).adjoint() * c)(0);
    if (c.norm() > 1e-8) u.col(col++) = c.normalized();
  }
  return u;
}

CMatrix named_unitary(const std::string& name, std::size_t d) {
  const long n = static_cast<long>(d);
  auto power = [&](const std::string& base) -> long {
    if (name == base) return 1;
    if (name.rfind(base + "^", 0) == 0) return std::stol(name.substr(base.size() + 1));
    return -1;
  };
  if (name == "I") return CMatrix::Identity(n, n);
  if (const long k = power("X"); k >= 0) {
    CMatrix x = CMatrix::Zero(n, n);
    for (long i = 0; i < n; ++i) x((i + k) % n, i) = 1;
    return x;
  }
  if (const long k = power("Z"); k >= 0) {
    CMatrix z = CMatrix::Zero(n, n);
    for (long i = 0; i < n; ++i) z(i, i) = std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(k * i) / static_cast<double>(n));
    return z;
  }
  if (name == "F" || (name == "H" && d == 2)) {
    CMatrix f(n, n);
    for (long i = 0; i < n; ++i)
      for (long j = 0; j < n; ++j)
        f(i, j) = std::polar(1.0 / std::sqrt(static_cast<double>(n)),
                             2 * std::numbers::pi * static_cast<double>(i * j) / static_cast<double>(n));
    return f;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown unitary '" + name + "' for dimension " + std::to_string(d));
}

std::vector<NamedUnitary> unitary_family(std::size_t d) {
  std::vector<NamedUnitary> out;
  out.push_back({"I", named_unitary("I", d)});
  for (std::size_t k = 1; k < d; ++k) {
    out.push_back({"X^" + std::to_string(k), named_unitary("X^" + std::to_string(k), d)});
    out.push_back({"Z^" + std::to_string(k), named_unitary("Z^" + std::to_string(k), d)});
  }
  out.push_back({"F", named_unitary("F", d)});
  const long n = static_cast<long>(d);
  for (long r = 0; r < n; ++r)
    for (long s = r + 1; s < n; ++s)
      for (const Complex phase : {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)}) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
        v(r) = 1;
        v(s) = phase;
        const char* tag = phase == Complex(1, 0) ? "+" : phase == Complex(-1, 0) ? "-" : phase == Complex(0, 1) ? "+i" : "-i";
        out.push_back({"S" + std::string(tag) + "(" + std::to_string(r) + "," + std::to_string(s) + ")",
                       complete_to_unitary(v)});
      }
  return out;
}

bool is_trace_preserving(const LabeledTensor& c, const std::vector<Wire>& in, const std::vector<Wire>& out,
                         double tol) {
  std::vector<WireIndex> expected = pair_indices(out, Variance::Up);
  const auto in_idx = pair_indices(in, Variance::Down);
  expected.insert(expected.end(), in_idx.begin(), in_idx.end());
  if (expected.size() != c.rank()) throw Error(ErrorKind::WrongWireSet, "channel index set does not match wires");
  for (const auto& e : expected) {
    const auto pos = c.find(e.wire, e.side, e.var);
    if (pos == static_cast<std::size_t>(-1) || c.indices()[pos].dim != e.dim) {
      throw Error(ErrorKind::WrongWireSet, "channel lacks index " + to_string(e));
    }
  }
  LabeledTensor traced = c;
  for (const auto& w : out) traced = bullet(identity_vector(w.name, w.dim), traced);
  LabeledTensor target = LabeledTensor::scalar(1);
  for (const auto& w : in) target = bullet(target, identity_vector(w.name, w.dim));
  return max_abs_diff(traced, target) <= tol;
}

bool is_trace_preserving(const LabeledTensor& c, const std::string& in_wire, const std::string& out_wire,
                         double tol) {
  auto dim_of = [&](const std::string& w) {
    for (const auto& i : c.indices())
      if (i.wire == w) return i.dim;
    throw Error(ErrorKind::WrongWireSet, "channel has no wire " + w);
  };
  return is_trace_preserving(c, {{in_wire, dim_of(in_wire)}}, {{out_wire, dim_of(out_wire)}}, tol);
}

PositivityReport check_positivity(const LabeledTensor& t, double tol) {
  std::vector<std::size_t> kets, bras;
  for (std::size_t k = 0; k < t.rank(); ++k) {
    const auto& i = t.indices()[k];
    if (i.side != Side::Ket) continue;
    const Variance bv = i.var == Variance::Up ? Variance::Down : Variance::Up;
    const auto pos = t.find(i.wire, Side::Bra, bv);
    if (pos == static_cast<std::size_t>(-1)) throw Error(ErrorKind::WrongWireSet, "ket index without bra partner: " + to_string(i));
    kets.push_back(k);
    bras.push_back(pos);
  }
  if (2 * kets.size() != t.rank()) throw Error(ErrorKind::WrongWireSet, "bra index without ket partner");
  std::vector<WireIndex> order;
  std::size_t n = 1;
  for (auto k : kets) {
    order.push_back(t.indices()[k]);
    n *= t.indices()[k].dim;
  }
  for (auto b : bras) order.push_back(t.indices()[b]);
  const LabeledTensor a = t.aligned_to(order);
  CMatrix m(static_cast<long>(n), static_cast<long>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(static_cast<long>(r), static_cast<long>(c)) = a.entries()[r * n + c];
  PositivityReport rep;
  rep.hermiticity_error = (m - m.adjoint()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<CMatrix> es((m + m.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  rep.min_eigenvalue = es.eigenvalues().minCoeff();
  rep.positive = rep.hermiticity_error <= tol && rep.min_eigenvalue >= -tol;
  return rep;
}

}  // namespace nbts::twotime
