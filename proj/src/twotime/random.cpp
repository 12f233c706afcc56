#include "nbts/twotime/random.hpp"

#include <Eigen/QR>

#include "nbts/error.hpp"

namespace nbts::twotime::random {

CMatrix ginibre(long rows, long cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix g(rows, cols);
  for (long r = 0; r < rows; ++r)
    for (long c = 0; c < cols; ++c) g(r, c) = Complex(n(rng), n(rng));
  return g;
}

CMatrix density(long d, Rng& rng) {
  const CMatrix g = ginibre(d, d, rng);
  CMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

CMatrix unitary(long d, Rng& rng) {
  Eigen::HouseholderQR<CMatrix> qr(ginibre(d, d, rng));
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (long k = 0; k < d; ++k) {
    const Complex v = r(k, k);
    if (std::abs(v) > 0) q.col(k) *= v / std::abs(v);
  }
  return q;
}

std::vector<CMatrix> kraus(long din, long dout, long env, Rng& rng) {
  const CMatrix u = unitary(dout * env, rng);
  if (din > dout * env) throw Error(ErrorKind::InvalidArgument, "environment too small for an isometry");
  const CMatrix v = u.leftCols(din);  // rows: (out, env)
  std::vector<CMatrix> out;
  for (long e = 0; e < env; ++e) {
    CMatrix k(dout, din);
    for (long o = 0; o < dout; ++o) k.row(o) = v.row(o * env + e);
    out.push_back(std::move(k));
  }
  return out;
}

LabeledTensor channel(const std::vector<Wire>& in, const std::vector<Wire>& out, long env, Rng& rng) {
  long din = 1, dout = 1;
  for (const auto& w : in) din *= static_cast<long>(w.dim);
  for (const auto& w : out) dout *= static_cast<long>(w.dim);
  return channel_from_kraus(kraus(din, dout, env, rng), in, out);
}

Measurement instrument(const Wire& in, const Wire& out, std::size_t outcomes, long env, Rng& rng) {
  const long o = static_cast<long>(outcomes);
  const auto ks = kraus(static_cast<long>(in.dim), static_cast<long>(out.dim), o * env, rng);
  Measurement m;
  m.name = "random-instrument";
  for (long a = 0; a < o; ++a) {
    const std::vector<CMatrix> part(ks.begin() + a * env, ks.begin() + (a + 1) * env);
    m.elements.push_back(channel_from_kraus(part, {in}, {out}));
  }
  return m;
}

LabeledTensor from_operator(const CMatrix& m, const std::vector<Wire>& raised, const std::vector<Wire>& lowered) {
  std::vector<WireIndex> idx;
  std::size_t n = 1;
  for (const auto& w : raised) idx.push_back({w.name, Side::Ket, Variance::Up, w.dim}), n *= w.dim;
  for (const auto& w : lowered) idx.push_back({w.name, Side::Ket, Variance::Down, w.dim}), n *= w.dim;
  for (const auto& w : raised) idx.push_back({w.name, Side::Bra, Variance::Down, w.dim});
  for (const auto& w : lowered) idx.push_back({w.name, Side::Bra, Variance::Up, w.dim});
  if (static_cast<std::size_t>(m.rows()) != n || m.rows() != m.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "operator size does not match wires");
  }
  std::vector<Complex> entries(n * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) entries[r * n + c] = m(static_cast<long>(r), static_cast<long>(c));
  return LabeledTensor(std::move(idx), std::move(entries));
}

LabeledTensor single_party_state(SingleKind kind, std::size_t d, Rng& rng) {
  const long n = static_cast<long>(d);
  const Wire a1{"A1", d}, a3{"A3", d};
  switch (kind) {
    case SingleKind::Product: {
      std::uniform_real_distribution<double> scale(0.5, 2.0);
      LabeledTensor t = bullet(state(density(n, rng), {a1}), identity_vector("A3", d));
      t *= Complex(scale(rng));
      return t;
    }
    case SingleKind::ProductEffect: {
      const CMatrix g = ginibre(n, n, rng);
      return bullet(state(density(n, rng), {a1}), effect(g * g.adjoint(), {a3}));
    }
    case SingleKind::Generic: {
      const CMatrix g = ginibre(n * n, n * n, rng);
      return from_operator(g * g.adjoint(), {a1}, {a3});
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown state kind");
}

namespace {

// rho^{first1 R} fed through a channel (first3, R) -> second1; second3 traced.
LabeledTensor ordered(const std::string& first, const std::string& second, std::size_t d, Rng& rng) {
  const Wire f1{first + "1", d}, f3{first + "3", d}, s1{second + "1", d}, mem{"R", 2};
  const LabeledTensor rho = state(density(static_cast<long>(2 * d), rng), {f1, mem});
  const LabeledTensor c = channel({f3, mem}, {s1}, 2, rng);
  return bullet(bullet(c, rho), identity_vector(second + "3", d));
}

}  // namespace

LabeledTensor linear_state(LinearKind kind, std::size_t d, Rng& rng) {
  const long n = static_cast<long>(d);
  switch (kind) {
    case LinearKind::Parallel: {
      const LabeledTensor rho = state(density(n * n, rng), {{"A1", d}, {"B1", d}});
      return bullet(bullet(rho, identity_vector("A3", d)), identity_vector("B3", d));
    }
    case LinearKind::AThenB: return ordered("A", "B", d, rng);
    case LinearKind::BThenA: return ordered("B", "A", d, rng);
    case LinearKind::Mixture: {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      const double q = u(rng);
      LabeledTensor ab = ordered("A", "B", d, rng);
      LabeledTensor ba = ordered("B", "A", d, rng);
      ab *= Complex(q);
      ba *= Complex(1 - q);
      return ab + ba;
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown linear state kind");
}

PartyStrategy strategy(char party, std::size_t d, std::size_t outcomes, std::size_t inputs, Rng& rng) {
  const std::string p(1, party);
  const Wire in{p + "1", d}, lab{p + "2", d}, out{p + "3", d};
  PartyStrategy s{instrument(in, lab, outcomes, 2, rng), {}, {}};
  for (std::size_t x = 0; x < inputs; ++x) {
    s.channels.push_back(channel({lab}, {out}, 2, rng));
    s.channel_names.push_back("random-" + std::to_string(x));
  }
  return s;
}

}  // namespace nbts::twotime::random
