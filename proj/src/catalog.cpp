#include "nbts/catalog.hpp"

#include <algorithm>
#include <array>
#include <functional>

#include "nbts/error.hpp"

namespace nbts::catalog {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 8> kNames{{
    {Family::DetIndef, "det-indef"},
    {Family::PrLike, "pr-like"},
    {Family::ClassicalIndef, "classical-indef"},
    {Family::DetPar, "det-par"},
    {Family::LincorrPar, "lincorr-par"},
    {Family::DetSeq, "det-seq"},
    {Family::LincorrSeq, "lincorr-seq"},
    {Family::ClassicalGeneral, "classical-general"},
}};

using Rule = std::function<Rational(std::size_t, std::size_t, std::size_t, std::size_t)>;

Behavior from_rule(const Scenario& s, const Rule& rule) {
  return Behavior::from_function(s, [&](const std::vector<std::size_t>& o, const std::vector<std::size_t>& i) {
    return rule(o[0], o[1], i[0], i[1]);
  });
}

Rule deterministic(std::function<std::size_t(std::size_t)> fa, std::function<std::size_t(std::size_t)> fb) {
  return [=](std::size_t a, std::size_t b, std::size_t x, std::size_t y) {
    return Rational(a == fa(y) && b == fb(x) ? 1 : 0);
  };
}

Rule parity(std::function<std::size_t(std::size_t, std::size_t)> f) {
  return [=](std::size_t a, std::size_t b, std::size_t x, std::size_t y) {
    return ((a ^ b) == f(x, y)) ? Rational(1, 2) : Rational(0);
  };
}

void canonicalize(std::vector<Behavior>& list) {
  std::sort(list.begin(), list.end(),
            [](const Behavior& l, const Behavior& r) { return lex_less(l.table(), r.table()); });
  list.erase(std::unique(list.begin(), list.end()), list.end());
}

void require_binary(const Scenario& s, Family f) {
  if (s != Scenario::bipartite(2, 2, 2, 2)) {
    throw Error(ErrorKind::UnsupportedScenario,
                std::string(family_name(f)) + " is defined only at (2,2,2,2), got " + s.to_string());
  }
}

// All functions {0..m-1} -> {0..d-1}, as value lists in lexicographic order.
std::vector<std::vector<std::size_t>> all_functions(std::size_t m, std::size_t d) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> f(m, 0);
  while (true) {
    out.push_back(f);
    std::size_t k = m;
    while (k > 0 && ++f[k - 1] == d) f[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

}  // namespace

std::string_view family_name(Family f) {
  for (const auto& [fam, name] : kNames)
    if (fam == f) return name;
  return "unknown";
}

Family parse_family(std::string_view name) {
  for (const auto& [fam, n] : kNames)
    if (n == name) return fam;
  throw Error(ErrorKind::InvalidArgument, "unknown vertex family '" + std::string(name) + "'");
}

const std::vector<Family>& all_families() {
  static const std::vector<Family> list = [] {
    std::vector<Family> v;
    for (const auto& entry : kNames) v.push_back(entry.first);
    return v;
  }();
  return list;
}

std::string_view kind_name(ClassicalVertex::Kind k) {
  switch (k) {
    case ClassicalVertex::Kind::BothConst: return "both_const";
    case ClassicalVertex::Kind::ABeforeB: return "A_before_B";
    case ClassicalVertex::Kind::BBeforeA: return "B_before_A";
  }
  return "unknown";
}

ClassicalVertex::Kind parse_kind(std::string_view name) {
  for (auto k : {ClassicalVertex::Kind::BothConst, ClassicalVertex::Kind::ABeforeB,
                 ClassicalVertex::Kind::BBeforeA})
    if (kind_name(k) == name) return k;
  throw Error(ErrorKind::ParseError, "unknown classical vertex family '" + std::string(name) + "'");
}

Behavior ClassicalVertex::to_behavior(const Scenario& s) const {
  if (s.party_count() != 2) throw Error(ErrorKind::WrongPartyCount, "classical vertices are bipartite");
  const auto& d = s.outputs();
  const auto& m = s.inputs();
  auto bad = [](const std::string& what) { return Error(ErrorKind::InvalidArgument, what); };
  switch (kind) {
    case Kind::BothConst:
      if (alpha >= d[0] || beta >= d[1]) throw bad("vertex outcome out of range");
      break;
    case Kind::ABeforeB:
      if (alpha >= d[0] || beta_x.size() != m[0]) throw bad("A_before_B parameters do not fit scenario");
      for (auto v : beta_x)
        if (v >= d[1]) throw bad("beta_x entry out of range");
      break;
    case Kind::BBeforeA:
      if (beta >= d[1] || alpha_y.size() != m[1]) throw bad("B_before_A parameters do not fit scenario");
      for (auto v : alpha_y)
        if (v >= d[0]) throw bad("alpha_y entry out of range");
      break;
  }
  return from_rule(s, deterministic([this](std::size_t y) { return a(y); },
                                    [this](std::size_t x) { return b(x); }));
}

std::vector<Behavior> generate(Family f, const Scenario& s) {
  std::vector<Behavior> out;
  if (f == Family::ClassicalGeneral) {
    if (s.party_count() != 2) throw Error(ErrorKind::UnsupportedScenario, "classical-general needs 2 parties");
    const auto& d = s.outputs();
    const auto& m = s.inputs();
    for (std::size_t alpha = 0; alpha < d[0]; ++alpha)
      for (std::size_t beta = 0; beta < d[1]; ++beta)
        out.push_back(ClassicalVertex{ClassicalVertex::Kind::BothConst, alpha, beta, {}, {}}.to_behavior(s));
    for (std::size_t alpha = 0; alpha < d[0]; ++alpha)
      for (const auto& bx : all_functions(m[0], d[1]))
        out.push_back(ClassicalVertex{ClassicalVertex::Kind::ABeforeB, alpha, 0, {}, bx}.to_behavior(s));
    for (const auto& ay : all_functions(m[1], d[0]))
      for (std::size_t beta = 0; beta < d[1]; ++beta)
        out.push_back(ClassicalVertex{ClassicalVertex::Kind::BBeforeA, 0, beta, ay, {}}.to_behavior(s));
    canonicalize(out);
    return out;
  }

  require_binary(s, f);
  const std::size_t bits[2] = {0, 1};
  switch (f) {
    case Family::DetIndef:
    case Family::ClassicalIndef:
      for (auto mu : bits)
        for (auto nu : bits) {
          if (f == Family::ClassicalIndef && mu == 1 && nu == 1) continue;
          for (auto alpha : bits)
            for (auto beta : bits)
              out.push_back(from_rule(s, deterministic([=](std::size_t y) { return (mu * y) ^ alpha; },
                                                       [=](std::size_t x) { return (nu * x) ^ beta; })));
        }
      break;
    case Family::PrLike:
      for (auto gamma : bits)
        for (auto delta : bits)
          for (auto eps : bits)
            out.push_back(from_rule(s, parity([=](std::size_t x, std::size_t y) {
              return ((x ^ gamma) & (y ^ delta)) ^ eps;
            })));
      break;
    case Family::DetPar:
      for (auto alpha : bits)
        for (auto beta : bits)
          out.push_back(from_rule(s, deterministic([=](std::size_t) { return alpha; },
                                                   [=](std::size_t) { return beta; })));
      break;
    case Family::LincorrPar:
      for (auto alpha : bits)
        for (auto beta : bits) {
          if (alpha == 0 && beta == 0) continue;
          for (auto delta : bits)
            out.push_back(from_rule(s, parity([=](std::size_t x, std::size_t y) {
              return (alpha * x) ^ (beta * y) ^ delta;
            })));
        }
      break;
    case Family::DetSeq:
      for (auto alpha : bits)
        for (auto beta : bits)
          for (auto gamma : bits)
            out.push_back(from_rule(s, deterministic([=](std::size_t) { return alpha; },
                                                     [=](std::size_t x) { return (beta * x) ^ gamma; })));
      break;
    case Family::LincorrSeq:
      for (auto alpha : bits)
        for (auto beta : bits)
          out.push_back(from_rule(s, parity([=](std::size_t x, std::size_t y) {
            return y ^ (alpha * x) ^ beta;
          })));
      break;
    case Family::ClassicalGeneral:
      break;
  }
  canonicalize(out);
  return out;
}

std::vector<Family> families_for(const TimingRegime& r, bool classical) {
  if (r.is_indefinite()) {
    return classical ? std::vector{Family::ClassicalIndef} : std::vector{Family::DetIndef, Family::PrLike};
  }
  if (r.is_parallel()) {
    return classical ? std::vector{Family::DetPar}
                     : std::vector{Family::DetPar, Family::PrLike, Family::LincorrPar};
  }
  return classical ? std::vector{Family::DetSeq}
                   : std::vector{Family::DetSeq, Family::PrLike, Family::LincorrSeq};
}

std::vector<Behavior> vertex_set(const TimingRegime& r, bool classical, const Scenario& s) {
  bool swapped = false;
  if (r.is_sequential()) {
    const auto& order = r.order();
    if (order.size() != 2) throw Error(ErrorKind::UnsupportedScenario, "catalog covers two parties");
    swapped = order[0] == 1;
  }
  std::vector<Behavior> out;
  for (auto f : families_for(r, classical)) {
    for (auto& b : generate(f, s)) out.push_back(swapped ? swap_parties(b) : std::move(b));
  }
  canonicalize(out);
  return out;
}

Behavior swap_parties(const Behavior& b) {
  const Scenario& s = b.scenario();
  if (s.party_count() != 2) throw Error(ErrorKind::WrongPartyCount, "swap_parties needs 2 parties");
  const Scenario t({s.outputs()[1], s.outputs()[0]}, {s.inputs()[1], s.inputs()[0]});
  return from_rule(t, [&](std::size_t a, std::size_t bb, std::size_t x, std::size_t y) {
    return b(bb, a, y, x);
  });
}

bool is_gyni_vertex(const Behavior& b) {
  if (b.scenario() != Scenario::bipartite(2, 2, 2, 2)) {
    throw Error(ErrorKind::UnsupportedScenario, "GYNI vertices live at (2,2,2,2)");
  }
  if (!b.is_deterministic()) throw Error(ErrorKind::NotDeterministic, "behavior is not deterministic");
  for (std::size_t alpha = 0; alpha < 2; ++alpha)
    for (std::size_t beta = 0; beta < 2; ++beta) {
      const Behavior g = from_rule(b.scenario(), deterministic([=](std::size_t y) { return y ^ alpha; },
                                                               [=](std::size_t x) { return x ^ beta; }));
      if (g == b) return true;
    }
  return false;
}

Behavior gyni_behavior() {
  return from_rule(Scenario::bipartite(2, 2, 2, 2),
                   deterministic([](std::size_t y) { return y; }, [](std::size_t x) { return x; }));
}

}  // namespace nbts::catalog
