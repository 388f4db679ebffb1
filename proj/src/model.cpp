#include "diamond/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "diamond/errors.hpp"

namespace diamond {

namespace {

constexpr cplx kI{0.0, 1.0};

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

void DiamondParams::validate() const {
  if (!(std::isfinite(omega) && omega > 0.0)) throw InvalidParams("omega must be positive and finite");
  if (!(std::isfinite(Omega) && Omega > 0.0)) throw InvalidParams("Omega must be positive and finite");
  if (omega == Omega) throw InvalidParams("omega and Omega must differ for resonant pump drives");
  if (!(std::isfinite(Gamma1) && Gamma1 > 0.0)) throw InvalidParams("Gamma1 must be positive and finite");
  if (!(std::isfinite(Gamma2) && Gamma2 > 0.0)) throw InvalidParams("Gamma2 must be positive and finite");
  if (!(std::isfinite(gamma) && gamma >= 0.0)) throw InvalidParams("gamma must be non-negative and finite");
  if (!finite(g) || !finite(h) || !finite(f) || !finite(k)) throw InvalidParams("hopping rates must be finite");
}

double DiamondParams::theta() const { return std::arg(g) + std::arg(h) + std::arg(f) + std::arg(k); }

std::vector<double> DiamondParams::linewidths() const { return {Gamma1, Gamma2, Gamma1, Gamma2}; }

double linewidth_from_q(double resonance, double q) {
  if (!(q > 0.0)) throw InvalidParams("quality factor must be positive");
  return resonance / q;
}

void CouplingGraph::validate() const {
  if (modes.empty()) throw InvalidGraph("graph needs at least one mode");
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (!(std::isfinite(modes[i].resonance) && modes[i].resonance > 0.0))
      throw InvalidGraph("mode " + std::to_string(i) + ": resonance must be positive");
    if (!(std::isfinite(modes[i].linewidth) && modes[i].linewidth > 0.0))
      throw InvalidGraph("mode " + std::to_string(i) + ": linewidth must be positive");
  }
  auto check_pair = [&](std::size_t a, std::size_t b, std::set<std::pair<std::size_t, std::size_t>>& seen,
                        const char* kind) {
    if (a >= modes.size() || b >= modes.size()) throw InvalidGraph(std::string(kind) + " edge endpoint out of range");
    if (a == b) throw InvalidGraph(std::string(kind) + " edge endpoints must differ");
    if (!seen.insert(std::minmax(a, b)).second) throw InvalidGraph(std::string("duplicate ") + kind + " edge");
  };
  std::set<std::pair<std::size_t, std::size_t>> hop;
  for (const auto& e : hopping_edges) {
    check_pair(e.from, e.to, hop, "hopping");
    if (!finite(e.rate)) throw InvalidGraph("hopping rate must be finite");
  }
  std::set<std::pair<std::size_t, std::size_t>> par;
  for (const auto& e : parametric_edges) {
    check_pair(e.a, e.b, par, "parametric");
    if (!(std::isfinite(e.rate) && e.rate >= 0.0)) throw InvalidGraph("parametric rate must be non-negative");
  }
}

std::vector<double> CouplingGraph::linewidths() const {
  std::vector<double> out;
  out.reserve(modes.size());
  for (const auto& m : modes) out.push_back(m.linewidth);
  return out;
}

CouplingGraph diamond_graph(const DiamondParams& p) {
  CouplingGraph graph;
  graph.modes = {{p.omega, p.Gamma1}, {p.Omega, p.Gamma2}, {p.omega, p.Gamma1}, {p.Omega, p.Gamma2}};
  graph.hopping_edges = {
      {kPort1, kPort2, p.g},
      {kPort2, kPort3, p.h},
      {kPort3, kPort4, p.f},
      {kPort4, kPort1, p.k},
  };
  graph.parametric_edges = {{kPort1, kPort3, p.gamma}, {kPort2, kPort4, p.gamma}};
  return graph;
}

ComplexMatrix build_diamond_matrix(const DiamondParams& p, double frame_reference) {
  p.validate();
  const double w = p.omega - frame_reference;
  const double W = p.Omega - frame_reference;
  const double G1 = 0.5 * p.Gamma1;
  const double G2 = 0.5 * p.Gamma2;
  const cplx i = kI;
  const cplx gc = std::conj(p.g), hc = std::conj(p.h), fc = std::conj(p.f), kc = std::conj(p.k);
  const cplx y = p.gamma;
  const cplx z = 0.0;
  // clang-format off
  std::vector<cplx> e = {
    -i*w - G1, -i*gc,     z,         -i*p.k,    z,         z,         -i*y,      z,
    -i*p.g,    -i*W - G2, -i*hc,     z,         z,         z,         z,         -i*y,
    z,         -i*p.h,    -i*w - G1, -i*fc,     -i*y,      z,         z,         z,
    -i*kc,     z,         -i*p.f,    -i*W - G2, z,         -i*y,      z,         z,
    z,         z,         +i*y,      z,         +i*w - G1, +i*p.g,    z,         +i*kc,
    z,         z,         z,         +i*y,      +i*gc,     +i*W - G2, +i*p.h,    z,
    +i*y,      z,         z,         z,         z,         +i*hc,     +i*w - G1, +i*p.f,
    z,         +i*y,      z,         z,         +i*p.k,    z,         +i*fc,     +i*W - G2,
  };
  // clang-format on
  return {8, 8, std::move(e)};
}

ComplexMatrix build_graph_matrix(const CouplingGraph& graph, double frame_reference) {
  graph.validate();
  const std::size_t n = graph.modes.size();
  const std::size_t dim = 2 * n;
  std::vector<cplx> e(dim * dim);
  auto at = [&](std::size_t r, std::size_t c) -> cplx& { return e[r * dim + c]; };

  for (std::size_t m = 0; m < n; ++m) {
    const double w = graph.modes[m].resonance - frame_reference;
    const double half = 0.5 * graph.modes[m].linewidth;
    at(m, m) = -kI * w - half;
    at(m + n, m + n) = kI * w - half;
  }
  // c a_m a_n^dagger + c* a_n a_m^dagger: da_n/dt gets -i c a_m, da_m/dt gets -i c* a_n.
  for (const auto& edge : graph.hopping_edges) {
    const std::size_t m = edge.from;
    const std::size_t nn = edge.to;
    at(nn, m) += -kI * edge.rate;
    at(m, nn) += -kI * std::conj(edge.rate);
    at(nn + n, m + n) += kI * std::conj(edge.rate);
    at(m + n, nn + n) += kI * edge.rate;
  }
  // gamma (a_a a_b + a_a^dagger a_b^dagger) couples each mode to its partner's conjugate.
  for (const auto& edge : graph.parametric_edges) {
    const std::size_t a = edge.a;
    const std::size_t b = edge.b;
    at(a, b + n) += -kI * edge.rate;
    at(b, a + n) += -kI * edge.rate;
    at(a + n, b) += kI * edge.rate;
    at(b + n, a) += kI * edge.rate;
  }
  return {dim, dim, std::move(e)};
}

ScatteringResult scattering(const ComplexMatrix& m, std::span<const double> linewidths, double w,
                            Convention convention) {
  if (!m.square() || m.rows() != 2 * linewidths.size()) {
    throw DimensionMismatch("scattering: system matrix must be 2N x 2N for N linewidths");
  }
  const std::size_t n = linewidths.size();
  const std::size_t dim = m.rows();

  std::vector<cplx> shifted(m.entries().begin(), m.entries().end());
  for (std::size_t i = 0; i < dim; ++i) shifted[i * dim + i] += cplx(0.0, w);
  const ComplexMatrix resolvent = invert(ComplexMatrix(dim, dim, std::move(shifted)));

  std::vector<double> root(dim);
  for (std::size_t i = 0; i < dim; ++i) root[i] = std::sqrt(linewidths[i % n]);

  const double sign = convention == Convention::paper ? -1.0 : 1.0;
  std::vector<cplx> s(dim * dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c)
      s[r * dim + c] = (r == c ? 1.0 : 0.0) + sign * root[r] * resolvent(r, c) * root[c];

  // Any coupling between the two blocks of the generating matrix counts as parametric.
  double parametric = 0.0;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) parametric = std::max(parametric, std::abs(m(r, c + n)));

  return ScatteringResult{w, ComplexMatrix(dim, dim, std::move(s)), convention, parametric};
}

ScatteringResult diamond_scattering(const DiamondParams& p, double detuning, Frame frame,
                                    Convention convention) {
  const double reference = frame == Frame::rotating ? p.omega : 0.0;
  const double w = frame == Frame::rotating ? detuning : p.omega + detuning;
  const auto widths = p.linewidths();
  return scattering(build_diamond_matrix(p, reference), widths, w, convention);
}

double intrinsic_nonreciprocity(const ScatteringResult& s) {
  const cplx s31 = s.transmission(kPort3, kPort1);
  const cplx s13 = s.transmission(kPort1, kPort3);
  if (std::abs(s31) < kDegenerateTransmission || std::abs(s13) < kDegenerateTransmission) {
    throw DegenerateTransmission("|S13| or |S31| vanishes; no transmission path between ports 1 and 3");
  }
  return symmetrized_ratio(s31 / s13);
}

namespace {

struct PumpedTransfer {
  cplx forward;
  cplx backward;
};

PumpedTransfer pumped_transfer(const ScatteringResult& s, const PumpConfig& pumps) {
  if (s.s.rows() < 8) throw DimensionMismatch("pumped transfer needs the four-port diamond");
  return {
      s.transmission(kPort3, kPort1) + s.transmission(kPort3, kPort2) * pumps.a2bar +
          s.transmission(kPort3, kPort4) * pumps.a4bar,
      s.transmission(kPort1, kPort3) + s.transmission(kPort1, kPort2) * pumps.a2bar +
          s.transmission(kPort1, kPort4) * pumps.a4bar,
  };
}

}  // namespace

double symmetrized_ratio(cplx W) {
  const double w2 = std::norm(W);
  return 0.5 * (w2 + 1.0 / w2);
}

cplx extrinsic_W(const ScatteringResult& s, const PumpConfig& pumps) {
  const auto t = pumped_transfer(s, pumps);
  if (std::abs(t.backward) < kDegenerateTransmission || std::abs(t.forward) < kDegenerateTransmission) {
    throw DegenerateTransmission("pumped transfer between ports 1 and 3 vanishes");
  }
  return t.forward / t.backward;
}

double extrinsic_nonreciprocity(const ScatteringResult& s, const PumpConfig& pumps) {
  return symmetrized_ratio(extrinsic_W(s, pumps));
}

DirectionalGains directional_gains(const ScatteringResult& s, const PumpConfig& pumps) {
  const auto t = pumped_transfer(s, pumps);
  return {std::norm(t.forward), std::norm(t.backward)};
}

std::optional<double> contractivity_check(const ScatteringResult& s) {
  if (s.convention != Convention::standard || s.parametric_rate > 0.0) return std::nullopt;
  const std::size_t n = s.s.rows() / 2;

  // Power iteration on A^dagger A for the annihilation block A.
  auto apply = [&](const std::vector<cplx>& x) {
    std::vector<cplx> ax(n), out(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) ax[r] += s.s(r, c) * x[c];
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) out[r] += std::conj(s.s(c, r)) * ax[c];
    return out;
  };
  std::vector<cplx> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = cplx(1.0 + 0.1 * static_cast<double>(i), 0.05 * static_cast<double>(i));
  double lambda = 0.0;
  for (int iter = 0; iter < 2000; ++iter) {
    double norm = 0.0;
    for (const auto& v : x) norm += std::norm(v);
    norm = std::sqrt(norm);
    for (auto& v : x) v /= norm;
    const auto y = apply(x);
    double next = 0.0;
    for (std::size_t i = 0; i < n; ++i) next += (std::conj(x[i]) * y[i]).real();
    x = y;
    if (iter > 10 && std::abs(next - lambda) <= 1e-15 * std::max(1.0, next)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(std::max(lambda, 0.0));
}

}  // namespace diamond
