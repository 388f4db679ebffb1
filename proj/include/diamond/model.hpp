#pragma once

#include <optional>
#include <span>
#include <vector>

#include "diamond/linalg.hpp"

namespace diamond {

/// Mode indices of the diamond, zero based: ports 1..4 map to 0..3.
inline constexpr std::size_t kPort1 = 0;
inline constexpr std::size_t kPort2 = 1;
inline constexpr std::size_t kPort3 = 2;
inline constexpr std::size_t kPort4 = 3;

/// Full parameterization of the four-mode diamond. All rates in rad/s.
///
/// Ports 1 and 3 resonate at `omega`, ports 2 and 4 at `Omega`. Hopping
/// rates run along the edges 1-2 (g), 2-3 (h), 3-4 (f) and 4-1 (k); the real
/// parametric rate `gamma` sits on both diagonals 1-3 and 2-4. Linewidths are
/// shared by opposite corners (Gamma1 for ports 1,3 and Gamma2 for ports 2,4).
struct DiamondParams {
  double omega = 0.0;
  double Omega = 0.0;
  cplx g;
  cplx h;
  cplx f;
  cplx k;
  double gamma = 0.0;
  double Gamma1 = 0.0;
  double Gamma2 = 0.0;

  /// Throws InvalidParams naming the first violated invariant.
  void validate() const;

  /// Round-trip phase arg(g) + arg(h) + arg(f) + arg(k).
  double theta() const;
  double q1() const { return omega / Gamma1; }
  double q2() const { return Omega / Gamma2; }
  /// {Gamma1, Gamma2, Gamma1, Gamma2}
  std::vector<double> linewidths() const;

  friend bool operator==(const DiamondParams&, const DiamondParams&) = default;
};

/// Linewidth from quality factor, Gamma = resonance / Q.
double linewidth_from_q(double resonance, double q);

/// Normalized auxiliary pump amplitudes at ports 2 and 4 (relative to the
/// port-1 signal amplitude).
struct PumpConfig {
  cplx a2bar;
  cplx a4bar;

  bool active() const { return a2bar != 0.0 || a4bar != 0.0; }
  friend bool operator==(const PumpConfig&, const PumpConfig&) = default;
};

struct ModeSpec {
  double resonance = 0.0;
  double linewidth = 0.0;
};

struct HoppingEdge {
  std::size_t from = 0;
  std::size_t to = 0;
  /// Rate c of the term c a_from a_to^dagger + h.c.
  cplx rate;
};

struct ParametricEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  double rate = 0.0;
};

/// Arbitrary network of modes with beamsplitter and two-mode-squeezing
/// couplings, the general form of the diamond.
struct CouplingGraph {
  std::vector<ModeSpec> modes;
  std::vector<HoppingEdge> hopping_edges;
  std::vector<ParametricEdge> parametric_edges;

  /// Throws InvalidGraph.
  void validate() const;
  std::vector<double> linewidths() const;
};

/// The four-mode graph equivalent to `p`.
CouplingGraph diamond_graph(const DiamondParams& p);

/// The 8x8 doubled-space system matrix of the diamond written out entry by
/// entry. `frame_reference` is subtracted from every resonance (annihilation
/// block -i(w_n - ref), creation block +i(w_n - ref)); zero is the lab frame.
ComplexMatrix build_diamond_matrix(const DiamondParams& p, double frame_reference = 0.0);

/// 2N x 2N system matrix of an arbitrary graph in the basis
/// {a_1..a_N, a_1^dagger..a_N^dagger}.
ComplexMatrix build_graph_matrix(const CouplingGraph& graph, double frame_reference = 0.0);

/// Sign of the second term of S = I -/+ sqrt(G) (iwI + M)^-1 sqrt(G).
///   paper:    I - ..., the default.
///   standard: I + ..., what the Langevin and input-output relations give
///             for e^{-iwt} fields. Only reflection entries differ in magnitude.
enum class Convention { paper, standard };

/// lab: resonances as given, probe w is an absolute frequency.
/// rotating: everything referenced to the port-1 resonance omega, so mode
///           1 and 3 (and their conjugates) sit at zero and the probe is the
///           detuning from omega. The reference operating points
///           (R(omega) = 3.652 and so on) hold in this frame.
enum class Frame { lab, rotating };

struct ScatteringResult {
  /// Probe frequency in the frame of the matrix it was computed from.
  double w = 0.0;
  ComplexMatrix s;
  Convention convention = Convention::paper;
  /// Largest parametric rate in the generating model; gates contractivity_check.
  double parametric_rate = 0.0;

  /// Transmission from port `from` to port `to` (annihilation block).
  cplx transmission(std::size_t to, std::size_t from) const { return s(to, from); }
};

/// S(w) for a 2N x 2N system matrix with per-mode linewidths (length N).
ScatteringResult scattering(const ComplexMatrix& m, std::span<const double> linewidths, double w,
                            Convention convention);

/// S for the diamond at `detuning` (rad/s) from omega in the requested frame.
ScatteringResult diamond_scattering(const DiamondParams& p, double detuning, Frame frame,
                                    Convention convention);

/// 1/2 (|S31/S13|^2 + |S13/S31|^2). Throws DegenerateTransmission when either
/// transmission is below kDegenerateTransmission.
double intrinsic_nonreciprocity(const ScatteringResult& s);

inline constexpr double kDegenerateTransmission = 1e-30;

/// (S31 + S32 a2 + S34 a4) / (S13 + S12 a2 + S14 a4)
cplx extrinsic_W(const ScatteringResult& s, const PumpConfig& pumps);

/// 1/2 (|W|^2 + |W|^-2)
double extrinsic_nonreciprocity(const ScatteringResult& s, const PumpConfig& pumps);

/// Symmetrized non-reciprocity from a transfer ratio, 1/2 (|W|^2 + |W|^-2).
double symmetrized_ratio(cplx W);

struct DirectionalGains {
  /// |S31 + S32 a2 + S34 a4|^2, port 1 towards port 3.
  double forward = 0.0;
  /// |S13 + S12 a2 + S14 a4|^2, port 3 towards port 1.
  double backward = 0.0;
};

DirectionalGains directional_gains(const ScatteringResult& s, const PumpConfig& pumps);

/// Largest singular value of the annihilation block of S. Only meaningful
/// (and only computed) for passive networks under Convention::standard;
/// returns nullopt otherwise.
std::optional<double> contractivity_check(const ScatteringResult& s);

}  // namespace diamond
