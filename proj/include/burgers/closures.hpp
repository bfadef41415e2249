#pragma once

#include <array>
#include <string>

#include "burgers/types.hpp"

namespace burgers::closures {

// Stabilizing closure catalog: seven eddy-viscosity laws evaluated into
// per-mode viscosity profiles, plus the energy-scaled nonlinear term.

enum class Kind { None, H, R, RQ, RS, T, SK, CLM, NEV, Combined };

Kind kind_from_string(const std::string& name);
std::string to_string(Kind kind);

enum class Scope { VelocityOnly, BothFields };

struct ClosureSpec {
  Kind kind = Kind::None;
  // Linear law used by Kind::Combined (any of H..CLM).
  Kind linear_kind = Kind::H;
  double mu_e = 0.0;   // linear amplitude
  double mu_nl = 0.0;  // nonlinear amplitude
  int m = 0;           // mode threshold (T, SK)
  std::array<double, 4> alphas{1.0, 1.0, 1.0, 1.0};  // CLM gains, all > 0
  Scope scope = Scope::VelocityOnly;
  // When set, the boundary term mu*B2 is scaled per mode by the closure
  // profile instead of keeping the physical viscosity.
  bool scale_boundary = false;

  bool has_nonlinear() const { return kind == Kind::NEV || kind == Kind::Combined; }
  Kind effective_linear_kind() const {
    if (kind == Kind::Combined) return linear_kind;
    if (kind == Kind::NEV) return Kind::None;
    return kind;
  }
  void validate(int r) const;
};

/// Retained POD eigenvalues together with the viscous diagonal of the ROM.
struct ModeSpectrum {
  VectorXd lambdas;
  VectorXd d_diag;

  double v_infinity() const { return 0.5 * lambdas.sum(); }
};

/// Per-mode viscosity profile mu_cl[1..r] of the selected linear law, applied
/// on top of the physical coefficient mu. Mode indices run 1..r within one
/// field block. Kind::None (and the nonlinear-only kinds) return the constant
/// physical profile.
VectorXd viscosity_profile(const ClosureSpec& spec, double mu, int r);

/// H_nev: mu_nl * sqrt(V(q)/V_inf) * d_ii * q_i with V(q) = 0.5*sum q_i^2.
VectorXd nonlinear_penalty(double mu_nl, const VectorXd& q,
                           const ModeSpectrum& spectrum);

void nonlinear_penalty_into(double mu_nl, const VectorXd& q,
                            const ModeSpectrum& spectrum, VectorXd& out);

}  // namespace burgers::closures
