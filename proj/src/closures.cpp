#include "burgers/closures.hpp"

#include <cmath>

namespace burgers::closures {

Kind kind_from_string(const std::string& name) {
  if (name == "none") return Kind::None;
  if (name == "h") return Kind::H;
  if (name == "r") return Kind::R;
  if (name == "rq") return Kind::RQ;
  if (name == "rs") return Kind::RS;
  if (name == "t") return Kind::T;
  if (name == "sk") return Kind::SK;
  if (name == "clm") return Kind::CLM;
  if (name == "nev") return Kind::NEV;
  if (name == "h+nev" || name == "combined") return Kind::Combined;
  throw ConfigError("unknown closure kind '" + name + "'");
}

std::string to_string(Kind kind) {
  switch (kind) {
    case Kind::None: return "none";
    case Kind::H: return "h";
    case Kind::R: return "r";
    case Kind::RQ: return "rq";
    case Kind::RS: return "rs";
    case Kind::T: return "t";
    case Kind::SK: return "sk";
    case Kind::CLM: return "clm";
    case Kind::NEV: return "nev";
    case Kind::Combined: return "h+nev";
  }
  return "none";
}

void ClosureSpec::validate(int r) const {
  const Kind lin = effective_linear_kind();
  if (lin == Kind::T || lin == Kind::SK) {
    if (m < 0 || m > r)
      throw InvalidThreshold("closure threshold m must lie in [0, r]");
  }
  if (lin == Kind::CLM) {
    for (double a : alphas)
      if (!(a > 0.0)) throw NonPositiveGains("CLM gains must be positive");
  }
}

VectorXd viscosity_profile(const ClosureSpec& spec, double mu, int r) {
  if (r < 1) throw DimensionMismatch("viscosity_profile: r must be >= 1");
  spec.validate(r);
  const Kind lin = spec.effective_linear_kind();
  const double mu_e = spec.mu_e;

  VectorXd prof(r);
  for (int idx = 0; idx < r; ++idx) {
    const double i = double(idx + 1);  // mode index 1..r
    double v = mu;
    switch (lin) {
      case Kind::None:
        break;
      case Kind::H:
        v = mu + mu_e;
        break;
      case Kind::R:
        v = mu + mu_e * (i / r);
        break;
      case Kind::RQ:
        v = mu + mu_e * (i / r) * (i / r);
        break;
      case Kind::RS:
        v = mu + mu_e * std::sqrt(i / r);
        break;
      case Kind::T:
        v = (idx + 1 <= spec.m) ? mu : mu + mu_e;
        break;
      case Kind::SK: {
        // Defined for i <= m; the exponent is singular at i == m, resolved as
        // the limit: 0 for i == m != r, mu_e for i == m == r.
        if (idx + 1 > spec.m) {
          v = mu;
        } else if (idx + 1 == spec.m) {
          v = (spec.m == r) ? mu + mu_e : mu;
        } else {
          const double num = (i - r) * (i - r);
          const double den = (i - spec.m) * (i - spec.m);
          v = mu + mu_e * std::exp(-num / den);
        }
        break;
      }
      case Kind::CLM: {
        const auto& a = spec.alphas;
        v = mu + mu_e * std::pow(a[0], -1.5) *
                    (a[1] + a[2] * std::exp(-a[3] * r / i));
        break;
      }
      default:
        break;
    }
    prof[idx] = v;
  }
  return prof;
}

void nonlinear_penalty_into(double mu_nl, const VectorXd& q,
                            const ModeSpectrum& spectrum, VectorXd& out) {
  const Eigen::Index r = q.size();
  if (spectrum.lambdas.size() == 0 || !(spectrum.v_infinity() > 0.0))
    throw EmptySpectrum("nonlinear_penalty: V_inf must be positive");
  if (spectrum.d_diag.size() != r)
    throw DimensionMismatch("nonlinear_penalty: d_diag does not conform to q");

  const double v = 0.5 * q.squaredNorm();
  const double scale = mu_nl * std::sqrt(v / spectrum.v_infinity());
  out.resize(r);
  for (Eigen::Index i = 0; i < r; ++i) out[i] = scale * spectrum.d_diag[i] * q[i];
}

VectorXd nonlinear_penalty(double mu_nl, const VectorXd& q,
                           const ModeSpectrum& spectrum) {
  VectorXd out;
  nonlinear_penalty_into(mu_nl, q, spectrum, out);
  return out;
}

}  // namespace burgers::closures
