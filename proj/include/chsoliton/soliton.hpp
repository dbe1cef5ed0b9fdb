#pragma once

#include "chsoliton/kahler.hpp"
#include "chsoliton/submanifold.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace chs {

struct SolitonThresholds {
  double soliton = 1e-9;        ///< residual at or below: soliton
  double falsification = 1e-4;  ///< residual at or above: not a soliton

  /// Defaults, with `soliton` replaced by SOLITON_TOL when it parses as a positive number.
  static SolitonThresholds from_env();
};

enum class Verdict { Soliton, NotSoliton, Inconclusive };
enum class SolitonType { Expanding, Steady, Shrinking, Undetermined };

std::string to_string(Verdict v);
std::string to_string(SolitonType t);

/// Least-squares fit of Ric = c id + D over D in Der(s).
struct SolitonCertificate {
  Verdict verdict = Verdict::NotSoliton;
  bool is_soliton = false;
  double c = 0.0;
  Endomorphism d;
  double residual = 0.0;             ///< |Ric - c id - D|_F
  double derivation_residual = 0.0;  ///< largest component of D[x,y] - [Dx,y] - [x,Dy]
  bool is_einstein = false;
  double einstein_constant = 0.0;  ///< tr(Ric) / dim
  bool unique = false;
  int derivation_dim = 0;
  SolitonType type = SolitonType::Undetermined;
  Endomorphism ricci;
};

SolitonCertificate certify_soliton(const MetricLieAlgebra& alg, const SolitonThresholds& th = SolitonThresholds::from_env());
SolitonCertificate certify_soliton(const Subalgebra& sub, const SolitonThresholds& th = SolitonThresholds::from_env());

struct EinsteinResult {
  bool einstein = false;
  double c = 0.0;
  double residual = 0.0;
};

EinsteinResult einstein_check(const MetricLieAlgebra& alg, double tol = 1e-9);
EinsteinResult einstein_check(const Subalgebra& sub, double tol = 1e-9);

/// -cos^2(phi) (dim m_phi + 4) / 4. Throws for phi outside [0, pi/2) or an invalid dimension.
double nilsoliton_constant(double phi, int dim_mphi);

/// c = (dim(g_alpha - m) + sum_psi dim m_psi sin^2 psi) / 4 + sin^2 phi for the
/// nilradical m + RZ whose non-totally-real angle is phi.
double nilsoliton_auxiliary(double phi, int dim_alpha_complement, const std::vector<SignatureEntry>& pieces);

/// Conditions for s = b + l (l the nilradical) to be a solvsoliton built on a nilsoliton.
struct LauretReport {
  bool self_nilradical = false;  ///< s is nilpotent: nothing to check
  bool nilsoliton = false;       ///< (i)
  bool b_abelian = false;        ///< (ii)
  bool transpose_derivation = false;  ///< (iii)
  bool normalization = false;         ///< (iv)
  double cbar = 0.0;
  bool cbar_free = false;  ///< l abelian: any cbar < 0 works, the one solving (iv) is reported
  std::optional<double> s_constant;  ///< constant of s when it certifies uniquely
  double nilradical_residual = 0.0;
  double derivation_residual = 0.0;
  double normalization_residual = 0.0;

  bool all() const { return !self_nilradical && nilsoliton && b_abelian && transpose_derivation && normalization; }
};

LauretReport lauret_conditions(const Subalgebra& sub, const SolitonThresholds& th = SolitonThresholds::from_env());

}  // namespace chs
