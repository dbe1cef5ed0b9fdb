#include "chsoliton/soliton.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace chs {

SolitonThresholds SolitonThresholds::from_env() {
  SolitonThresholds th;
  if (const char* raw = std::getenv("SOLITON_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(raw, &end);
    if (end != raw && *end == '\0' && std::isfinite(v) && v > 0.0) th.soliton = v;
  }
  return th;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Soliton: return "soliton";
    case Verdict::NotSoliton: return "not-soliton";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string to_string(SolitonType t) {
  switch (t) {
    case SolitonType::Expanding: return "expanding";
    case SolitonType::Steady: return "steady";
    case SolitonType::Shrinking: return "shrinking";
    case SolitonType::Undetermined: return "undetermined";
  }
  return "undetermined";
}

namespace {

SolitonType type_of(double c, double tol) {
  if (c < -tol) return SolitonType::Expanding;
  if (c > tol) return SolitonType::Shrinking;
  return SolitonType::Steady;
}

Vector flatten(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

}  // namespace

EinsteinResult einstein_check(const MetricLieAlgebra& alg, double tol) {
  const Endomorphism ric = ricci(alg);
  const int d = alg.dim();
  EinsteinResult out;
  out.c = ric.trace() / d;
  out.residual = (ric - out.c * Matrix::Identity(d, d)).norm();
  out.einstein = out.residual <= tol;
  return out;
}

EinsteinResult einstein_check(const Subalgebra& sub, double tol) { return einstein_check(sub.induced(), tol); }

SolitonCertificate certify_soliton(const MetricLieAlgebra& alg, const SolitonThresholds& th) {
  SolitonCertificate cert;
  const int d = alg.dim();
  cert.ricci = ricci(alg);
  const std::vector<Endomorphism> ders = derivation_space(alg);
  cert.derivation_dim = static_cast<int>(ders.size());

  const Eigen::Index rows = static_cast<Eigen::Index>(d) * d;
  Matrix a(rows, static_cast<Eigen::Index>(ders.size()) + 1);
  a.col(0) = flatten(Matrix::Identity(d, d));
  for (std::size_t k = 0; k < ders.size(); ++k) a.col(static_cast<Eigen::Index>(k) + 1) = flatten(ders[k]);
  const Vector rhs = flatten(cert.ricci);

  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(a);
  cod.setThreshold(kRankTolerance);
  const Vector sol = cod.solve(rhs);
  cert.unique = cod.rank() == a.cols();
  cert.c = sol(0);
  cert.d = Matrix::Zero(d, d);
  for (std::size_t k = 0; k < ders.size(); ++k) cert.d += sol(static_cast<Eigen::Index>(k) + 1) * ders[k];

  cert.residual = (cert.ricci - cert.c * Matrix::Identity(d, d) - cert.d).norm();
  cert.derivation_residual = derivation_residual(alg, cert.d);

  const bool fits = cert.residual <= th.soliton && cert.derivation_residual <= th.soliton;
  if (fits) {
    cert.verdict = Verdict::Soliton;
  } else if (cert.residual >= th.falsification) {
    cert.verdict = Verdict::NotSoliton;
  } else {
    cert.verdict = Verdict::Inconclusive;
  }
  cert.is_soliton = cert.verdict == Verdict::Soliton;

  cert.einstein_constant = cert.ricci.trace() / d;
  const double einstein_res = (cert.ricci - cert.einstein_constant * Matrix::Identity(d, d)).norm();
  cert.is_einstein = cert.is_soliton && einstein_res <= th.soliton;

  if (cert.is_einstein) {
    cert.type = type_of(cert.einstein_constant, th.soliton);
  } else if (cert.is_soliton && cert.unique) {
    cert.type = type_of(cert.c, th.soliton);
  } else {
    cert.type = SolitonType::Undetermined;
  }
  return cert;
}

SolitonCertificate certify_soliton(const Subalgebra& sub, const SolitonThresholds& th) {
  return certify_soliton(sub.induced(), th);
}

double nilsoliton_constant(double phi, int dim_mphi) {
  if (!(phi >= 0.0) || phi >= std::numbers::pi / 2 - 1e-12) {
    throw std::invalid_argument("nilsoliton_constant: angle must lie in [0, pi/2)");
  }
  if (dim_mphi < 1) throw std::invalid_argument("nilsoliton_constant: dim m_phi must be positive");
  if (phi > 1e-12 && dim_mphi % 2 != 0) {
    throw std::invalid_argument("nilsoliton_constant: dim m_phi must be even for 0 < phi < pi/2");
  }
  const double c = std::cos(phi);
  return -0.25 * c * c * (dim_mphi + 4);
}

double nilsoliton_auxiliary(double phi, int dim_alpha_complement, const std::vector<SignatureEntry>& pieces) {
  double acc = dim_alpha_complement;
  for (const auto& p : pieces) {
    const double s = std::sin(p.angle);
    acc += p.dim * s * s;
  }
  const double s = std::sin(phi);
  return 0.25 * acc + s * s;
}

LauretReport lauret_conditions(const Subalgebra& sub, const SolitonThresholds& th) {
  LauretReport rep;
  const NilradicalSplit split = split_nilradical(sub);
  if (split.nilpotent) {
    rep.self_nilradical = true;
    return rep;
  }
  const auto model = sub.ambient_ptr();
  const Vector t = *split.t;
  const Vector t_unit = t / t.norm();
  const Eigen::Index k = split.nilradical.cols();

  Matrix ordered(model->dim(), k + 1);
  ordered.col(0) = t_unit;
  if (k > 0) ordered.rightCols(k) = split.nilradical;
  const Subalgebra s(model, ordered);
  const MetricLieAlgebra& alg = s.induced();

  // (ii): b is one-dimensional, spanned by the unit T
  rep.b_abelian = true;

  // (iii) ad(X)^T is a derivation of s
  const Matrix ad_x = alg.ad_basis(0);
  rep.derivation_residual = derivation_residual(alg, ad_x.transpose());
  rep.transpose_derivation = rep.derivation_residual <= th.soliton;

  const Matrix sym = ad_x + ad_x.transpose();
  const double tr = (sym * sym).trace();

  // (i) nilradical is a nilsoliton
  bool l_abelian = true;
  if (k > 0) {
    const Subalgebra l(model, split.nilradical);
    l_abelian = l.induced().is_abelian(1e-12);
    const SolitonCertificate cl = certify_soliton(l.induced(), th);
    rep.nilsoliton = cl.is_soliton;
    rep.nilradical_residual = cl.residual;
    if (!l_abelian) rep.cbar = cl.c;
  } else {
    rep.nilsoliton = true;
  }

  if (l_abelian) {
    rep.cbar_free = true;
    if (tr > 0.0) {
      rep.cbar = -tr / 4.0;  // solves (iv) for unit X
      rep.normalization = true;
    } else {
      rep.normalization = k == 0;
    }
    rep.normalization_residual = 0.0;
  } else if (rep.cbar < 0.0) {
    rep.normalization_residual = std::abs(1.0 + tr / (4.0 * rep.cbar));
    rep.normalization = rep.normalization_residual <= th.soliton;
  } else {
    rep.normalization_residual = std::numeric_limits<double>::infinity();
    rep.normalization = false;
  }

  const SolitonCertificate cs = certify_soliton(alg, th);
  if (cs.is_soliton && cs.unique) rep.s_constant = cs.c;
  return rep;
}

}  // namespace chs
