#include "chsoliton/families.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

namespace chs {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;
constexpr double kConditionTolerance = 1e-7;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

bool uses_mphi(Item item) {
  return item == Item::III || item == Item::IV || item == Item::VI || item == Item::N2;
}

bool uses_u(Item item) { return item == Item::II || item == Item::III || item == Item::V || item == Item::VI; }

bool uses_v(Item item) { return item == Item::I || item == Item::II || item == Item::N1; }

}  // namespace

std::string to_string(Item item) {
  switch (item) {
    case Item::I: return "I";
    case Item::II: return "II";
    case Item::III: return "III";
    case Item::IV: return "IV";
    case Item::V: return "V";
    case Item::VI: return "VI";
    case Item::N1: return "N1";
    case Item::N2: return "N2";
  }
  return "?";
}

Item parse_item(const std::string& text) {
  std::string s;
  for (char c : text) s.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  static const std::pair<const char*, Item> table[] = {
      {"1", Item::I},   {"I", Item::I},   {"2", Item::II}, {"II", Item::II}, {"3", Item::III}, {"III", Item::III},
      {"4", Item::IV},  {"IV", Item::IV}, {"5", Item::V},  {"V", Item::V},   {"6", Item::VI},  {"VI", Item::VI},
      {"N1", Item::N1}, {"N2", Item::N2}};
  for (const auto& [name, item] : table)
    if (s == name) return item;
  throw std::invalid_argument("unknown item '" + text + "' (expected 1-6, I-VI, N1 or N2)");
}

bool is_nilpotent_item(Item item) {
  return item == Item::I || item == Item::IV || item == Item::N1 || item == Item::N2;
}

std::optional<double> required_u_norm(const FamilySpec& spec) {
  const double c = std::cos(spec.phi);
  if (spec.item == Item::III) return std::tan(spec.phi);
  if (spec.item == Item::VI) {
    const double dphi = spec.dim_mphi;
    const double u2 = (dphi + spec.dim_mpi2 + 4.0) / ((dphi + 4.0) * c * c) - 1.0;
    return std::sqrt(std::max(0.0, u2));
  }
  return std::nullopt;
}

FamilySpec canonicalize(const FamilySpec& spec) {
  FamilySpec out = spec;
  if (uses_v(spec.item)) {
    if (out.v_norm != 0.0 && out.t == 0.0) {
      out.dim_mpi2 += 1;
      out.v_norm = 0.0;
    } else if (out.v_norm != 0.0) {
      out.t /= out.v_norm;
      out.v_norm = 1.0;
    } else if (out.t != 0.0) {
      out.t = 1.0;
      out.x = 0.0;
    }
  } else {
    out.v_norm = 0.0;
    out.t = 0.0;
  }
  if (spec.item != Item::II) out.x = 0.0;
  if (!uses_mphi(spec.item)) {
    out.dim_mphi = 0;
    out.phi = 0.0;
  }
  if (uses_u(spec.item)) {
    if (auto req = required_u_norm(spec)) {
      out.u_norm = req;
    } else if (!out.u_norm) {
      out.u_norm = 0.0;
    }
  } else {
    out.u_norm.reset();
  }
  return out;
}

Matrix random_unitary(int complex_dim, std::uint64_t seed) {
  const int k = complex_dim;
  Matrix real = Matrix::Identity(2 * k, 2 * k);
  if (seed == 0 || k == 0) return real;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd g(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(i, j) = {re, im};
    }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const double a = q(i, j).real();
      const double b = q(i, j).imag();
      real(2 * i, 2 * j) = a;
      real(2 * i, 2 * j + 1) = -b;
      real(2 * i + 1, 2 * j) = b;
      real(2 * i + 1, 2 * j + 1) = a;
    }
  return real;
}

namespace {

void require(bool ok, const std::string& condition, const std::string& detail) {
  if (!ok) throw FamilyError(condition, detail);
}

void validate_common(const FamilySpec& s) {
  require(s.n >= 2, "complex dimension", "n must be at least 2, got " + std::to_string(s.n));
  require(s.dim_mphi >= 0 && s.dim_mpi2 >= 0, "dimensions", "subspace dimensions must be non-negative");
  require(std::isfinite(s.phi) && std::isfinite(s.v_norm) && std::isfinite(s.t) && std::isfinite(s.x) &&
              (!s.u_norm || std::isfinite(*s.u_norm)),
          "parameters", "values must be finite");
  require(s.v_norm >= 0.0, "|V|", "must be non-negative");
  require(!s.u_norm || *s.u_norm >= 0.0, "|U|", "must be non-negative");
  if (uses_mphi(s.item)) {
    require(s.phi >= 0.0 && s.phi < kHalfPi, "Kahler angle", "phi must lie in [0, pi/2), got " + fmt(s.phi));
    require(s.dim_mphi >= 1, "m_phi non-zero", "item " + to_string(s.item) + " needs dim m_phi >= 1");
    require(s.dim_mphi % 2 == 0, "constant Kahler angle phi < pi/2",
            "dim m_phi must be even, got " + std::to_string(s.dim_mphi));
  } else {
    require(s.dim_mphi == 0, "subalgebra shape", "item " + to_string(s.item) + " has no m_phi summand");
  }
  if (!uses_u(s.item)) {
    require(!s.u_norm || *s.u_norm == 0.0, "subalgebra shape", "item " + to_string(s.item) + " has no U");
    require(s.x == 0.0, "subalgebra shape", "item " + to_string(s.item) + " has no x");
  }
  if (!uses_v(s.item)) {
    require(s.v_norm == 0.0 && s.t == 0.0, "subalgebra shape", "item " + to_string(s.item) + " has no V + tZ");
  }
  if (s.item != Item::II) require(s.x == 0.0, "subalgebra shape", "item " + to_string(s.item) + " has no x");
}

void validate_items(const FamilySpec& s, bool check_u) {
  const bool has_vt = s.v_norm != 0.0 || s.t != 0.0;
  switch (s.item) {
    case Item::I:
      require(s.dim_mpi2 >= 2 - (has_vt ? 1 : 0), "dim m_{pi/2} >= 2 - dim R(V + tZ)",
              "item I needs dimension at least 2");
      break;
    case Item::N1:
      require(s.dim_mpi2 >= 1 || has_vt, "m_{pi/2} non-trivial when V = t = 0", "nilradical would be zero");
      break;
    case Item::II:
      if (s.v_norm == 0.0) {
        require(s.t == 0.0 || s.dim_mpi2 == 0, "If V = 0, either t = 0 or m_{pi/2} = 0",
                "got t = " + fmt(s.t) + " and dim m_{pi/2} = " + std::to_string(s.dim_mpi2));
        require(s.t != 0.0 || s.dim_mpi2 >= 1, "dim s >= 2", "V = 0, t = 0 and m_{pi/2} = 0 leave R(B + U + xZ)");
      }
      break;
    case Item::III:
      require(s.dim_mpi2 == 0, "subalgebra shape", "item III has no m_{pi/2}");
      break;
    case Item::V:
    case Item::VI:
      require(s.dim_mpi2 >= 1, "m_{pi/2} != 0", "item " + to_string(s.item) + " needs dim m_{pi/2} >= 1");
      break;
    case Item::IV:
    case Item::N2:
      break;
  }
  if (check_u) {
    if (auto req = required_u_norm(s)) {
      const std::string cond = s.item == Item::III ? "|U| = tan(phi)" : "|U|^2 from the solvsoliton normalization";
      require(!s.u_norm || std::abs(*s.u_norm - *req) <= 1e-9 * std::max(1.0, *req), cond,
              "got |U| = " + fmt(*s.u_norm) + ", required " + fmt(*req));
    }
  }
}

struct Builder {
  int slots;
  int used = 0;
  int alpha_dim;

  Vector x(int slot) const { return Vector::Unit(alpha_dim, 2 * slot); }
  Vector y(int slot) const { return Vector::Unit(alpha_dim, 2 * slot + 1); }
  int take(int count) {
    const int first = used;
    used += count;
    return first;
  }
};

}  // namespace

Subalgebra build_family_unchecked(std::shared_ptr<const AmbientModel> model, const FamilySpec& raw) {
  if (!model) throw std::invalid_argument("build_family: missing ambient model");
  validate_common(raw);
  if (model->n() != raw.n) {
    throw FamilyError("complex dimension", "spec has n = " + std::to_string(raw.n) + ", ambient has n = " +
                                               std::to_string(model->n()));
  }
  validate_items(raw, false);
  const FamilySpec s = canonicalize(raw);
  const double u = uses_u(s.item) ? (raw.u_norm ? *raw.u_norm : s.u_norm.value_or(0.0)) : 0.0;

  Builder b{model->n() - 1, 0, model->alpha_dim()};
  std::vector<Vector> alpha_cols;  // m_phi then m_{pi/2}
  Vector u_vec = Vector::Zero(b.alpha_dim);
  Vector v_vec = Vector::Zero(b.alpha_dim);

  // counts complex slots before filling
  int need = 0;
  if (uses_mphi(s.item)) need += s.phi == 0.0 ? s.dim_mphi / 2 : s.dim_mphi;
  need += s.dim_mpi2;
  double gamma = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  if (s.item == Item::II && s.v_norm != 0.0) {
    alpha = -s.x * s.t / s.v_norm;
    beta = s.t / (2.0 * s.v_norm);
    const double g2 = u * u - alpha * alpha - beta * beta;
    require(g2 >= -1e-12, "If V != 0, then <JU,V> = -t/2",
            "|U| = " + fmt(u) + " is smaller than the forced component " + fmt(std::sqrt(alpha * alpha + beta * beta)));
    gamma = std::sqrt(std::max(0.0, g2));
    need += 1 + (gamma > 0.0 ? 1 : 0);
  } else {
    if (uses_v(s.item) && s.v_norm != 0.0) need += 1;
    if (uses_u(s.item) && u > 0.0) need += 1;
  }
  require(need <= b.slots, "dimension feasibility",
          "needs " + std::to_string(need) + " complex dimensions of g_alpha, C^" + std::to_string(b.slots) +
              " available");

  if (uses_mphi(s.item)) {
    if (s.phi == 0.0) {
      for (int k = 0; k < s.dim_mphi / 2; ++k) {
        const int a = b.take(1);
        alpha_cols.push_back(b.x(a));
        alpha_cols.push_back(b.y(a));
      }
    } else {
      const double c = std::cos(s.phi);
      const double sn = std::sin(s.phi);
      for (int k = 0; k < s.dim_mphi / 2; ++k) {
        const int a = b.take(2);
        alpha_cols.push_back(b.x(a));
        alpha_cols.push_back(c * b.y(a) + sn * b.y(a + 1));
      }
    }
  }
  for (int k = 0; k < s.dim_mpi2; ++k) alpha_cols.push_back(b.x(b.take(1)));

  if (s.item == Item::II && s.v_norm != 0.0) {
    const int a = b.take(1);
    v_vec = s.v_norm * b.x(a);
    u_vec = alpha * b.x(a) + beta * b.y(a);
    if (gamma > 0.0) u_vec += gamma * b.x(b.take(1));
  } else {
    if (uses_v(s.item) && s.v_norm != 0.0) v_vec = s.v_norm * b.x(b.take(1));
    if (uses_u(s.item) && u > 0.0) u_vec = u * b.x(b.take(1));
  }

  const Matrix w = random_unitary(b.slots, s.seed);
  std::vector<Vector> cols;
  auto lift = [&](const Vector& a) { return model->from_alpha(w * a); };

  const bool solvable = !is_nilpotent_item(s.item);
  if (solvable) {
    Vector t = lift(u_vec);
    t(model->index_b()) = 1.0;
    t(model->index_z()) = s.x;
    cols.push_back(t);
  }
  for (const auto& a : alpha_cols) cols.push_back(lift(a));
  if (uses_v(s.item)) {
    if (s.v_norm != 0.0 || s.t != 0.0) {
      Vector vt = lift(v_vec);
      vt(model->index_z()) += s.t;
      cols.push_back(vt);
    }
  } else {
    cols.push_back(model->z());
  }

  Matrix span(model->dim(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) span.col(static_cast<Eigen::Index>(i)) = cols[i];
  return Subalgebra(model, span, kClosureTolerance, "item " + to_string(s.item));
}

Subalgebra build_family(std::shared_ptr<const AmbientModel> model, const FamilySpec& spec) {
  validate_common(spec);
  validate_items(spec, true);
  FamilySpec s = spec;
  if (auto req = required_u_norm(spec)) s.u_norm = req;
  return build_family_unchecked(std::move(model), s);
}

Subalgebra build_family(const FamilySpec& spec) {
  validate_common(spec);
  return build_family(make_ambient(spec.n), spec);
}

bool expected_einstein(Item item) { return item == Item::I || item == Item::II || item == Item::III || item == Item::N1; }

CurvatureKind expected_curvature(Item item) {
  switch (item) {
    case Item::I:
    case Item::N1: return CurvatureKind::Flat;
    case Item::II: return CurvatureKind::ConstantSectional;
    case Item::III: return CurvatureKind::ConstantHolomorphic;
    default: return CurvatureKind::Other;
  }
}

namespace {

std::vector<SignatureEntry> merged(std::vector<SignatureEntry> entries) {
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.angle < b.angle; });
  std::vector<SignatureEntry> out;
  for (const auto& e : entries) {
    if (e.dim == 0) continue;
    if (!out.empty() && std::abs(out.back().angle - e.angle) <= 1e-9) {
      out.back().dim += e.dim;
    } else {
      out.push_back(e);
    }
  }
  return out;
}

}  // namespace

std::optional<std::vector<SignatureEntry>> listed_signature(const FamilySpec& spec) {
  const FamilySpec s = canonicalize(spec);
  const double u = s.u_norm.value_or(0.0);
  switch (s.item) {
    case Item::I: {
      const int dim = s.dim_mpi2 + ((s.v_norm != 0.0 || s.t != 0.0) ? 1 : 0);
      return merged({{kHalfPi, dim}});
    }
    case Item::III: return merged({{s.phi, s.dim_mphi + 2}});
    case Item::IV: return merged({{s.phi, s.dim_mphi}, {kHalfPi, s.dim_mpi2 + 1}});
    case Item::V: return merged({{kHalfPi, s.dim_mpi2}, {std::acos(1.0 / (1.0 + u * u)), 2}});
    case Item::VI: {
      const double c = std::cos(s.phi);
      const double arg = (s.dim_mphi + 4.0) * c * c / (s.dim_mphi + s.dim_mpi2 + 4.0);
      return merged({{s.phi, s.dim_mphi}, {kHalfPi, s.dim_mpi2}, {std::acos(arg), 2}});
    }
    default: return std::nullopt;
  }
}

bool signature_matches(const std::vector<SignatureEntry>& got, const std::vector<SignatureEntry>& want, double tol) {
  if (got.size() != want.size()) return false;
  std::vector<SignatureEntry> a = got;
  std::vector<SignatureEntry> b = want;
  auto by_angle = [](const auto& l, const auto& r) { return l.angle < r.angle; };
  std::sort(a.begin(), a.end(), by_angle);
  std::sort(b.begin(), b.end(), by_angle);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].dim != b[i].dim || std::abs(a[i].angle - b[i].angle) > tol) return false;
  return true;
}

std::string to_string(ClassKind kind) {
  switch (kind) {
    case ClassKind::Matched: return "matched";
    case ClassKind::NotSoliton: return "not-soliton";
    case ClassKind::Inconclusive: return "inconclusive";
    case ClassKind::Counterexample: return "counterexample";
    case ClassKind::BelowScope: return "below-scope";
  }
  return "?";
}

namespace {

/// l = m + R(V + tZ) or m + RZ, with m = l ∩ g_alpha.
struct NilradicalShape {
  Matrix m;  ///< ambient columns inside g_alpha
  bool has_z = false;
  Vector v;  ///< ambient vector in g_alpha, unit or zero
  double t = 0.0;
};

NilradicalShape shape_of(const AmbientModel& model, const Matrix& l) {
  NilradicalShape out;
  out.v = Vector::Zero(model.dim());
  out.m = Matrix(model.dim(), 0);
  if (l.cols() == 0) return out;
  const Vector z = model.z();
  const Vector zc = l.transpose() * z;
  if ((z - l * zc).norm() <= 1e-9) {
    out.has_z = true;
    out.t = 1.0;
    const Matrix rest = l - z * zc.transpose();
    out.m = orthonormal_span(rest, 1e-9);
    return out;
  }
  const double zlen = zc.norm();
  if (zlen <= 1e-12) {
    out.m = l;
    return out;
  }
  const Matrix kernel = null_space(Matrix(zc.transpose()), 1e-12);
  out.m = l * kernel;
  const Vector w = l * zc / zlen;
  Vector v = w;
  v(model.index_z()) = 0.0;
  const double vlen = v.norm();
  out.v = v / vlen;
  out.t = w(model.index_z()) / vlen;
  return out;
}

void mark_counterexample(Classification& out, const std::string& reason) {
  out.kind = ClassKind::Counterexample;
  out.reason = reason;
}

}  // namespace

Classification classify(const Subalgebra& sub, const SolitonThresholds& th) {
  Classification out;
  const AmbientModel& model = sub.ambient();
  const Matrix& j = model.complex_structure();
  out.signature = decompose_kahler(j, sub.basis()).signature();
  out.parameters.n = model.n();
  if (sub.dim() < 2) {
    out.kind = ClassKind::BelowScope;
    out.reason = "dimension 1: flat, below the classification's scope";
    out.certificate = certify_soliton(sub, th);
    return out;
  }
  out.certificate = certify_soliton(sub, th);
  if (out.certificate.verdict == Verdict::NotSoliton) {
    out.kind = ClassKind::NotSoliton;
    out.reason = "soliton residual " + fmt(out.certificate.residual);
    return out;
  }
  if (out.certificate.verdict == Verdict::Inconclusive) {
    out.kind = ClassKind::Inconclusive;
    out.reason = "soliton residual " + fmt(out.certificate.residual) + " between thresholds";
    return out;
  }

  const NilradicalSplit split = split_nilradical(sub);
  const NilradicalShape shape = shape_of(model, split.nilradical);
  const bool l_abelian =
      split.nilradical.cols() == 0 || Subalgebra(sub.ambient_ptr(), split.nilradical).induced().is_abelian(1e-10);

  FamilySpec& p = out.parameters;
  out.kind = ClassKind::Matched;
  Vector u = Vector::Zero(model.dim());
  if (!split.nilpotent) {
    const Vector& t = *split.t;
    u = t;
    u(model.index_b()) = 0.0;
    u(model.index_z()) = 0.0;
    p.x = t(model.index_z());
    p.u_norm = u.norm();
  }

  const KahlerDecomposition kd =
      shape.m.cols() > 0 ? kahler_decompose(model, shape.m) : KahlerDecomposition{};
  const KahlerPiece* real_piece = kd.find(kHalfPi, 1e-9);
  const int non_real = static_cast<int>(kd.pieces.size()) - (real_piece ? 1 : 0);
  p.dim_mpi2 = real_piece ? real_piece->dim() : 0;
  if (!u.isZero(0.0) && !complex_orthogonal(j, u, shape.m, kConditionTolerance)) {
    mark_counterexample(out, "U is not C-orthogonal to m");
    return out;
  }

  if (l_abelian) {
    if (non_real > 0) {
      mark_counterexample(out, "abelian nilradical with a non-totally-real summand");
      return out;
    }
    if (shape.v.norm() > 0.0 && !complex_orthogonal(j, shape.v, shape.m, kConditionTolerance)) {
      mark_counterexample(out, "V is not C-orthogonal to m_{pi/2}");
      return out;
    }
    p.v_norm = shape.v.norm() > 0.0 ? 1.0 : 0.0;
    p.t = shape.t;
    if (split.nilpotent) {
      p.item = Item::I;
      p.u_norm.reset();
      p.x = 0.0;
    } else if (shape.has_z && p.dim_mpi2 > 0) {
      p.item = Item::V;
      p.v_norm = 0.0;
      p.t = 0.0;
      p.x = 0.0;
    } else {
      p.item = Item::II;
      if (p.v_norm != 0.0) {
        const double juv = (j * u).dot(shape.v);
        if (std::abs(juv + 0.5 * p.t) > kConditionTolerance) {
          mark_counterexample(out, "<JU,V> = " + fmt(juv) + " differs from -t/2 = " + fmt(-0.5 * p.t));
          return out;
        }
      }
      if (shape.has_z && p.dim_mpi2 == 0 && p.u_norm.value_or(0.0) <= kConditionTolerance &&
          std::abs(p.x) <= kConditionTolerance) {
        out.degenerate = true;
        out.also_matches.push_back(Item::III);
      }
    }
  } else {
    if (!shape.has_z) {
      mark_counterexample(out, "non-abelian nilradical without g_2alpha");
      return out;
    }
    if (non_real != 1) {
      mark_counterexample(out, "nilradical has " + std::to_string(non_real) + " Kahler angles below pi/2");
      return out;
    }
    const KahlerPiece& piece = kd.pieces.front();
    p.phi = piece.angle;
    p.dim_mphi = piece.dim();
    if (split.nilpotent) {
      p.item = Item::IV;
      p.u_norm.reset();
    } else {
      p.item = p.dim_mpi2 == 0 ? Item::III : Item::VI;
      FamilySpec probe = p;
      const double want = *required_u_norm(probe);
      if (std::abs(*p.u_norm - want) > 1e-6 * std::max(1.0, want)) {
        mark_counterexample(out, "|U| = " + fmt(*p.u_norm) + " but item " + to_string(p.item) + " requires " +
                                     fmt(want));
        return out;
      }
    }
    p.x = 0.0;
  }

  if (out.certificate.is_einstein != expected_einstein(p.item)) {
    mark_counterexample(out, std::string("Einstein flag ") + (out.certificate.is_einstein ? "true" : "false") +
                                 " contradicts item " + to_string(p.item));
  }
  return out;
}

}  // namespace chs
