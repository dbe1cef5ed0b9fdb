#include "chsoliton/scan.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

namespace chs {

std::string to_string(Profile p) {
  switch (p) {
    case Profile::InsideN: return "inside-n";
    case Profile::NonNilpotent: return "non-nilpotent";
    case Profile::Mixed: return "mixed";
  }
  return "mixed";
}

Profile parse_profile(const std::string& text) {
  std::string s;
  for (char c : text) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s == "inside-n" || s == "inside_n" || s == "nilpotent") return Profile::InsideN;
  if (s == "non-nilpotent" || s == "non_nilpotent" || s == "solvable") return Profile::NonNilpotent;
  if (s == "mixed") return Profile::Mixed;
  throw std::invalid_argument("unknown profile '" + text + "' (expected inside-n, non-nilpotent or mixed)");
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool coin(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

double random_angle(std::mt19937_64& rng) { return coin(rng, 1.0 / 3.0) ? 0.0 : uniform(rng, 0.15, 1.35); }

FamilySpec draw_spec(Item item, int n, std::mt19937_64& rng) {
  FamilySpec s;
  s.item = item;
  s.n = n;
  s.seed = rng() | 1ULL;
  const int k = n - 1;
  switch (item) {
    case Item::I:
    case Item::N1:
      s.dim_mpi2 = uniform_int(rng, 0, k);
      if (coin(rng, 2.0 / 3.0)) s.v_norm = uniform(rng, 0.3, 2.0);
      if (coin(rng, 2.0 / 3.0)) s.t = uniform(rng, -1.5, 1.5);
      break;
    case Item::II: {
      s.dim_mpi2 = uniform_int(rng, 0, k);
      if (coin(rng, 0.5)) s.x = uniform(rng, -1.0, 1.0);
      if (coin(rng, 0.5)) {
        s.v_norm = uniform(rng, 0.3, 2.0);
        s.t = coin(rng, 0.2) ? 0.0 : uniform(rng, -1.5, 1.5);
        const double a = s.x * s.t / s.v_norm;
        const double b = s.t / (2.0 * s.v_norm);
        const double forced = std::sqrt(a * a + b * b);
        s.u_norm = coin(rng, 0.3) ? forced : forced + uniform(rng, 0.05, 1.0);
      } else {
        if (coin(rng, 0.4)) {
          s.t = uniform(rng, -1.5, 1.5);
          s.dim_mpi2 = 0;
        } else {
          s.dim_mpi2 = std::max(1, s.dim_mpi2);
        }
        s.u_norm = coin(rng, 0.25) ? 0.0 : uniform(rng, 0.1, 1.5);
      }
      break;
    }
    case Item::III:
      s.phi = random_angle(rng);
      s.dim_mphi = 2 * uniform_int(rng, 1, std::max(1, k / 2));
      break;
    case Item::IV:
    case Item::N2:
      s.phi = random_angle(rng);
      s.dim_mphi = 2 * uniform_int(rng, 1, std::max(1, k / 2));
      s.dim_mpi2 = uniform_int(rng, 0, std::max(0, k - 1));
      break;
    case Item::V:
      s.dim_mpi2 = uniform_int(rng, 1, std::max(1, k));
      s.u_norm = coin(rng, 0.25) ? 0.0 : uniform(rng, 0.1, 1.5);
      break;
    case Item::VI:
      s.phi = random_angle(rng);
      s.dim_mphi = 2 * uniform_int(rng, 1, std::max(1, k / 2));
      s.dim_mpi2 = uniform_int(rng, 1, std::max(1, k - 1));
      break;
  }
  return s;
}

}  // namespace

std::optional<FamilySpec> random_family_spec(Item item, int n, std::mt19937_64& rng) {
  const auto model = make_ambient(n);
  for (int attempt = 0; attempt < 200; ++attempt) {
    FamilySpec s = draw_spec(item, n, rng);
    try {
      (void)build_family(model, s);
      return s;
    } catch (const FamilyError&) {
    }
  }
  return std::nullopt;
}

namespace {

struct Pieces {
  Matrix m;  ///< coordinates in g_alpha
  std::vector<double> angles;  ///< distinct angles below pi/2
  int dim_phi = 0;
  int dim_real = 0;
  int used = 0;
};

/// Random subspace of g_alpha assembled from constant-angle pieces. Distinct
/// angles stay at least 0.05 apart so near-coincidences do not occur.
Pieces random_pieces(int slots, std::mt19937_64& rng) {
  const int alpha_dim = 2 * slots;
  Pieces out;
  std::vector<Vector> cols;
  auto fresh_angle = [&]() {
    for (;;) {
      const double phi = coin(rng, 0.5) ? uniform(rng, 0.15, 1.35) : std::numbers::pi / (3 + uniform_int(rng, 0, 1));
      bool ok = true;
      for (double a : out.angles)
        if (a != phi && std::abs(a - phi) < 0.05) ok = false;
      if (ok) return phi;
    }
  };
  auto note = [&](double phi, int dim) {
    if (std::find(out.angles.begin(), out.angles.end(), phi) == out.angles.end()) out.angles.push_back(phi);
    out.dim_phi += dim;
  };
  const int pieces = uniform_int(rng, 1, 3);
  for (int p = 0; p < pieces && out.used < slots; ++p) {
    const int kind = uniform_int(rng, 0, 3);
    const int u = out.used;
    if (kind == 0) {  // complex line
      cols.push_back(Vector::Unit(alpha_dim, 2 * u));
      cols.push_back(Vector::Unit(alpha_dim, 2 * u + 1));
      note(0.0, 2);
      out.used += 1;
    } else if (kind == 1 || u + 2 > slots) {  // totally real
      cols.push_back(Vector::Unit(alpha_dim, 2 * u));
      out.dim_real += 1;
      out.used += 1;
    } else {  // angle in (0, pi/2), two slots
      const double phi = fresh_angle();
      cols.push_back(Vector::Unit(alpha_dim, 2 * u));
      cols.push_back(std::cos(phi) * Vector::Unit(alpha_dim, 2 * u + 1) + std::sin(phi) * Vector::Unit(alpha_dim, 2 * u + 3));
      note(phi, 2);
      out.used += 2;
    }
  }
  out.m = Matrix(alpha_dim, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) out.m.col(static_cast<Eigen::Index>(i)) = cols[i];
  return out;
}

/// |U| either on the value forced by the pieces or at least 0.05 away from it.
double draw_u_norm(const Pieces& p, std::mt19937_64& rng) {
  std::optional<double> target;
  if (p.angles.size() == 1) {
    FamilySpec s;
    s.item = p.dim_real == 0 ? Item::III : Item::VI;
    s.phi = p.angles.front();
    s.dim_mphi = p.dim_phi;
    s.dim_mpi2 = p.dim_real;
    target = required_u_norm(s);
  }
  if (target && coin(rng, 0.5)) return *target;
  for (;;) {
    const double u = coin(rng, 0.2) ? 0.0 : uniform(rng, 0.05, 2.0);
    if (!target || std::abs(u - *target) >= 0.05) return u;
  }
}


Matrix hstack(const std::vector<Vector>& cols, int rows) {
  Matrix m(rows, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = cols[i];
  return m;
}

/// Coordinates on the half-integer lattice in [-1.5, 1.5]; polynomial conditions
/// on such data either hold exactly or fail by a definite margin.
Vector lattice(int size, std::mt19937_64& rng) {
  Vector v(size);
  do {
    for (int i = 0; i < size; ++i) v(i) = 0.5 * uniform_int(rng, -3, 3);
  } while (v.isZero());
  return v;
}

RandomSample generic_sample(const AmbientModel& model, bool solvable, std::mt19937_64& rng) {
  const int d = model.dim();
  std::vector<Vector> cols;
  const int k = uniform_int(rng, 1, model.alpha_dim());
  for (int i = 0; i < k; ++i) {
    Vector v = Vector::Zero(d);
    v.segment(1, model.alpha_dim()) = lattice(model.alpha_dim(), rng);
    if (coin(rng, 0.3)) v(model.index_z()) = 0.5 * uniform_int(rng, -3, 3);
    cols.push_back(v);
  }
  if (coin(rng, 0.3)) cols.push_back(model.z());
  if (solvable) {
    Vector t = Vector::Zero(d);
    t(model.index_b()) = 1.0;
    if (coin(rng, 0.7)) t.segment(1, model.alpha_dim()) = lattice(model.alpha_dim(), rng);
    if (coin(rng, 0.5)) t(model.index_z()) = 0.5 * uniform_int(rng, -2, 2);
    cols.insert(cols.begin(), t);
  }
  RandomSample out;
  out.recipe = "generic";
  out.spanning = subalgebra_closure(model, hstack(cols, d));
  return out;
}

RandomSample pieces_sample(const AmbientModel& model, bool solvable, std::mt19937_64& rng) {
  const int slots = model.n() - 1;
  const int d = model.dim();
  const Pieces p = random_pieces(slots, rng);
  int used = p.used;
  const Matrix w = random_unitary(slots, rng() | 1ULL);
  std::vector<Vector> cols;
  for (Eigen::Index c = 0; c < p.m.cols(); ++c) cols.push_back(model.from_alpha(w * p.m.col(c)));

  const bool with_z = !p.angles.empty() || coin(rng, 0.5);
  if (with_z) {
    cols.push_back(model.z());
  } else if (coin(rng, 0.4) && used < slots) {
    Vector v = model.from_alpha(w * (uniform(rng, 0.3, 2.0) * Vector::Unit(2 * slots, 2 * used)));
    v(model.index_z()) = (coin(rng, 0.5) ? 1.0 : -1.0) * uniform(rng, 0.1, 1.5);
    cols.push_back(v);
    ++used;
  }
  if (solvable) {
    Vector t = Vector::Zero(d);
    t(model.index_b()) = 1.0;
    const int mode = uniform_int(rng, 0, 2);
    if (mode == 1 && used < slots) {  // C-orthogonal U
      t += model.from_alpha(w * (draw_u_norm(p, rng) * Vector::Unit(2 * slots, 2 * used)));
    } else if (mode == 2 && p.m.cols() > 0) {  // U with a definite component along J m
      const Vector jm = model.alpha_complex_structure() * (w * p.m.col(0));
      const Vector along = jm - (w * p.m) * ((w * p.m).transpose() * jm);
      if (along.norm() > 0.1) {
        t += model.from_alpha((coin(rng, 0.5) ? 1.0 : -1.0) * uniform(rng, 0.1, 1.0) * along / along.norm());
      }
    }
    if (!with_z && coin(rng, 0.5)) t(model.index_z()) = uniform(rng, -1.0, 1.0);
    cols.insert(cols.begin(), t);
  }
  RandomSample out;
  out.recipe = "pieces";
  out.spanning = subalgebra_closure(model, hstack(cols, d));
  return out;
}

RandomSample family_sample(const AmbientModel& model, bool solvable, std::mt19937_64& rng) {
  static const Item nil_items[] = {Item::I, Item::IV, Item::N1, Item::N2};
  static const Item sol_items[] = {Item::II, Item::III, Item::V, Item::VI};
  const Item* pool = solvable ? sol_items : nil_items;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const Item item = pool[uniform_int(rng, 0, 3)];
    if (auto spec = random_family_spec(item, model.n(), rng)) {
      const Subalgebra sub = build_family(make_ambient(model.n()), *spec);
      RandomSample out;
      out.recipe = "family";
      out.source = item;
      out.spanning = sub.basis();
      return out;
    }
  }
  return generic_sample(model, solvable, rng);
}

}  // namespace

RandomSample random_sample(const AmbientModel& model, std::uint64_t seed, Profile profile) {
  std::mt19937_64 rng(seed);
  Profile resolved = profile;
  if (resolved == Profile::Mixed) resolved = coin(rng, 0.5) ? Profile::NonNilpotent : Profile::InsideN;
  const bool solvable = resolved == Profile::NonNilpotent;
  RandomSample out;
  switch (uniform_int(rng, 0, 2)) {
    case 0: out = generic_sample(model, solvable, rng); break;
    case 1: out = pieces_sample(model, solvable, rng); break;
    default: out = family_sample(model, solvable, rng); break;
  }
  out.profile = resolved;
  return out;
}

Subalgebra random_subalgebra(std::shared_ptr<const AmbientModel> model, std::uint64_t seed, Profile profile) {
  const RandomSample s = random_sample(*model, seed, profile);
  return Subalgebra(std::move(model), s.spanning);
}

}  // namespace chs
