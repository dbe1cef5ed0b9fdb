// Acceptance checks. `acceptance --criterion N` runs one criterion and prints a
// single PASS/FAIL line; without arguments all twelve run.

#include "chsoliton/families.hpp"
#include "chsoliton/scan.hpp"
#include "closed_forms.hpp"
#include "support.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>

using namespace chs;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

const Item kMainItems[] = {Item::I, Item::II, Item::III, Item::IV, Item::V, Item::VI};

int workers() { return std::max(1u, std::thread::hardware_concurrency()); }

Outcome ambient_einstein() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (int n = 2; n <= 6; ++n) {
    const AmbientModel m(n);
    const Matrix want = -0.5 * (n + 1) * Matrix::Identity(m.dim(), m.dim());
    worst = std::max(worst, testing::max_abs(m.levi_civita().ricci() - want));
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-10 && t < 1.0, "max error " + num(worst) + " for n = 2..6 in " + num(t) + " s"};
}

/// nabla_{aB+U+cZ}(bB+V+dZ) = (<U,V>/2 + cd) B - (bU + cJV + dJU)/2 + (<JU,V>/2 - bc) Z
Vector closed_form(const AmbientModel& m, const Vector& x, const Vector& y) {
  const Matrix& j = m.complex_structure();
  const int d = m.dim();
  const double c = x(d - 1), b = y(0), dz = y(d - 1);
  Vector u = x, v = y;
  u(0) = u(d - 1) = 0.0;
  v(0) = v(d - 1) = 0.0;
  Vector out = -0.5 * (b * u + c * (j * v) + dz * (j * u));
  out(0) += 0.5 * u.dot(v) + c * dz;
  out(d - 1) += 0.5 * (j * u).dot(v) - b * c;
  return out;
}

Outcome connection_oracle() {
  double worst = 0.0;
  for (int n = 2; n <= 6; ++n) {
    const AmbientModel m(n);
    for (int i = 0; i < m.dim(); ++i)
      for (int k = 0; k < m.dim(); ++k) {
        const Vector ei = Vector::Unit(m.dim(), i), ek = Vector::Unit(m.dim(), k);
        worst = std::max(worst, (koszul_connection(m.algebra(), ei, ek) - closed_form(m, ei, ek)).cwiseAbs().maxCoeff());
      }
  }
  return {worst <= 1e-12, "max error " + num(worst) + " on all basis pairs, n = 2..6"};
}

Outcome closed_form_identities() {
  constexpr int kConfigs = 1000;
  testing::Rng rng(3);
  double r_conn = 0, r_bdir = 0, r_shape = 0, r_jac = 0, r_sum = 0;
  for (int i = 0; i < kConfigs; ++i) {
    r_conn = std::max(r_conn, closed_forms::root_space_connection(rng));
    r_bdir = std::max(r_bdir, closed_forms::b_direction(closed_forms::random_config(rng)));
    r_shape = std::max(r_shape, closed_forms::alpha_shape(closed_forms::random_config(rng), rng));
    r_jac = std::max(r_jac, closed_forms::alpha_jacobi(closed_forms::random_config(rng), rng));
    r_sum = std::max(r_sum, closed_forms::normal_sum(closed_forms::random_config(rng), testing::uniform(rng, -2.0, 2.0)));
  }
  const double worst = std::max({r_conn, r_bdir, r_shape, r_jac, r_sum});
  return {worst <= 1e-9, "residuals " + num(r_conn) + ", " + num(r_bdir) + ", " + num(r_shape) + ", " + num(r_jac) + ", " + num(r_sum) +
                             " over " + std::to_string(kConfigs) + " configurations each"};
}

Outcome family_certification() {
  const auto t0 = Clock::now();
  testing::Rng rng(4);
  int failures = 0, total = 0;
  double worst = 0.0;
  std::string first;
  for (Item item : kMainItems) {
    for (int i = 0; i < 100; ++i, ++total) {
      const FamilySpec spec = testing::random_instance(item, rng);
      const SolitonCertificate cert = certify_soliton(build_family(spec));
      worst = std::max(worst, cert.residual);
      if (!cert.is_soliton || cert.residual > 1e-9 || cert.is_einstein != expected_einstein(item)) {
        if (failures++ == 0) first = " (first: item " + to_string(item) + ")";
      }
    }
  }
  const double t = seconds_since(t0);
  return {failures == 0 && t < 30.0, std::to_string(total - failures) + "/" + std::to_string(total) +
                                          " instances certified with matching Einstein flags, max residual " +
                                          num(worst) + ", " + num(t) + " s" + first};
}

Outcome nilsoliton_constants() {
  testing::Rng rng(5);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const FamilySpec spec = testing::random_instance(Item::IV, rng);
    const SolitonCertificate cert = certify_soliton(build_family(spec));
    const double want = nilsoliton_constant(spec.phi, spec.dim_mphi);
    worst = std::max(worst, cert.is_soliton ? std::abs(cert.c - want) : 1.0);
  }
  return {worst <= 1e-9, "max |c - closed form| " + num(worst) + " over 100 item IV instances"};
}

Outcome normalization_necessity() {
  testing::Rng rng(6);
  double smallest = std::numeric_limits<double>::infinity();
  int total = 0;
  for (int i = 0; i < 100; ++i) {
    const FamilySpec spec = testing::random_instance(Item::VI, rng);
    auto model = make_ambient(spec.n);
    const double u = *required_u_norm(spec);
    for (double f : {0.9, 1.1}) {
      FamilySpec p = spec;
      p.u_norm = f * u;
      smallest = std::min(smallest, certify_soliton(build_family_unchecked(model, p)).residual);
      ++total;
    }
  }
  return {smallest >= 1e-4, "smallest residual " + num(smallest) + " over " + std::to_string(total) +
                                " perturbed item VI instances"};
}

Outcome gauss_equivalence() {
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    auto model = make_ambient(2 + static_cast<int>(i % 5));
    const Subalgebra s = random_subalgebra(model, derive_seed(7, i), Profile::Mixed);
    worst = std::max(worst, testing::max_abs(gauss_ricci(s) - ricci(s.induced())));
  }
  return {worst <= 1e-9, "max residual " + num(worst) + " over 1000 random subalgebras"};
}

Outcome kahler_invariants() {
  const Matrix j = testing::standard_j(5);
  testing::Rng rng(8);
  int bad = 0;
  std::string first;
  for (int i = 0; i < 1000; ++i) {
    const auto v = testing::kahler_violations(j, testing::random_complex_subspace(5, rng), 1e-8);
    if (!v.empty() && bad++ == 0) first = " (first: " + v.front() + ")";
  }
  return {bad == 0, std::to_string(1000 - bad) + "/1000 subspaces of C^5 satisfy all invariants" + first};
}

Outcome minimality_flags() {
  std::vector<std::string> wrong;
  auto model = make_ambient(4);
  FamilySpec v0{Item::V, 4, 0, 0.0, 2};
  v0.u_norm = 0.0;
  const Subalgebra v = build_family(model, v0);
  if (!is_minimal(v) || is_totally_geodesic(v)) wrong.push_back("item V, U = 0");
  Matrix bz(8, 2);
  bz << model->b(), model->z();
  if (!is_totally_geodesic(Subalgebra(model, bz))) wrong.push_back("RB + RZ");
  Matrix br(8, 3);
  br << model->b(), model->x(0), model->x(1);
  if (!is_totally_geodesic(Subalgebra(model, br))) wrong.push_back("RB + totally real");
  testing::Rng rng(9);
  for (Item item : {Item::I, Item::IV}) {
    for (int i = 0; i < 100; ++i) {
      const Subalgebra s = build_family(testing::random_instance(item, rng));
      if (is_minimal(s) || !(shape_operator(s, s.ambient().b()).trace() > 0.0)) {
        wrong.push_back("item " + to_string(item));
        break;
      }
    }
  }
  std::string detail = "item V (U = 0) minimal, RB + RZ and RB + totally real totally geodesic, items I and IV not minimal";
  if (!wrong.empty()) detail = "wrong flags for " + wrong.front();
  return {wrong.empty(), detail};
}

ScanOptions completeness_scan() {
  ScanOptions o;
  o.n = 3;
  o.samples = 10000;
  o.seed = 42;
  o.jobs = workers();
  return o;
}

Outcome scan_completeness() {
  const auto t0 = Clock::now();
  const ScanReport r = scan(completeness_scan());
  const double t = seconds_since(t0);
  std::string detail = std::to_string(r.processed) + " samples, " + std::to_string(r.solitons) + " solitons, " +
                       (r.counterexample ? "counterexample at index " + std::to_string(r.counterexample->index)
                                         : std::string("no counterexample")) +
                       ", " + num(t) + " s";
  return {!r.counterexample && r.processed == 10000 && t < 60.0, detail};
}

Outcome nilradical_minimality() {
  const ScanReport r = scan(completeness_scan());
  const bool scan_ok = r.nilradical_failures == 0 && r.nilradical_checks > 0 && !r.counterexample;

  // flat nilradical R(V + tZ) + m_{pi/2} with |V| = 1, t != 0: tr S_{JV} != 0 inside n
  double smallest = std::numeric_limits<double>::infinity();
  for (double t : {0.5, 1.0, -2.0}) {
    FamilySpec spec{Item::I, 4, 0, 0.0, 1};
    spec.v_norm = 1.0;
    spec.t = t;
    const Subalgebra l = build_family(spec);
    const AmbientModel& m = l.ambient();
    const ExtrinsicGeometry g = nilradical_in_n(m, l.basis());
    const Vector jv = m.apply_j(m.x(spec.dim_mpi2));
    smallest = std::min(smallest, std::abs(g.shape_operator(jv.bottomRows(m.dim() - 1)).trace()));
  }
  return {scan_ok && smallest > 1e-6,
          std::to_string(r.nilradical_checks - r.nilradical_failures) + "/" + std::to_string(r.nilradical_checks) +
              " non-flat soliton nilradicals minimal in n (worst |H| " + num(r.worst_nilradical_mean_curvature) +
              "); item I nilradical with t != 0 has |tr S_JV| >= " + num(smallest)};
}

Outcome table2_reproduction() {
  testing::Rng rng(12);
  int total = 0;
  std::vector<std::string> mismatched;
  for (Item item : {Item::I, Item::III, Item::IV, Item::V, Item::VI}) {
    int bad = 0;
    for (int i = 0; i < 50; ++i, ++total) {
      const FamilySpec spec = testing::random_instance(item, rng);
      const Subalgebra s = build_family(spec);
      const auto got = decompose_kahler(s.ambient().complex_structure(), s.basis()).signature();
      if (!signature_matches(got, *listed_signature(spec), 1e-8)) ++bad;
    }
    if (bad > 0) mismatched.push_back("item " + to_string(item) + " " + std::to_string(bad) + "/50");
  }
  std::string detail = "signatures of " + std::to_string(total) + " instances against the listed angles";
  if (!mismatched.empty()) {
    detail += "; mismatches:";
    for (const auto& m : mismatched) detail += " " + m;
  }
  return {mismatched.empty(), detail};
}

const std::function<Outcome()> kCriteria[] = {
    ambient_einstein,      connection_oracle,   closed_form_identities, family_certification,
    nilsoliton_constants,  normalization_necessity, gauss_equivalence, kahler_invariants,
    minimality_flags,      scan_completeness,   nilradical_minimality, table2_reproduction,
};

bool run_one(int k) {
  Outcome o;
  try {
    o = kCriteria[k - 1]();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  std::printf("criterion %d: %s: %s\n", k, o.pass ? "PASS" : "FAIL", o.detail.c_str());
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  int criterion = 0;
  app.add_option("--criterion", criterion, "criterion to run (1-12); all when omitted")->check(CLI::Range(1, 12));
  CLI11_PARSE(app, argc, argv);
  bool ok = true;
  if (criterion != 0) return run_one(criterion) ? 0 : 1;
  for (int k = 1; k <= 12; ++k) ok = run_one(k) && ok;
  return ok ? 0 : 1;
}
