#include "chsoliton/cli.hpp"

#include "chsoliton/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

namespace chs {

bool Reproduction::ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const TableRow& r) { return r.ok; });
}

namespace {

std::string curvature_name(CurvatureKind k) {
  switch (k) {
    case CurvatureKind::Flat: return "flat";
    case CurvatureKind::ConstantSectional: return "real hyperbolic";
    case CurvatureKind::ConstantHolomorphic: return "complex hyperbolic";
    case CurvatureKind::Other: return "other";
  }
  return "other";
}

std::string describe(const FamilySpec& s) {
  std::ostringstream o;
  o << "dim m_phi=" << s.dim_mphi;
  if (s.dim_mphi > 0) o << ", phi=" << fmt12(s.phi);
  o << ", dim m_pi/2=" << s.dim_mpi2;
  if (s.u_norm) o << ", |U|=" << fmt12(*s.u_norm);
  if (s.v_norm != 0.0) o << ", |V|=" << fmt12(s.v_norm);
  if (s.t != 0.0) o << ", t=" << fmt12(s.t);
  if (s.x != 0.0) o << ", x=" << fmt12(s.x);
  return o.str();
}

}  // namespace

Reproduction reproduce_tables(int n, int instances, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("reproduce: n must be at least 2");
  Reproduction out;
  out.n = n;
  const auto model = make_ambient(n);
  const Item items[] = {Item::I, Item::II, Item::III, Item::IV, Item::V, Item::VI};

  std::vector<std::pair<Item, FamilySpec>> sampled;
  for (Item item : items) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(item) + 100 * static_cast<std::uint64_t>(n)));
    std::vector<FamilySpec> specs;
    for (int k = 0; k < instances; ++k) {
      if (auto s = random_family_spec(item, n, rng)) specs.push_back(*s);
    }

    TableRow row;
    row.table = 1;
    row.item = item;
    row.expected = std::string(expected_einstein(item) ? "Einstein" : "not Einstein") + ", " +
                   curvature_name(expected_curvature(item));
    if (specs.empty()) {
      row.feasible = false;
      row.computed = "n too small";
      out.rows.push_back(row);
      continue;
    }
    std::set<std::string> seen;
    for (const FamilySpec& s : specs) {
      const Subalgebra sub = build_family(model, s);
      const SolitonCertificate cert = certify_soliton(sub);
      const CurvatureSignature sig = curvature_signature(sub);
      std::string got = cert.is_soliton ? "" : "NOT A SOLITON, ";
      got += std::string(cert.is_einstein ? "Einstein" : "not Einstein") + ", " + curvature_name(sig.kind);
      if (!cert.is_soliton || cert.is_einstein != expected_einstein(item) || sig.kind != expected_curvature(item))
        row.ok = false;
      seen.insert(got);
      sampled.emplace_back(item, s);
    }
    row.instance = std::to_string(specs.size()) + " instances";
    for (const auto& g : seen) row.computed += (row.computed.empty() ? "" : "; ") + g;
    out.rows.push_back(row);
  }

  for (Item item : items) {
    if (item == Item::II) continue;
    bool any = false;
    for (const auto& [it, s] : sampled) {
      if (it != item) continue;
      any = true;
      TableRow row;
      row.table = 2;
      row.item = item;
      row.instance = describe(canonicalize(s));
      const auto want = listed_signature(s);
      const Subalgebra sub = build_family(model, s);
      const auto got = decompose_kahler(model->complex_structure(), sub.basis()).signature();
      row.expected = signature_text(*want);
      row.computed = signature_text(got);
      row.ok = signature_matches(got, *want);
      out.rows.push_back(row);
    }
    if (!any) {
      TableRow row;
      row.table = 2;
      row.item = item;
      row.feasible = false;
      row.computed = "n too small";
      out.rows.push_back(row);
    }
  }
  return out;
}

std::string reproduction_markdown(const Reproduction& r) {
  std::ostringstream s;
  s << "# Classification tables in CH^" << r.n << "\n\n";
  s << "## Einstein flag and curvature\n\n| item | expected | computed | instances | status |\n|---|---|---|---|---|\n";
  for (const auto& row : r.rows) {
    if (row.table != 1) continue;
    s << "| " << to_string(row.item) << " | " << row.expected << " | " << row.computed << " | " << row.instance
      << " | " << (row.feasible ? (row.ok ? "ok" : "MISMATCH") : "skipped") << " |\n";
  }
  s << "\n## Kahler signature (angle: dimension)\n\n| item | instance | listed | computed | status |\n"
       "|---|---|---|---|---|\n";
  for (const auto& row : r.rows) {
    if (row.table != 2) continue;
    s << "| " << to_string(row.item) << " | " << row.instance << " | " << row.expected << " | " << row.computed
      << " | " << (row.feasible ? (row.ok ? "ok" : "MISMATCH") : "skipped") << " |\n";
  }
  if (!r.ok()) {
    s << "\n## Mismatches\n\n";
    for (const auto& row : r.rows) {
      if (row.ok) continue;
      s << "- table " << row.table << ", item " << to_string(row.item) << " (" << row.instance << ")\n"
        << "  - expected: " << row.expected << "\n  + computed: " << row.computed << "\n";
    }
  }
  return s.str();
}

namespace {

void write_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

int cmd_check(const std::string& path, const std::string& format, std::ostream& out) {
  const Subalgebra sub = load_subalgebra(read_document(path));
  const Json report = check_report(sub);
  if (format == "markdown")
    out << check_markdown(report);
  else
    write_json(out, report);
  return report["certificate"]["isSoliton"].get<bool>() ? kExitOk : kExitNegative;
}

int cmd_classify(const std::string& path, std::ostream& out) {
  const Subalgebra sub = load_subalgebra(read_document(path));
  const Classification c = classify(sub);
  Json j = to_json(c);
  j["signature"] = to_json(c.signature);
  j["solitonResidual"] = round12(c.certificate.residual);
  j["c"] = round12(c.certificate.c);
  j["einstein"] = c.certificate.is_einstein;
  write_json(out, j);
  return (c.kind == ClassKind::Matched || c.kind == ClassKind::BelowScope) ? kExitOk : kExitNegative;
}

int cmd_ricci(const std::string& path, int n, std::ostream& out) {
  Json j;
  if (path.empty()) {
    const auto model = make_ambient(n);
    const Endomorphism ric = ricci(model->algebra());
    const double want = -(n + 1) / 2.0;
    j["n"] = n;
    j["dimension"] = model->dim();
    j["ricci"] = to_json(ric);
    j["expectedConstant"] = round12(want);
    j["maxError"] = round12((ric - want * Matrix::Identity(model->dim(), model->dim())).cwiseAbs().maxCoeff());
    const EinsteinResult e = einstein_check(model->algebra());
    j["einstein"] = e.einstein;
    j["einsteinConstant"] = round12(e.c);
  } else {
    const Subalgebra sub = load_subalgebra(read_document(path));
    const GeometryReport g = geometry_report(sub);
    const EinsteinResult e = einstein_check(sub);
    j["n"] = sub.ambient().n();
    j["dimension"] = sub.dim();
    j["ricci"] = to_json(g.intrinsic_ricci);
    j["gaussRicci"] = to_json(g.gauss_ricci);
    j["gaussResidual"] = round12(g.gauss_residual);
    j["einstein"] = e.einstein;
    j["einsteinConstant"] = round12(e.c);
  }
  write_json(out, j);
  return kExitOk;
}

struct FamilyFlags {
  std::string item;
  int n = 2;
  int dim_mphi = 0;
  double phi = 0.0;
  int dim_mpi2 = 0;
  std::optional<double> u;
  double v = 0.0;
  double t = 0.0;
  double x = 0.0;
  std::uint64_t seed = 0;
  std::string out_path;
};

int cmd_family(const FamilyFlags& f, std::ostream& out, std::ostream& err) {
  FamilySpec spec;
  spec.item = parse_item(f.item);
  spec.n = f.n;
  spec.dim_mphi = f.dim_mphi;
  spec.phi = f.phi;
  spec.dim_mpi2 = f.dim_mpi2;
  spec.u_norm = f.u;
  spec.v_norm = f.v;
  spec.t = f.t;
  spec.x = f.x;
  spec.seed = f.seed;
  FamilySpec derived = spec;
  if (!derived.u_norm) derived.u_norm = required_u_norm(spec);
  std::ostringstream summary;
  if (derived.u_norm) {
    summary << "|U| = " << fmt12(*derived.u_norm) << "\n";
    summary << "|U|^2 = " << fmt12(*derived.u_norm * *derived.u_norm) << "\n";
  }
  Subalgebra sub = [&] {
    try {
      return build_family(spec);
    } catch (const FamilyError&) {
      err << summary.str();
      throw;
    }
  }();
  summary << "item " << to_string(spec.item) << " in CH^" << spec.n << ", dimension " << sub.dim() << "\n";

  SubalgebraDocument doc = document_from(sub);
  doc.label = "item " + to_string(spec.item);
  Json j = to_json(doc);
  j["family"] = to_json(derived);
  if (f.out_path.empty() || f.out_path == "-") {
    write_json(out, j);
    err << summary.str();
  } else {
    std::ofstream file(f.out_path);
    if (!file) throw DocumentError("cannot write '" + f.out_path + "'");
    write_json(file, j);
    out << summary.str();
  }
  return kExitOk;
}

int cmd_scan(const ScanOptions& o, std::ostream& out, std::ostream& err) {
  if (o.n < 2) throw std::invalid_argument("scan: n must be at least 2");
  const ScanReport r = scan(o);
  write_json(out, to_json(r));
  err << scan_markdown(r);
  return r.clean() ? kExitOk : kExitNegative;
}

int cmd_reproduce(int n, int instances, std::uint64_t seed, std::ostream& out) {
  const Reproduction r = reproduce_tables(n, instances, seed);
  out << reproduction_markdown(r);
  return r.ok() ? kExitOk : kExitNegative;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ricci soliton subalgebras of the complex hyperbolic space"};
  app.name("chsoliton");
  app.require_subcommand(1);

  std::string path;
  std::string format = "json";
  auto* check = app.add_subcommand("check", "Certify and describe the subalgebra in a document");
  check->add_option("document", path, "SubalgebraDocument JSON file")->required();
  check->add_option("--format", format, "json or markdown")->check(CLI::IsMember({"json", "markdown"}));

  auto* cls = app.add_subcommand("classify", "Place the subalgebra in the classification");
  cls->add_option("document", path, "SubalgebraDocument JSON file")->required();

  int ricci_n = 2;
  auto* ric = app.add_subcommand("ricci", "Ricci operator of a subalgebra, or of AN itself with --n");
  auto* ric_doc = ric->add_option("document", path, "SubalgebraDocument JSON file");
  auto* ric_n = ric->add_option("--n", ricci_n, "complex dimension of the ambient space")->check(CLI::Range(2, 64));
  ric_doc->excludes(ric_n);

  FamilyFlags fam;
  auto* family = app.add_subcommand("family", "Build a member of one of the classified families");
  family->add_option("--item", fam.item, "I..VI, 1..6, N1 or N2")->required();
  family->add_option("--n", fam.n, "complex dimension")->check(CLI::Range(2, 64));
  family->add_option("--dim-mphi", fam.dim_mphi, "dimension of m_phi");
  family->add_option("--phi", fam.phi, "Kahler angle of m_phi");
  family->add_option("--dim-mpi2", fam.dim_mpi2, "dimension of the totally real part");
  family->add_option("--u", fam.u, "|U|");
  family->add_option("--v", fam.v, "|V|");
  family->add_option("--t", fam.t, "Z-coefficient t");
  family->add_option("--x", fam.x, "Z-coefficient x of B + U + xZ");
  family->add_option("--seed", fam.seed, "placement seed (0 keeps coordinates)");
  family->add_option("--out", fam.out_path, "write the document here instead of stdout");

  ScanOptions so;
  std::string profile = "mixed";
  so.samples = 1000;
  auto* scn = app.add_subcommand("scan", "Randomized falsification scan");
  scn->add_option("--n", so.n, "complex dimension")->check(CLI::Range(2, 64));
  scn->add_option("--samples", so.samples, "number of samples");
  scn->add_option("--seed", so.seed, "base seed");
  scn->add_option("--jobs", so.jobs, "worker threads")->check(CLI::Range(1, 1024));
  scn->add_option("--profile", profile, "inside-n, non-nilpotent or mixed");

  int rep_n = 3;
  int rep_instances = 4;
  std::uint64_t rep_seed = 0;
  auto* rep = app.add_subcommand("reproduce", "Regenerate the classification tables");
  rep->add_option("--n", rep_n, "complex dimension")->check(CLI::Range(2, 64));
  rep->add_option("--instances", rep_instances, "instances per item")->check(CLI::Range(1, 1000));
  rep->add_option("--seed", rep_seed, "sampling seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*check) return cmd_check(path, format, out);
    if (*cls) return cmd_classify(path, out);
    if (*ric) return cmd_ricci(path, ricci_n, out);
    if (*family) return cmd_family(fam, out, err);
    if (*scn) {
      so.profile = parse_profile(profile);
      return cmd_scan(so, out, err);
    }
    if (*rep) return cmd_reproduce(rep_n, rep_instances, rep_seed, out);
  } catch (const FamilyError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const ClosureError& e) {
    err << "not a subalgebra: " << e.what() << " (closure residual " << fmt12(e.residual()) << ")\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace chs
