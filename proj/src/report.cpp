#include "chsoliton/report.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace chs {

double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", x);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

std::string fmt12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", round12(x));
  return buf;
}

namespace {

Json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round12(x);
}

Json optional_number(const std::optional<double>& x) { return x ? number(*x) : Json(nullptr); }

}  // namespace

Json to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v(i)));
  return out;
}

Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(to_json(Vector(m.row(r).transpose())));
  return out;
}

Json columns_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(to_json(Vector(m.col(c))));
  return out;
}

Json to_json(const SubalgebraDocument& doc) {
  Json out;
  out["n"] = doc.n;
  if (!doc.label.empty()) out["label"] = doc.label;
  Json rows = Json::array();
  for (const auto& r : doc.basis) {
    Json row = Json::array();
    for (double x : r) row.push_back(number(x));
    rows.push_back(std::move(row));
  }
  out["basis"] = std::move(rows);
  return out;
}

Json to_json(const SolitonCertificate& c) {
  Json out;
  out["verdict"] = to_string(c.verdict);
  out["isSoliton"] = c.is_soliton;
  out["c"] = number(c.c);
  out["residual"] = number(c.residual);
  out["derivationResidual"] = number(c.derivation_residual);
  out["unique"] = c.unique;
  out["derivationDim"] = c.derivation_dim;
  out["type"] = to_string(c.type);
  out["einstein"] = c.is_einstein;
  out["einsteinConstant"] = number(c.einstein_constant);
  out["derivation"] = to_json(c.d);
  out["ricci"] = to_json(c.ricci);
  return out;
}

Json to_json(const CurvatureSignature& s) {
  Json out;
  out["kind"] = to_string(s.kind);
  out["kappa"] = number(s.kappa);
  out["residual"] = number(s.residual);
  return out;
}

Json to_json(const GeometryReport& g) {
  Json out;
  out["meanCurvature"] = to_json(g.mean_curvature);
  out["meanCurvatureNorm"] = number(g.mean_curvature_norm);
  out["minimal"] = g.minimal;
  out["totallyGeodesic"] = g.totally_geodesic;
  Json traces = Json::array();
  for (const auto& s : g.shape_operators) traces.push_back(number(s.trace()));
  out["shapeOperatorTraces"] = std::move(traces);
  out["gaussResidual"] = number(g.gauss_residual);
  out["intrinsicRicci"] = to_json(g.intrinsic_ricci);
  out["curvature"] = to_json(g.signature);
  out["belowScope"] = g.below_scope;
  return out;
}

Json to_json(const std::vector<SignatureEntry>& sig) {
  Json out = Json::array();
  for (const auto& e : sig) {
    Json entry;
    entry["angle"] = number(e.angle);
    entry["dim"] = e.dim;
    out.push_back(std::move(entry));
  }
  return out;
}

Json to_json(const FamilySpec& spec) {
  Json out;
  out["item"] = to_string(spec.item);
  out["n"] = spec.n;
  out["dimMphi"] = spec.dim_mphi;
  out["phi"] = number(spec.phi);
  out["dimMpi2"] = spec.dim_mpi2;
  out["uNorm"] = optional_number(spec.u_norm);
  out["vNorm"] = number(spec.v_norm);
  out["t"] = number(spec.t);
  out["x"] = number(spec.x);
  out["seed"] = spec.seed;
  return out;
}

Json to_json(const Classification& c) {
  Json out;
  out["kind"] = to_string(c.kind);
  if (c.kind == ClassKind::Matched) {
    out["item"] = to_string(c.parameters.item);
    out["parameters"] = to_json(c.parameters);
  } else {
    out["item"] = nullptr;
    out["parameters"] = nullptr;
  }
  Json also = Json::array();
  for (Item i : c.also_matches) also.push_back(to_string(i));
  out["alsoMatches"] = std::move(also);
  out["degenerate"] = c.degenerate;
  out["reason"] = c.reason;
  return out;
}

Json to_json(const LauretReport& r) {
  Json out;
  out["nilsoliton"] = r.nilsoliton;
  out["bAbelian"] = r.b_abelian;
  out["transposeDerivation"] = r.transpose_derivation;
  out["normalization"] = r.normalization;
  out["cbar"] = number(r.cbar);
  out["cbarFree"] = r.cbar_free;
  out["solitonConstant"] = optional_number(r.s_constant);
  out["nilradicalResidual"] = number(r.nilradical_residual);
  out["derivationResidual"] = number(r.derivation_residual);
  out["normalizationResidual"] = number(r.normalization_residual);
  out["all"] = r.all();
  return out;
}

Json to_json(const ScanReport& r) {
  Json out;
  Json opts;
  opts["n"] = r.options.n;
  opts["samples"] = r.options.samples;
  opts["seed"] = r.options.seed;
  opts["profile"] = to_string(r.options.profile);
  out["options"] = std::move(opts);
  out["processed"] = r.processed;
  out["solitons"] = r.solitons;
  out["familyInstances"] = r.family_instances;
  Json tally = Json::object();
  for (const auto& [k, v] : r.tally) tally[k] = v;
  out["tally"] = std::move(tally);
  Json nil;
  nil["checks"] = r.nilradical_checks;
  nil["failures"] = r.nilradical_failures;
  nil["worstMeanCurvature"] = number(r.worst_nilradical_mean_curvature);
  out["nilradicalMinimality"] = std::move(nil);
  if (r.counterexample) {
    const ScanWitness& w = *r.counterexample;
    Json cx;
    cx["index"] = w.index;
    cx["sampleSeed"] = w.sample_seed;
    cx["recipe"] = w.label;
    cx["source"] = w.source ? Json(to_string(*w.source)) : Json(nullptr);
    Json doc;
    doc["n"] = r.options.n;
    doc["basis"] = columns_json(w.basis);
    cx["document"] = std::move(doc);
    cx["classification"] = to_json(w.classification);
    cx["certificate"] = to_json(w.classification.certificate);
    out["counterexample"] = std::move(cx);
  } else {
    out["counterexample"] = nullptr;
  }
  out["clean"] = r.clean();
  return out;
}

Json check_report(const Subalgebra& sub) {
  Json out;
  out["n"] = sub.ambient().n();
  out["label"] = sub.label();
  out["dimension"] = sub.dim();
  out["closureResidual"] = number(sub.closure_residual());

  const NilradicalSplit split = split_nilradical(sub);
  Json nil;
  nil["nilpotent"] = split.nilpotent;
  nil["basis"] = columns_json(split.nilradical);
  nil["t"] = split.t ? to_json(*split.t) : Json(nullptr);
  out["nilradical"] = std::move(nil);

  const Classification cls = classify(sub);
  out["certificate"] = to_json(cls.certificate);
  out["einstein"] = cls.certificate.is_einstein;
  out["geometry"] = to_json(geometry_report(sub));
  out["classification"] = to_json(cls);
  out["kahlerSignature"] = to_json(cls.signature);
  out["lauret"] = split.nilpotent ? Json(nullptr) : to_json(lauret_conditions(sub));
  return out;
}

std::string signature_text(const std::vector<SignatureEntry>& sig) {
  std::ostringstream s;
  s << "{";
  for (std::size_t i = 0; i < sig.size(); ++i) {
    if (i) s << ", ";
    if (std::abs(sig[i].angle - std::numbers::pi / 2) <= 1e-12)
      s << "pi/2";
    else
      s << fmt12(sig[i].angle);
    s << ": " << sig[i].dim;
  }
  s << "}";
  return s.str();
}

namespace {

std::string text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "-";
  if (j.is_number_float()) return fmt12(j.get<double>());
  return j.dump();
}

}  // namespace

std::string check_markdown(const Json& r) {
  std::ostringstream s;
  s << "# Subalgebra";
  if (!r["label"].get<std::string>().empty()) s << " " << r["label"].get<std::string>();
  s << "\n\n";
  s << "- ambient: CH^" << r["n"] << ", dimension " << r["dimension"] << "\n";
  s << "- closure residual: " << text(r["closureResidual"]) << "\n";
  s << "- nilpotent: " << text(r["nilradical"]["nilpotent"]) << ", nilradical dimension "
    << r["nilradical"]["basis"].size() << "\n\n";

  const Json& c = r["certificate"];
  s << "## Soliton certificate\n\n";
  s << "| field | value |\n|---|---|\n";
  for (const char* key : {"verdict", "c", "residual", "derivationResidual", "unique", "derivationDim", "type",
                          "einstein", "einsteinConstant"})
    s << "| " << key << " | " << text(c[key]) << " |\n";

  const Json& g = r["geometry"];
  s << "\n## Geometry\n\n";
  s << "| field | value |\n|---|---|\n";
  for (const char* key : {"meanCurvatureNorm", "minimal", "totallyGeodesic", "gaussResidual"})
    s << "| " << key << " | " << text(g[key]) << " |\n";
  s << "| curvature | " << text(g["curvature"]["kind"]) << " (kappa " << text(g["curvature"]["kappa"]) << ") |\n";

  const Json& k = r["classification"];
  s << "\n## Classification\n\n";
  s << "- kind: " << text(k["kind"]) << "\n";
  if (!k["item"].is_null()) s << "- item: " << text(k["item"]) << "\n";
  if (!k["alsoMatches"].empty()) s << "- also matches: " << k["alsoMatches"].dump() << "\n";
  if (!k["reason"].get<std::string>().empty()) s << "- reason: " << text(k["reason"]) << "\n";
  s << "\n## Kahler signature\n\n| angle | dim |\n|---|---|\n";
  for (const auto& e : r["kahlerSignature"]) s << "| " << text(e["angle"]) << " | " << e["dim"] << " |\n";

  if (!r["lauret"].is_null()) {
    const Json& l = r["lauret"];
    s << "\n## Extension conditions\n\n| condition | holds |\n|---|---|\n";
    for (const char* key : {"nilsoliton", "bAbelian", "transposeDerivation", "normalization"})
      s << "| " << key << " | " << text(l[key]) << " |\n";
    s << "\ncbar = " << text(l["cbar"]) << "\n";
  }
  return s.str();
}

std::string scan_markdown(const ScanReport& r) {
  std::ostringstream s;
  s << "scan CH^" << r.options.n << ": " << r.processed << " of " << r.options.samples << " samples, seed "
    << r.options.seed << "\n\n";
  s << "| bucket | count |\n|---|---|\n";
  for (const auto& [k, v] : r.tally) s << "| " << k << " | " << v << " |\n";
  s << "\nsolitons: " << r.solitons << ", family instances: " << r.family_instances << "\n";
  s << "nilradical minimality: " << r.nilradical_checks << " checked, " << r.nilradical_failures
    << " failed, worst |H| " << fmt12(r.worst_nilradical_mean_curvature) << "\n";
  if (r.counterexample) {
    const ScanWitness& w = *r.counterexample;
    s << "\nCOUNTEREXAMPLE at sample " << w.index << " (" << w.label << "): " << to_string(w.classification.kind)
      << ", " << w.classification.reason << "\n";
  } else {
    s << "\nno counterexamples\n";
  }
  return s.str();
}

}  // namespace chs
