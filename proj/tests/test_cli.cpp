#include "chsoliton/cli.hpp"
#include "chsoliton/document.hpp"
#include "chsoliton/report.hpp"

#include <cstdio>
#include <doctest.h>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace chs;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(TEST_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("documents parse and validate") {
  const SubalgebraDocument doc = parse_document(R"({"n": 2, "label": "x", "basis": [[1,0,0,0],[0,0,0,1]], "extra": 1})");
  CHECK(doc.n == 2);
  CHECK(doc.label == "x");
  CHECK(spanning_matrix(doc).cols() == 2);
  CHECK(load_subalgebra(doc).dim() == 2);

  CHECK_THROWS_AS(parse_document("not json"), DocumentError);
  CHECK_THROWS_AS(parse_document("[]"), DocumentError);
  CHECK_THROWS_AS(parse_document(R"({"n": 1, "basis": [[1,0]]})"), DocumentError);
  CHECK_THROWS_AS(parse_document(R"({"n": 2.5, "basis": [[1,0,0,0]]})"), DocumentError);
  CHECK_THROWS_AS(parse_document(R"({"n": 2, "basis": []})"), DocumentError);
  CHECK_THROWS_AS(parse_document(R"({"n": 2, "basis": [[1,0,0]]})"), DocumentError);
  CHECK_THROWS_AS(parse_document(R"({"n": 2, "basis": [[1,0,"a",0]]})"), DocumentError);
  CHECK_THROWS_AS(read_document(data("missing.json")), DocumentError);
  CHECK_THROWS_AS(load_subalgebra(read_document(data("not_closed.json"))), ClosureError);
}

TEST_CASE("documents round trip through JSON") {
  const Subalgebra s = load_subalgebra(read_document(data("galpha_z.json")));
  const SubalgebraDocument back = parse_document(to_json(document_from(s)).dump());
  CHECK(back.n == 2);
  CHECK((spanning_matrix(back) - s.basis()).norm() < 1e-11);
}

TEST_CASE("number formatting") {
  CHECK(fmt12(1.0 / 3.0) == "0.333333333333");
  CHECK(round12(-0.0) == 0.0);
  CHECK(!std::signbit(round12(-1e-300 * 1e-300)));
  CHECK(signature_text({{0.0, 2}, {M_PI / 2, 1}}) == "{0: 2, pi/2: 1}");
}

TEST_CASE("check: line B, Z is a totally geodesic item II") {
  const Run r = run({"check", data("rb_rz.json")});
  CHECK(r.code == kExitOk);
  const auto j = Json::parse(r.out);
  CHECK(j["certificate"]["isSoliton"] == true);
  CHECK(j["geometry"]["totallyGeodesic"] == true);
  CHECK(j["classification"]["item"] == "II");
  CHECK(j["classification"]["degenerate"] == true);
}

TEST_CASE("check: Heisenberg nilradical is item IV with c = -3/2") {
  const Run r = run({"check", data("galpha_z.json")});
  CHECK(r.code == kExitOk);
  const auto j = Json::parse(r.out);
  CHECK(j["classification"]["item"] == "IV");
  CHECK(j["certificate"]["c"].get<double>() == doctest::Approx(-1.5).epsilon(1e-12));
  CHECK(j["lauret"].is_null());
  CHECK(j["kahlerSignature"].size() == 2);
}

TEST_CASE("check: exit codes") {
  CHECK(run({"check", data("heisenberg_perturbed.json")}).code == kExitNegative);
  const Run open = run({"check", data("not_closed.json")});
  CHECK(open.code == kExitInvalid);
  CHECK(open.err.find("not a subalgebra") != std::string::npos);
  CHECK(open.err.find("closure residual") != std::string::npos);
  const Run bad = run({"check", data("malformed.json")});
  CHECK(bad.code == kExitInvalid);
  CHECK(bad.err.find("invalid input") != std::string::npos);
  CHECK(run({"check", data("missing.json")}).code == kExitInvalid);
  CHECK(run({"check"}).code == kExitInvalid);
  CHECK(run({"frobnicate"}).code == kExitInvalid);
  CHECK(run({"check", data("rb_rz.json"), "--format", "yaml"}).code == kExitInvalid);
}

TEST_CASE("check: markdown report") {
  const Run r = run({"check", data("galpha_z.json"), "--format", "markdown"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("| ") != std::string::npos);
  CHECK(r.out.find("IV") != std::string::npos);
}

TEST_CASE("classify") {
  CHECK(run({"classify", data("galpha_z.json")}).code == kExitOk);
  CHECK(run({"classify", data("heisenberg_perturbed.json")}).code == kExitNegative);
}

TEST_CASE("ricci") {
  const Run r = run({"ricci", "--n", "4"});
  CHECK(r.code == kExitOk);
  const auto j = Json::parse(r.out);
  CHECK(j["maxError"].get<double>() <= 1e-10);
  CHECK(run({"ricci", data("galpha_z.json")}).code == kExitOk);
  CHECK(run({"ricci", "--n", "1"}).code == kExitInvalid);
}

TEST_CASE("family: derived |U| and infeasible specs") {
  const Run iii = run({"family", "--item", "3", "--n", "3", "--dim-mphi", "2", "--phi", "0.5"});
  CHECK(iii.code == kExitInvalid);  // m_phi plus C U needs three complex dimensions
  CHECK(iii.err.find("|U| = 0.546302489844") != std::string::npos);
  CHECK(iii.err.find("infeasible") != std::string::npos);

  const Run iii4 = run({"family", "--item", "3", "--n", "4", "--dim-mphi", "2", "--phi", "0.5"});
  CHECK(iii4.code == kExitOk);
  CHECK(iii4.err.find("|U| = 0.546302489844") != std::string::npos);
  const SubalgebraDocument doc = parse_document(iii4.out);
  CHECK(doc.n == 4);
  CHECK(load_subalgebra(doc).dim() == 4);

  const Run vi = run({"family", "--item", "6", "--n", "5", "--dim-mphi", "2", "--phi", "1.0471975512", "--dim-mpi2", "1"});
  CHECK(vi.code == kExitOk);
  CHECK(vi.err.find("|U|^2 = 3.666666666") != std::string::npos);

  const Run iv = run({"family", "--item", "4", "--n", "2", "--dim-mphi", "2", "--phi", "0", "--dim-mpi2", "1"});
  CHECK(iv.code == kExitInvalid);
  CHECK(iv.err.find("dimension feasibility") != std::string::npos);

  CHECK(run({"family", "--item", "9", "--n", "3"}).code == kExitInvalid);
}

TEST_CASE("family: output file feeds check") {
  const auto path = std::filesystem::temp_directory_path() / "chs_family_test.json";
  const Run r = run({"family", "--item", "vi", "--n", "5", "--dim-mphi", "2", "--phi", "0.7", "--dim-mpi2", "1",
                     "--seed", "5", "--out", path.string()});
  REQUIRE(r.code == kExitOk);
  const Run c = run({"check", path.string()});
  CHECK(c.code == kExitOk);
  CHECK(Json::parse(c.out)["classification"]["item"] == "VI");
  const Run again = run({"family", "--item", "vi", "--n", "5", "--dim-mphi", "2", "--phi", "0.7", "--dim-mpi2", "1",
                         "--seed", "5"});
  std::ifstream in(path);
  std::stringstream file;
  file << in.rdbuf();
  CHECK(file.str() == again.out);
  std::filesystem::remove(path);
}

TEST_CASE("scan: empty, deterministic, independent of jobs") {
  const Run empty = run({"scan", "--samples", "0"});
  CHECK(empty.code == kExitOk);
  CHECK(Json::parse(empty.out)["processed"] == 0);

  const Run a = run({"scan", "--n", "3", "--samples", "300", "--seed", "42"});
  const Run b = run({"scan", "--n", "3", "--samples", "300", "--seed", "42", "--jobs", "3"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
  const auto j = Json::parse(a.out);
  CHECK(j["clean"] == true);
  CHECK(j["counterexample"].is_null());
  CHECK(run({"scan", "--samples", "10", "--profile", "sideways"}).code == kExitInvalid);
}

TEST_CASE("reproduce") {
  const Reproduction small = reproduce_tables(2, 2, 0);
  bool marked = false;
  for (const auto& row : small.rows)
    if (!row.feasible) {
      marked = true;
      CHECK(row.computed == "n too small");
    }
  CHECK(marked);

  const Reproduction r = reproduce_tables(4, 2, 0);
  for (const auto& row : r.rows) {
    if (row.table == 1 || row.item == Item::I || row.item == Item::III || row.item == Item::IV) {
      INFO("item " << to_string(row.item) << " " << row.instance << ": " << row.expected << " vs " << row.computed);
      CHECK((row.ok || !row.feasible));
    }
  }
  const std::string md = reproduction_markdown(r);
  CHECK(md.find("Mismatches") != std::string::npos);
}
