#pragma once

#include "chsoliton/document.hpp"
#include "chsoliton/families.hpp"
#include "chsoliton/scan.hpp"

#include <json.hpp>
#include <string>

namespace chs {

using Json = nlohmann::ordered_json;

/// Rounds to 12 significant digits; -0 becomes 0.
double round12(double x);
/// "%.12g" of round12(x).
std::string fmt12(double x);

Json to_json(const Vector& v);
/// Matrix as a list of rows.
Json to_json(const Matrix& m);
/// Columns of `m` as a list of vectors (basis rows in the wire format).
Json columns_json(const Matrix& m);

Json to_json(const SubalgebraDocument& doc);
Json to_json(const SolitonCertificate& c);
Json to_json(const GeometryReport& g);
Json to_json(const CurvatureSignature& s);
Json to_json(const std::vector<SignatureEntry>& sig);
Json to_json(const FamilySpec& spec);
Json to_json(const Classification& c);
Json to_json(const LauretReport& r);
Json to_json(const ScanReport& r);

/// Everything `check` reports about one subalgebra.
Json check_report(const Subalgebra& sub);
std::string check_markdown(const Json& report);
std::string scan_markdown(const ScanReport& r);

/// Human-readable signature, e.g. "{pi/2: 1, 0.523598775598: 2}".
std::string signature_text(const std::vector<SignatureEntry>& sig);

}  // namespace chs
