#pragma once

#include "chsoliton/submanifold.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace chs {

/// Malformed input file or document (exit code 2 at the command line).
class DocumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/**
 * Wire format of a subalgebra of a + n in CH^n:
 *
 *   {"n": 2, "label": "...", "basis": [[B, X1, Y1, ..., Z], ...]}
 *
 * Each basis row has length 2n in the order (B; X_1, Y_1, ...; Z). Unknown
 * keys are ignored.
 */
struct SubalgebraDocument {
  int n = 2;
  std::vector<std::vector<double>> basis;
  std::string label;
};

SubalgebraDocument parse_document(const std::string& text);
SubalgebraDocument read_document(const std::string& path);
SubalgebraDocument document_from(const Subalgebra& sub);

/// Spanning matrix with the basis rows as columns.
Matrix spanning_matrix(const SubalgebraDocument& doc);
/// Builds the subalgebra; ClosureError if the rows do not span a subalgebra.
Subalgebra load_subalgebra(const SubalgebraDocument& doc);

}  // namespace chs
