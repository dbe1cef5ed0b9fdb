#pragma once

#include "chsoliton/kahler.hpp"
#include "chsoliton/soliton.hpp"
#include "chsoliton/submanifold.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace chs {

/// Rows of the soliton classification (I-VI) and the two nilradical families (N1, N2).
enum class Item { I, II, III, IV, V, VI, N1, N2 };

std::string to_string(Item item);
/// Accepts "1".."6", "I".."VI" (any case), "N1", "N2".
Item parse_item(const std::string& text);
bool is_nilpotent_item(Item item);

struct FamilySpec {
  Item item = Item::I;
  int n = 2;
  int dim_mphi = 0;
  double phi = 0.0;
  int dim_mpi2 = 0;
  /// |U|. Derived for III and VI when absent; a supplied value must agree.
  std::optional<double> u_norm;
  double v_norm = 0.0;
  double t = 0.0;
  double x = 0.0;
  /// Orientation of the unitary placement in g_alpha; 0 keeps the coordinate frame.
  std::uint64_t seed = 0;
};

/// Infeasible or inconsistent family parameters; `condition` names the violated requirement.
class FamilyError : public std::invalid_argument {
 public:
  FamilyError(const std::string& condition, const std::string& detail)
      : std::invalid_argument(condition + ": " + detail), condition_(condition) {}
  const std::string& condition() const { return condition_; }

 private:
  std::string condition_;
};

/// |U| forced by the item (tan(phi) for III, the solvsoliton normalization for VI).
std::optional<double> required_u_norm(const FamilySpec& spec);

/// Representative parameters of the same subalgebra: t = 0 folds V into m_{pi/2},
/// V != 0 is rescaled to |V| = 1, V = 0 with t != 0 uses t = 1 (and then x = 0).
FamilySpec canonicalize(const FamilySpec& spec);

/// Validates `spec` and builds the subalgebra.
Subalgebra build_family(std::shared_ptr<const AmbientModel> model, const FamilySpec& spec);
Subalgebra build_family(const FamilySpec& spec);
/// Same construction without the |U| constraints of III and VI (u_norm must be given).
Subalgebra build_family_unchecked(std::shared_ptr<const AmbientModel> model, const FamilySpec& spec);

/// Seeded unitary of C^{n-1} as a real orthogonal matrix on g_alpha commuting with J.
Matrix random_unitary(int complex_dim, std::uint64_t seed);

/// Expected columns of the classification table.
bool expected_einstein(Item item);
CurvatureKind expected_curvature(Item item);

/// Kähler angles and dimensions of s listed for the item, equal angles merged.
/// Items II, N1, N2 yield std::nullopt (no listed row).
std::optional<std::vector<SignatureEntry>> listed_signature(const FamilySpec& spec);

/// Same multiset of (angle, dim) within `tol` on the angles.
bool signature_matches(const std::vector<SignatureEntry>& got, const std::vector<SignatureEntry>& want,
                       double tol = 1e-8);

enum class ClassKind { Matched, NotSoliton, Inconclusive, Counterexample, BelowScope };
std::string to_string(ClassKind kind);

struct Classification {
  ClassKind kind = ClassKind::NotSoliton;
  FamilySpec parameters;  ///< item and canonical parameters recovered from s
  std::vector<Item> also_matches;
  bool degenerate = false;
  std::vector<SignatureEntry> signature;  ///< Kähler signature of s inside a + n
  SolitonCertificate certificate;
  std::string reason;  ///< why NotSoliton / Counterexample
};

Classification classify(const Subalgebra& sub, const SolitonThresholds& th = SolitonThresholds::from_env());

}  // namespace chs
