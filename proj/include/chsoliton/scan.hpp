#pragma once

#include "chsoliton/families.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace chs {

enum class Profile { InsideN, NonNilpotent, Mixed };
std::string to_string(Profile p);
Profile parse_profile(const std::string& text);

/// splitmix64 step: independent per-sample seeds from (seed, index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Random feasible parameters for `item` in CH^n, or nullopt when no
/// configuration of the item fits.
std::optional<FamilySpec> random_family_spec(Item item, int n, std::mt19937_64& rng);

struct RandomSample {
  Matrix spanning;                 ///< closed spanning set, ambient coordinates
  std::optional<Item> source;      ///< set when the sample is an exact family instance
  Profile profile = Profile::InsideN;  ///< resolved shape (never Mixed)
  std::string recipe;              ///< generic / pieces / family
};

/// Deterministic in `seed`. Spanning sets are closed under the bracket.
RandomSample random_sample(const AmbientModel& model, std::uint64_t seed, Profile profile);
Subalgebra random_subalgebra(std::shared_ptr<const AmbientModel> model, std::uint64_t seed, Profile profile);

struct ScanOptions {
  int n = 3;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  int jobs = 1;
  Profile profile = Profile::Mixed;
};

struct ScanWitness {
  std::uint64_t index = 0;
  std::uint64_t sample_seed = 0;
  Matrix basis;
  std::string label;
  Classification classification;
  std::optional<Item> source;
};

struct ScanReport {
  ScanOptions options;
  std::uint64_t processed = 0;
  std::map<std::string, std::uint64_t> tally;  ///< not-soliton, I..VI, below-scope, ...
  std::uint64_t solitons = 0;
  std::uint64_t family_instances = 0;
  /// Non-flat nilradicals of certified solitons checked for minimality inside n.
  std::uint64_t nilradical_checks = 0;
  std::uint64_t nilradical_failures = 0;
  double worst_nilradical_mean_curvature = 0.0;
  std::optional<ScanWitness> counterexample;

  bool clean() const { return !counterexample && nilradical_failures == 0; }
};

ScanReport scan(const ScanOptions& options);

}  // namespace chs
