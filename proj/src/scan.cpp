#include "chsoliton/scan.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <thread>

namespace chs {

namespace {

struct SampleResult {
  bool done = false;
  std::string bucket;
  bool soliton = false;
  bool family = false;
  bool nilradical_checked = false;
  bool nilradical_failed = false;
  double nilradical_h = 0.0;
  std::optional<ScanWitness> witness;
};

bool matches_source(Item source, const Classification& c, int dim) {
  if (c.kind == ClassKind::BelowScope) return dim < 2;
  if (c.kind != ClassKind::Matched) return false;
  Item want = source;
  if (source == Item::N1) want = Item::I;
  if (source == Item::N2) want = Item::IV;
  return c.parameters.item == want;
}

SampleResult run_sample(const std::shared_ptr<const AmbientModel>& model, std::uint64_t index, std::uint64_t seed,
                        Profile profile, const SolitonThresholds& th) {
  SampleResult r;
  r.done = true;
  const std::uint64_t sample_seed = derive_seed(seed, index);
  const RandomSample sample = random_sample(*model, sample_seed, profile);
  r.family = sample.source.has_value();
  auto witness = [&](Classification c, const Matrix& basis) {
    ScanWitness w;
    w.index = index;
    w.sample_seed = sample_seed;
    w.basis = basis;
    w.label = sample.recipe + "/" + to_string(sample.profile);
    w.classification = std::move(c);
    w.source = sample.source;
    return w;
  };

  const Subalgebra sub(model, sample.spanning);
  Classification c = classify(sub, th);
  r.soliton = c.certificate.is_soliton;
  switch (c.kind) {
    case ClassKind::Matched: r.bucket = to_string(c.parameters.item); break;
    default: r.bucket = to_string(c.kind); break;
  }

  if (c.kind == ClassKind::Counterexample || c.kind == ClassKind::Inconclusive) {
    r.witness = witness(std::move(c), sub.basis());
    return r;
  }
  if (sample.source && !matches_source(*sample.source, c, sub.dim())) {
    c.reason = "family instance of item " + to_string(*sample.source) + " classified as " + r.bucket;
    c.kind = ClassKind::Counterexample;
    r.bucket = to_string(ClassKind::Counterexample);
    r.witness = witness(std::move(c), sub.basis());
    return r;
  }

  if (r.soliton) {
    const NilradicalSplit split = split_nilradical(sub);
    if (split.nilradical.cols() >= 2) {
      const Subalgebra l(model, split.nilradical);
      if (!l.induced().is_abelian(1e-10)) {
        r.nilradical_checked = true;
        r.nilradical_h = nilradical_in_n(*model, split.nilradical).mean_curvature().norm();
        r.nilradical_failed = r.nilradical_h > kMinimalTolerance;
      }
    }
  }
  return r;
}

}  // namespace

ScanReport scan(const ScanOptions& options) {
  ScanReport report;
  report.options = options;
  if (options.samples == 0) return report;
  const auto model = make_ambient(options.n);
  const SolitonThresholds th = SolitonThresholds::from_env();
  const int jobs = std::max(1, options.jobs);

  std::vector<SampleResult> results(options.samples);
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> first_bad{std::numeric_limits<std::uint64_t>::max()};

  auto worker = [&]() {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= options.samples || i > first_bad.load()) return;
      try {
        results[i] = run_sample(model, i, options.seed, options.profile, th);
      } catch (const std::exception& e) {
        SampleResult r;
        r.done = true;
        r.bucket = "error";
        ScanWitness w;
        w.index = i;
        w.sample_seed = derive_seed(options.seed, i);
        w.classification.kind = ClassKind::Counterexample;
        w.classification.reason = std::string("evaluation failed: ") + e.what();
        r.witness = std::move(w);
        results[i] = std::move(r);
      }
      if (results[i].witness) {
        std::uint64_t cur = first_bad.load();
        while (i < cur && !first_bad.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int k = 0; k < jobs; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  const std::uint64_t stop = std::min<std::uint64_t>(options.samples, first_bad.load() == std::numeric_limits<std::uint64_t>::max()
                                                                          ? options.samples
                                                                          : first_bad.load() + 1);
  for (std::uint64_t i = 0; i < stop; ++i) {
    SampleResult& r = results[i];
    ++report.processed;
    ++report.tally[r.bucket];
    if (r.soliton) ++report.solitons;
    if (r.family) ++report.family_instances;
    if (r.nilradical_checked) {
      ++report.nilradical_checks;
      if (r.nilradical_failed) ++report.nilradical_failures;
      report.worst_nilradical_mean_curvature = std::max(report.worst_nilradical_mean_curvature, r.nilradical_h);
    }
    if (r.witness) report.counterexample = std::move(r.witness);
  }
  return report;
}

}  // namespace chs
