#include "topstab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <tuple>

namespace topstab {

std::string to_string(ComparisonKind kind) {
  return kind == ComparisonKind::kWithin ? "within" : "between";
}

ComparisonKind parse_kind(const std::string& name) {
  if (name == "within") return ComparisonKind::kWithin;
  if (name == "between") return ComparisonKind::kBetween;
  throw std::invalid_argument("unknown comparison kind '" + name + "'");
}

bool sample_key_less(const SimilaritySample& a, const SimilaritySample& b) {
  return std::tie(a.corpus_id, a.topics, a.run_id, a.kind, a.measure, a.pair_index) <
         std::tie(b.corpus_id, b.topics, b.run_id, b.kind, b.measure, b.pair_index);
}

CorpusPoint corpus_point(std::span<const double> values) {
  if (values.empty()) {
    throw std::invalid_argument("corpus_point: no similarity values");
  }
  const double n = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / n;
  double squares = 0.0;
  for (double v : values) squares += (v - mean) * (v - mean);
  return {mean, squares / n};
}

double instability(std::span<const CorpusPoint> points) {
  if (points.empty()) {
    throw std::invalid_argument("instability: no points");
  }
  double total = 0.0;
  for (const auto& point : points) {
    if (!(point.mean >= 0.0 && point.mean <= 1.0) ||
        !(point.variance >= 0.0 && point.variance <= 1.0)) {
      throw std::invalid_argument("instability: mean and variance must lie in [0, 1]");
    }
    total += std::hypot(point.mean - 1.0, point.variance);
  }
  return total / static_cast<double>(points.size());
}

std::vector<StabilityRecord> stability_table(std::span<const SimilaritySample> samples,
                                             const std::string& distribution,
                                             Averaging averaging) {
  using GroupKey = std::tuple<std::size_t, Measure, ComparisonKind>;
  using PointKey = std::pair<std::size_t, std::size_t>;  // (corpus, run or 0)

  // Ordered maps make the reduction independent of sample arrival order
  // apart from summation order inside a point, which we fix by sorting.
  std::map<GroupKey, std::map<PointKey, std::vector<double>>> groups;
  for (const auto& s : samples) {
    if (!(s.value >= 0.0 && s.value <= 1.0)) {
      throw std::invalid_argument("similarity value outside [0, 1]");
    }
    const std::size_t run = averaging == Averaging::kRun ? s.run_id : 0;
    groups[{s.topics, s.measure, s.kind}][{s.corpus_id, run}].push_back(s.value);
  }

  std::vector<StabilityRecord> records;
  records.reserve(groups.size());
  for (auto& [key, points_by_id] : groups) {
    std::vector<CorpusPoint> points;
    points.reserve(points_by_id.size());
    for (auto& [id, values] : points_by_id) {
      std::sort(values.begin(), values.end());
      points.push_back(corpus_point(values));
    }
    StabilityRecord record;
    record.distribution = distribution;
    std::tie(record.topics, record.measure, record.kind) = key;
    for (const auto& p : points) {
      record.mean += p.mean;
      record.variance += p.variance;
    }
    record.t = points.size();
    record.mean /= static_cast<double>(record.t);
    record.variance /= static_cast<double>(record.t);
    record.instability = instability(points);
    records.push_back(std::move(record));
  }
  return records;
}

}  // namespace topstab
