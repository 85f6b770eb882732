#pragma once

// Topic similarity measures. All map a pair of topics to [0, 1], are
// symmetric, and equal 1 on identical inputs.

#include <span>
#include <string>
#include <vector>

#include "topstab/core.hpp"

namespace topstab {

enum class Measure { kJss, kJis, kRbo };

/// "jss", "jis", "rbo".
std::string to_string(Measure measure);
/// Throws std::invalid_argument for unknown names.
Measure parse_measure(const std::string& name);

/// Ranked term indices, most probable first. Entries are distinct.
class TopNList {
 public:
  TopNList() = default;
  /// Throws std::invalid_argument on duplicate entries.
  explicit TopNList(std::vector<TermId> terms);

  std::size_t size() const noexcept { return terms_.size(); }
  const std::vector<TermId>& terms() const noexcept { return terms_; }

  friend bool operator==(const TopNList&, const TopNList&) = default;

 private:
  std::vector<TermId> terms_;
};

inline constexpr std::size_t kDefaultTopN = 10;
inline constexpr double kDefaultRboPersistence = 0.9;

/// Jensen-Shannon divergence in bits, in [0, 1]. 0 log 0 = 0.
double jensen_shannon_divergence(std::span<const double> p, std::span<const double> q);

/// 1 - sqrt(JSD) with base-2 JSD. Throws std::invalid_argument on a length
/// mismatch or when either input is not a probability vector.
double jss(std::span<const double> p, std::span<const double> q);

/// Same as jss() without validating inputs; for rows already known to be
/// simplex points (e.g. taken from a TopicWordMatrix).
double jss_unchecked(std::span<const double> p, std::span<const double> q) noexcept;

/// Jaccard index of the two lists viewed as sets.
double jis(const TopNList& a, const TopNList& b);

/// Extrapolated rank-biased overlap at depth n = |a| = |b|:
///   (X_n / n) p^n + ((1 - p) / p) * sum_{i=1..n} (X_i / i) p^i
/// with X_i the overlap of the two depth-i prefixes. Throws
/// std::invalid_argument if p is outside (0, 1) or the lengths differ.
double rbo(const TopNList& a, const TopNList& b, double p = kDefaultRboPersistence);

/// Indices of the n largest entries, descending; ties go to the lower index.
/// Throws std::invalid_argument if n > row.size().
TopNList top_n(std::span<const double> row, std::size_t n = kDefaultTopN);

}  // namespace topstab
