#include "topstab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

namespace topstab {

std::string to_string(Measure measure) {
  switch (measure) {
    case Measure::kJss: return "jss";
    case Measure::kJis: return "jis";
    case Measure::kRbo: return "rbo";
  }
  return "unknown";
}

Measure parse_measure(const std::string& name) {
  if (name == "jss") return Measure::kJss;
  if (name == "jis") return Measure::kJis;
  if (name == "rbo") return Measure::kRbo;
  throw std::invalid_argument("unknown measure '" + name + "' (expected jss, jis or rbo)");
}

TopNList::TopNList(std::vector<TermId> terms) : terms_(std::move(terms)) {
  std::unordered_set<TermId> seen(terms_.begin(), terms_.end());
  if (seen.size() != terms_.size()) {
    throw std::invalid_argument("top-n list has duplicate terms");
  }
}

double jensen_shannon_divergence(std::span<const double> p, std::span<const double> q) {
  double divergence = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double mid = 0.5 * (p[i] + q[i]);
    if (p[i] > 0.0) divergence += p[i] * std::log2(p[i] / mid);
    if (q[i] > 0.0) divergence += q[i] * std::log2(q[i] / mid);
  }
  // Rounding can leave tiny excursions outside [0, 1].
  return std::clamp(0.5 * divergence, 0.0, 1.0);
}

double jss_unchecked(std::span<const double> p, std::span<const double> q) noexcept {
  return 1.0 - std::sqrt(jensen_shannon_divergence(p, q));
}

double jss(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("jss: length mismatch");
  }
  if (!validate_simplex(p) || !validate_simplex(q)) {
    throw std::invalid_argument("jss: inputs must be probability vectors");
  }
  return jss_unchecked(p, q);
}

double jis(const TopNList& a, const TopNList& b) {
  if (a.size() == 0 && b.size() == 0) {
    return 1.0;
  }
  const std::unordered_set<TermId> left(a.terms().begin(), a.terms().end());
  std::size_t shared = 0;
  for (TermId t : b.terms()) {
    shared += left.count(t);
  }
  const std::size_t combined = a.size() + b.size() - shared;
  return static_cast<double>(shared) / static_cast<double>(combined);
}

double rbo(const TopNList& a, const TopNList& b, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("rbo: persistence must lie in (0, 1)");
  }
  if (a.size() != b.size()) {
    throw std::invalid_argument("rbo: lists must have equal length");
  }
  const std::size_t n = a.size();
  if (n == 0) {
    return 1.0;
  }
  std::unordered_set<TermId> seen_a;
  std::unordered_set<TermId> seen_b;
  std::size_t overlap = 0;
  double weight = 1.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const TermId x = a.terms()[i];
    const TermId y = b.terms()[i];
    if (x == y) {
      ++overlap;
    } else {
      overlap += seen_b.count(x) + seen_a.count(y);
    }
    seen_a.insert(x);
    seen_b.insert(y);
    weight *= p;
    sum += static_cast<double>(overlap) / static_cast<double>(i + 1) * weight;
  }
  const double value = static_cast<double>(overlap) / static_cast<double>(n) * weight +
                       (1.0 - p) / p * sum;
  return std::clamp(value, 0.0, 1.0);
}

TopNList top_n(std::span<const double> row, std::size_t n) {
  if (n > row.size()) {
    throw std::invalid_argument("top_n: n=" + std::to_string(n) + " exceeds vector length " +
                                std::to_string(row.size()));
  }
  std::vector<TermId> order(row.size());
  std::iota(order.begin(), order.end(), TermId{0});
  auto by_rank = [&](TermId x, TermId y) { return row[x] > row[y] || (row[x] == row[y] && x < y); };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n), order.end(), by_rank);
  order.resize(n);
  return TopNList(std::move(order));
}

}  // namespace topstab
