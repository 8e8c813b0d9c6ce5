#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace qgs {

struct Interval {
  double a = 0.0;
  double b = 0.0;

  double length() const { return b - a; }
};

/// Finite union of closed intervals, kept sorted with overlapping or touching
/// pieces merged. Degenerate (zero-length) pieces are dropped.
class IntervalUnion {
 public:
  IntervalUnion() = default;

  /// Throws DomainError on a > b or non-finite endpoints.
  static IntervalUnion from(std::vector<Interval> pieces);
  static IntervalUnion whole(double a, double b);

  const std::vector<Interval>& intervals() const { return pieces_; }
  std::size_t size() const { return pieces_.size(); }
  bool empty() const { return pieces_.empty(); }
  double measure() const { return prefix_.empty() ? 0.0 : prefix_.back(); }
  double lower() const;
  double upper() const;

  /// |this ∩ [t, s]|, O(log n).
  double measure_in(double t, double s) const;

  /// Throws DomainError unless every piece lies in [lo, hi].
  void require_within(double lo, double hi) const;
  bool within(double lo, double hi) const;
  bool contains(const IntervalUnion& other) const;

  IntervalUnion clip(double t, double s) const;
  IntervalUnion shifted(double d) const;
  IntervalUnion unite(const IntervalUnion& other) const;
  IntervalUnion complement(double lo, double hi) const;

  bool operator==(const IntervalUnion& other) const;

 private:
  void rebuild();

  std::vector<Interval> pieces_;
  std::vector<double> prefix_;
};

}  // namespace qgs
