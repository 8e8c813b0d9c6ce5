#include "qgs/interval_union.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qgs/error.hpp"

namespace qgs {

IntervalUnion IntervalUnion::from(std::vector<Interval> pieces) {
  for (const auto& p : pieces) {
    if (!std::isfinite(p.a) || !std::isfinite(p.b) || p.a > p.b) {
      std::ostringstream msg;
      msg << "invalid interval [" << p.a << ", " << p.b << "]";
      throw DomainError(msg.str());
    }
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const Interval& x, const Interval& y) { return x.a < y.a || (x.a == y.a && x.b < y.b); });
  IntervalUnion u;
  for (const auto& p : pieces) {
    if (p.b <= p.a) continue;
    if (!u.pieces_.empty() && p.a <= u.pieces_.back().b) {
      u.pieces_.back().b = std::max(u.pieces_.back().b, p.b);
    } else {
      u.pieces_.push_back(p);
    }
  }
  u.rebuild();
  return u;
}

IntervalUnion IntervalUnion::whole(double a, double b) { return from({{a, b}}); }

void IntervalUnion::rebuild() {
  prefix_.assign(pieces_.size(), 0.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    acc += pieces_[i].length();
    prefix_[i] = acc;
  }
}

double IntervalUnion::lower() const {
  return pieces_.empty() ? std::numeric_limits<double>::quiet_NaN() : pieces_.front().a;
}

double IntervalUnion::upper() const {
  return pieces_.empty() ? std::numeric_limits<double>::quiet_NaN() : pieces_.back().b;
}

double IntervalUnion::measure_in(double t, double s) const {
  if (s <= t || pieces_.empty()) return 0.0;
  // Pieces strictly left of t do not count; find the first with b > t.
  const auto first = std::partition_point(pieces_.begin(), pieces_.end(),
                                          [t](const Interval& p) { return p.b <= t; });
  // Last piece with a < s.
  const auto last = std::partition_point(first, pieces_.end(),
                                         [s](const Interval& p) { return p.a < s; });
  if (first == last) return 0.0;
  const auto i = static_cast<std::size_t>(first - pieces_.begin());
  const auto j = static_cast<std::size_t>(last - pieces_.begin()) - 1;
  if (i == j) return std::min(s, pieces_[i].b) - std::max(t, pieces_[i].a);
  double inner = prefix_[j - 1] - prefix_[i];
  return inner + (pieces_[i].b - std::max(t, pieces_[i].a)) + (std::min(s, pieces_[j].b) - pieces_[j].a);
}

bool IntervalUnion::within(double lo, double hi) const {
  return pieces_.empty() || (pieces_.front().a >= lo && pieces_.back().b <= hi);
}

void IntervalUnion::require_within(double lo, double hi) const {
  if (!within(lo, hi)) {
    std::ostringstream msg;
    msg << "interval union [" << lower() << ", " << upper() << "] leaves [" << lo << ", " << hi << "]";
    throw DomainError(msg.str());
  }
}

bool IntervalUnion::contains(const IntervalUnion& other) const {
  for (const auto& p : other.pieces_) {
    if (measure_in(p.a, p.b) < p.length()) return false;
  }
  return true;
}

IntervalUnion IntervalUnion::clip(double t, double s) const {
  IntervalUnion u;
  for (const auto& p : pieces_) {
    const double a = std::max(p.a, t);
    const double b = std::min(p.b, s);
    if (b > a) u.pieces_.push_back({a, b});
  }
  u.rebuild();
  return u;
}

IntervalUnion IntervalUnion::shifted(double d) const {
  IntervalUnion u = *this;
  for (auto& p : u.pieces_) {
    p.a += d;
    p.b += d;
  }
  u.rebuild();
  return u;
}

IntervalUnion IntervalUnion::unite(const IntervalUnion& other) const {
  std::vector<Interval> all = pieces_;
  all.insert(all.end(), other.pieces_.begin(), other.pieces_.end());
  return from(std::move(all));
}

IntervalUnion IntervalUnion::complement(double lo, double hi) const {
  std::vector<Interval> out;
  double cursor = lo;
  for (const auto& p : pieces_) {
    if (p.b <= lo) continue;
    if (p.a >= hi) break;
    if (p.a > cursor) out.push_back({cursor, p.a});
    cursor = std::max(cursor, p.b);
  }
  if (cursor < hi) out.push_back({cursor, hi});
  return from(std::move(out));
}

bool IntervalUnion::operator==(const IntervalUnion& other) const {
  if (pieces_.size() != other.pieces_.size()) return false;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    if (pieces_[i].a != other.pieces_[i].a || pieces_[i].b != other.pieces_[i].b) return false;
  }
  return true;
}

}  // namespace qgs
