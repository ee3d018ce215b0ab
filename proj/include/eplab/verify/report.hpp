#pragma once

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

namespace eplab {

/// Extremes of a monitored ratio over a scan, with the sample points at which
/// they occur (coordinates are scan-specific and re-evaluable).
struct ScanReport {
  enum class Rule { min_at_least, max_at_most };

  std::string quantity;
  Rule rule = Rule::max_at_most;
  double threshold = 0.0;
  std::size_t samples = 0;
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
  std::vector<double> argmin;
  std::vector<double> argmax;
  bool all_finite = true;
  bool pass = false;

  ScanReport() = default;
  ScanReport(std::string name, Rule r, double thr) : quantity(std::move(name)), rule(r), threshold(thr) {}

  void observe(double v, const std::vector<double>& point) {
    ++samples;
    if (!std::isfinite(v)) {
      all_finite = false;
      return;
    }
    if (v < min) {
      min = v;
      argmin = point;
    }
    if (v > max) {
      max = v;
      argmax = point;
    }
  }

  void merge(const ScanReport& o) {
    samples += o.samples;
    all_finite = all_finite && o.all_finite;
    if (o.min < min) {
      min = o.min;
      argmin = o.argmin;
    }
    if (o.max > max) {
      max = o.max;
      argmax = o.argmax;
    }
  }

  /// The monitored extreme: min for lower-bound rules, max otherwise.
  double value() const { return rule == Rule::min_at_least ? min : max; }

  ScanReport& finalize() {
    const bool ok = rule == Rule::min_at_least ? min >= threshold : max <= threshold;
    pass = all_finite && samples > 0 && ok;
    return *this;
  }

  std::string summary() const {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s samples=%zu min=%.6g max=%.6g %s %.6g -> %s", quantity.c_str(), samples, min, max,
                  rule == Rule::min_at_least ? "min>=" : "max<=", threshold, pass ? "PASS" : "FAIL");
    return buf;
  }
};

}  // namespace eplab
