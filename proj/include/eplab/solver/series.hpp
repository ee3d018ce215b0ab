#pragma once

#include <cstdio>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "eplab/error.hpp"

namespace eplab {

/// Time-stamped records of named scalar quantities, kept in insertion order.
/// Within one name the times must be strictly increasing.
class DecaySeries {
 public:
  struct Record {
    double time;
    std::string name;
    double value;
  };

  void add(double time, const std::string& name, double value) {
    auto& s = by_name_[name];
    if (!s.empty() && !(time > s.back().first)) {
      throw InvalidArgument("DecaySeries: times must be strictly increasing for '" + name + "'");
    }
    s.emplace_back(time, value);
    records_.push_back({time, name, value});
  }

  bool has(const std::string& name) const { return by_name_.count(name) != 0; }

  const std::vector<std::pair<double, double>>& get(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) throw InvalidArgument("DecaySeries: no quantity named '" + name + "'");
    return it->second;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : by_name_) out.push_back(k);
    return out;
  }

  const std::vector<Record>& records() const { return records_; }

  std::map<std::string, std::string>& metadata() { return meta_; }
  const std::map<std::string, std::string>& metadata() const { return meta_; }

  /// CSV with header `time,name,value`; numbers printed round-trip exact.
  void write_csv(std::ostream& os) const {
    os << "time,name,value\n";
    for (const auto& r : records_) os << format_number(r.time) << ',' << r.name << ',' << format_number(r.value) << '\n';
  }

  static std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }

 private:
  std::map<std::string, std::vector<std::pair<double, double>>> by_name_;
  std::vector<Record> records_;
  std::map<std::string, std::string> meta_;
};

}  // namespace eplab
