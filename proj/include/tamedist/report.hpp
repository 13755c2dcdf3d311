#pragma once

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

namespace tamedist {

inline constexpr const char* kVersion = "1.0.0";

// Fixed-precision, locale-independent double rendering so reports are
// byte-stable run to run.
inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::string(buf);
}

struct CheckLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Accumulates one command run: echoed inputs, ordered result fields and
// pass/fail check lines, rendered as either a flat key/value record stream
// or an indented human-readable summary. Insertion order is emission order.
class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  void input(const std::string& key, const std::string& value) { inputs_.emplace_back(key, value); }
  void result(const std::string& key, const std::string& value) { results_.emplace_back(key, value); }
  void result(const std::string& key, const char* value) { results_.emplace_back(key, std::string(value)); }
  void result(const std::string& key, long long value) { result(key, std::to_string(value)); }
  void result(const std::string& key, long value) { result(key, std::to_string(value)); }
  void result(const std::string& key, size_t value) { result(key, std::to_string(value)); }
  void result(const std::string& key, unsigned long long value) { result(key, std::to_string(value)); }
  void result(const std::string& key, int value) { result(key, std::to_string(value)); }
  void result(const std::string& key, bool value) { result(key, std::string(value ? "true" : "false")); }
  void result(const std::string& key, double value) { result(key, format_double(value)); }

  void check(const std::string& name, bool pass, const std::string& detail) {
    checks_.push_back({name, pass, detail});
  }

  bool all_checks_pass() const {
    for (const auto& c : checks_)
      if (!c.pass) return false;
    return true;
  }

  std::string render(const std::string& format) const {
    if (format == "records") return render_records();
    return render_plain();
  }

  std::string render_records() const {
    std::string out;
    out += "record: tamedist-run\n";
    out += "version: " + std::string(kVersion) + "\n";
    out += "command: " + command_ + "\n";
    for (const auto& kv : inputs_) out += "input." + kv.first + ": " + kv.second + "\n";
    for (const auto& kv : results_) out += "result." + kv.first + ": " + kv.second + "\n";
    int passed = 0;
    for (const auto& c : checks_) {
      out += "check." + c.name + ": " + (c.pass ? "pass" : "fail");
      if (!c.detail.empty()) out += "; " + c.detail;
      out += "\n";
      if (c.pass) ++passed;
    }
    out += "checks_passed: " + std::to_string(passed) + "\n";
    out += "checks_total: " + std::to_string(checks_.size()) + "\n";
    out += std::string("status: ") + (all_checks_pass() ? "ok" : "fail") + "\n";
    return out;
  }

  std::string render_plain() const {
    std::string out;
    out += "tamedist " + std::string(kVersion) + "\n";
    out += "command: " + command_ + "\n";
    if (!inputs_.empty()) {
      out += "inputs:\n";
      for (const auto& kv : inputs_) out += "  " + kv.first + ": " + kv.second + "\n";
    }
    if (!results_.empty()) {
      out += "results:\n";
      for (const auto& kv : results_) out += "  " + kv.first + ": " + kv.second + "\n";
    }
    int passed = 0;
    if (!checks_.empty()) {
      out += "checks:\n";
      for (const auto& c : checks_) {
        out += std::string("  [") + (c.pass ? "PASS" : "FAIL") + "] " + c.name;
        if (!c.detail.empty()) out += ": " + c.detail;
        out += "\n";
        if (c.pass) ++passed;
      }
      out += std::to_string(passed) + "/" + std::to_string(checks_.size()) + " checks passed\n";
    }
    out += std::string("status: ") + (all_checks_pass() ? "ok" : "fail") + "\n";
    return out;
  }

 private:
  std::string command_;
  std::vector<std::pair<std::string, std::string>> inputs_;
  std::vector<std::pair<std::string, std::string>> results_;
  std::vector<CheckLine> checks_;
};

}  // namespace tamedist
