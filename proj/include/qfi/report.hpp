#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qfi/matrix.hpp"

namespace qfi {

struct Certificate {
  std::string name;
  bool pass = false;
  double worst_violation = 0.0;
  double tolerance = 0.0;
};

using ReportValue = std::variant<bool, std::int64_t, double, Complex, std::string,
                                 std::vector<double>, RealMatrix, Matrix,
                                 std::vector<Matrix>>;

// Machine-readable command result. Serialization is deterministic: insertion
// order is preserved and every floating-point number is printed with 17
// significant digits, so identical inputs give byte-identical reports.
struct Report {
  std::string command;
  std::string inputs_digest;
  std::vector<std::pair<std::string, ReportValue>> results;
  std::vector<Certificate> certificates;

  void add(std::string name, ReportValue value) {
    results.emplace_back(std::move(name), std::move(value));
  }
  bool all_pass() const;
  int exit_code() const { return all_pass() ? 0 : 2; }
  std::string to_json() const;
};

std::string format_double17(double v);

// FNV-1a over everything the command consumed (argv + file bytes).
class Digest {
 public:
  void feed_bytes(const void* data, std::size_t len);
  void feed(const std::string& s) { feed_bytes(s.data(), s.size()); }
  std::string hex() const;

 private:
  std::uint64_t h_ = 14695981039346656037ULL;
};

}  // namespace qfi
