#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qfi/errors.hpp"

namespace qfi {

// An operator monotone function on (0, inf) normalized by f(1) = 1 and
// symmetric under x f(1/x) = f(x), together with its limit at 0. Evaluation
// at exactly 0 returns the stored limit; negative input throws NegativeInput.
class StandardFunction {
 public:
  StandardFunction(std::string name, std::function<double(double)> eval, double at_zero,
                   std::optional<double> param = std::nullopt)
      : name_(std::move(name)), eval_(std::move(eval)), at_zero_(at_zero), param_(param) {}

  double operator()(double x) const;
  double at_zero() const { return at_zero_; }
  const std::string& name() const { return name_; }
  const std::optional<double>& param() const { return param_; }

 private:
  std::string name_;
  std::function<double(double)> eval_;
  double at_zero_;
  std::optional<double> param_;
};

StandardFunction sld_function();        // (1+x)/2
StandardFunction harmonic_function();   // 2x/(1+x)
StandardFunction bkm_function();        // (x-1)/log x
StandardFunction geometric_function();  // sqrt(x)
StandardFunction wy_function();         // ((1+sqrt x)/2)^2
StandardFunction wyd_function(double beta);    // beta in (0,2)
StandardFunction chi2_function(double alpha);  // alpha in (0,1)

// Fixed representative set used by sweep certificates and the CLI default.
std::vector<StandardFunction> catalog();

// "sld" | "harmonic" | "bkm" | "geometric" | "wy" | "wyd:beta=0.3" | "chi2:alpha=0.5"
// (the unicode keys from the CLI docs are accepted too).
StandardFunction parse_function(const std::string& spec);

double f_zero(const StandardFunction& f);
// Richardson estimate of lim_{x->0+} f(x) from samples at 1e-6 and 1e-8,
// for cross-checking stored limits of smooth-at-zero families.
double f_zero_numeric(const std::function<double(double)>& eval);

// m_f(x, y) = y f(x/y) for x,y > 0, continuously extended by m(x,x) = x and
// m(x, 0) = m(0, x) = x f(0). Symmetric and 1-homogeneous.
double mean(const StandardFunction& f, double x, double y);

// f~(x) = ((x+1) - (x-1)^2 f(0)/f(x)) / 2; standard again, with
// f~(0) = 0 when f(0) > 0 and f~(0) = 1/2 when f(0) = 0.
StandardFunction tilde_transform(const StandardFunction& f);

struct StandardnessReport {
  bool normalization_ok = false;
  bool symmetry_ok = false;
  bool bounds_ok = false;          // 2x/(x+1) <= f(x) <= (1+x)/2 sampled
  bool matrix_monotone_ok = false; // 2x2 A <= B  =>  f(A) <= f(B) sampled
  double worst_violation = 0.0;
  bool all_ok() const {
    return normalization_ok && symmetry_ok && bounds_ok && matrix_monotone_ok;
  }
};

StandardnessReport check_standard(const StandardFunction& f, int n_samples,
                                  std::uint64_t seed);

}  // namespace qfi
