#include "qfi/monotone.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "qfi/matrix.hpp"
#include "qfi/random.hpp"

namespace qfi {

namespace {

std::string format_param(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Evaluations are only called with x > 0 and x != 1 handled generically.

double eval_sld(double x) { return 0.5 * (1.0 + x); }
double eval_harmonic(double x) { return 2.0 * x / (1.0 + x); }
double eval_geometric(double x) { return std::sqrt(x); }

double eval_wy(double x) {
  double s = 0.5 * (1.0 + std::sqrt(x));
  return s * s;
}

double eval_bkm(double x) {
  double e = x - 1.0;
  // (x-1)/log x is 0/0 at 1; the series keeps the guard band smooth.
  if (std::abs(e) < 1e-7) return 1.0 + e / 2.0 - e * e / 12.0;
  return e / std::log1p(e);
}

// (1+e)^p - 1 without cancellation for e near 0.
double powm1(double e, double p) { return std::expm1(p * std::log1p(e)); }

double eval_wyd(double beta, double x) {
  double e = x - 1.0;
  if (std::abs(e) < 1e-7)
    return 1.0 + e / 2.0 - (beta * beta - beta + 1.0) * e * e / 12.0;
  return beta * (1.0 - beta) * e * e / (powm1(e, beta) * powm1(e, 1.0 - beta));
}

double eval_chi2(double alpha, double x) {
  return 2.0 / (std::pow(x, -alpha) + std::pow(x, alpha - 1.0));
}

Matrix matrix_apply(const StandardFunction& f, const Matrix& h) {
  EigDecomposition eig = eig_hermitian(h);
  RealVector fv(eig.eigenvalues.size());
  for (Index i = 0; i < fv.size(); ++i) fv[i] = f(std::max(eig.eigenvalues[i], 0.0));
  return eig.vectors * fv.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
}

}  // namespace

double StandardFunction::operator()(double x) const {
  if (!(x >= 0.0)) {
    std::ostringstream os;
    os << "standard functions are defined on [0, inf), got " << x;
    throw NegativeInput(os.str());
  }
  if (x == 0.0) return at_zero_;
  return eval_(x);
}

StandardFunction sld_function() { return {"sld", eval_sld, 0.5}; }
StandardFunction harmonic_function() { return {"harmonic", eval_harmonic, 0.0}; }
StandardFunction bkm_function() { return {"bkm", eval_bkm, 0.0}; }
StandardFunction geometric_function() { return {"geometric", eval_geometric, 0.0}; }
StandardFunction wy_function() { return {"wy", eval_wy, 0.25}; }

StandardFunction wyd_function(double beta) {
  if (!(beta > 0.0 && beta < 2.0)) {
    std::ostringstream os;
    os << "wyd parameter must lie in (0, 2), got " << beta;
    throw ParamOutOfRange(os.str());
  }
  std::string name = "wyd:beta=" + format_param(beta);
  // The formula is 0/0 for every x at beta = 1; the limit is the bkm function.
  if (std::abs(beta - 1.0) <= 1e-9) return {name, eval_bkm, 0.0, beta};
  double at_zero = beta < 1.0 ? beta * (1.0 - beta) : 0.0;
  return {name, [beta](double x) { return eval_wyd(beta, x); }, at_zero, beta};
}

StandardFunction chi2_function(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    std::ostringstream os;
    os << "chi2 parameter must lie in (0, 1), got " << alpha;
    throw ParamOutOfRange(os.str());
  }
  std::string name = "chi2:alpha=" + format_param(alpha);
  return {name, [alpha](double x) { return eval_chi2(alpha, x); }, 0.0, alpha};
}

std::vector<StandardFunction> catalog() {
  return {sld_function(),    harmonic_function(), bkm_function(),
          geometric_function(), wy_function(),    wyd_function(0.3),
          wyd_function(1.5),  chi2_function(0.3), chi2_function(0.7)};
}

StandardFunction parse_function(const std::string& spec) {
  auto colon = spec.find(':');
  std::string name = spec.substr(0, colon);
  std::optional<std::pair<std::string, double>> param;
  if (colon != std::string::npos) {
    std::string rest = spec.substr(colon + 1);
    auto eq = rest.find('=');
    if (eq == std::string::npos)
      throw ParseError("function parameter must be key=value in '" + spec + "'");
    std::string key = rest.substr(0, eq);
    std::string val = rest.substr(eq + 1);
    try {
      std::size_t idx = 0;
      double v = std::stod(val, &idx);
      if (idx != val.size()) throw std::invalid_argument("trailing characters");
      param = {key, v};
    } catch (const std::exception&) {
      throw ParseError("could not parse parameter value in '" + spec + "'");
    }
  }
  auto reject_param = [&](const StandardFunction& f) {
    if (param) throw ParseError("function '" + name + "' takes no parameter");
    return f;
  };
  if (name == "sld") return reject_param(sld_function());
  if (name == "harmonic") return reject_param(harmonic_function());
  if (name == "bkm") return reject_param(bkm_function());
  if (name == "geometric") return reject_param(geometric_function());
  if (name == "wy") return reject_param(wy_function());
  if (name == "wyd") {
    if (!param) throw ParseError("wyd requires a parameter, e.g. wyd:beta=0.3");
    if (param->first != "beta" && param->first != "\xce\xb2")
      throw ParseError("wyd parameter key must be 'beta'");
    return wyd_function(param->second);
  }
  if (name == "chi2") {
    if (!param) throw ParseError("chi2 requires a parameter, e.g. chi2:alpha=0.5");
    if (param->first != "alpha" && param->first != "\xce\xb1")
      throw ParseError("chi2 parameter key must be 'alpha'");
    return chi2_function(param->second);
  }
  throw ParseError("unknown function '" + name + "'");
}

double f_zero(const StandardFunction& f) { return f.at_zero(); }

double f_zero_numeric(const std::function<double(double)>& eval) {
  const double h1 = 1e-6, h2 = 1e-8;
  double f1 = eval(h1), f2 = eval(h2);
  // Richardson step assuming an O(h) approach to the limit.
  return f2 + (f2 - f1) * h2 / (h1 - h2);
}

double mean(const StandardFunction& f, double x, double y) {
  if (!(x >= 0.0) || !(y >= 0.0)) {
    std::ostringstream os;
    os << "mean arguments must be nonnegative, got (" << x << ", " << y << ")";
    throw NegativeInput(os.str());
  }
  if (x == y) return x;
  if (x == 0.0) return y * f.at_zero();
  if (y == 0.0) return x * f.at_zero();
  // Evaluate with ratio <= 1 (allowed by symmetry) so heavy-tailed
  // evaluations never overflow.
  double a = std::max(x, y), b = std::min(x, y);
  return a * f(b / a);
}

StandardFunction tilde_transform(const StandardFunction& f) {
  double f0 = f.at_zero();
  auto eval = [f, f0](double x) {
    double d = x - 1.0;
    return 0.5 * ((x + 1.0) - d * d * f0 / f(x));
  };
  return {"tilde(" + f.name() + ")", eval, f0 > 0.0 ? 0.0 : 0.5};
}

StandardnessReport check_standard(const StandardFunction& f, int n_samples,
                                  std::uint64_t seed) {
  if (n_samples <= 0) throw BadParams("n_samples must be positive");
  Rng rng(seed);
  StandardnessReport report;
  double worst = 0.0;
  auto record = [&worst](double violation) {
    if (violation > worst) worst = violation;
    return violation;
  };

  report.normalization_ok = record(std::abs(f(1.0) - 1.0)) <= 1e-12;

  bool sym_ok = true, bounds_ok = true;
  for (int k = 0; k < n_samples; ++k) {
    double x = std::pow(10.0, rng.uniform(-4.0, 4.0));
    double fx = f(x);
    double scale = std::max(1.0, std::abs(fx));
    if (record(std::abs(x * f(1.0 / x) - fx) / scale) > 1e-10) sym_ok = false;
    double lo = 2.0 * x / (1.0 + x), hi = 0.5 * (1.0 + x);
    if (record(std::max({0.0, (lo - fx) / scale, (fx - hi) / scale})) > 1e-10)
      bounds_ok = false;
  }
  report.symmetry_ok = sym_ok;
  report.bounds_ok = bounds_ok;

  bool mono_ok = true;
  int n_pairs = std::max(16, n_samples / 4);
  for (int k = 0; k < n_pairs; ++k) {
    Matrix g = random_ginibre(rng, 2, 2);
    Matrix a = 0.5 * g * g.adjoint();
    Matrix h = random_ginibre(rng, 2, 2);
    Matrix b = a + 0.5 * h * h.adjoint();
    Matrix diff = matrix_apply(f, b) - matrix_apply(f, a);
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (diff + diff.adjoint()));
    if (record(std::max(0.0, -es.eigenvalues().minCoeff())) > 1e-8) mono_ok = false;
  }
  report.matrix_monotone_ok = mono_ok;
  report.worst_violation = worst;
  return report;
}

}  // namespace qfi
