#include "qfi/cli.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qfi/channel.hpp"
#include "qfi/json_io.hpp"
#include "qfi/measurement.hpp"
#include "qfi/metrics.hpp"
#include "qfi/report.hpp"
#include "qfi/verify.hpp"

namespace qfi::cli {

namespace {

// Reads a file once, feeds its raw bytes into the digest, then parses.
class InputLoader {
 public:
  explicit InputLoader(Digest& digest) : digest_(digest) {}

  nlohmann::json load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string bytes = buf.str();
    digest_.feed(bytes);
    try {
      return nlohmann::json::parse(bytes);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("invalid JSON in '" + path + "': " + e.what());
    }
  }

 private:
  Digest& digest_;
};

DensityMatrix load_state(InputLoader& in, const std::string& path) {
  return DensityMatrix::validate(matrix_from_json(in.load(path)));
}

Matrix load_hermitian(InputLoader& in, const std::string& path) {
  Matrix m = matrix_from_json(in.load(path));
  require_hermitian(m, tol::herm);
  return 0.5 * (m + m.adjoint());
}

std::vector<Matrix> load_matrix_list(InputLoader& in, const std::string& path) {
  nlohmann::json j = in.load(path);
  const nlohmann::json& arr = j.is_array() ? j : j.at("estimators");
  if (!arr.is_array()) throw ParseError("expected a JSON array of matrices");
  std::vector<Matrix> out;
  for (const auto& item : arr) out.push_back(matrix_from_json(item));
  return out;
}

// "0", "1.5" (constant) or "<k>/x" (k over x).
std::function<double(double)> parse_b_spec(const std::string& spec) {
  std::string s = spec;
  bool over_x = false;
  if (s.size() >= 2 && s.substr(s.size() - 2) == "/x") {
    over_x = true;
    s = s.substr(0, s.size() - 2);
  }
  double k = 0.0;
  try {
    std::size_t pos = 0;
    k = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
  } catch (const std::exception&) {
    throw ParseError("cannot parse b spec '" + spec + "' (use e.g. '0', '1.5', '0.5/x')");
  }
  if (over_x) return [k](double x) { return k / x; };
  return [k](double) { return k; };
}

Certificate recompute(Certificate c, double tol) {
  c.tolerance = tol;
  c.pass = c.worst_violation <= tol;
  return c;
}

struct Options {
  std::string f_spec = "sld";
  std::string state_path, tangent_path, tangent2_path, sigma_path;
  std::string family_path, fd_family_path, channel_path, povm_path;
  std::string estimators = "auto";
  std::string b_spec = "0";
  double c_coef = 1.0;
  double alpha = 0.5;
  double p = -1.0;
  double tol = -1.0;  // <0 means "use each check's default"
  std::uint64_t seed = 1;
  int n = 0;
};

ParamFamily load_any_family(InputLoader& in, const Options& opt, Report& report) {
  if (!opt.fd_family_path.empty()) {
    FdFamily fd = fd_family_from_json(in.load(opt.fd_family_path));
    report.add("fd_step", fd.h);
    return fd.family;
  }
  if (opt.family_path.empty()) throw BadParams("need --family or --fd-family");
  return family_from_json(in.load(opt.family_path));
}

void run_metric(InputLoader& in, const Options& opt, Report& report) {
  StandardFunction f = parse_function(opt.f_spec);
  DensityMatrix d = load_state(in, opt.state_path);
  Matrix a = load_hermitian(in, opt.tangent_path);
  report.add("f", f.name());
  if (!opt.tangent2_path.empty()) {
    Matrix b = load_hermitian(in, opt.tangent2_path);
    report.add("gamma", fisher_metric(f, d, a, b));
  } else {
    QuadraticForm q = fisher_quadratic(f, d, a);
    report.add("gamma", q.value);
    report.add("masked_weight", q.masked_weight);
  }
}

void run_cov(InputLoader& in, const Options& opt, Report& report) {
  StandardFunction f = parse_function(opt.f_spec);
  DensityMatrix d = load_state(in, opt.state_path);
  Matrix a = load_hermitian(in, opt.tangent_path);
  Matrix b = opt.tangent2_path.empty() ? a : load_hermitian(in, opt.tangent2_path);
  report.add("f", f.name());
  report.add("cov", covariance(f, d, a, b));
}

void run_qfim(InputLoader& in, const Options& opt, Report& report) {
  StandardFunction f = parse_function(opt.f_spec);
  ParamFamily family = load_any_family(in, opt, report);
  report.add("f", f.name());
  report.add("qfim", qfim(f, family));
}

void run_crlb(InputLoader& in, const Options& opt, Report& report) {
  StandardFunction f = parse_function(opt.f_spec);
  ParamFamily family = load_any_family(in, opt, report);
  std::vector<Matrix> estimators;
  if (opt.estimators == "auto") {
    estimators = equality_estimators(f, family);
  } else if (opt.estimators == "auto-perturbed") {
    estimators = perturbed_estimators(f, family, 0.2, opt.seed);
  } else {
    estimators = load_matrix_list(in, opt.estimators);
  }
  double tol = opt.tol < 0 ? 1e-8 : opt.tol;
  CramerRaoCertificate cert = cramer_rao_certificate(f, family, estimators, tol);
  report.add("f", f.name());
  report.add("qfim", qfim(f, family));
  report.add("gap", cert.gap);
  report.add("gap_min_eig", cert.gap_min_eig);
  report.add("block_min_eig", cert.block_min_eig);
  double worst = std::max({-cert.gap_min_eig, -cert.block_min_eig, 0.0});
  report.certificates.push_back({"cramer_rao", cert.pass, worst, cert.tolerance});
}

void run_skew(InputLoader& in, const Options& opt, Report& report) {
  DensityMatrix d = load_state(in, opt.state_path);
  Matrix a = load_hermitian(in, opt.tangent_path);
  if (opt.p >= 0.0) {
    report.add("p", opt.p);
    report.add("skew", wyd_skew(opt.p, d, a));
  } else {
    StandardFunction f = parse_function(opt.f_spec);
    report.add("f", f.name());
    report.add("skew", skew_information(f, d, a));
  }
}

void run_chi2(InputLoader& in, const Options& opt, Report& report) {
  DensityMatrix rho = load_state(in, opt.state_path);
  DensityMatrix sigma = load_state(in, opt.sigma_path);
  report.add("alpha", opt.alpha);
  report.add("chi2", chi2_divergence(opt.alpha, rho, sigma));
}

void run_extended(InputLoader& in, const Options& opt, Report& report) {
  ExtendedMetricSpec spec{parse_function(opt.f_spec), parse_b_spec(opt.b_spec),
                          opt.c_coef};
  Matrix rho = load_hermitian(in, opt.state_path);
  Matrix a = matrix_from_json(in.load(opt.tangent_path));
  Matrix b = opt.tangent2_path.empty()
                 ? a
                 : matrix_from_json(in.load(opt.tangent2_path));
  report.add("f", spec.f.name());
  report.add("value", extended_metric(spec, rho, a, b));
}

void run_optimal_measurement(InputLoader& in, const Options& opt, Report& report) {
  DensityMatrix d = load_state(in, opt.state_path);
  Matrix b = load_hermitian(in, opt.tangent_path);
  Matrix c = sld_optimal_observable(d, b);
  Povm povm = optimal_measurement(d, b);
  double bound = fisher_metric(sld_function(), d, b, b);
  double attained = classical_fisher(d, {b}, povm)(0, 0);
  report.add("observable", c);
  report.add("effects", povm.effects());
  report.add("bound", bound);
  report.add("attained", attained);
  double tol = opt.tol < 0 ? 1e-8 : opt.tol;
  double worst = std::abs(attained - bound);
  report.certificates.push_back({"attainment", worst <= tol, worst, tol});
}

void run_supremum(InputLoader& in, const Options& opt, Report& report) {
  DensityMatrix d = load_state(in, opt.state_path);
  Matrix b = load_hermitian(in, opt.tangent_path);
  int n = opt.n > 0 ? opt.n : 100;
  double tol = opt.tol < 0 ? 1e-8 : opt.tol;
  SupremumCertificate cert = supremum_certificate(d, b, n, opt.seed, tol);
  report.add("bound", cert.bound);
  report.add("attained", cert.attained);
  report.add("max_random", cert.max_random);
  double worst = std::max(
      {std::abs(cert.attained - cert.bound), cert.max_random - cert.bound, 0.0});
  bool pass = cert.pass;
  if (!opt.povm_path.empty()) {
    Povm povm = povm_from_json(in.load(opt.povm_path));
    double povm_fi = classical_fisher(d, {b}, povm)(0, 0);
    report.add("povm_fi", povm_fi);
    worst = std::max(worst, povm_fi - cert.bound);
    pass = pass && povm_fi <= cert.bound + tol;
  }
  report.certificates.push_back({"supremum", pass, worst, cert.tolerance});
}

void run_monotonicity(InputLoader& in, const Options& opt, Report& report) {
  StandardFunction f = parse_function(opt.f_spec);
  report.add("f", f.name());
  double tol = opt.tol < 0 ? 1e-8 : opt.tol;
  if (!opt.channel_path.empty()) {
    KrausChannel ch = channel_from_json(in.load(opt.channel_path));
    if (!opt.family_path.empty() || !opt.fd_family_path.empty()) {
      ParamFamily family = load_any_family(in, opt, report);
      QfimGapReport gap = qfim_monotonicity_gap(f, ch, family);
      report.add("gap", gap.gap);
      report.add("min_eigenvalue", gap.min_eigenvalue);
      report.add("masked_weight", gap.masked_weight);
      double worst = std::max(-gap.min_eigenvalue, 0.0);
      report.certificates.push_back(
          {"monotonicity_qfim:" + f.name(), worst <= tol, worst, tol});
    } else {
      DensityMatrix d = load_state(in, opt.state_path);
      Matrix a = load_hermitian(in, opt.tangent_path);
      GapReport gap = metric_monotonicity_gap(f, ch, d, a);
      report.add("gap", gap.gap);
      report.add("masked_weight", gap.masked_weight);
      double worst = std::max(-gap.gap, 0.0);
      report.certificates.push_back(
          {"monotonicity_metric:" + f.name(), worst <= tol, worst, tol});
    }
  } else {
    int n = opt.n > 0 ? opt.n : 100;
    Certificate metric_cert = verify::metric_monotonicity(f, n, opt.seed);
    Certificate qfim_cert = verify::qfim_monotonicity(f, std::max(1, n / 2), opt.seed + 1);
    if (opt.tol >= 0) {
      metric_cert = recompute(metric_cert, opt.tol);
      qfim_cert = recompute(qfim_cert, opt.tol);
    }
    report.certificates.push_back(metric_cert);
    report.certificates.push_back(qfim_cert);
  }
}

void run_check_f(const Options& opt, Report& report) {
  StandardFunction f = parse_function(opt.f_spec);
  int n = opt.n > 0 ? opt.n : 200;
  StandardnessReport rep = check_standard(f, n, opt.seed);
  report.add("f", f.name());
  report.add("normalization_ok", rep.normalization_ok);
  report.add("symmetry_ok", rep.symmetry_ok);
  report.add("bounds_ok", rep.bounds_ok);
  report.add("matrix_monotone_ok", rep.matrix_monotone_ok);
  report.add("f_zero", f.at_zero());
  report.add("worst_violation", rep.worst_violation);
  double tol = opt.tol < 0 ? 1e-8 : opt.tol;
  bool pass = rep.all_ok() && rep.worst_violation <= tol;
  report.certificates.push_back(
      {"function_standard:" + f.name(), pass, rep.worst_violation, tol});
}

void run_verify_all(const Options& opt, Report& report) {
  report.certificates = verify::verify_all(opt.seed);
  std::int64_t n_pass = 0;
  for (const Certificate& c : report.certificates) n_pass += c.pass ? 1 : 0;
  report.add("n_certificates", static_cast<std::int64_t>(report.certificates.size()));
  report.add("n_pass", n_pass);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"monotone quantum Fisher information toolkit"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&opt](CLI::App* cmd) {
    cmd->add_option("--f", opt.f_spec,
                    "function spec: sld|harmonic|bkm|geometric|wy|wyd:beta=B|chi2:alpha=A");
    cmd->add_option("--seed", opt.seed, "rng seed");
    cmd->add_option("--n", opt.n, "sample count for sweeps");
    cmd->add_option("--tol", opt.tol, "certificate tolerance override");
  };

  CLI::App* metric = app.add_subcommand("metric", "monotone metric gamma_f,D(A,B)");
  add_common(metric);
  metric->add_option("--state", opt.state_path)->required();
  metric->add_option("--tangent", opt.tangent_path)->required();
  metric->add_option("--tangent2", opt.tangent2_path);

  CLI::App* cov = app.add_subcommand("cov", "covariance Cov_f,D(A,B)");
  add_common(cov);
  cov->add_option("--state", opt.state_path)->required();
  cov->add_option("--tangent", opt.tangent_path)->required();
  cov->add_option("--tangent2", opt.tangent2_path);

  CLI::App* qfim_cmd = app.add_subcommand("qfim", "quantum Fisher information matrix");
  add_common(qfim_cmd);
  qfim_cmd->add_option("--family", opt.family_path);
  qfim_cmd->add_option("--fd-family", opt.fd_family_path);

  CLI::App* crlb = app.add_subcommand("crlb", "Cramer-Rao certificate");
  add_common(crlb);
  crlb->add_option("--family", opt.family_path);
  crlb->add_option("--fd-family", opt.fd_family_path);
  crlb->add_option("--estimators", opt.estimators, "auto | auto-perturbed | path.json");

  CLI::App* skew = app.add_subcommand("skew", "skew information");
  add_common(skew);
  skew->add_option("--state", opt.state_path)->required();
  skew->add_option("--tangent", opt.tangent_path)->required();
  skew->add_option("--p", opt.p, "Dyson exponent for the direct commutator form");

  CLI::App* chi2 = app.add_subcommand("chi2", "chi-squared divergence");
  add_common(chi2);
  chi2->add_option("--state", opt.state_path)->required();
  chi2->add_option("--sigma", opt.sigma_path)->required();
  chi2->add_option("--alpha", opt.alpha, "exponent in (0,1)");

  CLI::App* extended = app.add_subcommand("extended", "extended metric on positive matrices");
  add_common(extended);
  extended->add_option("--state", opt.state_path)->required();
  extended->add_option("--tangent", opt.tangent_path)->required();
  extended->add_option("--tangent2", opt.tangent2_path);
  extended->add_option("--b", opt.b_spec, "b spec: constant 'k' or 'k/x'");
  extended->add_option("--c", opt.c_coef, "coefficient of the metric part");

  CLI::App* optm = app.add_subcommand("optimal-measurement",
                                      "optimal observable and attaining POVM");
  add_common(optm);
  optm->add_option("--state", opt.state_path)->required();
  optm->add_option("--tangent", opt.tangent_path)->required();

  CLI::App* supremum = app.add_subcommand("supremum", "measurement supremum certificate");
  add_common(supremum);
  supremum->add_option("--state", opt.state_path)->required();
  supremum->add_option("--tangent", opt.tangent_path)->required();
  supremum->add_option("--povm", opt.povm_path, "extra POVM to test against the bound");

  CLI::App* mono = app.add_subcommand("monotonicity", "channel monotonicity gaps");
  add_common(mono);
  mono->add_option("--channel", opt.channel_path);
  mono->add_option("--state", opt.state_path);
  mono->add_option("--tangent", opt.tangent_path);
  mono->add_option("--family", opt.family_path);
  mono->add_option("--fd-family", opt.fd_family_path);

  CLI::App* checkf = app.add_subcommand("check-f", "standardness report for a function");
  add_common(checkf);

  CLI::App* verify_cmd = app.add_subcommand("verify-all", "full property suite");
  add_common(verify_cmd);

  std::vector<std::string> argv_store;
  argv_store.push_back("qfi");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help() << std::flush;
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "{\"error\":\"bad_flag\",\"message\":" << '"' << e.what() << '"' << "}\n";
    return 1;
  }

  Digest digest;
  for (const std::string& s : args) {
    digest.feed(s);
    digest.feed_bytes("\x1f", 1);
  }
  InputLoader loader(digest);

  Report report;
  try {
    if (metric->parsed()) {
      report.command = "metric";
      run_metric(loader, opt, report);
    } else if (cov->parsed()) {
      report.command = "cov";
      run_cov(loader, opt, report);
    } else if (qfim_cmd->parsed()) {
      report.command = "qfim";
      run_qfim(loader, opt, report);
    } else if (crlb->parsed()) {
      report.command = "crlb";
      run_crlb(loader, opt, report);
    } else if (skew->parsed()) {
      report.command = "skew";
      run_skew(loader, opt, report);
    } else if (chi2->parsed()) {
      report.command = "chi2";
      run_chi2(loader, opt, report);
    } else if (extended->parsed()) {
      report.command = "extended";
      run_extended(loader, opt, report);
    } else if (optm->parsed()) {
      report.command = "optimal-measurement";
      run_optimal_measurement(loader, opt, report);
    } else if (supremum->parsed()) {
      report.command = "supremum";
      run_supremum(loader, opt, report);
    } else if (mono->parsed()) {
      report.command = "monotonicity";
      run_monotonicity(loader, opt, report);
    } else if (checkf->parsed()) {
      report.command = "check-f";
      run_check_f(opt, report);
    } else {
      report.command = "verify-all";
      run_verify_all(opt, report);
    }
  } catch (const Error& e) {
    std::string msg = "{\"error\":";
    {
      std::string code = e.code();
      std::string text = e.what();
      msg += '"';
      msg += code;
      msg += "\",\"message\":\"";
      for (char c : text)
        if (c == '"' || c == '\\')
          msg += std::string("\\") + c;
        else if (c == '\n')
          msg += "\\n";
        else
          msg += c;
      msg += "\"}";
    }
    err << msg << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << "{\"error\":\"parse_error\",\"message\":\"" << e.what() << "\"}\n";
    return 1;
  }

  report.inputs_digest = digest.hex();
  out << report.to_json() << "\n";
  return report.exit_code();
}

}  // namespace qfi::cli
