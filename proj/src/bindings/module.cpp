#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qfi/channel.hpp"
#include "qfi/measurement.hpp"
#include "qfi/metrics.hpp"
#include "qfi/random.hpp"
#include "qfi/verify.hpp"

namespace py = pybind11;
using namespace qfi;

namespace {

ParamFamily make_family(const Matrix& base, const std::vector<Matrix>& derivatives) {
  std::vector<TangentVector> tangents;
  tangents.reserve(derivatives.size());
  for (const Matrix& d : derivatives) tangents.push_back(TangentVector::make(d));
  return ParamFamily(DensityMatrix::validate(base), std::move(tangents));
}

py::dict cert_to_dict(const Certificate& c) {
  py::dict d;
  d["name"] = c.name;
  d["pass"] = c.pass;
  d["worst_violation"] = c.worst_violation;
  d["tolerance"] = c.tolerance;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "monotone quantum Fisher information metrics";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(PyExc_ValueError, (e.code() + ": " + e.what()).c_str());
    }
  });

  m.def("function_names", [] {
    std::vector<std::string> names;
    for (const StandardFunction& f : catalog()) names.push_back(f.name());
    return names;
  });

  m.def(
      "f_eval", [](const std::string& spec, double x) { return parse_function(spec)(x); },
      py::arg("f"), py::arg("x"));
  m.def(
      "f_zero", [](const std::string& spec) { return f_zero(parse_function(spec)); },
      py::arg("f"));
  m.def(
      "mean",
      [](const std::string& spec, double x, double y) {
        return mean(parse_function(spec), x, y);
      },
      py::arg("f"), py::arg("x"), py::arg("y"));

  m.def(
      "check_standard",
      [](const std::string& spec, int n, std::uint64_t seed) {
        StandardnessReport r = check_standard(parse_function(spec), n, seed);
        py::dict d;
        d["normalization_ok"] = r.normalization_ok;
        d["symmetry_ok"] = r.symmetry_ok;
        d["bounds_ok"] = r.bounds_ok;
        d["matrix_monotone_ok"] = r.matrix_monotone_ok;
        d["worst_violation"] = r.worst_violation;
        d["all_ok"] = r.all_ok();
        return d;
      },
      py::arg("f"), py::arg("n") = 200, py::arg("seed") = 1);

  m.def(
      "jd_apply",
      [](const std::string& spec, const Matrix& rho, const Matrix& b) {
        return jd_apply(parse_function(spec), DensityMatrix::validate(rho), b);
      },
      py::arg("f"), py::arg("rho"), py::arg("b"));
  m.def(
      "jd_inverse_apply",
      [](const std::string& spec, const Matrix& rho, const Matrix& b) {
        return jd_inverse_apply(parse_function(spec), DensityMatrix::validate(rho), b);
      },
      py::arg("f"), py::arg("rho"), py::arg("b"));

  m.def(
      "fisher_metric",
      [](const std::string& spec, const Matrix& rho, const Matrix& a, const Matrix& b) {
        return fisher_metric(parse_function(spec), DensityMatrix::validate(rho), a, b);
      },
      py::arg("f"), py::arg("rho"), py::arg("a"), py::arg("b"));
  m.def(
      "covariance",
      [](const std::string& spec, const Matrix& rho, const Matrix& a, const Matrix& b) {
        return covariance(parse_function(spec), DensityMatrix::validate(rho), a, b);
      },
      py::arg("f"), py::arg("rho"), py::arg("a"), py::arg("b"));

  m.def(
      "qfim",
      [](const std::string& spec, const Matrix& base, const std::vector<Matrix>& derivs) {
        return qfim(parse_function(spec), make_family(base, derivs));
      },
      py::arg("f"), py::arg("base"), py::arg("derivatives"));
  m.def(
      "score_operators",
      [](const std::string& spec, const Matrix& base, const std::vector<Matrix>& derivs) {
        return score_operators(parse_function(spec), make_family(base, derivs));
      },
      py::arg("f"), py::arg("base"), py::arg("derivatives"));

  m.def(
      "cramer_rao",
      [](const std::string& spec, const Matrix& base, const std::vector<Matrix>& derivs,
         const std::string& estimators, double perturb_scale, std::uint64_t seed) {
        StandardFunction f = parse_function(spec);
        ParamFamily family = make_family(base, derivs);
        std::vector<Matrix> est = estimators == "auto-perturbed"
                                      ? perturbed_estimators(f, family, perturb_scale, seed)
                                      : equality_estimators(f, family);
        CramerRaoCertificate c = cramer_rao_certificate(f, family, est);
        py::dict d;
        d["estimators"] = est;
        d["gap"] = c.gap;
        d["gap_min_eig"] = c.gap_min_eig;
        d["block_min_eig"] = c.block_min_eig;
        d["pass"] = c.pass;
        d["tolerance"] = c.tolerance;
        return d;
      },
      py::arg("f"), py::arg("base"), py::arg("derivatives"),
      py::arg("estimators") = "auto", py::arg("perturb_scale") = 0.2,
      py::arg("seed") = 1);

  m.def(
      "skew_information",
      [](const std::string& spec, const Matrix& rho, const Matrix& a) {
        return skew_information(parse_function(spec), DensityMatrix::validate(rho), a);
      },
      py::arg("f"), py::arg("rho"), py::arg("a"));
  m.def(
      "wyd_skew",
      [](double p, const Matrix& rho, const Matrix& a) {
        return wyd_skew(p, DensityMatrix::validate(rho), a);
      },
      py::arg("p"), py::arg("rho"), py::arg("a"));

  m.def(
      "chi2_divergence",
      [](double alpha, const Matrix& rho, const Matrix& sigma) {
        return chi2_divergence(alpha, DensityMatrix::validate(rho),
                               DensityMatrix::validate(sigma));
      },
      py::arg("alpha"), py::arg("rho"), py::arg("sigma"));

  m.def(
      "extended_metric",
      [](const std::string& spec, const std::function<double(double)>& b, double c,
         const Matrix& rho, const Matrix& a, const Matrix& a2) {
        ExtendedMetricSpec s{parse_function(spec), b, c};
        return extended_metric(s, rho, a, a2);
      },
      py::arg("f"), py::arg("b"), py::arg("c"), py::arg("rho"), py::arg("a"),
      py::arg("a2"));

  m.def(
      "bkm_perturbation_variance",
      [](const Matrix& h, const Matrix& a, int n_quad) {
        return bkm_perturbation_variance(h, a, n_quad);
      },
      py::arg("h"), py::arg("a"), py::arg("n_quad") = 96);

  m.def(
      "sld_optimal_observable",
      [](const Matrix& rho, const Matrix& b) {
        return sld_optimal_observable(DensityMatrix::validate(rho), b);
      },
      py::arg("rho"), py::arg("b"));
  m.def(
      "optimal_measurement",
      [](const Matrix& rho, const Matrix& b) {
        return optimal_measurement(DensityMatrix::validate(rho), b).effects();
      },
      py::arg("rho"), py::arg("b"));
  m.def(
      "supremum_certificate",
      [](const Matrix& rho, const Matrix& b, int n_random_povms, std::uint64_t seed) {
        SupremumCertificate c = supremum_certificate(DensityMatrix::validate(rho), b,
                                                     n_random_povms, seed);
        py::dict d;
        d["bound"] = c.bound;
        d["attained"] = c.attained;
        d["max_random"] = c.max_random;
        d["pass"] = c.pass;
        d["tolerance"] = c.tolerance;
        return d;
      },
      py::arg("rho"), py::arg("b"), py::arg("n_random_povms") = 100, py::arg("seed") = 1);

  m.def(
      "outcome_probs",
      [](const Matrix& rho, const std::vector<Matrix>& effects) {
        return outcome_probs(DensityMatrix::validate(rho), Povm::create(effects)).probs;
      },
      py::arg("rho"), py::arg("effects"));
  m.def(
      "classical_fisher",
      [](const Matrix& rho, const std::vector<Matrix>& tangents,
         const std::vector<Matrix>& effects) {
        return classical_fisher(DensityMatrix::validate(rho), tangents,
                                Povm::create(effects));
      },
      py::arg("rho"), py::arg("tangents"), py::arg("effects"));

  m.def(
      "apply_channel",
      [](const std::vector<Matrix>& kraus, const Matrix& m) {
        return KrausChannel::create(kraus).apply(m);
      },
      py::arg("kraus"), py::arg("m"));
  m.def(
      "metric_monotonicity_gap",
      [](const std::string& spec, const std::vector<Matrix>& kraus, const Matrix& rho,
         const Matrix& a) {
        GapReport r = metric_monotonicity_gap(parse_function(spec),
                                              KrausChannel::create(kraus),
                                              DensityMatrix::validate(rho), a);
        py::dict d;
        d["gap"] = r.gap;
        d["masked_weight"] = r.masked_weight;
        return d;
      },
      py::arg("f"), py::arg("kraus"), py::arg("rho"), py::arg("a"));
  m.def(
      "qfim_monotonicity_gap",
      [](const std::string& spec, const std::vector<Matrix>& kraus, const Matrix& base,
         const std::vector<Matrix>& derivs) {
        QfimGapReport r = qfim_monotonicity_gap(parse_function(spec),
                                                KrausChannel::create(kraus),
                                                make_family(base, derivs));
        py::dict d;
        d["gap"] = r.gap;
        d["min_eigenvalue"] = r.min_eigenvalue;
        d["masked_weight"] = r.masked_weight;
        return d;
      },
      py::arg("f"), py::arg("kraus"), py::arg("base"), py::arg("derivatives"));

  m.def(
      "random_density",
      [](Index n, std::uint64_t seed, double min_eig) {
        Rng rng(seed);
        return random_density(rng, n, min_eig).matrix();
      },
      py::arg("n"), py::arg("seed") = 1, py::arg("min_eig") = 0.0);
  m.def(
      "random_channel_kraus",
      [](Index n_in, Index n_out, int rank, std::uint64_t seed) {
        return random_channel(n_in, n_out, rank, seed).kraus();
      },
      py::arg("n_in"), py::arg("n_out"), py::arg("kraus_rank") = 1, py::arg("seed") = 1);

  m.def(
      "verify_all",
      [](std::uint64_t seed) {
        py::list out;
        for (const Certificate& c : verify::verify_all(seed)) out.append(cert_to_dict(c));
        return out;
      },
      py::arg("seed") = 1);
}
