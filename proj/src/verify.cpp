#include "qfi/verify.hpp"

#include <algorithm>
#include <cmath>

#include "qfi/channel.hpp"
#include "qfi/json_io.hpp"
#include "qfi/measurement.hpp"
#include "qfi/metrics.hpp"
#include "qfi/random.hpp"

namespace qfi::verify {

namespace {

Certificate make_cert(std::string name, double worst, double tolerance) {
  Certificate c;
  c.name = std::move(name);
  c.worst_violation = worst;
  c.tolerance = tolerance;
  c.pass = worst <= tolerance;
  return c;
}

// Observable commuting with d, traceless, built in d's eigenbasis.
Matrix random_commuting_tangent(Rng& rng, const DensityMatrix& d) {
  Index n = d.dim();
  RealVector t(n);
  for (Index i = 0; i < n; ++i) t[i] = rng.uniform(-1.0, 1.0);
  t.array() -= t.mean();
  return d.eig().vectors * t.cast<Complex>().asDiagonal() * d.eig().vectors.adjoint();
}

Matrix centered(const DensityMatrix& d, const Matrix& a) {
  double mu = (d.matrix() * a).trace().real();
  return a - mu * Matrix::Identity(a.rows(), a.cols());
}

DensityMatrix gibbs_state(const Matrix& h) {
  EigDecomposition eig = eig_hermitian(h);
  RealVector w = (eig.eigenvalues.array() - eig.eigenvalues.maxCoeff()).exp();
  w /= w.sum();
  Matrix rho = eig.vectors * w.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  return DensityMatrix::validate(0.5 * (rho + rho.adjoint()));
}

ParamFamily random_family(Rng& rng, Index dim, int n_params, double min_eig) {
  DensityMatrix base = random_density(rng, dim, min_eig);
  std::vector<TangentVector> derivs;
  for (int i = 0; i < n_params; ++i)
    derivs.push_back(TangentVector::make(random_traceless_hermitian(rng, dim)));
  return ParamFamily(std::move(base), std::move(derivs));
}

}  // namespace

Certificate function_standard(const StandardFunction& f, int n_samples,
                              std::uint64_t seed) {
  StandardnessReport rep = check_standard(f, n_samples, seed);
  Certificate c = make_cert("function_standard:" + f.name(), rep.worst_violation, 1e-8);
  c.pass = rep.all_ok();
  return c;
}

Certificate metric_ordering(int n_instances, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  std::vector<StandardFunction> fs = catalog();
  for (int k = 0; k < n_instances; ++k) {
    Index dim = 2 + k % 5;
    DensityMatrix d = random_density(rng, dim, 0.02);
    Matrix a = random_traceless_hermitian(rng, dim);
    double g_min = fisher_quadratic(sld_function(), d, a).value;
    double g_max = fisher_quadratic(harmonic_function(), d, a).value;
    for (const StandardFunction& f : fs) {
      double g = fisher_quadratic(f, d, a).value;
      worst = std::max({worst, g_min - g, g - g_max});
    }
  }
  return make_cert("metric_ordering", std::max(worst, 0.0), 1e-9);
}

Certificate commuting_universality(int n_instances, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  std::vector<StandardFunction> fs = catalog();
  for (int k = 0; k < n_instances; ++k) {
    Index dim = 2 + k % 5;
    DensityMatrix d = random_density(rng, dim, 0.02);
    Matrix a = random_commuting_tangent(rng, d);
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      double g = fisher_quadratic(fs[i], d, a).value;
      lo = i ? std::min(lo, g) : g;
      hi = i ? std::max(hi, g) : g;
    }
    worst = std::max(worst, hi - lo);
  }
  return make_cert("commuting_universality", worst, 1e-10);
}

Certificate metric_monotonicity(const StandardFunction& f, int n_triples,
                                std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < n_triples; ++k) {
    Index n_in = 2 + k % 3;
    Index n_out = 2 + (k / 3) % 3;
    int rank = 1 + k % 3;
    if (n_out * rank < n_in) rank = static_cast<int>((n_in + n_out - 1) / n_out);
    DensityMatrix d = random_density(rng, n_in, 0.01);
    Matrix a = random_traceless_hermitian(rng, n_in);
    KrausChannel ch = random_channel(n_in, n_out, rank, rng.engine()());
    GapReport gap = metric_monotonicity_gap(f, ch, d, a);
    worst = std::max(worst, -gap.gap);
  }
  return make_cert("monotonicity_metric:" + f.name(), std::max(worst, 0.0), 1e-8);
}

Certificate qfim_monotonicity(const StandardFunction& f, int n_families,
                              std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < n_families; ++k) {
    Index n_in = 2 + k % 3;
    Index n_out = 2 + (k / 2) % 3;
    int rank = 1 + (k / 5) % 3;
    if (n_out * rank < n_in) rank = static_cast<int>((n_in + n_out - 1) / n_out);
    ParamFamily family = random_family(rng, n_in, 2, 0.01);
    KrausChannel ch = random_channel(n_in, n_out, rank, rng.engine()());
    QfimGapReport gap = qfim_monotonicity_gap(f, ch, family);
    worst = std::max(worst, -gap.min_eigenvalue);
  }
  return make_cert("monotonicity_qfim:" + f.name(), std::max(worst, 0.0), 1e-8);
}

Certificate supremum(int n_instances, int n_povms, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < n_instances; ++k) {
    Index dim = 2 + k % 3;
    DensityMatrix d = random_density(rng, dim, 0.02);
    Matrix b = random_traceless_hermitian(rng, dim);
    SupremumCertificate cert = supremum_certificate(d, b, n_povms, rng.engine()());
    worst = std::max({worst, std::abs(cert.attained - cert.bound),
                      cert.max_random - cert.bound});
  }
  return make_cert("supremum", std::max(worst, 0.0), 1e-8);
}

Certificate oracle_agreement(int n_instances, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < n_instances; ++k) {
    Index dim = 2 + k % 3;
    DensityMatrix d = random_density(rng, dim, 0.05);
    Matrix b = random_hermitian(rng, dim);
    Matrix sld_diff =
        jd_inverse_apply(sld_function(), d, b) - sld_inverse_oracle(d, b, 96);
    BkmOracleResult bkm = bkm_oracles(d, b, 96);
    Matrix fw_diff = jd_apply(bkm_function(), d, b) - bkm.forward;
    Matrix inv_diff = jd_inverse_apply(bkm_function(), d, b) - bkm.inverse;
    worst = std::max({worst, sld_diff.cwiseAbs().maxCoeff(), fw_diff.cwiseAbs().maxCoeff(),
                      inv_diff.cwiseAbs().maxCoeff()});

    Matrix h = random_hermitian(rng, dim);
    Matrix a = random_hermitian(rng, dim);
    DensityMatrix gibbs = gibbs_state(h);
    double pert = bkm_perturbation_variance(h, a, 96);
    double cov = covariance(bkm_function(), gibbs, a, a);
    worst = std::max(worst, std::abs(pert - cov));
  }
  return make_cert("oracle_agreement", worst, 1e-6);
}

Certificate cramer_rao(int n_trials, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<StandardFunction> fs = catalog();
  double worst = 0.0;
  for (int k = 0; k < n_trials; ++k) {
    Index dim = 2 + k % 3;
    int m = 1 + k % 2;
    const StandardFunction& f = fs[static_cast<std::size_t>(k) % fs.size()];
    ParamFamily family = random_family(rng, dim, m, 0.02);
    CramerRaoCertificate eq =
        cramer_rao_certificate(f, family, equality_estimators(f, family));
    worst = std::max({worst, std::abs(eq.gap_min_eig), -eq.block_min_eig});
    CramerRaoCertificate pert = cramer_rao_certificate(
        f, family, perturbed_estimators(f, family, 0.2, rng.engine()()));
    worst = std::max({worst, -pert.gap_min_eig, -pert.block_min_eig});
  }
  return make_cert("cramer_rao", std::max(worst, 0.0), 1e-8);
}

Certificate skew_identity(int n_instances, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<StandardFunction> fs = {sld_function(),     wy_function(),
                                      wyd_function(0.3),  wyd_function(1.5),
                                      chi2_function(0.5), bkm_function()};
  double worst = 0.0;
  for (int k = 0; k < n_instances; ++k) {
    Index dim = 2 + k % 4;
    DensityMatrix d = random_density(rng, dim, 0.01);
    Matrix a = centered(d, random_hermitian(rng, dim));
    for (const StandardFunction& f : fs) {
      SkewIdentity id = skew_vs_covariance_identity(f, d, a);
      worst = std::max(worst, std::abs(id.lhs - id.rhs));
    }
  }
  return make_cert("skew_identity", worst, 1e-8);
}

Certificate skew_bounds(int n_instances, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < n_instances; ++k) {
    Index dim = 2 + k % 4;
    DensityMatrix d = random_density(rng, dim, 0.0);
    Matrix a = random_hermitian(rng, dim);
    double i_wy = skew_information(wy_function(), d, a);
    double i_sld = skew_information(sld_function(), d, a);
    worst = std::max({worst, i_wy - i_sld, i_sld - 2.0 * i_wy});
  }
  return make_cert("skew_wy_sld_bounds", std::max(worst, 0.0), 1e-10);
}

Certificate wyd_equivalence(int n_instances, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < n_instances; ++k) {
    Index dim = 2 + k % 4;
    DensityMatrix d = random_density(rng, dim, 0.0);
    Matrix a = random_hermitian(rng, dim);
    for (double p : {0.3, 0.5, 0.7}) {
      double direct = wyd_skew(p, d, a);
      double kernel = skew_information(wyd_function(p), d, a);
      worst = std::max(worst, std::abs(direct - kernel));
    }
  }
  return make_cert("wyd_skew_equivalence", worst, 1e-8);
}

Certificate tilde_pointwise(std::uint64_t seed) {
  Rng rng(seed);
  StandardFunction t_sld = tilde_transform(sld_function());
  StandardFunction t_wy = tilde_transform(wy_function());
  StandardFunction t_harm = tilde_transform(harmonic_function());
  StandardFunction harm = harmonic_function();
  StandardFunction geom = geometric_function();
  StandardFunction sld = sld_function();
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    double x = std::pow(10.0, rng.uniform(-4.0, 4.0));
    double scale = std::max(1.0, 0.5 * (1.0 + x));
    worst = std::max({worst, std::abs(t_sld(x) - harm(x)) / scale,
                      std::abs(t_wy(x) - geom(x)) / scale,
                      std::abs(t_harm(x) - sld(x)) / scale});
  }
  return make_cert("tilde_pointwise", worst, 1e-10);
}

Certificate chi2_commuting(int n_instances, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < n_instances; ++k) {
    Index dim = 2 + k % 4;
    RealVector p(dim), q(dim);
    for (Index i = 0; i < dim; ++i) {
      p[i] = rng.uniform(0.05, 1.0);
      q[i] = rng.uniform(0.05, 1.0);
    }
    p /= p.sum();
    q /= q.sum();
    DensityMatrix rho = DensityMatrix::validate(p.cast<Complex>().asDiagonal());
    DensityMatrix sigma = DensityMatrix::validate(q.cast<Complex>().asDiagonal());
    double classical = 0.0;
    for (Index i = 0; i < dim; ++i) classical += (p[i] - q[i]) * (p[i] - q[i]) / q[i];
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (double alpha : {0.2, 0.5, 0.8}) {
      double v = chi2_divergence(alpha, rho, sigma);
      lo = first ? v : std::min(lo, v);
      hi = first ? v : std::max(hi, v);
      first = false;
      worst = std::max(worst, std::abs(v - classical));
    }
    worst = std::max(worst, hi - lo);
  }
  return make_cert("chi2_commuting", worst, 1e-10);
}

Certificate chi2_metric_form(int n_instances, std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int k = 0; k < n_instances; ++k) {
    Index dim = 2 + k % 3;
    DensityMatrix rho = random_density(rng, dim, 0.0);
    DensityMatrix sigma = random_density(rng, dim, 0.05);
    Matrix delta = rho.matrix() - sigma.matrix();
    for (double alpha : {0.2, 0.5, 0.8}) {
      double direct = chi2_divergence(alpha, rho, sigma);
      double metric = fisher_quadratic(chi2_function(alpha), sigma, delta).value;
      worst = std::max(worst, std::abs(direct - metric));
    }
  }
  return make_cert("chi2_metric_form", worst, 1e-8);
}

Certificate extended_positivity(int n_specs, int n_instances, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<StandardFunction> fs = catalog();
  double worst = 0.0;
  bool rejected_ok = true;
  for (int s = 0; s < n_specs; ++s) {
    const StandardFunction& f = fs[static_cast<std::size_t>(s) % fs.size()];
    double c = rng.uniform(0.5, 2.0);
    ExtendedMetricSpec spec{f, nullptr, c};
    switch (s % 3) {
      case 0: spec.b = [](double) { return 0.0; }; break;
      case 1: {
        double kk = rng.uniform(-0.9, 2.0) * c;
        spec.b = [kk](double x) { return kk / x; };
        break;
      }
      default: {
        double kk = rng.uniform(0.0, 1.0);
        spec.b = [kk](double) { return kk; };
      }
    }
    for (int k = 0; k < n_instances; ++k) {
      Index dim = 2 + k % 3;
      Matrix g = random_ginibre(rng, dim, dim);
      Matrix rho = g * g.adjoint() / static_cast<double>(dim) +
                   0.1 * Matrix::Identity(dim, dim);
      Matrix a = random_hermitian(rng, dim);
      Complex v = extended_metric(spec, rho, a, a);
      worst = std::max({worst, -v.real(), std::abs(v.imag())});
    }

    // A matching violating spec must be rejected.
    ExtendedMetricSpec bad{f, nullptr, c};
    if (s % 2 == 0) {
      double d = rng.uniform(0.1, 1.0);
      bad.b = [c, d](double x) { return -c * (1.0 + d) / x; };
    } else {
      bad.b = [c](double x) { return -c * x; };
    }
    Matrix rho = Matrix::Identity(2, 2);
    Matrix a = Matrix::Identity(2, 2);
    try {
      extended_metric(bad, rho, a, a);
      rejected_ok = false;
    } catch (const PositivityConditionViolated&) {
    }
  }
  Certificate cert = make_cert("extended_positivity", std::max(worst, 0.0), 1e-10);
  if (!rejected_ok) {
    cert.pass = false;
    cert.worst_violation = 1.0;
  }
  return cert;
}

Certificate degenerate_kernel() {
  RealVector lambda(4);
  lambda << 0.0, 0.3, 0.3, 0.4;
  DensityMatrix d = DensityMatrix::validate(lambda.cast<Complex>().asDiagonal());
  // Fixed generic Hermitian probe.
  Matrix b(4, 4);
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j)
      b(i, j) = Complex(1.0 / (1.0 + static_cast<double>(i + j)),
                        0.1 * static_cast<double>(i - j));
  b = 0.5 * (b + b.adjoint());

  double worst = 0.0;
  bool ok = true;
  for (const StandardFunction& f :
       {bkm_function(), geometric_function(), harmonic_function(), sld_function(),
        wy_function()}) {
    Matrix jb = jd_apply(f, d, b);
    Matrix linv = jd_inverse_apply(f, d, b);
    if (f.at_zero() == 0.0) {
      // Whole first row/column lies in the kernel.
      worst = std::max({worst, jb.row(0).cwiseAbs().maxCoeff(),
                        jb.col(0).cwiseAbs().maxCoeff(),
                        linv.row(0).cwiseAbs().maxCoeff()});
      if (jb.bottomRightCorner(3, 3).cwiseAbs().maxCoeff() < 1e-3) ok = false;
    } else {
      // Only the (0,0) entry vanishes.
      worst = std::max({worst, std::abs(jb(0, 0)), std::abs(linv(0, 0))});
      if (std::abs(jb(0, 1)) < 1e-6 || std::abs(jb(0, 3)) < 1e-6) ok = false;
    }
    // Moore-Penrose round trip on the support.
    Matrix y = jd_apply(f, d, b);
    Matrix round = jd_apply(f, d, jd_inverse_apply(f, d, y));
    worst = std::max(worst, (round - y).cwiseAbs().maxCoeff());
  }
  Certificate cert = make_cert("degenerate_kernel", worst, 1e-9);
  if (!ok) {
    cert.pass = false;
    cert.worst_violation = std::max(cert.worst_violation, 1.0);
  }
  return cert;
}

std::vector<Certificate> verify_all(std::uint64_t seed) {
  std::vector<Certificate> certs;
  for (const StandardFunction& f : catalog())
    certs.push_back(function_standard(f, 200, seed));
  certs.push_back(metric_ordering(50, seed + 1));
  certs.push_back(commuting_universality(50, seed + 2));
  for (const StandardFunction& f : catalog()) {
    certs.push_back(metric_monotonicity(f, 30, seed + 3));
    certs.push_back(qfim_monotonicity(f, 10, seed + 4));
  }
  certs.push_back(supremum(10, 40, seed + 5));
  certs.push_back(oracle_agreement(20, seed + 6));
  certs.push_back(cramer_rao(40, seed + 7));
  certs.push_back(skew_identity(50, seed + 8));
  certs.push_back(skew_bounds(50, seed + 9));
  certs.push_back(wyd_equivalence(50, seed + 10));
  certs.push_back(tilde_pointwise(seed + 11));
  certs.push_back(chi2_commuting(50, seed + 12));
  certs.push_back(chi2_metric_form(50, seed + 13));
  certs.push_back(extended_positivity(10, 20, seed + 14));
  certs.push_back(degenerate_kernel());
  return certs;
}

}  // namespace qfi::verify
