#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "qfi/monotone.hpp"
#include "qfi/random.hpp"

using namespace qfi;

TEST_CASE("catalog closed-form values") {
  CHECK(sld_function()(3.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(harmonic_function()(2.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(bkm_function()(std::exp(1.0)) ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-12));
  CHECK(geometric_function()(4.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(wy_function()(4.0) == doctest::Approx(2.25).epsilon(1e-14));
}

TEST_CASE("wyd(1/2) coincides with the closed-form wy function") {
  StandardFunction f = wyd_function(0.5);
  for (double x : {0.01, 0.3, 0.9999999, 1.0, 1.0000001, 2.5, 80.0}) {
    double expected = std::pow((1.0 + std::sqrt(x)) / 2.0, 2);
    CHECK(f(x) == doctest::Approx(expected).epsilon(1e-10));
  }
  CHECK(f.at_zero() == doctest::Approx(0.25));
}

TEST_CASE("wyd(1) reduces to the logarithmic mean function") {
  StandardFunction f = wyd_function(1.0);
  StandardFunction bkm = bkm_function();
  for (double x : {0.05, 0.5, 1.0, 3.0, 40.0}) CHECK(f(x) == doctest::Approx(bkm(x)));
}

TEST_CASE("family parameters are validated") {
  CHECK_THROWS_AS(wyd_function(0.0), ParamOutOfRange);
  CHECK_THROWS_AS(wyd_function(2.0), ParamOutOfRange);
  CHECK_THROWS_AS(wyd_function(-0.3), ParamOutOfRange);
  CHECK_THROWS_AS(chi2_function(0.0), ParamOutOfRange);
  CHECK_THROWS_AS(chi2_function(1.0), ParamOutOfRange);
}

TEST_CASE("evaluation domain") {
  CHECK_THROWS_AS(sld_function()(-0.1), NegativeInput);
  CHECK(bkm_function()(0.0) == 0.0);   // stored limit
  CHECK(sld_function()(0.0) == 0.5);
}

TEST_CASE("f_zero limits") {
  CHECK(f_zero(sld_function()) == doctest::Approx(0.5));
  CHECK(f_zero(harmonic_function()) == 0.0);
  CHECK(f_zero(bkm_function()) == 0.0);
  CHECK(f_zero(geometric_function()) == 0.0);
  CHECK(f_zero(wy_function()) == doctest::Approx(0.25));
  for (double beta : {0.1, 0.3, 0.5, 0.7, 0.9})
    CHECK(f_zero(wyd_function(beta)) == doctest::Approx(beta * (1.0 - beta)).epsilon(1e-8));
  CHECK(f_zero(wyd_function(1.5)) == 0.0);
  CHECK(f_zero(chi2_function(0.4)) == 0.0);
}

TEST_CASE("numeric limit extraction recovers O(h) tails") {
  // The Richardson fallback assumes a linear approach to the limit; it is
  // exact for affine tails and a rough probe otherwise.
  double affine = f_zero_numeric([](double x) { return 0.3 + 2.0 * x; });
  CHECK(affine == doctest::Approx(0.3).epsilon(1e-9));

  StandardFunction sld = sld_function();
  CHECK(std::abs(f_zero_numeric([&](double x) { return sld(x); }) - 0.5) < 1e-9);
  StandardFunction harm = harmonic_function();
  CHECK(std::abs(f_zero_numeric([&](double x) { return harm(x); })) < 1e-9);

  // Slow tails (sqrt, log) are still bracketed: the probe lands between the
  // true limit and the sampled values.
  for (const StandardFunction& f : catalog()) {
    double numeric = f_zero_numeric([&f](double x) { return f(x); });
    CHECK(numeric >= f.at_zero() - 1e-9);
    CHECK(numeric <= f(1e-6) + 1e-9);
  }
}

TEST_CASE("mean closed forms and boundary values") {
  CHECK(mean(sld_function(), 2.0, 1.0) == doctest::Approx(1.5));
  CHECK(mean(harmonic_function(), 2.0, 1.0) == doctest::Approx(4.0 / 3.0));
  CHECK(mean(bkm_function(), 0.0, 1.0) == 0.0);
  CHECK(mean(sld_function(), 0.0, 1.0) == doctest::Approx(0.5));
  CHECK(mean(bkm_function(), 0.25, 0.75) ==
        doctest::Approx(0.45511961331341866).epsilon(1e-14));
  CHECK(mean(geometric_function(), 0.0, 0.0) == 0.0);
}

TEST_CASE("mean is symmetric, homogeneous and fixes the diagonal") {
  Rng rng(2);
  for (const StandardFunction& f : catalog()) {
    for (int k = 0; k < 40; ++k) {
      double x = std::pow(10.0, rng.uniform(-3.0, 3.0));
      double y = std::pow(10.0, rng.uniform(-3.0, 3.0));
      double c = std::pow(10.0, rng.uniform(-2.0, 2.0));
      double m = mean(f, x, y);
      CHECK(std::abs(m - mean(f, y, x)) < 1e-10 * std::max(1.0, m));
      CHECK(std::abs(mean(f, c * x, c * y) - c * m) < 1e-9 * std::max(1.0, c * m));
      CHECK(mean(f, x, x) == doctest::Approx(x).epsilon(1e-12));
    }
  }
}

TEST_CASE("mean ordering harmonic <= geometric <= bkm <= sld") {
  Rng rng(4);
  for (int k = 0; k < 100; ++k) {
    double x = std::pow(10.0, rng.uniform(-3.0, 3.0));
    double y = std::pow(10.0, rng.uniform(-3.0, 3.0));
    double h = mean(harmonic_function(), x, y);
    double g = mean(geometric_function(), x, y);
    double l = mean(bkm_function(), x, y);
    double a = mean(sld_function(), x, y);
    CHECK(h <= g + 1e-12 * std::max(1.0, g));
    CHECK(g <= l + 1e-12 * std::max(1.0, l));
    CHECK(l <= a + 1e-12 * std::max(1.0, a));
  }
}

TEST_CASE("catalog functions sit between the harmonic and arithmetic bounds") {
  Rng rng(6);
  StandardFunction lo = harmonic_function();
  StandardFunction hi = sld_function();
  for (const StandardFunction& f : catalog()) {
    for (int k = 0; k < 60; ++k) {
      double x = std::pow(10.0, rng.uniform(-4.0, 4.0));
      double v = f(x);
      double scale = std::max(1.0, hi(x));
      CHECK(v >= lo(x) - 1e-10 * scale);
      CHECK(v <= hi(x) + 1e-10 * scale);
    }
  }
}

TEST_CASE("tilde transform closed-form pairs") {
  StandardFunction t_sld = tilde_transform(sld_function());
  StandardFunction t_wy = tilde_transform(wy_function());
  StandardFunction t_harm = tilde_transform(harmonic_function());
  for (double x : {1e-3, 0.2, 0.999, 1.0, 1.7, 42.0, 1e3}) {
    double scale = std::max(1.0, 0.5 * (1.0 + x));
    CHECK(std::abs(t_sld(x) - harmonic_function()(x)) < 1e-12 * scale);
    CHECK(std::abs(t_wy(x) - geometric_function()(x)) < 1e-12 * scale);
    CHECK(std::abs(t_harm(x) - sld_function()(x)) < 1e-12 * scale);
  }
  CHECK(t_sld.at_zero() == 0.0);       // f(0) > 0 goes to 0
  CHECK(t_harm.at_zero() == 0.5);      // f(0) = 0 goes to 1/2
}

TEST_CASE("tilde transform of every catalog member is standard") {
  for (const StandardFunction& f : catalog()) {
    StandardnessReport rep = check_standard(tilde_transform(f), 150, 33);
    CHECK(rep.all_ok());
  }
}

TEST_CASE("check_standard passes the catalog") {
  for (const StandardFunction& f : catalog()) {
    StandardnessReport rep = check_standard(f, 200, 7);
    CHECK(rep.all_ok());
    CHECK(rep.worst_violation < 1e-8);
  }
}

TEST_CASE("check_standard rejects a non-standard function") {
  StandardFunction square("square", [](double x) { return x * x; }, 0.0);
  StandardnessReport rep = check_standard(square, 100, 7);
  CHECK_FALSE(rep.symmetry_ok);
  CHECK_FALSE(rep.all_ok());
  CHECK(rep.worst_violation > 1e-3);
}

TEST_CASE("removable singularity guard keeps bkm and wyd smooth near 1") {
  for (double eps : {1e-10, 1e-8, 5e-8}) {
    for (const StandardFunction& f :
         {bkm_function(), wyd_function(0.3), wyd_function(1.5)}) {
      CHECK(std::abs(f(1.0 + eps) - 1.0) < 1e-7);
      CHECK(std::abs(f(1.0 - eps) - 1.0) < 1e-7);
      CHECK(f(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("parse_function handles the spec strings") {
  CHECK(parse_function("sld").name() == "sld");
  CHECK(parse_function("harmonic").name() == "harmonic");
  StandardFunction w1 = parse_function("wyd:beta=0.3");
  CHECK(w1.param().value() == doctest::Approx(0.3));
  StandardFunction w2 = parse_function("wyd:β=0.3");
  CHECK(w2.param().value() == doctest::Approx(0.3));
  StandardFunction c1 = parse_function("chi2:alpha=0.5");
  CHECK(c1.param().value() == doctest::Approx(0.5));
  StandardFunction c2 = parse_function("chi2:α=0.5");
  CHECK(c2.param().value() == doctest::Approx(0.5));
  CHECK_THROWS_AS(parse_function("frobnicate"), ParseError);
  CHECK_THROWS_AS(parse_function("wyd:beta=7"), ParamOutOfRange);
}

TEST_CASE("chi2 family matches its closed form") {
  StandardFunction f = chi2_function(0.3);
  for (double x : {0.1, 0.5, 2.0, 17.0}) {
    double expected = 2.0 / (std::pow(x, -0.3) + std::pow(x, 0.3 - 1.0));
    CHECK(f(x) == doctest::Approx(expected).epsilon(1e-12));
  }
}
