#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "integrate.hpp"
#include "json_io.hpp"
#include "signal.hpp"

using namespace apfire;

namespace {

// Test-local reconstruction of the thin-plateau series: brute-force
// membership of x in any plateau of term n, straight from the construction.
bool mu_no_mu_in_plateau(double x, int n_max = 30) {
  for (int n = 1; n <= n_max; ++n) {
    double stride = std::ldexp(1.0, n);
    double off = std::ldexp(1.0, n - 1);
    double z = stride * std::floor((x - off) / stride) + off;
    if (x <= z || x >= z + 1.0) continue;
    double rel = x - z;
    double spacing = std::ldexp(1.0, 1 - n);
    double width = std::ldexp(1.0, 1 - 2 * n);
    double k = std::floor(rel / spacing);
    if (k >= 0 && k < std::ldexp(1.0, n - 1)) {
      double inner = rel - k * spacing;
      if (inner > 0 && inner < width) return true;
    }
  }
  return false;
}

// Composite Simpson oracle for smooth integrands.
double simpson_oracle(const std::function<double(double)> &fn, double a, double b,
                      int panels) {
  double h = (b - a) / panels;
  double acc = fn(a) + fn(b);
  for (int i = 1; i < panels; ++i) acc += fn(a + i * h) * (i % 2 ? 4.0 : 2.0);
  if (panels % 2) throw std::logic_error("even panel count required");
  return acc * h / 3.0;
}

}  // namespace

TEST_CASE("pointwise evaluation of the basic node kinds") {
  auto step = Signal::piecewise_periodic(2.0, {{0.0, 2.0}, {1.0, 1.0}});
  CHECK(step->eval(0.5) == 2.0);
  CHECK(step->eval(1.0) == 1.0);   // right-open pieces: breakpoint takes the new value
  CHECK(step->eval(2.0) == 2.0);   // wraps to the first piece
  CHECK(step->eval(-0.5) == 1.0);  // [-0.5, 0) lies in the second piece of [-2, 0)

  CHECK(Signal::constant(3.0)->eval(17.2) == 3.0);

  auto mu = Signal::dyadic(DyadicKind::MuNoMu);
  CHECK(mu->eval(0.3) == 1.0);  // cell 0 carries no plateaus, only the baseline
  // plateau membership agrees with the brute-force construction oracle
  for (int i = 0; i < 2000; ++i) {
    double x = -8.0 + 16.0 * i / 2000.0 + 0.5e-4;
    CHECK((mu->eval(x) > 1.0) == mu_no_mu_in_plateau(x));
  }
}

TEST_CASE("trig and shift/scale/sum constructors") {
  auto sine = Signal::trig({{1.0, 0.0, 1.0}});
  CHECK(std::abs(Signal::shift(M_PI, sine)->eval(0.0)) < 1e-15);

  auto step = Signal::piecewise_periodic(2.0, {{0.0, 2.0}, {1.0, 1.0}});
  auto shifted = Signal::shift(2.0, step);
  for (double t : {0.1, 0.9, 1.4, -2.7, 5.3})
    CHECK(shifted->eval(t) == step->eval(t));  // full-period shift

  auto combo = Signal::sum({Signal::constant(2.0), Signal::trig({{0.0, 1.0, 1.0}}),
                            Signal::trig({{0.0, 1.0, std::sqrt(2.0)}})});
  CHECK(combo->eval(0.0) == 4.0);
  CHECK(Signal::scale(-3.0, Signal::constant(2.0))->eval(1.0) == -6.0);
}

TEST_CASE("constructor preconditions") {
  CHECK_THROWS_AS(Window(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Signal::piecewise_periodic(0.0, {{0.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(Signal::piecewise_periodic(2.0, {{0.5, 1.0}, {0.5, 2.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Signal::piecewise_periodic(2.0, {{2.5, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(Signal::clamp(0.0, Signal::constant(1.0)), std::invalid_argument);
  CHECK_THROWS_AS(integrate(*Signal::constant(1.0), 1.0, 0.0, 1e-9),
                  std::invalid_argument);
  // dyadic lattice arithmetic guards its exactness range
  CHECK_THROWS_AS(Signal::dyadic(DyadicKind::MuNoMu)->eval(1e15),
                  std::invalid_argument);
  CHECK_THROWS_AS(integrate(*Signal::dyadic(DyadicKind::MuNoMu), 1e14, 1e14 + 1.0, 1e-9),
                  std::invalid_argument);
}

TEST_CASE("plain integration: constants, trig, periodic steps") {
  auto c = Signal::constant(3.5);
  IntegralResult r = integrate(*c, -2.0, 5.0, 1e-12);
  CHECK(r.value == doctest::Approx(3.5 * 7.0).epsilon(1e-15));
  CHECK(r.err_bound == 0.0);

  auto trig = Signal::trig({{1.5, -0.5, 2.0}, {0.0, 2.0, 0.0}});
  double a = -7.3, b = 12.9;
  double closed = integrate(*trig, a, b, 1e-12).value;
  double oracle = simpson_oracle([&](double t) { return trig->eval(t); }, a, b, 200000);
  CHECK(closed == doctest::Approx(oracle).epsilon(1e-10));

  auto step = signal_preset("ex4_3");
  double sv = integrate(*step, -10.2, 30.7, 1e-12).value;
  // independent break-point walk
  double acc = 0.0, t = -10.2;
  while (t < 30.7) {
    double next = std::min(std::floor(t) + 1.0, 30.7);
    if (next <= t) next = 30.7;
    double mid = 0.5 * (t + next);
    double m2 = mid - 2.0 * std::floor(mid / 2.0);
    acc += (m2 < 1.0 ? 2.0 : 1.0) * (next - t);
    t = next;
  }
  CHECK(sv == doctest::Approx(acc).epsilon(1e-13));
  CHECK(integrate(*step, 0.0, 65537.0, 1e-12).value ==
        doctest::Approx(65537.0 * 1.5 + 0.5).epsilon(1e-13));
}

TEST_CASE("series integration agrees with construction-level oracles") {
  auto mu = Signal::dyadic(DyadicKind::MuNoMu);
  // Dyadic-aligned midpoint Riemann sum is exact for the plateau series.
  {
    double a = -10.0, b = 10.0;
    double stepw = std::ldexp(1.0, -12);
    long long cells = static_cast<long long>((b - a) / stepw);
    double acc = 0.0;
    for (long long i = 0; i < cells; ++i) acc += mu->eval(a + (i + 0.5) * stepw) * stepw;
    CHECK(integrate(*mu, a, b, 1e-12).value == doctest::Approx(acc).epsilon(1e-10));
  }
  // Half-cell integrals: exactly 1 on even cells, 3/2 on odd cells.
  for (long long z : {2LL, 4LL, -6LL, 96LL}) {
    CHECK(integrate(*mu, static_cast<double>(z), z + 0.5, 1e-12).value ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
  for (long long z : {1LL, -3LL, 7LL}) {
    CHECK(integrate(*mu, static_cast<double>(z), z + 0.5, 1e-12).value ==
          doctest::Approx(1.5).epsilon(1e-12));
  }

  auto unbounded = Signal::dyadic(DyadicKind::UnboundedMeanSeries);
  // int over [z, z+1] is the sum of k over active terms; >= n on the term-n lattice.
  for (int n = 1; n <= 4; ++n) {
    double z = -std::pow(3.0, n);
    double v = integrate(*unbounded, z, z + 1.0, 1e-12).value;
    CHECK(v >= n);
    double expected = n * (n + 1) / 2.0;  // -3^n lies on every lattice up to n
    CHECK(v == doctest::Approx(expected).epsilon(1e-12));
  }
  // independent oracle across a window: enumerate spikes from the formulas
  {
    double a = -30.0, b = 30.0;
    double oracle = 0.0;
    for (int n = 1; n <= 8; ++n) {
      double stride = 2.0 * std::pow(3.0, n);
      double off = -std::pow(3.0, n);
      for (double z = off + stride * std::ceil((a - 1.0 - off) / stride); z <= b;
           z += stride) {
        double lo = std::max(z, a), hi = std::min(z + 1.0 / n, b);
        if (hi > lo) oracle += n * n * (hi - lo);
      }
    }
    CHECK(integrate(*unbounded, a, b, 1e-12).value ==
          doctest::Approx(oracle).epsilon(1e-12));
  }

  auto meanless = Signal::dyadic(DyadicKind::MeanlessSeries);
  {
    double a = 0.0, b = 20.0;
    // triangles at z=4 (area 4) and z=16 (area 16) lie inside [0, 20]
    CHECK(integrate(*meanless, a, b, 1e-12).value ==
          doctest::Approx(20.0).epsilon(1e-12));
    // crude Riemann cross-check
    double acc = 0.0;
    int steps = 200000;
    for (int i = 0; i < steps; ++i)
      acc += meanless->eval(a + (b - a) * (i + 0.5) / steps) * (b - a) / steps;
    CHECK(integrate(*meanless, a, b, 1e-12).value == doctest::Approx(acc).epsilon(1e-4));
  }

  auto alt = Signal::dyadic(DyadicKind::AlternatingOffsets);
  {
    // every cell ends with one plateau of area (n+1)^2/(n+1) = n+1 >= 2
    for (long long z : {0LL, 1LL, -3LL, 5LL}) {
      double v = integrate(*alt, static_cast<double>(z), z + 1.0, 1e-12).value;
      CHECK(v >= 2.0 + 2.0 - 1e-12);  // baseline 2 plus at least area 2
    }
    CHECK(integrate(*alt, 0.0, 0.5, 1e-12).value == doctest::Approx(1.0));  // flat part
  }
}

TEST_CASE("weighted charge integrals") {
  auto step = signal_preset("ex4_3");
  CHECK(integrate_weighted(*step, 1.0, 0.0, std::log(2.0), 1e-12).value ==
        doctest::Approx(1.0).epsilon(1e-13));
  CHECK(integrate_weighted(*step, 1.0, 0.7, 0.7, 1e-12).value == 0.0);
  CHECK(integrate_weighted(*Signal::constant(2.0), 1.0, 0.0, 1.0, 1e-12).value ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
  // adaptive-vs-closed cross-check for a trig drive at sigma > 0
  auto trig = Signal::trig({{0.0, 2.0, 0.0}, {0.3, 1.0, 1.7}});
  double sigma = 0.8, t = 0.4, s = 2.9;
  double closed = integrate_weighted(*trig, sigma, t, s, 1e-12).value;
  double oracle = simpson_oracle(
      [&](double u) { return (trig->eval(u) - sigma) * std::exp(sigma * (u - t)); }, t,
      s, 20000);
  CHECK(closed == doctest::Approx(oracle).epsilon(1e-10));
}

TEST_CASE("active term counts") {
  auto mu_ops = dyadic_ops(DyadicNode{DyadicKind::MuNoMu, Signal::kAllTerms});
  CHECK(mu_ops.active_terms(-1.0, 1.0) == 2);
  CHECK(mu_ops.active_terms(0.05, 0.2) == 0);
  auto un_ops =
      dyadic_ops(DyadicNode{DyadicKind::UnboundedMeanSeries, Signal::kAllTerms});
  CHECK(un_ops.active_terms(0.0, 10.0) == 2);
  // brute-force cross-check: a term is active iff some closed cell touches
  for (int n = 1; n <= 10; ++n) {
    bool found = false;
    double stride = 2.0 * std::pow(3.0, n), off = -std::pow(3.0, n);
    for (double z = off - 10.0 * stride; z <= 11.0; z += stride)
      if (z >= -1.0 && z <= 10.0) found = true;
    long long lo, hi;
    CHECK(un_ops.lattice_range(n, 0.0, 10.0, lo, hi) == found);
  }
}

TEST_CASE("series truncation soundness") {
  for (DyadicKind kind : {DyadicKind::MuNoMu, DyadicKind::MeanlessSeries,
                          DyadicKind::UnboundedMeanSeries,
                          DyadicKind::AlternatingOffsets}) {
    double a = -9.0, b = 21.0;
    auto full = Signal::dyadic(kind);
    int active = dyadic_ops(DyadicNode{kind, Signal::kAllTerms}).active_terms(a, b);
    auto padded = Signal::dyadic(kind, active + 5);
    CHECK(integrate(*full, a, b, 1e-12).value ==
          integrate(*padded, a, b, 1e-12).value);
    for (int i = 0; i <= 100; ++i) {
      double t = a + (b - a) * i / 100.0 + 1e-3;
      CHECK(full->eval(t) == padded->eval(t));
    }
  }
}

TEST_CASE("integration identities") {
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> dist(-20.0, 20.0);
  std::vector<SignalPtr> signals = {
      signal_preset("ex4_3"),
      Signal::trig({{1.0, 0.5, 1.3}}),
      Signal::dyadic(DyadicKind::MuNoMu),
      Signal::dyadic(DyadicKind::UnboundedMeanSeries),
  };
  for (const auto &f : signals) {
    for (int i = 0; i < 40; ++i) {
      double x = dist(rng), y = dist(rng), z = dist(rng);
      double a = std::min({x, y, z}), c = std::max({x, y, z});
      double b = x + y + z - a - c;
      double whole = integrate(*f, a, c, 1e-10).value;
      double parts =
          integrate(*f, a, b, 1e-10).value + integrate(*f, b, c, 1e-10).value;
      CHECK(whole == doctest::Approx(parts).epsilon(1e-11));
    }
    // shift identity is structural and therefore exact
    double tau = 3.25;
    CHECK(integrate(*Signal::shift(tau, f), -2.0, 7.0, 1e-10).value ==
          integrate(*f, -2.0 + tau, 7.0 + tau, 1e-10).value);
  }
}

TEST_CASE("short-window mass bound for the thin-plateau series") {
  auto mu = signal_preset("ex4_12");
  std::mt19937 rng(20250301);
  std::uniform_real_distribution<double> dist(-1048576.0, 1048576.0);
  for (int m = 2; m <= 12; ++m) {
    double len = std::ldexp(1.0, 1 - m);
    double allowed = std::pow(2.0, 3.0 - 0.5 * m);
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
      double u = dist(rng);
      worst = std::max(worst, integrate(*mu, u, u + len, 1e-12).value);
    }
    CHECK(worst <= allowed);
  }
}

TEST_CASE("clamp node: exact for steps, quadrature for trig") {
  auto step = signal_preset("ex4_3");
  auto clamped = Signal::clamp(1.5, step);
  CHECK(clamped->eval(0.5) == 1.5);
  CHECK(clamped->eval(1.5) == 1.0);
  IntegralResult r = integrate(*clamped, 0.0, 2.0, 1e-12);
  CHECK(r.value == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(r.err_bound == 0.0);

  CHECK(Signal::clamp(3.0, Signal::constant(5.0))->eval(0.3) == 3.0);
  auto trig = Signal::trig({{1.0, 0.0, 1.0}});
  auto tc = Signal::clamp(0.5, trig);
  for (double t : {0.1, 1.2, 2.0}) {
    double expected = std::clamp(std::sin(t), -0.5, 0.5);
    CHECK(tc->eval(t) == expected);
  }
  double v = integrate(*tc, 0.0, M_PI, 1e-10).value;
  double oracle = simpson_oracle(
      [&](double t) { return std::clamp(std::sin(t), -0.5, 0.5); }, 0.0, M_PI, 200000);
  CHECK(v == doctest::Approx(oracle).epsilon(1e-8));
  // clamping above the sup changes nothing
  auto loose = Signal::clamp(10.0, trig);
  for (double t : {0.3, 2.7, -4.2}) CHECK(loose->eval(t) == trig->eval(t));
}

TEST_CASE("exponential node goes through quadrature") {
  auto e = Signal::exponential(1.0, -2.0);
  IntegralResult r = integrate(*e, 0.0, 3.0, 1e-10);
  CHECK(r.value == doctest::Approx((1.0 - std::exp(-6.0)) / 2.0).epsilon(1e-9));
  CHECK(r.err_bound <= 1e-10);
  auto decayed = Signal::sum({Signal::constant(1.0), e});
  double w = integrate_weighted(*decayed, 1.0, 0.0, 5.0, 1e-10).value;
  CHECK(w == doctest::Approx(1.0 - std::exp(-5.0)).epsilon(1e-8));
}

TEST_CASE("piecewise-affine extraction is consistent with eval") {
  std::vector<SignalPtr> signals = {
      signal_preset("ex4_3"),
      Signal::dyadic(DyadicKind::MuNoMu),
      Signal::dyadic(DyadicKind::MeanlessSeries),
      Signal::sum({Signal::dyadic(DyadicKind::UnboundedMeanSeries),
                   Signal::constant(-1.0)}),
      Signal::clamp(3.0, Signal::dyadic(DyadicKind::AlternatingOffsets)),
  };
  for (const auto &f : signals) {
    double a = -5.0, b = 18.0;
    auto pieces = extract_pieces(*f, a, b);
    REQUIRE(pieces.has_value());
    double covered = 0.0;
    for (const auto &p : *pieces) {
      covered += p.x1 - p.x0;
      double mid = 0.5 * (p.x0 + p.x1);
      CHECK(f->eval(mid) == doctest::Approx(p.value_at(mid)).epsilon(1e-12));
    }
    CHECK(covered == doctest::Approx(b - a).epsilon(1e-12));
  }
  CHECK(!extract_pieces(*Signal::trig({{1.0, 0.0, 1.0}}), 0.0, 1.0).has_value());
}

TEST_CASE("json round trip and schema errors") {
  const char *doc =
      "{\"kind\":\"sum\",\"children\":[{\"kind\":\"piecewise_periodic\",\"period\":2,"
      "\"pieces\":[[0,2],[1,1]]},{\"kind\":\"scale\",\"factor\":0.5,\"child\":"
      "{\"kind\":\"trig\",\"terms\":[[1,0,1.5]]}},{\"kind\":\"shift\",\"tau\":0.25,"
      "\"child\":{\"kind\":\"dyadic\",\"name\":\"mu_no_mu\",\"terms\":3}}]}";
  auto sig = signal_from_json(doc);
  auto round = signal_from_json(signal_to_json(*sig));
  for (double t : {0.0, 0.4, 1.9, -3.3, 7.7}) CHECK(sig->eval(t) == round->eval(t));

  CHECK_THROWS_AS(signal_from_json("{\"kind\":\"what\"}"), std::invalid_argument);
  CHECK_THROWS_AS(signal_from_json("{"), std::invalid_argument);
  CHECK_THROWS_AS(signal_from_json("{\"kind\":\"const\"}"), std::invalid_argument);
  CHECK_THROWS_AS(signal_from_json("{\"kind\":\"dyadic\",\"name\":\"nope\"}"),
                  std::invalid_argument);

  CHECK(signal_preset("ex6_4")->eval(0.0) == doctest::Approx(4.0));
  CHECK(signal_preset("nope") == nullptr);
}
