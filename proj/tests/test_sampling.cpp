#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "aoi/analytic.hpp"
#include "aoi/errors.hpp"
#include "aoi/sampling.hpp"
#include "aoi/simulate.hpp"
#include "support.hpp"

using namespace aoi;
using testsupport::rel_err;

namespace {

double sup_error(const GridDensity& d, double (*f)(double, double), double param) {
  double worst = 0.0;
  for (std::size_t i = 0; i < d.grid.size(); ++i) worst = std::max(worst, std::abs(d.values[i] - f(d.grid[i], param)));
  return worst;
}

double uniform_x1(double x, double b) { return x <= b ? (2.0 / b) * (1.0 - x / b) : 0.0; }

double uniform_x2(double x, double b) {
  if (x <= b) return (4.0 * x / (b * b)) * (1.0 - x / b + x * x / (6.0 * b * b));
  if (x <= 2.0 * b) return (2.0 / (3.0 * b)) * std::pow(2.0 - x / b, 3);
  return 0.0;
}

double erlang_pdf(double x, int k, double mu) {
  return std::pow(mu, k) * std::pow(x, k - 1) * std::exp(-mu * x) / std::tgamma(k);
}

SamplingNetwork uniform_line(double b, std::size_t n) {
  SamplingNetwork net;
  net.hops.assign(n, RenewalSpec::uniform(b));
  return net;
}

std::vector<SamplingNetwork> network_corpus() {
  return {
      uniform_line(6.0, 5),
      uniform_line(1.0, 2),
      {{RenewalSpec::exponential(1.0), RenewalSpec::exponential(2.0), RenewalSpec::exponential(0.5)}},
      {{RenewalSpec::gamma(2.0, 1.0), RenewalSpec::uniform(3.0), RenewalSpec::gamma(1.0, 2.0)}},
      {{RenewalSpec::gamma(3.5, 0.4), RenewalSpec::exponential(3.0)}},
  };
}

}  // namespace

TEST_CASE("equilibrium age densities") {
  const std::vector<double> z{0.0, 0.1, 0.5, 1.0, 2.5, 4.0};
  SUBCASE("exponential is memoryless") {
    const auto spec = RenewalSpec::exponential(1.3);
    const auto d = equilibrium_age_pdf(spec, z);
    for (std::size_t i = 0; i < z.size(); ++i) CHECK(rel_err(d.values[i], 1.3 * std::exp(-1.3 * z[i])) <= 1e-12);
  }
  SUBCASE("uniform gives a triangle") {
    const double b = 3.0;
    const auto d = equilibrium_age_pdf(RenewalSpec::uniform(b), z);
    for (std::size_t i = 0; i < z.size(); ++i) CHECK(std::abs(d.values[i] - uniform_x1(z[i], b)) <= 1e-14);
  }
  SUBCASE("gamma with shape two") {
    const double th = 0.8;
    const auto d = equilibrium_age_pdf(RenewalSpec::gamma(2.0, th), z);
    for (std::size_t i = 0; i < z.size(); ++i) {
      CHECK(rel_err(d.values[i], (1.0 + z[i] / th) * std::exp(-z[i] / th) / (2.0 * th)) <= 1e-12);
    }
  }
}

TEST_CASE("property: equilibrium tails integrate the densities") {
  for (const auto& spec : {RenewalSpec::gamma(0.5, 2.0), RenewalSpec::gamma(2.7, 0.3), RenewalSpec::uniform(2.0),
                           RenewalSpec::exponential(0.7)}) {
    CAPTURE(spec.describe());
    for (double z : {0.05, 0.4, 1.0, 1.9}) {
      const int n = 20000;
      const double top = z + 60.0;
      const double h = (top - z) / n;
      double integral = 0.0;
      for (int i = 0; i < n; ++i) integral += spec.equilibrium_pdf(z + (i + 0.5) * h) * h;
      CHECK(std::abs(spec.equilibrium_tail(z) - integral) <= 1e-6);
    }
    const double q = spec.equilibrium_upper_quantile(1e-6);
    CHECK(spec.equilibrium_tail(q) <= 1e-6 * (1 + 1e-9));
  }
}

TEST_CASE("renewal age moments") {
  const auto u = renewal_age_moments(RenewalSpec::uniform(4.0));
  CHECK(rel_err(u.mean, 4.0 / 3.0) <= 1e-14);
  CHECK(rel_err(u.second, 16.0 / 6.0) <= 1e-14);
  const auto e = renewal_age_moments(RenewalSpec::exponential(2.0));
  CHECK(rel_err(e.mean, 0.5) <= 1e-14);
  CHECK(rel_err(e.second, 0.5) <= 1e-14);
  const auto six = renewal_age_moments(RenewalSpec::uniform(6.0));
  CHECK(six.mean == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(six.second == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(six.variance() == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("convolution densities of uniform lines match the piecewise closed forms") {
  for (double b : {1.0, 6.0}) {
    CAPTURE(b);
    const auto net = uniform_line(b, 2);
    const auto x1 = node_age_pdf(net, 1, default_grid(net, 1));
    const auto x2 = node_age_pdf(net, 2, default_grid(net, 2));
    CHECK(x1.grid.size() == kDefaultGridPoints);
    CHECK(sup_error(x1, uniform_x1, b) <= 1e-3);
    CHECK(sup_error(x2, uniform_x2, b) <= 1e-3);
  }
}

TEST_CASE("convolution density of exponential hops is Erlang") {
  const double mu = 1.5;
  for (int k = 1; k <= 4; ++k) {
    SamplingNetwork net;
    net.hops.assign(static_cast<std::size_t>(k), RenewalSpec::exponential(mu));
    const auto d = node_age_pdf(net, static_cast<std::size_t>(k), default_grid(net, static_cast<std::size_t>(k)));
    double worst = 0.0;
    for (std::size_t i = 0; i < d.grid.size(); ++i) {
      worst = std::max(worst, std::abs(d.values[i] - erlang_pdf(d.grid[i], k, mu)));
    }
    CAPTURE(k);
    CHECK(worst <= 1e-3);
  }
}

TEST_CASE("a grid shorter than the required extent is refused") {
  const auto net = uniform_line(6.0, 3);
  const auto need = required_extent(net, 3);
  CHECK_THROWS_AS(node_age_pdf(net, 3, uniform_grid(0.5 * need, 1024)), TruncationError);
  try {
    (void)node_age_pdf(net, 3, uniform_grid(0.5 * need, 1024));
  } catch (const TruncationError& e) {
    CHECK(e.suggested_extent() >= need * (1 - 1e-12));
  }
  CHECK_THROWS_AS(node_age_pdf(net, 4, uniform_grid(need, 1024)), ConfigError);
}

TEST_CASE("node statistics") {
  const auto net = uniform_line(6.0, 5);
  for (std::size_t k = 1; k <= 5; ++k) {
    const auto st = node_age_stats(net, k);
    CHECK(st.mean == doctest::Approx(2.0 * k).epsilon(1e-14));
    CHECK(st.variance == doctest::Approx(2.0 * k).epsilon(1e-14));
  }
  const auto one = node_age_stats(uniform_line(1.5, 1), 1);
  CHECK(one.mean == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(one.variance == doctest::Approx(1.5 * 1.5 / 18.0).epsilon(1e-14));
  const SamplingNetwork exps{{RenewalSpec::exponential(1.0), RenewalSpec::exponential(2.0),
                              RenewalSpec::exponential(4.0)}};
  CHECK(node_age_stats(exps, 3).mean == doctest::Approx(1.75).epsilon(1e-14));
}

TEST_CASE("property: node means add one equilibrium age per hop") {
  for (const auto& net : network_corpus()) {
    for (std::size_t k = 1; k < net.hops.size(); ++k) {
      const double step = node_age_stats(net, k + 1).mean - node_age_stats(net, k).mean;
      CHECK(step == doctest::Approx(renewal_age_moments(net.hops[k]).mean).epsilon(1e-14));
    }
  }
}

TEST_CASE("property: convolution densities are normalized and carry the right moments") {
  for (const auto& net : network_corpus()) {
    for (std::size_t k = 1; k <= net.hops.size(); ++k) {
      const auto d = node_age_pdf(net, k, default_grid(net, k));
      const auto st = node_age_stats(net, k);
      CAPTURE(k);
      CHECK(std::abs(d.integral() - 1.0) <= 1e-4);
      CHECK(rel_err(d.mean(), st.mean) <= 1e-3);
      CHECK(rel_err(d.variance(), st.variance) <= 1e-3);
      const auto z = equilibrium_age_pdf(net.hops[k - 1], d.grid);
      CHECK(std::abs(z.integral() - 1.0) <= 1e-4);
    }
  }
}

TEST_CASE("a gamma shape below one converges more slowly at the cusp") {
  // P(Y > z) behaves like 1 - c sqrt(z) near 0, so the trapezoid error decays
  // like h^1.5 rather than h^2.
  const auto spec = RenewalSpec::gamma(0.5, 2.0);
  const double extent = spec.equilibrium_upper_quantile(1e-7);
  double previous = 1.0;
  for (std::size_t points : {1024u, 4096u, 16384u, 65536u}) {
    const double err = std::abs(equilibrium_age_pdf(spec, uniform_grid(extent, points)).integral() - 1.0);
    CAPTURE(points);
    CHECK(err < previous / 2.5);
    previous = err;
  }
  CHECK(previous <= 1e-4);
}

TEST_CASE("Gaussian comparison") {
  SUBCASE("the fit improves down a uniform line") {
    const auto net = uniform_line(6.0, 5);
    const auto g3 = gaussian_comparison(net, 3, default_grid(net, 3));
    const auto g5 = gaussian_comparison(net, 5, default_grid(net, 5));
    CHECK(g5.l1 < g3.l1);
  }
  SUBCASE("moment matching at the first node") {
    const auto net = uniform_line(3.0, 2);
    const auto g = gaussian_comparison(net, 1, default_grid(net, 1));
    CHECK(g.mean == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(g.variance == doctest::Approx(0.5).epsilon(1e-14));
  }
  SUBCASE("two unit exponential hops") {
    const SamplingNetwork net{{RenewalSpec::exponential(1.0), RenewalSpec::exponential(1.0)}};
    const auto g = gaussian_comparison(net, 2, default_grid(net, 2));
    CHECK(g.mean == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(g.variance == doctest::Approx(2.0).epsilon(1e-14));
  }
}

TEST_CASE("simulated uniform line matches the node statistics") {
  const auto net = uniform_line(6.0, 3);
  SamplingSimConfig cfg;
  cfg.seed = 31;
  cfg.t_end = 1e6;
  cfg.replications = 16;
  const auto res = simulate_sampling_line(net, cfg);
  for (std::size_t k = 1; k <= 3; ++k) {
    const auto& n = res.nodes[k - 1];
    CAPTURE(k);
    CHECK(std::abs(n.mean - 2.0 * k) <= 4.0 * n.mean_stderr);
    CHECK(std::abs(n.variance - 2.0 * k) <= 4.0 * n.variance_stderr);
  }
}

TEST_CASE("sampling line and fake-update line network agree for exponential hops") {
  const std::vector<double> mus{1.0, 2.0, 0.8};
  SamplingNetwork net;
  for (double m : mus) net.hops.push_back(RenewalSpec::exponential(m));
  std::vector<double> edges;
  for (int i = 0; i <= 80; ++i) edges.push_back(0.125 * i);
  edges.push_back(std::numeric_limits<double>::infinity());

  SamplingSimConfig scfg;
  scfg.seed = 77;
  scfg.t_end = 2e5;
  scfg.replications = 16;
  scfg.edges = edges;
  const auto samp = simulate_sampling_line(net, scfg);

  SimConfig cfg;
  cfg.seed = 78;
  cfg.t_end = 2e5;
  cfg.replications = 16;
  cfg.orders = {1};
  const auto model = preemptive_line(mus);
  const auto shs = simulate(model, cfg);

  for (std::size_t k = 1; k <= mus.size(); ++k) {
    CAPTURE(k);
    const auto& node = samp.nodes[k - 1];
    const double combined = std::hypot(node.mean_stderr, shs.moment_stderr[0][k - 1]);
    CHECK(std::abs(node.mean - shs.moment_avg[0][k - 1]) <= 4.0 * combined);

    const auto emp = empirical_distribution(model, k - 1, cfg, edges);
    const auto a = node.histogram->masses();
    double l1 = 0.0;
    for (std::size_t b = 0; b < a.size(); ++b) l1 += std::abs(a[b] - emp.masses[b]);
    CHECK(l1 <= 0.03);
  }
}

TEST_CASE("simulated first node of a uniform line has mean b/3") {
  const auto net = uniform_line(2.4, 1);
  SamplingSimConfig cfg;
  cfg.seed = 3;
  cfg.t_end = 1e5;
  const auto res = simulate_sampling_line(net, cfg);
  CHECK(std::abs(res.nodes[0].mean - 0.8) <= 4.0 * res.nodes[0].mean_stderr);
}

TEST_CASE("histogram distance against a density") {
  const auto net = uniform_line(6.0, 2);
  const auto d = node_age_pdf(net, 2, default_grid(net, 2));
  std::vector<double> edges;
  for (int i = 0; i <= 48; ++i) edges.push_back(0.25 * i);
  TimeHistogram h(edges);
  // a histogram built from the density's own bin masses is at distance ~0
  for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
    const double m = d.mass_between(edges[b], edges[b + 1]);
    if (m > 0.0) h.add_segment(edges[b], m);  // masses stay below the bin width
  }
  CHECK(histogram_l1(h, d) <= 1e-3);
}

TEST_CASE("invalid renewal parameters are rejected") {
  CHECK_THROWS_AS(RenewalSpec::uniform(0.0), ValidationError);
  CHECK_THROWS_AS(RenewalSpec::exponential(-1.0), ValidationError);
  CHECK_THROWS_AS(RenewalSpec::gamma(1.0, std::numeric_limits<double>::infinity()), ValidationError);
  CHECK_THROWS_AS(require_valid(SamplingNetwork{}), ValidationError);
}
