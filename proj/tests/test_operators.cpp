#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "curveflow/sweep.hpp"
#include "support/test_support.hpp"

using namespace curveflow;

namespace {

Eigen::VectorXd random_vector(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd f(n);
  for (int i = 0; i < n; ++i) f(i) = u(rng);
  return f;
}

double block_form_value(const LocalBlocks& b, const Eigen::VectorXd& f) {
  const int m = static_cast<int>(b.s1.size());
  const int n2 = static_cast<int>(b.s2.size());
  Eigen::VectorXd v(m), w(n2);
  for (int i = 0; i < m; ++i) v(i) = f(b.s1[static_cast<size_t>(i)]);
  for (int k = 0; k < n2; ++k) w(k) = f(b.s2[static_cast<size_t>(k)]);
  return v.dot(b.gamma2_s1 * v) + 2.0 * v.dot(b.gamma2_s1s2 * w) + w.dot(b.gamma2_s2 * w);
}

}  // namespace

TEST_CASE("K3 SRW local blocks: no 2-sphere, diagonal Gamma") {
  const WeightingScheme scheme = k3_catalog()[0];
  const LocalBlocks b = local_blocks(scheme, 0);
  CHECK(b.s1 == std::vector<int>{1, 2});
  CHECK(b.s2.empty());
  CHECK(b.delta_s1(0) == 0.5);
  CHECK(b.delta_s1(1) == 0.5);
  CHECK(b.gamma_s1(0, 0) == 0.25);
  CHECK(b.gamma_s1(1, 1) == 0.25);
  CHECK(b.gamma_s1(0, 1) == 0.0);
}

TEST_CASE("square blocks: gamma2 on S_2 is p(1-p)/2") {
  const double p = 0.3;
  const WeightingScheme scheme = square_scheme(p);
  const LocalBlocks b = local_blocks(scheme, 0);
  CHECK(b.s1 == std::vector<int>{1, 3});
  CHECK(b.s2 == std::vector<int>{2});
  CHECK(b.gamma2_s2(0, 0) == doctest::Approx(0.5 * p * (1 - p)).epsilon(1e-14));
}

TEST_CASE("frozen path blocks at v0: S_2 from d_G but vanishing two-step rate") {
  MixedGraph path({"v0", "v1", "v2", "v3"}, {}, {{"v0", "v1"}, {"v1", "v2"}, {"v2", "v3"}});
  Eigen::MatrixXd rates = Eigen::MatrixXd::Zero(4, 4);
  rates(0, 1) = 1.0;
  rates(1, 0) = 1.0;
  rates(2, 3) = 1.0;
  rates(3, 2) = 1.0;
  const WeightingScheme scheme = WeightingScheme::validated(path, rates);
  const LocalBlocks b = local_blocks(scheme, 0);
  CHECK(b.s1 == std::vector<int>{1});
  CHECK(b.s2 == std::vector<int>{2});
  CHECK(b.gamma2_s2(0, 0) == 0.0);
  const QMatrix q = q_matrix(b);
  CHECK(q.q_weights(0) == 0.0);
}

TEST_CASE("pointwise Gamma_2 equals the summation rearrangement and the block form") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const MixedGraph g = testing::random_connected_graph(rng, 7);
    const WeightingScheme scheme = testing::random_scheme(rng, g, trial % 3 ? 0.0 : 0.25);
    for (int x = 0; x < g.n(); ++x) {
      const LocalBlocks b = local_blocks(scheme, x);
      Eigen::VectorXd f = random_vector(rng, g.n());
      f(x) = 0.0;  // block form works modulo constants; pin the gauge
      for (int v = 0; v < g.n(); ++v) {
        // zero outside B_2 so the block form sees the whole support
        bool in_b2 = v == x;
        for (int y : b.s1) in_b2 = in_b2 || v == y;
        for (int z : b.s2) in_b2 = in_b2 || v == z;
        if (!in_b2) f(v) = 0.0;
      }
      const double direct = gamma2(scheme, f, x);
      const double summed = testing::gamma2_sum_formula(scheme, f, x);
      const double blocked = block_form_value(b, f);
      CHECK(direct == doctest::Approx(summed).epsilon(1e-12));
      CHECK(direct == doctest::Approx(blocked).epsilon(1e-12));
    }
  }
}

TEST_CASE("Q agrees between the Schur route and the closed-form entries") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const MixedGraph g = testing::random_connected_graph(rng, 7);
    const WeightingScheme scheme = testing::random_scheme(rng, g, trial % 2 ? 0.2 : 0.0);
    for (int x = 0; x < g.n(); ++x) {
      const LocalBlocks b = local_blocks(scheme, x);
      const QMatrix q = q_matrix(b);
      const Eigen::MatrixXd closed = testing::q_closed_form(scheme, b);
      CHECK((q.entries - closed).lpNorm<Eigen::Infinity>() <= 1e-12);
      CHECK((q.entries - q.entries.transpose()).lpNorm<Eigen::Infinity>() == 0.0);
    }
  }
}

TEST_CASE("Schur identity: Gamma_2 maps the lifted vector to (Qv, 0)") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const MixedGraph g = testing::random_connected_graph(rng, 7);
    const WeightingScheme scheme = testing::random_scheme(rng, g, trial % 2 ? 0.2 : 0.0);
    for (int x = 0; x < g.n(); ++x) {
      const LocalBlocks b = local_blocks(scheme, x);
      const int m = static_cast<int>(b.s1.size());
      const int n2 = static_cast<int>(b.s2.size());
      if (m == 0) continue;
      const QMatrix q = q_matrix(b);
      const Eigen::VectorXd v = random_vector(rng, m);
      const Eigen::VectorXd w =
          n2 == 0 ? Eigen::VectorXd()
                  : (-(q.q_weights.asDiagonal() * b.gamma2_s1s2.transpose() * v)).eval();
      const Eigen::VectorXd top = b.gamma2_s1 * v + (n2 ? (b.gamma2_s1s2 * w).eval()
                                                        : Eigen::VectorXd::Zero(m).eval());
      CHECK((top - q.entries * v).lpNorm<Eigen::Infinity>() <= 1e-12);
      if (n2 > 0) {
        const Eigen::VectorXd bottom = b.gamma2_s1s2.transpose() * v + b.gamma2_s2 * w;
        CHECK(bottom.lpNorm<Eigen::Infinity>() <= 1e-12);
      }
    }
  }
}

TEST_CASE("v^T Q v is the minimum of Gamma_2 over extensions") {
  std::mt19937_64 rng(13);
  int checked = 0;
  while (checked < 25) {
    const MixedGraph g = testing::random_connected_graph(rng, 7);
    const WeightingScheme scheme = testing::random_scheme(rng, g, 0.15);
    std::uniform_int_distribution<int> pick(0, g.n() - 1);
    const int x = pick(rng);
    const LocalBlocks b = local_blocks(scheme, x);
    if (b.s1.empty() || b.s2.empty()) continue;
    ++checked;
    const QMatrix q = q_matrix(b);
    const Eigen::VectorXd v = random_vector(rng, static_cast<int>(b.s1.size()));
    const double quad = v.dot(q.entries * v);

    std::map<int, double> f0{{x, 0.0}};
    for (size_t i = 0; i < b.s1.size(); ++i) f0[b.s1[i]] = v(static_cast<int>(i));
    const Eigen::VectorXd extended = optimal_extension(b, f0);
    const double at_extension = gamma2(scheme, extended, x);
    CHECK(quad == doctest::Approx(at_extension).epsilon(1e-11));

    // brute-force minimum and 200 random perturbations of the S_2 values
    const double brute = testing::min_gamma2_brute(scheme, b, v);
    CHECK(quad == doctest::Approx(brute).epsilon(1e-8));
    std::uniform_real_distribution<double> bump(-0.5, 0.5);
    for (int k = 0; k < 200; ++k) {
      Eigen::VectorXd candidate = extended;
      for (int z : b.s2) candidate(z) += bump(rng);
      CHECK(gamma2(scheme, candidate, x) >= quad - 1e-10);
    }
  }
}

TEST_CASE("optimal extension of the distance restriction is 2 on S_2^G cap S_2^P") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 25; ++trial) {
    const MixedGraph g = testing::random_connected_graph(rng, 7);
    const WeightingScheme scheme = testing::random_scheme(rng, g, 0.2);
    for (int x = 0; x < g.n(); ++x) {
      const LocalBlocks b = local_blocks(scheme, x);
      std::map<int, double> f0{{x, 0.0}};
      for (int y : b.s1) f0[y] = 1.0;
      const Eigen::VectorXd f = optimal_extension(b, f0);
      const DistanceField field = distances(scheme, x);
      for (size_t k = 0; k < b.s2.size(); ++k) {
        const int z = b.s2[k];
        const bool in_s2p = field.d_p[static_cast<size_t>(z)] &&
                            *field.d_p[static_cast<size_t>(z)] == 2;
        if (in_s2p) {
          CHECK(f(z) == doctest::Approx(2.0).epsilon(1e-12));
        } else {
          CHECK(f(z) == 0.0);
        }
      }
    }
  }
}

TEST_CASE("square p=0.3 extension example at v0") {
  const WeightingScheme scheme = square_scheme(0.3);
  const LocalBlocks b = local_blocks(scheme, 0);
  std::map<int, double> f0{{0, 0.0}, {1, 1.0}, {3, 0.0}};
  const Eigen::VectorXd f = optimal_extension(b, f0);
  CHECK(f(2) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("constant zero boundary data extends to zero") {
  const WeightingScheme scheme = square_scheme(0.42);
  const LocalBlocks b = local_blocks(scheme, 0);
  std::map<int, double> f0{{0, 0.0}, {1, 0.0}, {3, 0.0}};
  CHECK(optimal_extension(b, f0).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("extension rejects incomplete or gauge-violating boundary data") {
  const WeightingScheme scheme = square_scheme(0.3);
  const LocalBlocks b = local_blocks(scheme, 0);
  std::map<int, double> missing{{0, 0.0}, {1, 1.0}};
  CHECK_THROWS_AS(optimal_extension(b, missing), std::invalid_argument);
  std::map<int, double> shifted{{0, 1.0}, {1, 1.0}, {3, 0.0}};
  CHECK_THROWS_AS(optimal_extension(b, shifted), std::invalid_argument);
}

TEST_CASE("functions constant on the closed out-neighborhood have zero drift") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 25; ++trial) {
    const MixedGraph g = testing::random_connected_graph(rng, 7);
    const WeightingScheme scheme = testing::random_scheme(rng, g, 0.2);
    for (int x = 0; x < g.n(); ++x) {
      const DistanceField field = distances(scheme, x);
      Eigen::VectorXd f = random_vector(rng, g.n());
      f(x) = 2.5;
      for (int y : field.s1_p) f(y) = 2.5;  // constant on {x} u S_1^P(x)
      CHECK(laplacian(scheme, f, x) == doctest::Approx(0.0).epsilon(1e-14));
      CHECK(gamma2(scheme, f, x) >= -1e-12);
    }
  }
}

TEST_CASE("distance function identities: Delta d = 2 Gamma d = D_x") {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 25; ++trial) {
    const MixedGraph g = testing::random_connected_graph(rng, 7);
    const WeightingScheme scheme = testing::random_scheme(rng, g, trial % 2 ? 0.2 : 0.0);
    for (int x = 0; x < g.n(); ++x) {
      const Eigen::VectorXd d = testing::distance_function(g, x);
      const double dx = scheme.weighted_degree(x);
      CHECK(laplacian(scheme, d, x) == doctest::Approx(dx).epsilon(1e-14));
      CHECK(2.0 * gamma(scheme, d, x) == doctest::Approx(dx).epsilon(1e-14));
    }
  }
}

TEST_CASE("empty 2-sphere collapses Q to the S_1 block") {
  const WeightingScheme scheme = k3_catalog()[0];
  const LocalBlocks b = local_blocks(scheme, 1);
  const QMatrix q = q_matrix(b);
  CHECK((q.entries - b.gamma2_s1).lpNorm<Eigen::Infinity>() == 0.0);
}

TEST_CASE("K3 SRW: 1^T Q 1 = 5/8") {
  const WeightingScheme scheme = k3_catalog()[0];
  for (int x = 0; x < 3; ++x) {
    const QMatrix q = q_matrix(local_blocks(scheme, x));
    CHECK(q.entries.sum() == doctest::Approx(0.625).epsilon(1e-14));
  }
}

TEST_CASE("square SRW: 1^T Q 1 = 1/2") {
  const WeightingScheme scheme = square_scheme(0.5);
  const QMatrix q = q_matrix(local_blocks(scheme, 0));
  CHECK(q.entries.sum() == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("1^T Q 1 = (1/2) K_inf^d D_x whenever D_x > 0") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const MixedGraph g = testing::random_connected_graph(rng, 7);
    const WeightingScheme scheme = testing::random_scheme(rng, g, trial % 2 ? 0.2 : 0.0);
    for (int x = 0; x < g.n(); ++x) {
      if (scheme.is_isolated(x)) continue;
      const QMatrix q = q_matrix(local_blocks(scheme, x));
      const double dx = scheme.weighted_degree(x);
      const double k_dist = upper_bound_dist(scheme, x, Dimension::infinite());
      CHECK(q.entries.sum() == doctest::Approx(0.5 * k_dist * dx).epsilon(1e-10));
    }
  }
}
