#include <doctest.h>

#include "stockflow/errors.hpp"
#include "stockflow/topology.hpp"

using namespace stockflow;

TEST_CASE("cyclic route lists") {
  const NetworkTopology t3 = build_cyclic(3);
  REQUIRE(t3.routes.size() == 3);
  CHECK(t3.routes[0] == Route{1, 2});
  CHECK(t3.routes[1] == Route{2, 3});
  CHECK(t3.routes[2] == Route{3, 1});

  const NetworkTopology t2 = build_cyclic(2);
  CHECK(t2.routes[0] == Route{1, 2});
  CHECK(t2.routes[1] == Route{2, 1});

  const NetworkTopology t6 = build_cyclic(6);
  CHECK(t6.route_count() == 6);
  CHECK(t6.routes[5] == Route{6, 1});

  CHECK(t6.out_neighbors[0] == std::vector<int>{2});
  CHECK(t6.in_neighbors[0] == std::vector<int>{6});

  CHECK_THROWS_AS(build_cyclic(1), ConfigError);
}

TEST_CASE("topology validation") {
  CHECK_THROWS_AS(make_topology(2, {{1, 1}}), ConfigError);
  CHECK_THROWS_AS(make_topology(2, {{1, 3}}), ConfigError);
  CHECK_THROWS_AS(make_topology(3, {{1, 2}, {1, 2}}), ConfigError);
}

TEST_CASE("incidence columns reproduce the imbalance map") {
  const Eigen::MatrixXd b3 = incidence(build_cyclic(3));
  Eigen::VectorXd col(6);
  col << 0, -1, 1, 0, 0, 0;
  CHECK((b3.col(0) - col).cwiseAbs().maxCoeff() == 0.0);

  // -B^T x row for route i->j equals x_out(i) - x_in(j)
  Eigen::VectorXd x(6);
  x << 1, 2, 3, 4, 5, 6;
  const Eigen::VectorXd y_c = -b3.transpose() * x;
  CHECK(y_c(0) == doctest::Approx(x(1) - x(2)));
  CHECK(y_c(1) == doctest::Approx(x(3) - x(4)));
  CHECK(y_c(2) == doctest::Approx(x(5) - x(0)));

  const Eigen::MatrixXd b2 = incidence(build_cyclic(2));
  Eigen::VectorXd c0(4), c1(4);
  c0 << 0, -1, 1, 0;
  c1 << 1, 0, 0, -1;
  CHECK((b2.col(0) - c0).cwiseAbs().maxCoeff() == 0.0);
  CHECK((b2.col(1) - c1).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("incidence structural invariants") {
  for (int n : {2, 3, 5, 6, 11}) {
    const Eigen::MatrixXd b = incidence(build_cyclic(n));
    // columns sum to zero and the all-ones state is unobservable
    CHECK(b.colwise().sum().cwiseAbs().maxCoeff() == 0.0);
    CHECK((b.transpose() * Eigen::VectorXd::Ones(2 * n))
              .cwiseAbs()
              .maxCoeff() == 0.0);
    const Eigen::MatrixXd gram = b.transpose() * b;
    CHECK(gram.diagonal().minCoeff() == doctest::Approx(2.0));
    if (n >= 3) {
      CHECK((gram - 2.0 * Eigen::MatrixXd::Identity(n, n))
                .cwiseAbs()
                .maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("gram decomposition") {
  const auto g6 = gram_decomposition(incidence(build_cyclic(6)));
  CHECK(g6.line_graph.cwiseAbs().maxCoeff() == 0.0);

  const auto g1 = gram_decomposition(incidence(make_topology(2, {{1, 2}})));
  CHECK(g1.line_graph.rows() == 1);
  CHECK(g1.line_graph(0, 0) == 0.0);

  // star 1->2, 1->3: both columns share the source output-buffer row
  const auto star = gram_decomposition(incidence(make_topology(3, {{1, 2}, {1, 3}})));
  CHECK(star.line_graph(0, 0) == 0.0);
  CHECK(star.line_graph(1, 1) == 0.0);
  CHECK(star.line_graph(0, 1) == doctest::Approx(1.0));
  CHECK(star.line_graph(1, 0) == doctest::Approx(1.0));
}
