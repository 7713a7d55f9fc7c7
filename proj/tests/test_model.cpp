#include "limitspec/model.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace limitspec;
using Catch::Approx;

namespace {

Eigen::VectorXd vec2(double x, double y) {
  Eigen::VectorXd v(2);
  v << x, y;
  return v;
}

PotentialTerm pt_term_on_axis_quotient(int which_axis) {
  // Y = axis subspace of R^2; profile lives on the 1-dim quotient.
  auto y = which_axis == 0 ? SubspaceQ::span({{1, 0}}, 2) : SubspaceQ::span({{0, 1}}, 2);
  return PotentialTerm(y, AsymptoticFunction::poschl_teller(2.0));
}

Hamiltonian two_axis_pt() {
  return Hamiltonian{2, {pt_term_on_axis_quotient(0), pt_term_on_axis_quotient(1)}};
}

}  // namespace

TEST_CASE("constant potential evaluates to its value everywhere") {
  PotentialTerm t(SubspaceQ::zero(2), AsymptoticFunction::constant(2, 3.25));
  REQUIRE(t.evaluate(vec2(0, 0)) == 3.25);
  REQUIRE(t.evaluate(vec2(-17.0, 4.5)) == 3.25);
}

TEST_CASE("potential pulled back from the quotient is constant along Y") {
  auto term = pt_term_on_axis_quotient(0);
  REQUIRE(term.evaluate(vec2(17.3, 0.0)) == Approx(term.evaluate(vec2(0, 0))).margin(1e-14));
  REQUIRE(term.evaluate(vec2(0, 0)) == Approx(-2.0));
}

TEST_CASE("regularized Coulomb value against direct arithmetic") {
  PotentialTerm t(SubspaceQ::zero(2), AsymptoticFunction::regularized_coulomb(2, 1.0));
  const double direct = 1.0 / std::sqrt(1.0 + 3.0 * 3.0);
  REQUIRE(t.evaluate(vec2(3.0, 0.0)) == Approx(direct).epsilon(1e-14));
  REQUIRE(t.evaluate(vec2(0.0, -3.0)) == Approx(direct).epsilon(1e-14));
}

TEST_CASE("quotient frames are orthonormal and annihilate Y") {
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> entry(-5, 5);
  for (int rep = 0; rep < 30; ++rep) {
    QMatrix rows(2, QVector(4));
    for (auto& r : rows)
      for (auto& x : r) x = entry(rng);
    auto y = SubspaceQ::span(rows, 4);
    if (y.dim() == 4) continue;
    auto frame = orthonormal_complement_frame(y);
    REQUIRE(frame.rows() == 4 - y.dim());
    Eigen::MatrixXd gram = frame * frame.transpose();
    REQUIRE((gram - Eigen::MatrixXd::Identity(frame.rows(), frame.rows())).cwiseAbs().maxCoeff() <
            1e-12);
    for (const auto& row : y.basis()) {
      Eigen::VectorXd yv(4);
      for (int j = 0; j < 4; ++j) yv[j] = to_double(row[j]);
      REQUIRE((frame * yv).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("asymptotic values along directions") {
  PotentialTerm gauss(SubspaceQ::zero(2), AsymptoticFunction::gaussian_well(2, 3.0, 2.0));
  PotentialTerm coulomb(SubspaceQ::zero(2), AsymptoticFunction::regularized_coulomb(2, 5.0));
  auto e1 = DirectionQ::from_int({1, 0}, 2);
  REQUIRE(asymptotic_value(gauss, e1) == 0.0);
  REQUIRE(asymptotic_value(coulomb, e1) == 0.0);

  Eigen::VectorXd coeffs(2);
  coeffs << 1.5, -0.5;
  PotentialTerm angular(SubspaceQ::zero(2),
                        AsymptoticFunction::angular_profile(2, 2.0, coeffs));
  REQUIRE(asymptotic_value(angular, e1) == Approx(3.5));

  PotentialTerm constant(SubspaceQ::zero(2), AsymptoticFunction::constant(2, -4.0));
  REQUIRE(asymptotic_value(constant, e1) == -4.0);

  auto axis_term = pt_term_on_axis_quotient(0);
  REQUIRE_THROWS_AS(asymptotic_value(axis_term, e1), direction_inside_subspace);
}

TEST_CASE("translation limit retains exactly the terms containing the direction") {
  auto h = two_axis_pt();

  SECTION("generic direction drops everything") {
    auto lim = translation_limit(h, DirectionQ::from_int({1, 2}, 2));
    REQUIRE(lim.retained.empty());
    REQUIRE(lim.shift == 0.0);
    REQUIRE(lim.invariant_subspace.is_full());
  }

  SECTION("axis direction keeps the matching term") {
    auto lim = translation_limit(h, DirectionQ::from_int({1, 0}, 2));
    REQUIRE(lim.retained.size() == 1);
    REQUIRE(lim.retained[0].subspace() == SubspaceQ::span({{1, 0}}, 2));
    REQUIRE(lim.shift == 0.0);
    REQUIRE(lim.invariant_subspace == SubspaceQ::span({{1, 0}}, 2));
  }

  SECTION("single-term H with direction inside Y is unchanged") {
    Hamiltonian single{2, {pt_term_on_axis_quotient(0)}};
    auto lim = translation_limit(single, DirectionQ::from_int({-3, 0}, 2));
    REQUIRE(lim.retained.size() == 1);
    REQUIRE(lim.retained[0] == single.terms[0]);
    REQUIRE(lim.shift == 0.0);
  }
}

TEST_CASE("translation limit is idempotent structurally") {
  Eigen::VectorXd coeffs(2);
  coeffs << 1.0, 2.0;
  Hamiltonian h = two_axis_pt();
  h.terms.emplace_back(SubspaceQ::zero(2),
                       AsymptoticFunction::angular_profile(2, 3.0, coeffs));

  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> entry(-4, 4);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<long long> v{entry(rng), entry(rng)};
    if (v[0] == 0 && v[1] == 0) continue;
    auto alpha = DirectionQ::from_int(v, 2);
    auto lim = translation_limit(h, alpha);
    auto again = translation_limit(lim.as_hamiltonian(), alpha);
    REQUIRE(again.same_operator(lim));
  }
}

TEST_CASE("limits agree across representatives of a stratum with C0 drops") {
  auto h = two_axis_pt();
  auto a = translation_limit(h, DirectionQ::from_int({1, 0}, 2));
  auto b = translation_limit(h, DirectionQ::from_int({-1, 0}, 2));
  REQUIRE(a.same_operator(b));

  auto g1 = translation_limit(h, DirectionQ::from_int({1, 2}, 2));
  auto g2 = translation_limit(h, DirectionQ::from_int({3, -1}, 2));
  REQUIRE(g1.same_operator(g2));
}

TEST_CASE("reduction separates the invariant subspace") {
  auto h = two_axis_pt();

  SECTION("nothing retained reduces to dimension zero") {
    auto red = reduce(translation_limit(h, DirectionQ::from_int({1, 1}, 2)));
    REQUIRE(red.dim == 0);
    REQUIRE(red.terms.empty());
    REQUIRE(red.shift == 0.0);
  }

  SECTION("axis limit reduces to the 1D well") {
    auto red = reduce(translation_limit(h, DirectionQ::from_int({1, 0}, 2)));
    REQUIRE(red.dim == 1);
    REQUIRE(red.terms.size() == 1);
    Eigen::VectorXd u(1);
    for (double t : {0.0, 0.7, -2.5}) {
      u[0] = t;
      const double expected = -2.0 / std::pow(std::cosh(t), 2);
      REQUIRE(red.potential(u) == Approx(expected).margin(1e-12));
    }
  }
}

TEST_CASE("retained potentials are translation invariant along Y") {
  auto h = two_axis_pt();
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> coord(-8.0, 8.0);
  for (const auto& term : h.terms) {
    for (int rep = 0; rep < 100; ++rep) {
      Eigen::VectorXd x = vec2(coord(rng), coord(rng));
      // Random element of Y from its rational basis.
      Eigen::VectorXd y = Eigen::VectorXd::Zero(2);
      for (const auto& row : term.subspace().basis()) {
        const double c = coord(rng);
        for (int j = 0; j < 2; ++j) y[j] += c * to_double(row[j]);
      }
      REQUIRE(std::abs(term.evaluate(x + y) - term.evaluate(x)) <= 1e-10);
    }
  }
}

TEST_CASE("uniform radial limits over sampled directions") {
  std::vector<AsymptoticFunction> families{
      AsymptoticFunction::gaussian_well(2, 3.0, 1.5),
      AsymptoticFunction::regularized_coulomb(2, 2.0),
      AsymptoticFunction::angular_profile(2, 1.0, vec2(0.5, -1.0)),
      AsymptoticFunction::constant(2, 4.0),
  };
  for (const auto& f : families) {
    double prev = std::numeric_limits<double>::infinity();
    for (double r : {1e2, 1e3, 1e4}) {
      double worst = 0;
      for (int k = 0; k < 64; ++k) {
        const double th = 2.0 * M_PI * k / 64;
        Eigen::VectorXd omega = vec2(std::cos(th), std::sin(th));
        worst = std::max(worst, std::abs(f.value(r * omega) - f.radial_limit(omega)));
      }
      REQUIRE(worst <= prev + 1e-15);
      prev = worst;
      if (r == 1e4) REQUIRE(worst <= 1e-2);
    }
  }
}

TEST_CASE("sum and product evaluate factorwise") {
  auto g = AsymptoticFunction::gaussian_well(2, 1.0, 1.0);
  auto c = AsymptoticFunction::regularized_coulomb(2, 3.0);
  auto s = AsymptoticFunction::sum({g, c});
  auto p = AsymptoticFunction::product({g, c});
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> coord(-4.0, 4.0);
  for (int rep = 0; rep < 100; ++rep) {
    Eigen::VectorXd x = vec2(coord(rng), coord(rng));
    REQUIRE(s.value(x) == Approx(g.value(x) + c.value(x)).margin(1e-12));
    REQUIRE(p.value(x) == Approx(g.value(x) * c.value(x)).margin(1e-12));
  }
  REQUIRE(s.vanishes_at_infinity());
  REQUIRE(p.vanishes_at_infinity());
  REQUIRE(AsymptoticFunction::sum({g, AsymptoticFunction::constant(2, 1.0)})
              .vanishes_at_infinity() == false);
}

TEST_CASE("free Hamiltonian probe vanishes identically") {
  Hamiltonian free{2, {}};
  for (double r : {10.0, 100.0}) {
    REQUIRE(translation_conjugation_probe(free, DirectionQ::from_int({1, 1}, 2), r, 5.0) == 0.0);
  }
}

TEST_CASE("probe matches the direct tail bound for the Coulomb term") {
  Hamiltonian h{1, {PotentialTerm(SubspaceQ::zero(1),
                                  AsymptoticFunction::regularized_coulomb(1, 1.0))}};
  auto plus = DirectionQ::from_int({1}, 1);
  // Worst sampled point is x = -5; the limit operator is free with shift 0.
  const double direct = 1.0 / std::sqrt(1.0 + 995.0 * 995.0);
  const double probe = translation_conjugation_probe(h, plus, 1e3, 5.0, 11);
  REQUIRE(probe == Approx(direct).epsilon(1e-12));

  double prev = std::numeric_limits<double>::infinity();
  for (double r : {10.0, 100.0, 1000.0}) {
    const double p = translation_conjugation_probe(h, plus, r, 5.0, 11);
    REQUIRE(p < prev);
    prev = p;
  }
  REQUIRE(prev < 1e-2);
}

TEST_CASE("probe on the two-axis example is negligible at r=100") {
  auto h = two_axis_pt();
  const double p = translation_conjugation_probe(h, DirectionQ::from_int({1, 0}, 2), 100.0, 5.0);
  REQUIRE(p < 1e-50);
}
