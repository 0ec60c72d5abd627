#include "doctest.h"

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "visbench/errors.hpp"
#include "visbench/measures.hpp"

using namespace visbench;

namespace {

constexpr double kExact = 1e-12;

}  // namespace

TEST_CASE("entropy of known distributions") {
  CHECK(entropy(Pmf({1.0 / 3, 1.0 / 3, 1.0 / 3})) == doctest::Approx(1.584963).epsilon(1e-6));
  CHECK(entropy(Pmf({0.9, 0.05, 0.05})) == doctest::Approx(0.568996).epsilon(1e-5));
  CHECK(entropy(one_hot(5, 2)) == 0.0);
  CHECK(max_entropy(256) == 8.0);
  CHECK_THROWS_AS(max_entropy(0), validation_error);
}

TEST_CASE("kl conventions") {
  const Pmf p({0.998, 0.001, 0.001});
  CHECK(kl(p, Pmf({1.0 / 3, 1.0 / 3, 1.0 / 3})) == doctest::Approx(1.562).epsilon(1e-3));
  CHECK(std::isinf(kl(Pmf({0.5, 0.5}), Pmf({1.0, 0.0}))));
  CHECK(kl(Pmf({1.0, 0.0}), Pmf({0.5, 0.5})) == doctest::Approx(1.0));
  const auto d = kl_terms(Pmf({0.5, 0.5}), Pmf({1.0, 0.0}));
  CHECK_FALSE(d.finite());
  CHECK(d.per_letter.empty());
  CHECK(std::isinf(cross_entropy(Pmf({0.5, 0.5}), Pmf({1.0, 0.0}))));
  CHECK(cross_entropy(p, p) == doctest::Approx(entropy(p)));
}

TEST_CASE("kl grows without bound as the reference letter vanishes") {
  const Pmf p({0.998, 0.001, 0.001});
  auto qw = [](double e) { return Pmf({e, 1 - 2 * e, e}); };
  const double k3 = kl(p, qw(1e-3));
  const double k6 = kl(p, qw(1e-6));
  CHECK(k3 > 9.0);
  CHECK(k6 > k3);
  CHECK(kl(p, qw(1e-12)) > k6);
}

TEST_CASE("divergence spec spelling") {
  CHECK(DivergenceSpec::parse("kl@0.3") == DivergenceSpec{Family::kl, 1, 0.3});
  CHECK(DivergenceSpec::parse("new:2").label() == "new:2");
  CHECK(DivergenceSpec::parse("ncm:1.5@2").label() == "ncm:1.5@2");
  CHECK(DivergenceSpec::parse("mink:200").family == Family::minkowski);
  CHECK(DivergenceSpec::parse("js").bounded());
  CHECK_FALSE(DivergenceSpec::parse("kl").bounded());
  for (const char* bad : {"", "foo", "js:2", "new", "new:0", "new:-1", "mink:0.5", "kl@0", "kl@x", "new:abc"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(DivergenceSpec::parse(bad), validation_error);
  }
}

TEST_CASE("scale multiplies totals and per-letter terms") {
  const Pmf p({0.7, 0.3});
  const Pmf q({0.2, 0.8});
  const auto base = divergence(DivergenceSpec::parse("new:2"), p, q);
  const auto scaled = divergence(DivergenceSpec::parse("new:2@0.5"), p, q);
  CHECK(scaled.total == doctest::Approx(base.total * 0.5));
  CHECK(scaled.per_letter[1] == doctest::Approx(base.per_letter[1] * 0.5));
  CHECK(divergence(DivergenceSpec::parse("kl@0.3"), p, q).total == doctest::Approx(0.3 * kl(p, q)));
}

TEST_CASE("ncm is not commutative") {
  const Pmf p({1.0, 0.0, 0.0});
  const Pmf q({0.5, 0.25, 0.25});
  CHECK(d_ncm(p, q, 1).total == doctest::Approx(oracle::lg(1.5)));
  CHECK(d_ncm(q, p, 1).total == doctest::Approx(0.5 * oracle::lg(1.5) + 0.5 * oracle::lg(1.25)));
  CHECK(d_new(p, q, 1).total == doctest::Approx(d_new(q, p, 1).total));
  // With two letters |p - q| is shared, so both orders agree.
  CHECK(d_ncm(Pmf({0.9, 0.1}), Pmf({0.3, 0.7}), 1).total ==
        doctest::Approx(d_ncm(Pmf({0.3, 0.7}), Pmf({0.9, 0.1}), 1).total));
}

TEST_CASE("minkowski") {
  const Pmf p({1.0, 0.0, 0.0});
  const Pmf q({0.0, 1.0, 0.0});
  CHECK(minkowski(p, q, 1) == doctest::Approx(2.0));
  CHECK(minkowski(p, q, 2) == doctest::Approx(std::sqrt(2.0)));
  CHECK(minkowski(p, q, 200) == doctest::Approx(std::pow(2.0, 1.0 / 200)));
  const auto d = divergence(DivergenceSpec::parse("mink:2"), p, q);
  CHECK(d.per_letter[0] + d.per_letter[1] + d.per_letter[2] == doctest::Approx(d.total));
  CHECK(minkowski(p, p, 3) == 0.0);
}

TEST_CASE("brute-force oracle agreement on every grid pmf up to four letters") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto grid = oracle::grid_pmfs(n);
    for (const auto& pv : grid) {
      const Pmf p(pv);
      CHECK(std::abs(entropy(p) - oracle::entropy(pv)) <= kExact);
      for (const auto& qv : grid) {
        const Pmf q(qv);
        const double o_kl = oracle::kl(pv, qv);
        const double l_kl = kl(p, q);
        if (std::isinf(o_kl)) {
          REQUIRE(std::isinf(l_kl));
        } else {
          REQUIRE(std::abs(l_kl - o_kl) <= kExact);
        }
        REQUIRE(std::abs(js(p, q).total - oracle::js(pv, qv)) <= kExact);
        for (double k : {1.0, 2.0}) {
          REQUIRE(std::abs(d_new(p, q, k).total - oracle::dnew(pv, qv, k)) <= kExact);
          REQUIRE(std::abs(d_ncm(p, q, k).total - oracle::dncm(pv, qv, k)) <= kExact);
        }
        REQUIRE(std::abs(minkowski(p, q, 2) - oracle::minkowski(pv, qv, 2)) <= kExact);
      }
    }
  }
}

TEST_CASE("bounded measures on random simplex pairs") {
  std::mt19937_64 rng(20201103);
  std::uniform_int_distribution<std::size_t> size(2, 64);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = size(rng);
    const auto pv = oracle::simplex(rng, n);
    const auto qv = oracle::simplex(rng, n);
    const Pmf p(pv);
    const Pmf q(qv);
    const double j = js(p, q).total;
    const double n1 = d_new(p, q, 1).total;
    const double n2 = d_new(p, q, 2).total;
    const double c1 = d_ncm(p, q, 1).total;
    const double c2 = d_ncm(p, q, 2).total;
    for (double v : {j, n1, n2, c1, c2}) {
      REQUIRE(v >= 0.0);
      REQUIRE(v <= 1.0 + 1e-12);
    }
    REQUIRE(j == doctest::Approx(js(q, p).total).epsilon(1e-12));
    REQUIRE(n1 == doctest::Approx(d_new(q, p, 1).total).epsilon(1e-12));
    REQUIRE(n2 <= n1 + 1e-15);
    REQUIRE(c2 <= c1 + 1e-15);
  }
}

TEST_CASE("identity gives zero and decompositions add up") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + trial % 30;
    const Pmf p(oracle::simplex(rng, n));
    const Pmf q(oracle::simplex(rng, n));
    for (const auto& spec : candidate_measures()) {
      REQUIRE(divergence(spec, p, p).total == doctest::Approx(0.0));
      const auto d = divergence(spec, p, q);
      double sum = 0;
      for (double t : d.per_letter) sum += t;
      REQUIRE(sum == doctest::Approx(d.total).epsilon(1e-12));
    }
    REQUIRE(kl(p, p) == doctest::Approx(0.0));
    for (double k : {1.0, 1.5, 2.0, 3.0, 8.0}) {
      REQUIRE(d_new(p, q, k + 0.5).total <= d_new(p, q, k).total + 1e-15);
    }
  }
}

TEST_CASE("candidate measures") {
  const auto m = candidate_measures();
  REQUIRE(m.size() == 5);
  CHECK(m[0].label() == "js");
  CHECK(m[2].label() == "new:2");
  CHECK(m[4].label() == "ncm:2");
}

TEST_CASE("alphabet mismatch is rejected") {
  CHECK_THROWS_AS(js(Pmf({1.0}), Pmf({0.5, 0.5})), validation_error);
  CHECK_THROWS_AS(kl(Pmf({1.0}), Pmf({0.5, 0.5})), validation_error);
}
