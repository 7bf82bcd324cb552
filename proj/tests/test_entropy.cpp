#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "catent/entropy.hpp"
#include "catent/tubular_lift.hpp"

using namespace catent;

namespace {

const Rat kTol = Rat(1, 1000000000);
const double kLogGolden2 = std::log((3.0 + std::sqrt(5.0)) / 2.0);

}  // namespace

TEST_CASE("word to endomorphism basics", "[entropy]") {
  const WeightData w = make_weight_data({2, 3, 5});
  const std::size_t mu = kclass_rank(w);
  CHECK(word_to_endo(w, {}).matrix == IntMatrix::identity(mu));
  CHECK(word_to_endo(w, {Generator::shift(), Generator::shift()}).matrix ==
        IntMatrix::identity(mu));
  CHECK(word_to_endo(w, {Generator::shift(2)}).matrix == IntMatrix::identity(mu));
  CHECK(word_to_endo(w, {Generator::shift(-1)}).matrix ==
        -1 * IntMatrix::identity(mu));
  const LElement x = l_unit(w, 1);
  CHECK(word_to_endo(w, {Generator::twist(x), Generator::twist(l_neg(w, x))}).matrix ==
        IntMatrix::identity(mu));
  // Composition order: the matrix of the word is the left-to-right product.
  const IntMatrix expect = twist_matrix_raw(w, x) * serre_matrix_raw(w);
  CHECK(word_to_endo(w, {Generator::twist(x), Generator::serre()}).matrix == expect);

  // Serre letters square to twists by omega (shift parity cancels the sign).
  CHECK(word_to_endo(w, {Generator::serre(), Generator::serre()}).matrix ==
        twist_matrix_raw(w, l_scale(w, 2, omega(w))));
}

TEST_CASE("generic letters are validated", "[entropy]") {
  const WeightData w = make_weight_data({2, 3, 5});
  const std::size_t mu = kclass_rank(w);
  try {
    word_to_endo(w, {Generator::generic(IntMatrix::identity(3))});
    FAIL("expected a generator error");
  } catch (const error& e) {
    CHECK(e.kind() == errc::generator);
  }
  try {
    word_to_endo(w, {Generator::generic(2 * IntMatrix::identity(mu))});
    FAIL("expected a generator error");
  } catch (const error& e) {
    CHECK(e.kind() == errc::generator);
  }
  // A valid isometry passes through unchanged.
  CHECK(word_to_endo(w, {Generator::generic(serre_matrix_raw(w))}).matrix ==
        serre_matrix_raw(w));
}

TEST_CASE("dynkin words reject weighted-line letters", "[entropy]") {
  const DynkinType d = dynkin('A', 3);
  const WeightData w = make_weight_data({2, 3, 5});
  try {
    word_to_endo(d, {Generator::twist(l_c(w))});
    FAIL("expected an input error");
  } catch (const error& e) {
    CHECK(e.kind() == errc::input);
  }
  CHECK(word_to_endo(d, {Generator::serre()}).matrix == serre_matrix(d));
  CHECK(word_to_endo(d, {Generator::shift()}).matrix == -1 * IntMatrix::identity(3));
}

TEST_CASE("entropy vanishes for standard words when chi is nonzero", "[entropy]") {
  {
    const WeightData w = make_weight_data({2, 3, 5});
    const EntropyReport r = entropy(
        w, {Generator::twist(l_unit(w, 2)), Generator::serre(), Generator::shift()}, kTol);
    CHECK(r.method == "chi-positive");
    CHECK(r.h0 == 0.0);
    CHECK(r.rho.lower == 1);
    CHECK(r.rho.upper == 1);
    CHECK(!r.phi.has_value());
  }
  {
    const WeightData w = make_weight_data({2, 3, 7});
    const EntropyReport r =
        entropy(w, {Generator::serre(), Generator::twist(l_c(w))}, kTol);
    CHECK(r.method == "chi-negative");
    CHECK(r.h0 == 0.0);
    CHECK(r.rho.lower == 1);
    CHECK(r.rho.upper == 1);
  }
  // Random standard words on a wild weight type stay quasi-unipotent.
  const WeightData w = make_weight_data({2, 2, 2, 3});
  std::mt19937 rng(3301);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Generator> word;
    const int len = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < len; ++i) {
      switch (rng() % 3) {
        case 0: word.push_back(Generator::shift(static_cast<long long>(rng() % 3) - 1)); break;
        case 1: {
          std::vector<long long> p(w.branch_count());
          for (auto& c : p) c = static_cast<long long>(rng() % 5) - 2;
          word.push_back(Generator::twist(l_element(w, static_cast<long long>(rng() % 3) - 1, p)));
          break;
        }
        default: word.push_back(Generator::serre());
      }
    }
    const EntropyReport r = entropy(w, word, kTol);
    CHECK(r.h0 == 0.0);
    CHECK(r.rho.lower == 1);
    CHECK(r.rho.upper == 1);
  }
}

TEST_CASE("tubular entropy through the SL2 shadow", "[entropy]") {
  const WeightData w = make_weight_data({2, 2, 2, 2});
  const IntMatrix l = tubular_l_lift(w).matrix;
  const IntMatrix u = tubular_u_lift(w).matrix;

  const EntropyReport r =
      entropy(w, {Generator::generic(l), Generator::generic(u)}, kTol);
  CHECK(r.method == "tubular-phi");
  REQUIRE(r.phi.has_value());
  CHECK(*r.phi == SL2Matrix{1, 1, 1, 2});
  REQUIRE(r.phi_radius.has_value());
  CHECK(r.phi_radius->trace == 3);
  CHECK(r.phi_radius->disc == 5);
  CHECK(r.h0 == Catch::Approx(kLogGolden2).epsilon(1e-14));
  CHECK(r.characteristic.size() == 7);
  CHECK(r.characteristic[0] == 1);

  // Quasi-unipotent tubular words report zero entropy and radius exactly 1.
  const EntropyReport flat = entropy(w, {Generator::twist(l_unit(w, 0))}, kTol);
  CHECK(flat.method == "tubular-phi");
  CHECK(flat.h0 == 0.0);
  CHECK(flat.rho.lower == 1);
  CHECK(flat.rho.upper == 1);
  REQUIRE(flat.phi.has_value());
  CHECK(classify(*flat.phi) == SL2Class::parabolic);
  CHECK(!flat.phi_radius.has_value());

  // Serre words are elliptic in the shadow: entropy zero.
  const EntropyReport ser = entropy(w, {Generator::serre()}, kTol);
  CHECK(ser.h0 == 0.0);
  CHECK(classify(*ser.phi) == SL2Class::elliptic);
}

TEST_CASE("entropy is additive under squaring and conjugation-invariant", "[entropy]") {
  const WeightData w = make_weight_data({3, 3, 3});
  const EulerLattice lat = euler_gram(w);
  const IntMatrix l = tubular_l_lift(w).matrix;
  const IntMatrix u = tubular_u_lift(w).matrix;
  const IntMatrix s = tubular_s_lift(w).matrix;
  const IntMatrix f = l * u;

  const double h1 = entropy(w, LatticeEndo(lat, f), kTol).h0;
  const double h2 = entropy(w, LatticeEndo(lat, f * f), kTol).h0;
  CHECK(h1 == Catch::Approx(kLogGolden2).epsilon(1e-14));
  CHECK(h2 == Catch::Approx(2 * h1).epsilon(1e-13));
  // tr(phi^2) = tr(phi)^2 - 2 = 7 for the squared word.
  CHECK(entropy(w, LatticeEndo(lat, f * f), kTol).phi_radius->trace == 7);

  const IntMatrix conj = s * f * unimodular_inverse(s);
  CHECK(entropy(w, LatticeEndo(lat, conj), kTol).h0 == Catch::Approx(h1).epsilon(1e-14));
}

TEST_CASE("entropy on dynkin lattices is zero", "[entropy]") {
  for (char family : {'A', 'D', 'E'}) {
    const DynkinType d = dynkin(family, family == 'A' ? 4 : family == 'D' ? 5 : 6);
    const EntropyReport r = entropy(d, {Generator::serre(), Generator::shift(3)}, kTol);
    CHECK(r.method == "hereditary-spectral");
    CHECK(r.h0 == 0.0);
    CHECK(r.rho.lower == 1);
    CHECK(r.rho.upper == 1);
  }
}

TEST_CASE("non-isometries are rejected as generators", "[entropy]") {
  const WeightData w = make_weight_data({2, 2, 2, 2});
  const EulerLattice lat = euler_gram(w);
  try {
    entropy(w, LatticeEndo(lat, 3 * IntMatrix::identity(lat.rank())), kTol);
    FAIL("expected a generator error");
  } catch (const error& e) {
    CHECK(e.kind() == errc::generator);
  }
}

TEST_CASE("object-level sums and delta-prime", "[entropy]") {
  const DynkinType d = dynkin('A', 2);
  const DerivedSum g = projective_generator(d);
  REQUIRE(g.size() == 2);
  CHECK(delta_prime_total(g) == 3);
  CHECK(delta_prime(g, 0.0) == Catch::Approx(3.0));
  CHECK(delta_prime(g, 2.5) == Catch::Approx(3.0));  // all shifts zero

  const DerivedSum shifted{{Root{1, 1}, 2}};
  CHECK(delta_prime_total(shifted) == 2);
  CHECK(delta_prime(shifted, 1.0) == Catch::Approx(2.0 * std::exp(2.0)));
  CHECK(delta_prime(shifted, -1.0) == Catch::Approx(2.0 * std::exp(-2.0)));

  // Serre sends projectives to injectives without a shift.
  const DerivedSum once = apply_letter(d, Generator::serre(), g);
  DerivedSum expect;
  for (const Root& r : injective_dims(d)) expect.emplace_back(r, 0);
  std::sort(expect.begin(), expect.end());
  CHECK(once == expect);

  const DerivedSum up = apply_letter(d, Generator::shift(3), g);
  for (const auto& [root, shift] : up) CHECK(shift == 3);

  CHECK_THROWS_AS(apply_letter(d, Generator::generic(IntMatrix::identity(2)), g), error);
}

TEST_CASE("estimator finds exact cycles and slopes", "[entropy]") {
  struct Case {
    DynkinType d;
    int period;
    Rat slope;
  };
  const std::vector<Case> cases{{dynkin('A', 2), 3, Rat(1, 3)},
                                {dynkin('A', 3), 4, Rat(1, 2)},
                                {dynkin('D', 4), 3, Rat(2, 3)}};
  for (const Case& c : cases) {
    const EntropyEstimate est = estimate_entropy(c.d, {Generator::serre()}, 40);
    INFO(c.d.name());
    CHECK(est.cycle_found);
    CHECK(est.period == c.period);
    CHECK(est.slope == c.slope);
    CHECK(est.totals.size() == 40);
    // t = 0 series decays like (log total)/n: totals stay bounded on a cycle.
    CHECK(est.s.back() >= 0.0);
    CHECK(est.s.back() <= est.s.front());
  }

  // Pure shift words drift by their step each application.
  const EntropyEstimate sh = estimate_entropy(dynkin('A', 2), {Generator::shift(-2)}, 10);
  CHECK(sh.cycle_found);
  CHECK(sh.period == 1);
  CHECK(sh.slope == Rat(-2));

  // Composite word: serre then shift(1) adds 1 to the serre drift.
  const EntropyEstimate mix =
      estimate_entropy(dynkin('A', 2), {Generator::serre(), Generator::shift()}, 30);
  CHECK(mix.cycle_found);
  CHECK(mix.slope == Rat(1, 3) + 1);

  CHECK_THROWS_AS(estimate_entropy(dynkin('A', 2), {}, 10), error);
  CHECK_THROWS_AS(estimate_entropy(dynkin('A', 2), {Generator::serre()}, 0), error);
}

TEST_CASE("estimates at chosen t values track slope times t", "[entropy]") {
  const DynkinType d = dynkin('A', 3);
  const int n = 80;
  const EntropyEstimate est =
      estimate_entropy(d, {Generator::serre()}, {0.0, 0.5, 1.0, 2.0}, n);
  REQUIRE(est.estimates.size() == 4);
  REQUIRE(est.cycle_found);
  const double slope = rat_to_double(est.slope);
  // s_n(t) = slope * t + O(log(dim)/n): the constant is below log(16).
  for (std::size_t k = 0; k < est.t_values.size(); ++k)
    CHECK(std::abs(est.estimates[k] - slope * est.t_values[k]) <= std::log(16.0) / n);
  // Exactness at t = 0 comes from the total dimension count alone.
  CHECK(est.estimates[0] == est.s.back());
}

TEST_CASE("growth-curve diagnostics", "[entropy]") {
  // Frozen benchmark: gram [[1,1],[-1,0]] with the trace-3 matrix has exact
  // entry sums F(2n+4), approaching log((3+sqrt5)/2) from above like 1.12/n.
  const LatticeEndo endo(EulerLattice(IntMatrix{{1, 1}, {-1, 0}}),
                         IntMatrix{{2, 1}, {1, 1}});
  const GrowthCurve curve = gy_growth_curve(endo, 200);
  const GyConsistency gy = gy_consistency(curve, kLogGolden2, 1e-6);
  CHECK(!gy.degenerate);
  CHECK(gy.s_final > kLogGolden2);          // approach is from above
  CHECK(!gy.upper_bounded);                 // hence never below log rho + eps
  CHECK(gy.monotone_tail);                  // but the deviation is monotone
  CHECK(gy.final_dev == Catch::Approx(0.0056).margin(6e-4));
  CHECK(gy.max_dev_tail < 4.0 / 150.0);
  // The consecutive-ratio estimate converges much faster than s_n itself.
  CHECK(std::abs(gy.ratio_estimate - kLogGolden2) < 1e-9);

  GrowthCurve empty;
  empty.degenerate = true;
  CHECK(gy_consistency(empty, 0.0, 1e-6).degenerate);

  // Wrapper over a weighted word: the tubular LU word against its own h0.
  const WeightData w = make_weight_data({2, 4, 4});
  const std::vector<Generator> word{Generator::generic(tubular_l_lift(w).matrix),
                                    Generator::generic(tubular_u_lift(w).matrix)};
  const GyConsistency t = gy_consistency(w, word, 100, kTol);
  CHECK(t.log_rho == Catch::Approx(kLogGolden2).epsilon(1e-14));
  CHECK(!t.degenerate);
  CHECK(t.final_dev < 4.0 / 100.0);
  CHECK(t.monotone_tail);
  CHECK(std::abs(t.ratio_estimate - t.log_rho) < 1e-6);

  // Dynkin wrapper: everything is bounded, reference entropy is zero.
  const GyConsistency dz = gy_consistency(dynkin('A', 2), {Generator::serre()}, 60, kTol);
  CHECK(dz.log_rho == 0.0);
  CHECK(!dz.degenerate);
  CHECK(dz.s_final < 0.05);
}
