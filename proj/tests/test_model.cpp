#include <doctest.h>

#include <cmath>
#include <limits>

#include "revolt/errors.hpp"
#include "revolt/model.hpp"
#include "support.hpp"

using namespace revolt;

TEST_CASE("rate parameters validate positivity and finiteness") {
  CHECK_NOTHROW(RateParams(1, 2, 3, 4));
  CHECK_THROWS_AS(RateParams(0, 1, 1, 1), PreconditionError);
  CHECK_THROWS_AS(RateParams(1, -1, 1, 1), PreconditionError);
  CHECK_THROWS_AS(RateParams(1, 1, std::nan(""), 1), PreconditionError);
  CHECK_THROWS_AS(RateParams(1, 1, 1, std::numeric_limits<double>::infinity()), PreconditionError);
  CHECK_THROWS_AS(RateParams(1e300, 1, 1e-300, 1), PreconditionError);
}

TEST_CASE("LSERs and dominance") {
  const RateParams r(3, 2, 1.5, 0.5);
  CHECK(r.supporter_lser() == doctest::Approx(2.0));
  CHECK(r.contrarian_lser() == doctest::Approx(4.0));
  CHECK(r.dominant());
  CHECK_FALSE(RateParams(1, 2, 1, 1).dominant());  // f_S == h_C
  CHECK_FALSE(RateParams(2, 1, 1, 1).dominant());  // f_C == h_S
}

TEST_CASE("LSER realization is dominant exactly when r_S r_C > 1") {
  testing::Draws draws(7);
  for (int k = 0; k < 2000; ++k) {
    const double rs = draws.log_uniform(0.05, 20), rc = draws.log_uniform(0.05, 20);
    const double scale = draws.log_uniform(0.1, 10);
    const RateParams r = RateParams::from_lsers(rs, rc, scale);
    CHECK(r.supporter_lser() == doctest::Approx(rs).epsilon(1e-12));
    CHECK(r.contrarian_lser() == doctest::Approx(rc).epsilon(1e-12));
    CHECK(r.contrarian_subjugation() == scale);
    if (std::abs(rs * rc - 1.0) > 1e-9) CHECK(r.dominant() == (rs * rc > 1.0));
  }
}

TEST_CASE("uniform scaling keeps the LSERs") {
  const RateParams r(2.5, 1.5, 0.7, 0.9);
  const RateParams s = r.scaled(3.0);
  CHECK(s.supporter_liberation() == doctest::Approx(7.5));
  CHECK(s.supporter_lser() == doctest::Approx(r.supporter_lser()));
  CHECK(s.contrarian_lser() == doctest::Approx(r.contrarian_lser()));
  CHECK_THROWS_AS(r.scaled(0.0), PreconditionError);
}

TEST_CASE("population split range") {
  CHECK(PopulationSplit(0.4).contrarians() == doctest::Approx(0.6));
  CHECK_NOTHROW(PopulationSplit(0.0));
  CHECK_NOTHROW(PopulationSplit(1.0));
  CHECK_THROWS_AS(PopulationSplit(1.4), PreconditionError);
  CHECK_THROWS_AS(PopulationSplit(-0.1), PreconditionError);
  CHECK_THROWS_AS(PopulationSplit(std::nan("")), PreconditionError);
}

TEST_CASE("basic state invariants") {
  const BasicState st(0.1, 0.3, 0.4, 0.2);
  CHECK(st.supporters() == doctest::Approx(0.4));
  CHECK(st.blue_controlled() == doctest::Approx(0.3));
  CHECK(st.red_controlled() == doctest::Approx(0.7));
  CHECK(st.consistent_with(PopulationSplit(0.4)));
  CHECK_FALSE(st.consistent_with(PopulationSplit(0.5)));
  CHECK_THROWS_AS(BasicState(0.1, 0.3, 0.4, 0.3), PreconditionError);
  CHECK_THROWS_AS(BasicState(-0.1, 0.5, 0.4, 0.2), PreconditionError);
  CHECK_THROWS_AS(BasicState(1.1, -0.1, 0.0, 0.0), PreconditionError);

  const BasicState r = BasicState::from_reduced({0.1, 0.4}, PopulationSplit(0.4));
  CHECK(r.sr() == doctest::Approx(0.3));
  CHECK(r.cb() == doctest::Approx(0.2));
  CHECK(r.reduced() == ReducedState{0.1, 0.4});
  CHECK_THROWS_AS(BasicState::from_reduced({0.5, 0.1}, PopulationSplit(0.4)), PreconditionError);

  const BasicState o = BasicState::from_opportunistic({0.2, 0.3, 0.5});
  CHECK(o.sr() == doctest::Approx(0.3));
  CHECK(o.cb() == doctest::Approx(0.2));

  const BasicState n = BasicState::renormalized(1, 1, 1, 1);
  CHECK(n.sb() == doctest::Approx(0.25));
  CHECK_THROWS_AS(BasicState::renormalized(0, 0, 0, 0), PreconditionError);
  CHECK_THROWS_AS(BasicState::renormalized(-1, 1, 1, 1), PreconditionError);
}

TEST_CASE("intervention parameters") {
  const RateParams r(2, 3, 1, 0.5);
  const DirectIntervention d(0.4, 0.1);
  CHECK(d.supporter_offset(r) == doctest::Approx(0.2));
  CHECK(d.contrarian_offset(r) == doctest::Approx(0.2));
  CHECK(d.active());
  CHECK_FALSE(DirectIntervention(0, 0).active());
  CHECK_THROWS_AS(DirectIntervention(-0.1, 0), PreconditionError);
  CHECK_THROWS_AS(IndirectIntervention(0.9, 1), PreconditionError);
  CHECK_THROWS_AS(OpportunisticParams(0.0), PreconditionError);

  const RateParams m = apply_indirect(r, IndirectIntervention(2, 3));
  CHECK(m.supporter_liberation() == doctest::Approx(4));
  CHECK(m.contrarian_subjugation() == doctest::Approx(1.5));
  CHECK(m.contrarian_liberation() == r.contrarian_liberation());
  CHECK(m.supporter_subjugation() == r.supporter_subjugation());
}

TEST_CASE("state checks name the violated bound") {
  const PopulationSplit split(0.4);
  CHECK_NOTHROW(check_state(ReducedState{0.2, 0.3}, split));
  CHECK_THROWS_AS(check_state(ReducedState{0.5, 0.3}, split), PreconditionError);
  CHECK_THROWS_AS(check_state(ReducedState{0.2, 0.7}, split), PreconditionError);
  CHECK_THROWS_AS(check_state(ReducedState{-1e-3, 0.3}, split), PreconditionError);
  CHECK_NOTHROW(check_state(OpportunisticState{0.2, 0.3, 0.5}));
  CHECK_THROWS_AS(check_state(OpportunisticState{0.6, 0.3, 0.5}), PreconditionError);
  CHECK_THROWS_AS(check_state(OpportunisticState{0.2, 0.3, 1.5}), PreconditionError);
}

TEST_CASE("four-variable and reduced right-hand sides agree and conserve mass") {
  testing::Draws draws(11);
  for (int k = 0; k < 500; ++k) {
    const RateParams r = draws.dominant_rates();
    const double s = draws.uniform(0.01, 0.99);
    const double sb = draws.uniform(0, s), cr = draws.uniform(0, 1 - s);
    const BasicState st = BasicState::from_reduced({sb, cr}, PopulationSplit(s));
    const BasicRate full = rhs_full_basic(st, r);
    const ReducedRate red = rhs_basic({sb, cr}, PopulationSplit(s), r);
    const double scale = 1.0 + std::abs(full.sb) + std::abs(full.cr);
    CHECK(std::abs(full.sb + full.sr + full.cr + full.cb) <= 1e-14 * scale);
    CHECK(std::abs(full.sb + full.sr) <= 1e-14 * scale);
    CHECK(full.sb == doctest::Approx(red.sb).epsilon(1e-12));
    CHECK(full.cr == doctest::Approx(red.cr).epsilon(1e-12));

    // Written out term by term from the engagement rates.
    const double fs = r.supporter_liberation(), fc = r.contrarian_liberation();
    const double hs = r.supporter_subjugation(), hc = r.contrarian_subjugation();
    const double sr = s - sb, cb = 1 - s - cr;
    CHECK(full.sb == doctest::Approx(fs * sb * sr - hs * cr * sb).epsilon(1e-12));
    CHECK(full.cb == doctest::Approx(hc * sb * cr - fc * cr * cb).epsilon(1e-12));
  }
}

TEST_CASE("direct intervention without power reduces to the basic model") {
  testing::Draws draws(13);
  for (int k = 0; k < 200; ++k) {
    const RateParams r = draws.dominant_rates();
    const double s = draws.uniform(0.01, 0.99);
    const ReducedState st{draws.uniform(0, s), draws.uniform(0, 1 - s)};
    const auto a = rhs_basic(st, PopulationSplit(s), r);
    const auto b = rhs_direct(st, PopulationSplit(s), r, DirectIntervention(0, 0));
    CHECK(a.sb == b.sb);
    CHECK(a.cr == b.cr);
  }
}

TEST_CASE("direct intervention adds foreign power on Blue's side") {
  const RateParams r(2, 3, 1, 0.5);
  const PopulationSplit split(0.4);
  const ReducedState st{0.1, 0.3};
  const auto base = rhs_direct(st, split, r, DirectIntervention(0, 0));
  const auto with = rhs_direct(st, split, r, DirectIntervention(0.4, 0.2));
  // lambda_S (S - SB) more liberation, lambda_C CR more subjugation of Red.
  CHECK(with.sb - base.sb == doctest::Approx(0.4 * (0.4 - 0.1)));
  CHECK(with.cr - base.cr == doctest::Approx(-0.2 * 0.3));
}

TEST_CASE("opportunistic switching simplifies to alpha (SB - CR + 1 - 2S)") {
  testing::Draws draws(17);
  for (int k = 0; k < 300; ++k) {
    const RateParams r = draws.dominant_rates();
    const double alpha = draws.log_uniform(0.01, 10);
    const double s = draws.uniform(0, 1);
    const OpportunisticState st{draws.uniform(0, s), draws.uniform(0, 1 - s), s};
    const auto d = rhs_opportunistic(st, r, OpportunisticParams(alpha));
    CHECK(d.s == doctest::Approx(alpha * (st.sb - st.cr + 1 - 2 * s)).epsilon(1e-12));
    const auto fixed = rhs_basic({st.sb, st.cr}, PopulationSplit(s), r);
    CHECK(d.sb == fixed.sb);
    CHECK(d.cr == fixed.cr);
  }
}
