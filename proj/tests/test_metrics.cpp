// SPDX-License-Identifier: Apache-2.0
//
// irsrobust: robust beamforming and quasi-static IRS phase-shift design
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <catch_amalgamated.hpp>

#include "irsrobust/evaluate.hpp"
#include "irsrobust/metrics.hpp"
#include "support.hpp"

#include <cmath>
#include <stdexcept>

using namespace irs;

TEST_CASE("metrics - interference statistic closed forms")
{
    SystemConfig c = test::toy_config(2, 2, 1, 0.0);
    const ChannelStatistics s = build_statistics(c);
    Rng rng(1);
    const CVector v = test::random_phases(rng, 4);
    // No LoS: only the scattered and direct terms remain.
    const double expect = c.bs[1].to_irs.resolve() * c.irs.to_user.resolve() * 4.0 + c.bs[1].direct.resolve();
    CHECK(interference_stat(v, s, 1) == Catch::Approx(expect).epsilon(1e-12));

    c.bs[1].to_irs.alpha = 0.0;
    c.bs[1].direct.alpha = 0.0;
    c.irs.to_user.alpha = 0.0;
    CHECK(interference_stat(v, build_statistics(c), 1) == 0.0);

    CHECK_THROWS_AS(interference_stat(v, s, 0), std::domain_error);
    CHECK_THROWS_AS(interference_stat(v, s, 2), std::domain_error);
}

TEST_CASE("metrics - interference statistic against brute force")
{
    const SystemConfig c = test::toy_config(2, 2, 1, 1.5);
    const ChannelStatistics s = build_statistics(c);
    Rng rng(17);
    const CVector v = test::random_phases(rng, 4);
    const std::vector<double> brute = oracle_interference(v, c, s, 1000000, rng);
    CHECK(test::rel_err(brute[1], interference_stat(v, s, 1)) < 0.01);
}

TEST_CASE("metrics - interference is invariant to a global phase")
{
    const SystemConfig c = test::toy_config(2, 3, 2, 2.0);
    const ChannelStatistics s = build_statistics(c);
    Rng rng(2);
    const CVector v = test::random_phases(rng, 9);
    const CVector rotated = std::polar(1.0, 1.234) * v;
    for (int k = 1; k <= 2; ++k)
        CHECK(interference_stat(rotated, s, k) == Catch::Approx(interference_stat(v, s, k)).epsilon(1e-13));
}

TEST_CASE("metrics - oracle interference scales with the direct gain")
{
    SystemConfig c = test::toy_config(2, 2, 1, 0.0);
    c.bs[1].to_irs.alpha = 0.0;
    Rng rng(4);
    const CVector v = test::random_phases(rng, 4);
    Rng r1(9);
    Rng r2(9);
    const double a = oracle_interference(v, c, build_statistics(c), 2000, r1)[1];
    c.bs[1].direct.alpha = 2.0 * *c.bs[1].direct.alpha;
    const double b = oracle_interference(v, c, build_statistics(c), 2000, r2)[1];
    CHECK(b == Catch::Approx(2.0 * a).epsilon(1e-12));

    c.bs[1].direct.alpha = 0.0;
    c.irs.to_user.alpha = 0.0;
    Rng r3(9);
    CHECK(oracle_interference(v, c, build_statistics(c), 100, r3)[1] == 0.0);
}

TEST_CASE("metrics - ergodic-rate signal term")
{
    SystemConfig c = test::toy_config(2, 2, 0);
    c.err_std_cascaded = 0.3;
    c.err_std_direct = 0.2;
    Rng rng(5);
    const CVector v = test::random_phases(rng, 4);
    CsiSample zero;
    zero.est_cascaded = CMatrix::Zero(4, 4);
    zero.est_direct = CVector::Zero(4);
    const CVector w = test::random_unit_vector(rng, 4);
    CHECK(signal_er(v, zero, w, c) == Catch::Approx(0.04 + 4.0 * 0.09));

    SystemConfig perfect = c;
    perfect.err_std_cascaded = 0.0;
    perfect.err_std_direct = 0.0;
    const CsiSample est = test::random_estimate(rng, 4, 4);
    const CRowVector e = effective_channel(v, est);
    const CVector mrt = e.adjoint() / e.norm();
    CHECK(signal_er(v, est, mrt, perfect) == Catch::Approx(e.squaredNorm()).epsilon(1e-12));

    CHECK_THROWS_AS(signal_er(v, est, 2.0 * mrt, c), std::invalid_argument);
}

TEST_CASE("metrics - ergodic-rate signal is the conditional mean power")
{
    SystemConfig c = test::toy_config(2, 2, 0);
    c.err_std_cascaded = 0.4;
    c.err_std_direct = 0.6;
    Rng rng(6);
    const CVector v = test::random_phases(rng, 4);
    const CsiSample est = test::random_estimate(rng, 4, 4);
    const CVector w = test::random_unit_vector(rng, 4);
    double sum = 0.0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
        const ChannelRealization t = reconstruct_truth(redraw_errors(est, c, rng));
        sum += std::norm(((v.adjoint() * t.cascaded[0] + t.direct[0].adjoint()) * w).value());
    }
    CHECK(test::rel_err(sum / draws, signal_er(v, est, w, c)) < 0.01);
}

TEST_CASE("metrics - bounded-error signal term")
{
    Rng rng(7);
    const CVector v = test::random_phases(rng, 4);
    const CsiSample est = test::random_estimate(rng, 4, 4);
    const CRowVector e = effective_channel(v, est);
    const CVector mrt = e.adjoint() / e.norm();
    const CVector w = test::random_unit_vector(rng, 4);
    CHECK(signal_gp1(v, est, w, ErrorSetRadii{0.0, 0.0}) ==
          Catch::Approx(std::norm((e * w).value())).epsilon(1e-12));

    // |e w| = 5 with margin 1: eps_1 sqrt(4) + eps_2 = 0.25 * 2 + 0.5.
    CsiSample five = est;
    five.est_cascaded.setZero();
    five.est_direct = CVector::Zero(4);
    five.est_direct(0) = 5.0;
    CVector e0 = CVector::Zero(4);
    e0(0) = 1.0;
    CHECK(signal_gp1(v, five, e0, ErrorSetRadii{0.25, 0.5}) == Catch::Approx(16.0));

    const double a = e.norm();
    const ErrorSetRadii big{a, a};
    CHECK(signal_gp1(v, est, mrt, big) == 0.0);
    // The worst point of E drives the gain all the way to zero.
    const ChannelRealization worst = reconstruct_truth(worst_case_errors(v, est, big));
    CHECK(std::abs(((v.adjoint() * worst.cascaded[0] + worst.direct[0].adjoint()) * mrt).value()) < 1e-10);
}

TEST_CASE("metrics - Bernstein signal term")
{
    CHECK(bernstein_power(10.0, 1.0, 0.95) == 0.0);
    CHECK(bernstein_power(100.0, 1.0, 0.95) == Catch::Approx(66.2971993353748986).epsilon(1e-14));
    CHECK(bernstein_power(0.0, 1.0, 0.95) == 0.0);
    CHECK(bernstein_power(0.0, 0.0, 0.95) == 0.0);
    CHECK(bernstein_power(3.5, 0.0, 0.95) == 3.5);

    SystemConfig c = test::toy_config(2, 2, 0);
    c.err_std_cascaded = 0.5;  // sigma_e^2 = 0.25 * 4 = 1
    c.err_std_direct = 0.0;
    CHECK(effective_error_variance(c) == Catch::Approx(1.0));
    CsiSample s;
    s.est_cascaded = CMatrix::Zero(4, 4);
    s.est_direct = CVector::Zero(4);
    s.est_direct(0) = std::sqrt(100.0);
    CVector e0 = CVector::Zero(4);
    e0(0) = 1.0;
    Rng rng(8);
    const CVector v = test::random_phases(rng, 4);
    CHECK(signal_gp2(v, s, e0, c) == Catch::Approx(66.2971993353748986).epsilon(1e-12));

    // Zero signal: max(0, sigma^2 - sqrt(2 ln 20) sigma^2) = 0.
    s.est_direct.setZero();
    CHECK(signal_gp2(v, s, e0, c) == 0.0);

    SystemConfig perfect = c;
    perfect.err_std_cascaded = 0.0;
    const CsiSample est = test::random_estimate(rng, 4, 4);
    const CVector w = test::random_unit_vector(rng, 4);
    CHECK(signal_gp2(v, est, w, perfect) ==
          Catch::Approx(std::norm((effective_channel(v, est) * w).value())).epsilon(1e-12));
}

TEST_CASE("metrics - signal terms are finite, nonnegative and ordered")
{
    Rng rng(9);
    for (int i = 0; i < 200; ++i) {
        SystemConfig c = test::toy_config(2, 2, 0);
        std::uniform_real_distribution<double> u(0.0, 1.5);
        c.err_std_cascaded = u(rng);
        c.err_std_direct = u(rng);
        const CVector v = test::random_phases(rng, 4);
        const CsiSample est = test::random_estimate(rng, 4, 4);
        const CVector w = test::random_unit_vector(rng, 4);
        const double s = std::norm((effective_channel(v, est) * w).value());
        const double g2 = signal_gp2(v, est, w, c);
        const double g1 = signal_gp1(v, est, w, error_set_radii(c));
        const double er = signal_er(v, est, w, c);
        CHECK(std::isfinite(g2));
        CHECK(g2 >= 0.0);
        CHECK(g1 >= 0.0);
        CHECK(g2 <= s + effective_error_variance(c) + 1e-12);
        CHECK(er >= s);
    }
}

TEST_CASE("metrics - capacity")
{
    SystemConfig c = test::toy_config(2, 2, 0);
    Rng rng(10);
    const CVector v = test::random_phases(rng, 4);
    ChannelRealization t;
    t.cascaded.push_back(complex_normal_matrix(rng, 4, 4));
    t.direct.push_back(complex_normal_vector(rng, 4));
    const CVector w = test::random_unit_vector(rng, 4);

    // Second path: explicit loops.
    cdouble gain = 0.0;
    for (int m = 0; m < 4; ++m) {
        cdouble col = std::conj(t.direct[0](m));
        for (int n = 0; n < 4; ++n) col += std::conj(v(n)) * t.cascaded[0](n, m);
        gain += col * w(m);
    }
    const double power = c.bs[0].tx_power * std::norm(gain);
    CHECK(capacity(v, w, t, Denominator{power}, c) == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(capacity(v, w, t, Denominator{0.37}, c) == Catch::Approx(std::log2(1.0 + power / 0.37)).epsilon(1e-12));

    ChannelRealization zero;
    zero.cascaded.push_back(CMatrix::Zero(4, 4));
    zero.direct.push_back(CVector::Zero(4));
    CHECK(capacity(v, w, zero, Denominator{0.1}, c) == 0.0);
}

TEST_CASE("metrics - ergodic upper bound")
{
    SystemConfig c = test::los_only_config(2, 2);
    const ChannelStatistics s = build_statistics(c);
    Rng rng(11);
    const CVector v = test::random_phases(rng, 4);
    const CsiSampler sampler = [&](Rng& r) { return sample_slot_csi(s, c, r); };
    const double expect =
        std::log2(1.0 + c.bs[0].tx_power * (v.adjoint() * s.cascaded_los[0]).squaredNorm() / c.noise_power);
    CHECK(ergodic_rate_upper_bound(v, c, s, sampler, 5, rng) == Catch::Approx(expect).epsilon(1e-12));

    SystemConfig f = test::toy_config(2, 2, 1);
    const ChannelStatistics fs = build_statistics(f);
    const CsiSampler fsampler = [&](Rng& r) { return sample_slot_csi(fs, f, r); };
    Rng a(3);
    const double low = ergodic_rate_upper_bound(v, f, fs, fsampler, 200, a);
    f.bs[0].tx_power *= 2.0;
    Rng b(3);
    CHECK(ergodic_rate_upper_bound(v, f, fs, fsampler, 200, b) > low);
    CHECK_THROWS_AS(ergodic_rate_upper_bound(v, f, fs, fsampler, 0, b), std::invalid_argument);
}

TEST_CASE("metrics - denominator")
{
    const SystemConfig c = test::toy_config(2, 2, 2);
    const ChannelStatistics s = build_statistics(c);
    Rng rng(12);
    const CVector v = test::random_phases(rng, 4);
    const double expect = c.noise_power + 0.5 * interference_stat(v, s, 1) + 0.5 * interference_stat(v, s, 2);
    CHECK(denominator(v, s, c).value == Catch::Approx(expect).epsilon(1e-14));
    CHECK(denominator(v, s, test::toy_config(2, 2, 0)).value >= c.noise_power);
}
