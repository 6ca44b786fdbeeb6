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

#include "irsrobust/ssca.hpp"
#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace irs;

namespace {

// Central differences on the real and imaginary part of coordinate n give
// 2 Re g_n and 2 Im g_n for the conjugate Wirtinger gradient g.
cdouble fd_gradient(DesignKind kind, const CVector& v, int n, const CsiSample& csi, const SystemConfig& c,
                    const ChannelStatistics& s, const ErrorSetRadii& r, double h = 1e-5) {
    CVector a = v, b = v;
    a(n) += h;
    b(n) -= h;
    const double dx = (objective_sample(kind, a, csi, c, s, r) - objective_sample(kind, b, csi, c, s, r)) / (2 * h);
    a = v;
    b = v;
    a(n) += cdouble(0.0, h);
    b(n) -= cdouble(0.0, h);
    const double dy = (objective_sample(kind, a, csi, c, s, r) - objective_sample(kind, b, csi, c, s, r)) / (2 * h);
    return {dx / 2.0, dy / 2.0};
}

SystemConfig gradient_config() {
    SystemConfig c = test::toy_config(2, 3, 2, 1.0);
    c.err_std_cascaded = 0.1;
    c.err_std_direct = 0.1;
    return c;
}

double fd_rel_error(DesignKind kind, Rng& rng, const SystemConfig& c, const ChannelStatistics& s) {
    const ErrorSetRadii r = error_set_radii(c);
    for (;;) {
        const CVector v = test::random_phases(rng, c.irs_size());
        const CsiSample csi = test::random_estimate(rng, c.irs_size(), c.bs[0].array.size());
        const double a = effective_channel(v, csi).norm();
        const double margin = r.eps_cascaded * std::sqrt(c.irs_size()) + r.eps_direct;
        if (kind == DesignKind::GP1 && a < 1.1 * margin) continue;
        if (kind == DesignKind::GP2 && signal_gp2(v, csi, mrt_beamformer(v, csi).w, c) < 0.1) continue;
        const CVector g = objective_gradient(kind, v, csi, c, s, r);
        CVector fd(v.size());
        for (Eigen::Index n = 0; n < v.size(); ++n) fd(n) = fd_gradient(kind, v, static_cast<int>(n), csi, c, s, r);
        return (fd - g).norm() / g.norm();
    }
}

}  // namespace

TEST_CASE("ssca - settings validation")
{
    SscaSettings s;
    CHECK_NOTHROW(s.validate());
    s.tau = 0.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = SscaSettings{};
    s.rho_exponent = 0.95;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = SscaSettings{};
    s.rho_exponent = 0.5;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = SscaSettings{};
    CHECK(s.rho(1) == 1.0);
    CHECK(s.omega(1) == 1.0);
    CHECK(s.rho(2) == Catch::Approx(0.6597539553864471));
}

TEST_CASE("ssca - objective sample")
{
    SystemConfig c = test::toy_config(2, 2, 0);
    const ChannelStatistics s = build_statistics(c);
    Rng rng(1);
    const CVector v = test::random_phases(rng, 4);
    const CsiSample est = test::random_estimate(rng, 4, 4);
    const double e2 = effective_channel(v, est).squaredNorm();
    CHECK(objective_sample(DesignKind::ER, v, est, c, s, {}) == Catch::Approx(e2 / c.noise_power).epsilon(1e-12));
    CHECK(objective_sample(DesignKind::GP1, v, est, c, s, ErrorSetRadii{10.0, 10.0}) == 0.0);

    SystemConfig n = gradient_config();
    const ChannelStatistics ns = build_statistics(n);
    const ErrorSetRadii r = error_set_radii(n);
    for (int i = 0; i < 20; ++i) {
        const CVector w = test::random_phases(rng, 9);
        const CsiSample e = test::random_estimate(rng, 9, 4);
        const Denominator d = denominator(w, ns, n);
        CHECK(objective_sample(DesignKind::GP1, w, e, n, ns, r) ==
              Catch::Approx(std::exp2(rate_gp1(w, e, r, d, n)) - 1.0).epsilon(1e-10));
        CHECK(objective_sample(DesignKind::GP2, w, e, n, ns, r) ==
              Catch::Approx(std::exp2(rate_gp2(w, e, n, d)) - 1.0).epsilon(1e-10));
    }
}

TEST_CASE("ssca - constant objective has zero gradient")
{
    SystemConfig c = test::toy_config(2, 2, 0, 0.0);
    const ChannelStatistics s = build_statistics(c);
    Rng rng(2);
    CsiSample est = test::random_estimate(rng, 4, 4);
    est.est_cascaded.setZero();
    const CVector v = test::random_phases(rng, 4);
    for (DesignKind k : {DesignKind::ER, DesignKind::GP1, DesignKind::GP2})
        CHECK(objective_gradient(k, v, est, c, s, {}).norm() == 0.0);
}

TEST_CASE("ssca - gradients match finite differences")
{
    const SystemConfig c = gradient_config();
    const ChannelStatistics s = build_statistics(c);
    Rng rng(3);
    for (int i = 0; i < 20; ++i) CHECK(fd_rel_error(DesignKind::ER, rng, c, s) < 1e-5);
    for (int i = 0; i < 20; ++i) CHECK(fd_rel_error(DesignKind::GP1, rng, c, s) < 1e-4);
    for (int i = 0; i < 20; ++i) CHECK(fd_rel_error(DesignKind::GP2, rng, c, s) < 1e-4);
}

TEST_CASE("ssca - surrogate update")
{
    SscaSettings st;
    SurrogateState s0;
    s0.v = CVector::Ones(2);
    s0.c1 = CVector::Zero(2);
    CHECK_THROWS_AS(update_surrogate(s0, std::vector<ObjectiveValue>{}, st), std::invalid_argument);

    ObjectiveValue a{3.0, CVector::Constant(2, cdouble(1.0, -1.0))};
    ObjectiveValue b{5.0, CVector::Constant(2, cdouble(2.0, 0.0))};
    const SurrogateState s1 = update_surrogate(s0, {a, b}, st);
    CHECK(s1.c0 == 4.0);
    CHECK(s1.c1(0) == cdouble(1.5, -0.5));

    // Two steps with one sample each.
    SurrogateState h1 = update_surrogate(s0, {a}, st);
    CHECK(h1.c0 == 3.0);
    h1.iteration = 1;
    const SurrogateState h2 = update_surrogate(h1, {b}, st);
    CHECK(h2.c0 == Catch::Approx(4.319507910772894).epsilon(1e-15));

    SurrogateState c = s0;
    for (int t = 0; t < 500; ++t) {
        c = update_surrogate(c, {ObjectiveValue{7.0, CVector::Constant(2, cdouble(0.0, 2.0))}}, st);
        c.iteration = t + 1;
    }
    CHECK(c.c0 == Catch::Approx(7.0));
    CHECK(std::abs(c.c1(1) - cdouble(0.0, 2.0)) < 1e-12);
}

TEST_CASE("ssca - subproblem closed form")
{
    SscaSettings st;
    SurrogateState s;
    s.v = CVector::Ones(1);
    s.c1 = CVector::Zero(1);
    CHECK(solve_subproblem(s, st).v(0) == cdouble(1.0, 0.0));

    s.c1(0) = cdouble(0.0, 1.0);
    const cdouble expect = cdouble(1.0, 1.0) / std::sqrt(2.0);
    CHECK(std::abs(solve_subproblem(s, st).v(0) - expect) < 1e-15);

    s.c1(0) = -1.0;
    const SubproblemSolution deg = solve_subproblem(s, st);
    CHECK(deg.degenerate == 1);
    CHECK(deg.v(0) == s.v(0));
}

TEST_CASE("ssca - subproblem optimality and KKT residual")
{
    SscaSettings st;
    st.tau = 0.7;
    Rng rng(4);
    std::normal_distribution<double> small(0.0, 0.3);
    for (int trial = 0; trial < 20; ++trial) {
        SurrogateState s;
        s.v = test::random_phases(rng, 8);
        s.c1 = complex_normal_vector(rng, 8, 4.0);
        s.c0 = 1.0;
        const CVector vbar = solve_subproblem(s, st).v;
        const double best = surrogate_value(s, st, vbar);
        for (int i = 0; i < 1000; ++i) {
            CVector probe(8);
            for (int n = 0; n < 8; ++n) probe(n) = vbar(n) * std::polar(1.0, small(rng));
            CHECK(surrogate_value(s, st, probe) <= best + 1e-12);
        }
        for (int n = 0; n < 8; ++n) {
            const cdouble num = st.tau * s.v(n) + s.c1(n);
            const double lambda = std::abs(num) - st.tau;
            CHECK(std::abs(vbar(n) * (st.tau + lambda) - num) < 1e-9);
        }
    }
}

TEST_CASE("ssca - step")
{
    SscaSettings st;
    Rng rng(5);
    SurrogateState s;
    s.v = test::random_phases(rng, 4);
    s.c1 = CVector::Zero(4);
    const CVector vbar = test::random_phases(rng, 4);
    const SurrogateState first = step(s, vbar, st);
    CHECK((first.v - vbar).norm() == 0.0);
    CHECK(first.iteration == 1);

    SurrogateState later = first;
    later.iteration = 10;
    CHECK((step(later, later.v, st).v - later.v).norm() < 1e-15);
    const SurrogateState moved = step(later, test::random_phases(rng, 4), st);
    for (int n = 0; n < 4; ++n) CHECK(std::abs(moved.v(n)) <= 1.0 + 1e-12);
}

TEST_CASE("ssca - zero iterations return the initial point")
{
    const SystemConfig c = test::toy_config(2, 2, 1);
    const ChannelStatistics s = build_statistics(c);
    SscaSettings st;
    st.max_iters = 0;
    const DesignResult d = optimize(DesignKind::ER, c, s, st);
    CHECK((d.v - initial_phases(s, st)).norm() < 1e-15);
    CHECK(d.trace.empty());
}

TEST_CASE("ssca - warm start phases")
{
    const SystemConfig c = test::los_only_config(2, 3);
    const ChannelStatistics s = build_statistics(c);
    const CVector v = initial_phases(s, SscaSettings{});
    const double max = s.cascaded_los[0].norm() * std::sqrt(9.0);  // rank one
    CHECK((v.adjoint() * s.cascaded_los[0]).norm() == Catch::Approx(max).epsilon(1e-10));

    SystemConfig flat = test::toy_config(2, 2, 0, 0.0);
    CHECK(initial_phases(build_statistics(flat), SscaSettings{}) == CVector::Ones(4));
}

TEST_CASE("ssca - recovers LoS alignment from random phases")
{
    const SystemConfig c = test::los_only_config(2, 3);
    const ChannelStatistics s = build_statistics(c);
    const double max = s.cascaded_los[0].norm() * 3.0;
    SscaSettings st;
    st.max_iters = 2000;
    st.random_init = true;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        st.seed = seed;
        const DesignResult d = optimize(DesignKind::ER, c, s, st);
        CHECK((d.v.adjoint() * s.cascaded_los[0]).norm() >= 0.99 * max);
        for (int n = 0; n < 9; ++n) CHECK(std::abs(std::abs(d.v(n)) - 1.0) < 1e-12);
    }
}

TEST_CASE("ssca - deterministic under a fixed seed")
{
    SystemConfig c = test::toy_config(2, 2, 2);
    c.err_std_cascaded = 0.1;
    c.err_std_direct = 0.1;
    const ChannelStatistics s = build_statistics(c);
    SscaSettings st;
    st.max_iters = 100;
    st.seed = 77;
    const DesignResult a = optimize(DesignKind::GP2, c, s, st);
    const DesignResult b = optimize(DesignKind::GP2, c, s, st);
    CHECK(a.v == b.v);
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
        CHECK(a.trace[i].c0 == b.trace[i].c0);
        CHECK(a.trace[i].movement == b.trace[i].movement);
    }
    st.seed = 78;
    CHECK(optimize(DesignKind::GP2, c, s, st).v != a.v);
}

TEST_CASE("ssca - final phases beat the starting point")
{
    const SystemConfig c = load_config(std::string(IRSROBUST_CONFIG_DIR) + "/desk.cfg");
    const ChannelStatistics s = build_statistics(c);
    const ErrorSetRadii r = error_set_radii(c);
    SscaSettings st;
    st.max_iters = 400;
    st.random_init = true;
    Rng rng(42);
    std::vector<CsiSample> common;
    for (int i = 0; i < 2000; ++i) common.push_back(sample_slot_csi(s, c, rng));
    auto mean_objective = [&](const CVector& v) {
        double sum = 0.0;
        for (const CsiSample& csi : common) sum += objective_sample(DesignKind::ER, v, csi, c, s, r);
        return sum / static_cast<double>(common.size());
    };
    int improved = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        st.seed = seed;
        const double start = mean_objective(initial_phases(s, st));
        const double end = mean_objective(optimize(DesignKind::ER, c, s, st).v);
        CHECK(end >= start * (1.0 - 1e-3));
        improved += end > start ? 1 : 0;
    }
    CHECK(improved >= 15);
}
