// SPDX-License-Identifier: Apache-2.0
//
// risidd - link-level simulator for RIS-assisted iterative detection and decoding
// Copyright (C) 2026 The risidd authors
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


#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <sstream>

#include "risidd/channel.hpp"

using namespace risidd;

namespace {

CMat random_matrix(int r, int c, Rng& rng)
{
    CMat m(r, c);
    for (int j = 0; j < c; ++j)
        for (int i = 0; i < r; ++i) m(i, j) = complex_normal(rng);
    return m;
}

ChannelSet random_set(int m, int n, int k, Rng& rng)
{
    ChannelSet cs;
    cs.direct = random_matrix(m, k, rng);
    cs.ap_ris = random_matrix(m, n, rng);
    cs.ris_users = random_matrix(n, k, rng);
    cs.g_loss = 1.0;
    return cs;
}

}  // namespace

TEST_CASE("path loss models")
{
    CHECK(path_loss_weak(1.0) == doctest::Approx(41.2));
    CHECK(path_loss_weak(10.0) == doctest::Approx(69.9));
    CHECK(path_loss_weak(400.0) == doctest::Approx(115.88).epsilon(1e-4));
    CHECK(path_loss_strong(1.0) == doctest::Approx(37.3));
    CHECK(path_loss_strong(10.0) == doctest::Approx(59.3));
    CHECK(path_loss_strong(200.0) == doctest::Approx(87.92).epsilon(1e-4));
    CHECK_THROWS_AS(path_loss_weak(0.0), std::invalid_argument);
    CHECK_THROWS_AS(path_loss_strong(-1.0), std::invalid_argument);
    CHECK(db_loss_to_gain(30.0) == doctest::Approx(1e-3));
}

TEST_CASE("geometry")
{
    SystemConfig cfg;
    cfg.user_radius = 0.0;
    auto rng = seeded_rng(1, 0);
    auto g = draw_geometry(cfg, rng);
    REQUIRE(g.user_pos.size() == 12);
    for (auto p : g.user_pos) {
        CHECK(p.x == cfg.user_center.x);
        CHECK(p.y == cfg.user_center.y);
    }

    cfg.user_radius = 5.0;
    cfg.users = 1;
    double sum = 0.0, worst = 0.0;
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
        const double d = distance(draw_geometry(cfg, rng).user_pos[0], cfg.user_center);
        sum += d;
        worst = std::max(worst, d);
    }
    CHECK(sum / draws == doctest::Approx(2.0 / 3.0 * 5.0).epsilon(0.02));
    CHECK(worst <= 5.0);

    auto r1 = seeded_rng(4, 4), r2 = seeded_rng(4, 4);
    const auto a = draw_geometry(cfg, r1), b = draw_geometry(cfg, r2);
    CHECK(a.user_pos[0].x == b.user_pos[0].x);
    CHECK(a.user_pos[0].y == b.user_pos[0].y);
}

TEST_CASE("large-scale variances and independence")
{
    SystemConfig cfg;
    cfg.users = 1;
    cfg.ap_antennas = 1;
    cfg.ris_elements = 1;
    cfg.ris_mode = RisMode::kPassive;
    Geometry geom;
    geom.ap_pos = {0, 0};
    geom.ris_pos = {30, 40};
    geom.user_pos = {{60, 0}};
    const double h_gain = db_loss_to_gain(path_loss_weak(60.0));
    const double g_gain = db_loss_to_gain(path_loss_strong(50.0));
    const double f_gain = db_loss_to_gain(path_loss_strong(50.0));
    auto rng = seeded_rng(2, 0);
    const int draws = 100000;
    double h2 = 0, g2 = 0, f2 = 0;
    cd gf = 0;
    for (int i = 0; i < draws; ++i) {
        const auto cs = draw_channels(geom, cfg, rng);
        h2 += std::norm(cs.direct(0, 0));
        g2 += std::norm(cs.ap_ris(0, 0));
        f2 += std::norm(cs.ris_users(0, 0));
        gf += cs.ap_ris(0, 0) * std::conj(cs.ris_users(0, 0)) / std::sqrt(g_gain * f_gain);
        if (i == 0) CHECK(cs.g_loss == doctest::Approx(g_gain));
    }
    CHECK(h2 / draws / h_gain == doctest::Approx(1.0).epsilon(0.02));
    CHECK(g2 / draws / g_gain == doctest::Approx(1.0).epsilon(0.02));
    CHECK(f2 / draws / f_gain == doctest::Approx(1.0).epsilon(0.02));
    CHECK(std::abs(gf) / draws < 0.01);
}

TEST_CASE("distance clamp and no-RIS mode")
{
    SystemConfig cfg;
    cfg.users = 1;
    cfg.ap_antennas = 2;
    cfg.ris_elements = 3;
    Geometry geom;
    geom.ap_pos = {0, 0};
    geom.ris_pos = {400, 10};
    geom.user_pos = {{0, 0}};
    auto rng = seeded_rng(3, 0);
    const auto fading = draw_small_scale(2, 3, 1, rng);
    const auto cs = apply_large_scale(fading, geom, cfg);
    CHECK(std::isfinite(cs.direct.norm()));
    const double expected = fading.direct.norm() * std::sqrt(db_loss_to_gain(path_loss_weak(1.0)));
    CHECK(cs.direct.norm() == doctest::Approx(expected));

    cfg.ris_mode = RisMode::kNone;
    const auto none = apply_large_scale(fading, geom, cfg);
    CHECK(none.elements() == 0);
    CHECK(none.ris_users.rows() == 0);
    CHECK(equivalent_channel(none, CVec(0)).isApprox(none.direct));
}

TEST_CASE("equivalent channel")
{
    ChannelSet cs;
    cs.direct = CMat::Constant(1, 1, 1.0);
    cs.ap_ris = CMat::Constant(1, 1, 2.0);
    cs.ris_users = CMat::Constant(1, 1, 3.0);
    CVec phi(1);
    phi(0) = cd(0, 1);
    const CMat h = equivalent_channel(cs, phi);
    CHECK(std::abs(h(0, 0) - cd(1, 6)) < 1e-15);

    auto rng = seeded_rng(5, 0);
    const auto big = random_set(4, 5, 3, rng);
    CHECK(equivalent_channel(big, CVec::Zero(5)).isApprox(big.direct));
    const CVec p1 = random_matrix(5, 1, rng).col(0), p2 = random_matrix(5, 1, rng).col(0);
    const CMat hb = equivalent_channel(big, p1);
    for (int k = 0; k < 3; ++k) {
        for (int m = 0; m < 4; ++m) {
            cd sum = big.direct(m, k);
            for (int n = 0; n < 5; ++n) sum += p1(n) * big.ap_ris(m, n) * big.ris_users(n, k);
            CHECK(std::abs(hb(m, k) - sum) < 1e-12);
        }
    }
    const CMat base = equivalent_channel(big, CVec::Zero(5));
    const CMat lhs = equivalent_channel(big, p1 + p2) - base;
    const CMat rhs = (equivalent_channel(big, p1) - base) + (equivalent_channel(big, p2) - base);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(big.cascaded(1).isApprox(big.ap_ris * big.ris_users.col(1).asDiagonal()));
    CHECK_THROWS(equivalent_channel(big, CVec::Zero(4)));
}

TEST_CASE("received signal")
{
    auto rng = seeded_rng(6, 0);
    auto cs = random_set(3, 4, 1, rng);
    CVec x(1);
    x(0) = cd(0.7, -0.7);
    NoiseRealization silent{CVec::Zero(3), CVec::Zero(4)};
    CHECK(received_signal(cs, CVec::Zero(4), x, silent).isApprox(cs.direct.col(0) * x(0)));

    const auto noise = draw_noise(3, 4, 1.0, 0.0, rng);
    CHECK(noise.ris_noise.isZero());
    CHECK(received_signal(cs, CVec::Zero(4), CVec::Zero(1), noise).isApprox(noise.static_noise));

    const auto active = draw_noise(3, 4, 0.0, 2.0, rng);
    const CVec phi = random_matrix(4, 1, rng).col(0);
    const CVec y = received_signal(cs, phi, CVec::Zero(1), {CVec::Zero(3), active.ris_noise});
    const CMat b = cs.ap_ris * active.ris_noise.asDiagonal();
    CHECK((y - b * phi).norm() < 1e-12);
    CHECK_THROWS(received_signal(cs, phi, CVec::Zero(2), silent));
}

TEST_CASE("channel dump round trip")
{
    auto rng = seeded_rng(7, 0);
    auto cs = random_set(3, 2, 2, rng);
    cs.g_loss = 1.25e-9;
    const std::string path = "risidd_channel_dump_test.bin";
    write_channel_dump(path, cs);
    const auto back = read_channel_dump(path);
    std::remove(path.c_str());
    CHECK(back.direct == cs.direct);
    CHECK(back.ap_ris == cs.ap_ris);
    CHECK(back.ris_users == cs.ris_users);
    CHECK(back.g_loss == cs.g_loss);

    std::stringstream bad("NOTMAGIC");
    CHECK_THROWS(read_arrays(bad));
}
