#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dp2c/besov.hpp"

#include <cmath>
#include <random>

using namespace dp2c;

namespace {

RealField band_limited(const GridPtr& g, unsigned seed, int max_mode) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss;
    RealField f(g);
    for (int k = 1; k <= max_mode; ++k) {
        const double a = gauss(rng) / k, b = gauss(rng) / k;
        for (int j = 0; j < g->N; ++j) {
            const double th = M_PI * k * g->nodes[j] / g->L;
            f.v[j] += a * std::cos(th) + b * std::sin(th);
        }
    }
    return f;
}

} // namespace

TEST_CASE("cutoff construction") {
    // ball and ring supports
    CHECK(lp_chi(0.0) == 1.0);
    CHECK(lp_chi(0.74) == 1.0);
    CHECK(lp_chi(4.0 / 3.0 + 1e-9) == 0.0);
    CHECK(lp_phi(0.5) == 0.0);
    CHECK(lp_phi(0.74) == 0.0);
    CHECK(lp_phi(1.5) == 1.0); // interior of the ring, neighbors vanish
    CHECK(lp_phi(8.0 / 3.0 + 1e-9) == 0.0);

    auto g = make_grid(512, M_PI);
    const DyadicPartition part = build_partition(g);
    // chi = 1, all blocks 0 at xi = 0
    CHECK(part.chi[0] == 1.0);
    for (const auto& blk : part.phi_blocks) CHECK(blk[0] == 0.0);

    // telescoping partition of unity at every grid wavenumber
    for (int j = 0; j < g->N; ++j) {
        double s = part.chi[j];
        for (const auto& blk : part.phi_blocks) s += blk[j];
        CHECK(std::fabs(s - 1.0) <= 1e-12);
    }

    // blocks two apart have disjoint supports
    for (int q = 0; q + 2 <= part.Q_max; ++q)
        for (int j = 0; j < g->N; ++j)
            CHECK(part.phi_blocks[q][j] * part.phi_blocks[q + 2][j] == 0.0);
}

TEST_CASE("frequency blocks") {
    auto g = make_grid(512, M_PI);
    const DyadicPartition part = build_partition(g);

    RealField one(g, 1.0);
    const RealField b_ball = lp_block(one, -1, part);
    for (int j = 0; j < g->N; ++j)
        CHECK(std::fabs(b_ball.v[j] - 1.0) <= 1e-13);
    for (int q = 0; q <= part.Q_max; ++q)
        CHECK(linf_norm(lp_block(one, q, part)) <= 1e-13);

    CHECK_THROWS_AS(lp_block(one, -2, part), std::invalid_argument);

    // a mode strictly inside ring 3 is invisible two rings away
    RealField mode(g);
    for (int j = 0; j < g->N; ++j) mode.v[j] = std::sin(11.0 * g->nodes[j]);
    CHECK(linf_norm(lp_block(mode, 5, part)) <= 1e-13);
    CHECK(linf_norm(lp_block(mode, 1, part)) <= 1e-13);
    const RealField own = lp_block(mode, 3, part);
    for (int j = 0; j < g->N; ++j)
        CHECK(std::fabs(own.v[j] - mode.v[j]) <= 1e-12);

    // reconstruction
    const RealField f = band_limited(g, 3, 100);
    RealField sum(g);
    for (int q = -1; q <= part.Q_max; ++q) {
        const RealField b = lp_block(f, q, part);
        for (int j = 0; j < g->N; ++j) sum.v[j] += b.v[j];
    }
    for (int j = 0; j < g->N; ++j)
        CHECK(std::fabs(sum.v[j] - f.v[j]) <= 1e-10);

    // quasi-orthogonality
    std::vector<RealField> blocks;
    for (int q = -1; q <= part.Q_max; ++q) blocks.push_back(lp_block(f, q, part));
    for (size_t p = 0; p < blocks.size(); ++p)
        for (size_t q = p + 2; q < blocks.size(); ++q) {
            double ip = 0.0;
            for (int j = 0; j < g->N; ++j) ip += blocks[p].v[j] * blocks[q].v[j];
            CHECK(std::fabs(ip * g->dx) <= 1e-12);
        }
}

TEST_CASE("low-frequency cutoff") {
    auto g = make_grid(512, M_PI);
    const DyadicPartition part = build_partition(g);
    const RealField f = band_limited(g, 17, 100);

    // q big enough: identity
    const RealField all = low_freq(f, 12, part);
    for (int j = 0; j < g->N; ++j)
        CHECK(std::fabs(all.v[j] - f.v[j]) <= 1e-12);

    // single high mode outside the ball goes to zero
    RealField hi(g);
    for (int j = 0; j < g->N; ++j) hi.v[j] = std::cos(40.0 * g->nodes[j]);
    CHECK(linf_norm(low_freq(hi, 4, part)) <= 1e-13); // ball radius 4/3*16

    // telescoping identity S_q = sum of blocks below q
    for (int q : {2, 5}) {
        const RealField sq = low_freq(f, q, part);
        RealField sum(g);
        for (int p = -1; p < q; ++p) {
            const RealField b = lp_block(f, p, part);
            for (int j = 0; j < g->N; ++j) sum.v[j] += b.v[j];
        }
        for (int j = 0; j < g->N; ++j)
            CHECK(std::fabs(sq.v[j] - sum.v[j]) <= 1e-10);
    }
}

TEST_CASE("norms") {
    auto g = make_grid(512, M_PI);
    const DyadicPartition part = build_partition(g);

    CHECK(besov_norm(RealField(g), {1.0, 2.0, 2.0}, part) == 0.0);
    CHECK(sobolev_norm(RealField(g, 1.0), 3.7) ==
          doctest::Approx(std::sqrt(2.0 * M_PI)).epsilon(1e-12));

    RealField s1(g);
    for (int j = 0; j < g->N; ++j) s1.v[j] = std::sin(g->nodes[j]);
    CHECK(sobolev_norm(s1, 1.0) ==
          doctest::Approx(std::sqrt(2.0) * std::sqrt(M_PI)).epsilon(1e-12));

    const RealField f = band_limited(g, 23, 60);
    CHECK(sobolev_norm(f, 0.0) == doctest::Approx(l2_norm(f)).epsilon(1e-10));

    // single-block localization: mode at 11 sits alone in ring q=3
    RealField mode(g);
    for (int j = 0; j < g->N; ++j) mode.v[j] = std::sin(11.0 * g->nodes[j]);
    const double s = 1.3;
    CHECK(besov_norm(mode, {s, 2.0, 2.0}, part) ==
          doctest::Approx(std::pow(2.0, 3 * s) * l2_norm(mode)).epsilon(1e-10));

    // monotone embedding in s for band-limited f
    CHECK(besov_norm(f, {0.5, 2.0, 2.0}, part) <=
          besov_norm(f, {1.5, 2.0, 2.0}, part) + 1e-10);

    // interpolation inequality for the Fourier-sum family
    const double n0 = sobolev_norm(f, 0.0), n1 = sobolev_norm(f, 1.0);
    const double nh = sobolev_norm(f, 0.5);
    CHECK(nh <= std::sqrt(n0 * n1) + 1e-9);

    // inf exponents
    const double binf = besov_norm(f, {0.0, kInfExponent, kInfExponent}, part);
    CHECK(binf > 0.0);
    CHECK(binf <= 3.0 * linf_norm(f));
}

TEST_CASE("product estimate probe") {
    auto g = make_grid(512, M_PI);
    const DyadicPartition part = build_partition(g);
    const BesovParams prm{1.0, 2.0, 2.0};

    CHECK(probe_product_estimate(RealField(g), RealField(g), prm, part) == 0.0);

    const RealField f = band_limited(g, 29, 40);
    RealField one(g, 1.0);
    CHECK(probe_product_estimate(f, one, prm, part) <= 1.0 + 1e-10);

    // boundedness probe, stable across resolution
    auto max_ratio = [&](int N) {
        auto gg = make_grid(N, M_PI);
        const DyadicPartition pp = build_partition(gg);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const RealField a = band_limited(gg, 1000 + trial, 40);
            const RealField b = band_limited(gg, 5000 + trial, 40);
            worst = std::max(worst, probe_product_estimate(a, b, prm, pp));
        }
        return worst;
    };
    const double r512 = max_ratio(512), r1024 = max_ratio(1024);
    CHECK(r512 / r1024 <= 1.2);
    CHECK(r1024 / r512 <= 1.2);

    // derivative-form companion ratio stays modest
    const RealField a = band_limited(g, 101, 30);
    const RealField b = band_limited(g, 102, 30);
    const double dr = probe_product_estimate(a, b, {1.0, 2.0, 2.0}, part, true);
    CHECK(dr > 0.0);
    CHECK(dr < 10.0);
}
