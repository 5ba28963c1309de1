#include "evcoint/cointegration.hpp"
#include "evcoint/errors.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace evcoint;
using namespace evcoint::coint;

namespace {

Matrix random_walks(Eigen::Index t, Eigen::Index n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> nd;
    Matrix y(t, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        double level = 0.0;
        for (Eigen::Index i = 0; i < t; ++i) y(i, j) = level += nd(gen);
    }
    return y;
}

VecmSpec spec(int n, int p, bool constant = true, int dummies = 0) {
    VecmSpec s;
    s.n = n;
    s.p = p;
    s.include_constant = constant;
    s.n_seasonal_dummies = dummies;
    return s;
}

}  // namespace

TEST_CASE("regressor counts") {
    CHECK(spec(4, 1).k() == 5);
    CHECK(spec(2, 2, false).k() == 4);
    CHECK(spec(4, 2, true, 3).k() == 12);
}

TEST_CASE("design layout with dummies") {
    const Matrix y = random_walks(30, 2, 1);
    const auto d = build_vecm_design(y, spec(2, 2, true, 3), 1);
    CHECK(d.effective_t == 28);
    CHECK(d.z.cols() == 8);
    CHECK(d.z1.cols() == 6);
    // Row 0 is data row 2; its season is (1 + 2) mod 4 = 3, outside the dummied seasons.
    CHECK(d.z.block(0, 1, 1, 3).cwiseAbs().maxCoeff() == 0.0);
    CHECK(d.z(1, 1) == 1.0);
    CHECK(d.z.block(0, 4, 1, 2) == y.row(1) - y.row(0));
    CHECK(d.z.block(0, 6, 1, 2) == y.row(1));
    CHECK(d.delta_y.row(0) == y.row(2) - y.row(1));

    auto centred = spec(2, 2, true, 3);
    centred.dummy_coding = DummyCoding::Centered;
    const auto dc = build_vecm_design(y, centred, 1);
    CHECK(dc.z(1, 1) == doctest::Approx(0.75));
    CHECK(dc.z(0, 1) == doctest::Approx(-0.25));
}

TEST_CASE("eigenvalues do not depend on dummy anchor or coding when a constant is present") {
    const Matrix y = random_walks(60, 3, 11);
    const auto base = johansen_concentrate(build_vecm_design(y, spec(3, 2, true, 3), 0));
    for (int start : {0, 1, 2, 3}) {
        for (DummyCoding coding : {DummyCoding::Indicator, DummyCoding::Centered}) {
            auto s = spec(3, 2, true, 3);
            s.dummy_coding = coding;
            const auto c = johansen_concentrate(build_vecm_design(y, s, start));
            for (std::size_t i = 0; i < 3; ++i) CHECK(c.eigenvalues[i] == doctest::Approx(base.eigenvalues[i]).epsilon(1e-10));
        }
    }
    const auto without = johansen_concentrate(build_vecm_design(y, spec(3, 2), 0));
    CHECK(std::abs(without.eigenvalues[0] - base.eigenvalues[0]) > 1e-6);
}

TEST_CASE("design checks") {
    CHECK_THROWS_AS(build_vecm_design(random_walks(10, 2, 1), spec(2, 1)), SeriesTooShort);
    CHECK_THROWS_AS(build_vecm_design(random_walks(40, 3, 1), spec(2, 1)), DimensionMismatch);
    CHECK_THROWS_AS(build_vecm_design(random_walks(40, 2, 1), spec(1, 1)), ConfigError);
    CHECK_THROWS_AS(build_vecm_design(random_walks(40, 2, 1), spec(2, 1, true, 4)), ConfigError);
}

TEST_CASE("eigenvalues and max-eig statistics against reference values") {
    const Matrix y = fixtures::coint_matrix();
    for (int p : {1, 2}) {
        const auto d = build_vecm_design(y, spec(3, p));
        const auto c = johansen_concentrate(d);
        const auto& eig = p == 1 ? fixtures::kJohansenEigP1 : fixtures::kJohansenEigP2;
        const auto& stat = p == 1 ? fixtures::kJohansenMaxEigP1 : fixtures::kJohansenMaxEigP2;
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(c.eigenvalues[i] == doctest::Approx(eig[i]).epsilon(1e-9));
            CHECK(max_eig_statistic(c.eigenvalues, d.effective_t, static_cast<int>(i)) == doctest::Approx(stat[i]).epsilon(1e-9));
        }
    }
}

TEST_CASE("empty partialling set") {
    const Matrix y = random_walks(60, 2, 5);
    const auto d = build_vecm_design(y, spec(2, 1, false));
    CHECK(d.z1.cols() == 0);
    const auto c = johansen_concentrate(d);
    CHECK((c.u_hat - d.delta_y).cwiseAbs().maxCoeff() == 0.0);
    for (double v : c.eigenvalues.values) CHECK((v >= 0.0 && v < 1.0));
}

TEST_CASE("eigenvalue behaviour on independent and cointegrated pairs") {
    const Matrix w = random_walks(500, 2, 7);
    const auto indep = johansen_concentrate(build_vecm_design(w, spec(2, 1)));
    CHECK(indep.eigenvalues[0] < 0.05);
    Matrix c = w;
    std::mt19937_64 gen(8);
    std::normal_distribution<double> nd;
    for (Eigen::Index i = 0; i < c.rows(); ++i) c(i, 1) = c(i, 0) + nd(gen);
    const auto coint = johansen_concentrate(build_vecm_design(c, spec(2, 1)));
    CHECK(coint.eigenvalues[0] > 0.3);
    CHECK(coint.eigenvalues[1] < 0.05);
}

TEST_CASE("constrained maxima") {
    const Matrix y = fixtures::coint_matrix();
    const auto d = build_vecm_design(y, spec(3, 2));
    const auto c = johansen_concentrate(d);
    const double a = 0.5 * (static_cast<double>(d.effective_t) + 3 + 1);
    const double l0 = log_s_star(0, c.eigenvalues, c.suu, d.effective_t, 3);
    for (int r = 0; r < 3; ++r) {
        const double step = log_s_star(r + 1, c.eigenvalues, c.suu, d.effective_t, 3) -
                            log_s_star(r, c.eigenvalues, c.suu, d.effective_t, 3);
        CHECK(step >= 0.0);
        CHECK(step == doctest::Approx(-a * std::log(1.0 - c.eigenvalues[static_cast<std::size_t>(r)])).epsilon(1e-12));
    }
    const CointPosterior post(d);
    CHECK(log_s_star(3, c.eigenvalues, c.suu, d.effective_t, 3) == doctest::Approx(post.log_max()).epsilon(1e-10));
    CHECK(std::isfinite(l0));
    CHECK_THROWS_AS(log_s_star(4, c.eigenvalues, c.suu, d.effective_t, 3), ConfigError);
}

TEST_CASE("full-rank maximum matches multistart BFGS") {
    for (std::uint64_t seed : {101, 102, 103}) {
        const Matrix y = random_walks(16, 2, seed);
        const auto d = build_vecm_design(y, spec(2, 1, false));
        REQUIRE(d.effective_t == 15);
        const auto c = johansen_concentrate(d);
        const double closed = log_s_star(2, c.eigenvalues, c.suu, d.effective_t, 2);
        const double bfgs = oracles::coint_max_by_bfgs(d, 20, seed);
        CHECK(std::abs(closed - bfgs) < 1e-3);
    }
}

TEST_CASE("log posterior forms agree and have consistent gradients") {
    const Matrix y = fixtures::coint_matrix();
    const auto d = build_vecm_design(y, spec(3, 2));
    const CointPosterior post(d);
    std::mt19937_64 gen(3);
    std::normal_distribution<double> nd;
    for (int i = 0; i < 5; ++i) {
        Matrix eta = post.eta_hat();
        for (Eigen::Index j = 0; j < eta.size(); ++j) eta.data()[j] += 0.05 * nd(gen);
        Matrix b(3, 4);
        for (Eigen::Index j = 0; j < b.size(); ++j) b.data()[j] = nd(gen);
        const Matrix omega = b * b.transpose() / 4.0 + 0.2 * Matrix::Identity(3, 3);
        const double direct = log_posterior(eta, SpdMatrix(omega), d);
        CHECK(std::abs(direct - post.log_density(eta, SpdMatrix(omega))) < 1e-8 * std::max(1.0, std::abs(direct)));
        CHECK(std::abs(direct - oracles::coint_log_density(d, eta, omega)) < 1e-8 * std::max(1.0, std::abs(direct)));

        // d/dOmega = -a Omega^{-1} + Omega^{-1} M Omega^{-1} / 2 along a symmetric direction.
        const Matrix e = d.delta_y - d.z * eta;
        const Matrix oi = omega.inverse();
        const double a = 0.5 * (static_cast<double>(d.effective_t) + 4.0);
        const Matrix grad = -a * oi + 0.5 * oi * (e.transpose() * e) * oi;
        Matrix dir = Matrix::Zero(3, 3);
        dir(0, 1) = dir(1, 0) = 1.0;
        dir(2, 2) = 0.5;
        const double h = 1e-6;
        const double fd = (log_posterior(eta, SpdMatrix(omega + h * dir), d) - log_posterior(eta, SpdMatrix(omega - h * dir), d)) / (2 * h);
        const double an = (grad.array() * dir.array()).sum();
        CHECK(std::abs(fd - an) < 1e-5 * std::max(1.0, std::abs(an)));
    }
}

TEST_CASE("chain determinism and centring") {
    const Matrix y = fixtures::coint_matrix();
    const auto d = build_vecm_design(y, spec(3, 1));
    Rng r1(RngState{3, 1}), r2(RngState{3, 1});
    const auto c1 = gibbs_chain(d, r1, 500, 50);
    const auto c2 = gibbs_chain(d, r2, 500, 50);
    for (std::size_t i = 0; i < c1.size(); ++i) {
        REQUIRE(c1[i].eta == c2[i].eta);
        REQUIRE(c1[i].omega.matrix() == c2[i].omega.matrix());
    }

    const CointPosterior post(d);
    Rng rng(RngState{4, 0});
    const auto chain = gibbs_chain(d, rng, 21000, 1000);
    for (Eigen::Index j = 0; j < post.eta_hat().size(); ++j) {
        std::vector<double> xs;
        for (std::size_t i = 1000; i < chain.size(); ++i) xs.push_back(chain[i].eta.data()[j]);
        double mean = 0.0;
        for (double x : xs) mean += x;
        mean /= static_cast<double>(xs.size());
        CHECK(std::abs(mean - post.eta_hat().data()[j]) < 4.0 * oracles::batch_means_se(xs));
    }
}

TEST_CASE("chain tail probability matches exact posterior draws") {
    const Matrix y = random_walks(16, 2, 55);
    const auto d = build_vecm_design(y, spec(2, 1, false));
    const CointPosterior post(d);
    const auto c = johansen_concentrate(d);
    const double cut = log_s_star(1, c.eigenvalues, c.suu, d.effective_t, 2);
    Rng rng(RngState{77, 0});
    std::size_t above = 0, total = 0;
    run_chain(post, rng, 51000, 1000, [&](std::size_t, const CointDraw& dr) {
        if (dr.burn_in) return;
        ++total;
        above += post.log_density(dr.eta, dr.omega) > cut;
    });
    const auto exact = oracles::coint_exact_draws(d, 50000, 78);
    std::size_t above_exact = 0;
    for (const auto& s : exact) above_exact += oracles::coint_log_density(d, s.eta, s.omega) > cut;
    const double pc = static_cast<double>(above) / static_cast<double>(total);
    const double pe = static_cast<double>(above_exact) / static_cast<double>(exact.size());
    CHECK(std::abs(pc - pe) < 0.02);
}

TEST_CASE("rank test: nesting, full rank and decisions") {
    const Matrix y = fixtures::coint_matrix();
    const auto rep = test_rank(y, spec(3, 2), 0, RngState{9, 0}, 11000, 1000);
    REQUIRE(rep.rows.size() == 4);
    for (std::size_t r = 0; r + 1 < rep.rows.size(); ++r) {
        CHECK(rep.rows[r].evidence.ev <= rep.rows[r + 1].evidence.ev);
        CHECK(rep.rows[r].log_s_star <= rep.rows[r + 1].log_s_star);
    }
    CHECK(rep.rows[3].evidence.ev == 1.0);
    CHECK_FALSE(rep.rows[3].max_eig_stat.has_value());
    REQUIRE(rep.rows[0].threshold.has_value());
    CHECK(rep.rows[0].evidence.ev < *rep.rows[0].threshold);
    CHECK(rep.rows[0].rejected);
    CHECK(rep.selected_rank == 1);
    CHECK(rep.k == 7);
    CHECK(rep.rows[0].bridge_m == 7 * 3 + 6);
    CHECK(rep.rows[0].bridge_h == 27 - 9);

    const auto again = test_rank(y, spec(3, 2), 0, RngState{9, 0}, 11000, 1000);
    for (std::size_t r = 0; r < rep.rows.size(); ++r) CHECK(rep.rows[r].evidence.ev == again.rows[r].evidence.ev);
}

TEST_CASE("rank test: permutation of the series") {
    const Matrix y = fixtures::coint_matrix();
    Matrix perm(y.rows(), 3);
    perm << y.col(2), y.col(0), y.col(1);
    const auto a = test_rank(y, spec(3, 1), 0, RngState{1, 0}, 21000, 1000);
    const auto b = test_rank(perm, spec(3, 1), 0, RngState{2, 0}, 21000, 1000);
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(a.eigenvalues[i] - b.eigenvalues[i]) < 1e-8);
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
        const double se = std::hypot(a.rows[r].evidence.mc_se_batch.value_or(0.0), b.rows[r].evidence.mc_se_batch.value_or(0.0));
        CHECK(std::abs(a.rows[r].evidence.ev - b.rows[r].evidence.ev) <= std::max(4.0 * se, 0.01));
    }
}

TEST_CASE("threshold policies") {
    CHECK(ThresholdPolicy::parse("fixed:0.05").kind == ThresholdPolicy::Kind::Fixed);
    CHECK(ThresholdPolicy::parse("bridge:p=0.01").value == 0.01);
    CHECK(ThresholdPolicy::parse("fixed:0.01").describe() == "fixed:0.01");
    CHECK_THROWS_AS(ThresholdPolicy::parse("fixed:1.5"), ConfigError);
    CHECK_THROWS_AS(ThresholdPolicy::parse("bridge:0.01"), ConfigError);

    const Matrix y = fixtures::coint_matrix();
    ThresholdPolicy all;
    all.kind = ThresholdPolicy::Kind::Fixed;
    all.value = 0.999999;
    const auto rep = test_rank(y, spec(3, 1), 0, RngState{1, 0}, 3000, 500, all);
    for (int r = 0; r < rep.selected_rank; ++r) CHECK(rep.rows[static_cast<std::size_t>(r)].rejected);
    if (rep.selected_rank < 3) CHECK_FALSE(rep.rows[static_cast<std::size_t>(rep.selected_rank)].rejected);
    CHECK(rep.rows[0].threshold == 0.999999);
}
