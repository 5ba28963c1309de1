#include "evcoint/errors.hpp"
#include "evcoint/numerics.hpp"

#include "oracles.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <doctest.h>

#include <random>

using namespace evcoint;
using numerics::SpdMatrix;

namespace {

Matrix random_matrix(Eigen::Index r, Eigen::Index c, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> nd;
    Matrix m(r, c);
    for (Eigen::Index j = 0; j < c; ++j)
        for (Eigen::Index i = 0; i < r; ++i) m(i, j) = nd(gen);
    return m;
}

Matrix random_spd(Eigen::Index p, std::uint64_t seed) {
    const Matrix a = random_matrix(p, p + 3, seed);
    return a * a.transpose() + 0.1 * Matrix::Identity(p, p);
}

}  // namespace

TEST_CASE("ols: mean of two points") {
    Matrix x(2, 1), y(2, 1);
    x << 1, 1;
    y << 3, 5;
    const auto r = numerics::ols_solve(x, y);
    CHECK(r.coefficients(0, 0) == doctest::Approx(4.0));
    CHECK(r.residuals(0, 0) == doctest::Approx(-1.0));
    CHECK(r.residuals(1, 0) == doctest::Approx(1.0));
    CHECK(r.rss_matrix(0, 0) == doctest::Approx(2.0));
}

TEST_CASE("ols: identity design reproduces the response") {
    Matrix y(3, 1);
    y << 0.5, -2.0, 7.25;
    const auto r = numerics::ols_solve(Matrix::Identity(3, 3), y);
    CHECK((r.coefficients - y).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(r.residuals.cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("ols: noiseless response recovers coefficients") {
    const Matrix x = random_matrix(50, 3, 11);
    Matrix beta(3, 1);
    beta << 1.5, -0.25, 3.0;
    const auto r = numerics::ols_solve(x, x * beta);
    CHECK((r.coefficients - beta).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("ols: R factor reproduces X'X and residuals are orthogonal") {
    const Matrix x = random_matrix(40, 4, 3);
    const Matrix y = random_matrix(40, 2, 4);
    const auto r = numerics::ols_solve(x, y);
    const Matrix rtr = r.r_factor.transpose() * r.r_factor;
    CHECK((rtr - x.transpose() * x).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((x.transpose() * r.residuals).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("ols: collinear design is rank deficient") {
    Matrix x(5, 2);
    x << 1, 2, 1, 2, 1, 2, 1, 2, 1, 2;
    CHECK_THROWS_AS(numerics::ols_solve(x, Matrix::Ones(5, 1)), RankDeficient);
    CHECK_THROWS_AS(numerics::ols_solve(x, Matrix::Ones(4, 1)), DimensionMismatch);
}

TEST_CASE("log determinant") {
    CHECK(numerics::log_det_spd(SpdMatrix(Matrix::Identity(4, 4))) == doctest::Approx(0.0));
    Matrix d = Matrix::Zero(2, 2);
    d.diagonal() << 2.0, 8.0;
    CHECK(numerics::log_det_spd(SpdMatrix(d)) == doctest::Approx(std::log(16.0)).epsilon(1e-14));

    const Matrix a = random_spd(5, 21);
    const Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    const double oracle = es.eigenvalues().array().log().sum();
    CHECK(std::abs(numerics::log_det_spd(SpdMatrix(a)) - oracle) < 1e-9);
}

TEST_CASE("spd matrix validation") {
    Matrix asym(2, 2);
    asym << 1.0, 0.5, 0.4, 1.0;
    CHECK_THROWS_AS(SpdMatrix{asym}, NotPositiveDefinite);
    Matrix indef(2, 2);
    indef << 1.0, 2.0, 2.0, 1.0;
    CHECK_THROWS_AS(SpdMatrix{indef}, NotPositiveDefinite);
    const Matrix a = random_spd(4, 5);
    const SpdMatrix s(a);
    CHECK((s.inverse() * a - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("canonical eigenvalues") {
    SUBCASE("uncorrelated blocks") {
        const auto e = numerics::canonical_eigenvalues(SpdMatrix(Matrix::Identity(2, 2)), Matrix::Zero(2, 2),
                                                       SpdMatrix(Matrix::Identity(2, 2)));
        CHECK(e[0] == 0.0);
        CHECK(e[1] == 0.0);
    }
    SUBCASE("diagonal correlations") {
        Matrix suv = Matrix::Zero(2, 2);
        suv.diagonal() << 0.6, 0.3;
        const auto e = numerics::canonical_eigenvalues(SpdMatrix(Matrix::Identity(2, 2)), suv,
                                                       SpdMatrix(Matrix::Identity(2, 2)));
        CHECK(e[0] == doctest::Approx(0.36).epsilon(1e-14));
        CHECK(e[1] == doctest::Approx(0.09).epsilon(1e-14));
    }
    SUBCASE("random instance against the nonsymmetric product") {
        const Matrix u = random_matrix(60, 3, 31);
        const Matrix v = random_matrix(60, 3, 32) + 0.7 * u;
        const Matrix suu = u.transpose() * u / 60.0, svv = v.transpose() * v / 60.0, suv = u.transpose() * v / 60.0;
        const auto e = numerics::canonical_eigenvalues(SpdMatrix(svv), suv, SpdMatrix(suu));
        const Matrix prod = svv.inverse() * suv.transpose() * suu.inverse() * suv;
        Eigen::EigenSolver<Matrix> es(prod);
        std::vector<double> oracle;
        for (Eigen::Index i = 0; i < 3; ++i) oracle.push_back(es.eigenvalues()(i).real());
        std::sort(oracle.rbegin(), oracle.rend());
        for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(e[i] - oracle[i]) < 1e-8);
        for (double x : e.values) CHECK((x >= 0.0 && x < 1.0));
    }
}

TEST_CASE("incomplete gamma against boost") {
    for (double a : {0.5, 1.0, 2.5, 4.5, 10.0, 30.0, 100.0}) {
        for (double x : {1e-3, 0.1, 0.9, 1.0, 3.0, 5.5, 11.0, 29.0, 31.0, 60.0, 99.0, 101.0, 150.0}) {
            const double p = boost::math::gamma_p(a, x);
            const double q = boost::math::gamma_q(a, x);
            CHECK(std::abs(numerics::gamma_p(a, x) - p) <= 1e-13 * std::max(1e-300, p) + 1e-300);
            CHECK(std::abs(numerics::gamma_q(a, x) - q) <= 1e-12 * q + 1e-300);
        }
    }
}

TEST_CASE("chi-square special cases") {
    CHECK(numerics::chi2_cdf(0.0, 3) == 0.0);
    CHECK(numerics::chi2_quantile(0.0, 3) == 0.0);
    for (double x : {0.2, 1.386294, 4.0, 25.0}) {
        CHECK(numerics::chi2_cdf(x, 2) == doctest::Approx(1.0 - std::exp(-x / 2.0)).epsilon(1e-14));
    }
    CHECK(numerics::chi2_cdf(1.386294, 2) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK_THROWS_AS(numerics::chi2_quantile(1.0, 3), ConfigError);
    CHECK_THROWS_AS(numerics::chi2_cdf(1.0, 0), ConfigError);
}

TEST_CASE("chi-square quantiles against boost") {
    for (int df : {1, 2, 3, 7, 9, 16, 43, 60}) {
        const boost::math::chi_squared_distribution<double> dist(df);
        for (double p : {1e-12, 1e-6, 0.001, 0.01, 0.1, 0.5, 0.9, 0.99, 0.999999}) {
            const double x = numerics::chi2_quantile(p, df);
            CHECK(x == doctest::Approx(boost::math::quantile(dist, p)).epsilon(1e-11));
            CHECK(numerics::chi2_upper_quantile(p, df) ==
                  doctest::Approx(boost::math::quantile(boost::math::complement(dist, p))).epsilon(1e-11));
        }
    }
}

TEST_CASE("chi-square 0.99 quantile with 9 df against quadrature") {
    const double v = numerics::chi2_quantile(0.99, 9);
    CHECK(numerics::chi2_cdf(v, 9) == doctest::Approx(0.99).epsilon(1e-13));
    const double oracle = oracles::chi2_quantile_by_quadrature(0.99, 9, 10'000'000);
    CHECK(std::abs(v - oracle) < 1e-6);
}
