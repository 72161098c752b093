#include "cartan/barycenter.hpp"
#include "cartan/random.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace cartan;

namespace {

SpdMatrix diag(std::initializer_list<double> d) {
    RealVector v(static_cast<Eigen::Index>(d.size()));
    Eigen::Index i = 0;
    for (double x : d) v(i++) = x;
    return SpdMatrix::diagonal(v);
}

MeasureShape shapeFor(int trial, double kappa = 100.0) {
    return {static_cast<std::size_t>(2 + trial % 3), static_cast<std::size_t>(2 + trial % 5), kappa};
}

}  // namespace

TEST_CASE("SolverOptions validation") {
    SolverOptions o;
    CHECK_NOTHROW(o.validate());
    o.step = 0.0;
    CHECK_THROWS_AS(o.validate(), DomainError);
    o = {};
    o.residual_tol = 0.0;
    CHECK_THROWS_AS(o.validate(), DomainError);
    o = {};
    o.max_iter = 0;
    CHECK_THROWS_AS(o.validate(), DomainError);
    o = {};
    o.init = InitKind::Explicit;
    CHECK_THROWS_AS(o.validate(), DomainError);
}

TEST_CASE("Karcher residual examples") {
    const double e = std::numbers::e;
    Rng rng(41);
    const SpdMatrix a = randomSpd(rng, 3, 100.0);
    CHECK(karcherResidual(a, DiscreteMeasure::dirac(a)).frobeniusNorm() < 1e-13);
    const DiscreteMeasure cancel = DiscreteMeasure::uniform({diag({e, 1}), diag({1 / e, 1})});
    CHECK(karcherResidual(SpdMatrix::identity(2), cancel).frobeniusNorm() < 1e-15);
    const HermitianMatrix r = karcherResidual(SpdMatrix::identity(2), DiscreteMeasure::dirac(diag({e * e, 1})));
    CHECK(std::abs(r.entries()(0, 0).real() - 2.0) < 1e-15);
    CHECK(std::abs(r.entries()(1, 1)) < 1e-15);
}

TEST_CASE("barycenter of a Dirac measure is its atom") {
    Rng rng(42);
    const SpdMatrix a = randomSpd(rng, 4, 1e4);
    const BarycenterResult r = cartanBarycenter(DiscreteMeasure::dirac(a));
    CHECK(r.converged);
    CHECK((r.point.entries() - a.entries()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("barycenter against frozen high-precision references") {
    // Values from tests/oracles/reference_values.py (mpmath, 50 digits).
    Eigen::MatrixXd x1(3, 3), x2(3, 3), x3(3, 3), g(3, 3);
    x1 << 2, 1, 0, 1, 3, 1, 0, 1, 4;
    x2 << 1, 0.5, 0, 0.5, 1, 0.2, 0, 0.2, 0.5;
    x3 << 5, -1, 0.5, -1, 2, 0, 0.5, 0, 1;
    g << 1.8212215768074581, 0.57435709848735717, 0.042838540420714852,  //
        0.57435709848735717, 1.8933596154050054, 0.42754070137633384,    //
        0.042838540420714852, 0.42754070137633384, 1.604645991366809;
    const DiscreteMeasure mu({SpdMatrix(x1), SpdMatrix(x2), SpdMatrix(x3)}, {0.5, 0.3, 0.2});
    for (InitKind init : {InitKind::LogMean, InitKind::Arithmetic}) {
        SolverOptions o;
        o.init = init;
        o.residual_tol = 1e-13;
        const BarycenterResult r = cartanBarycenter(mu, o);
        CHECK(r.converged);
        CHECK((r.point.entries() - Matrix(g.cast<Complex>())).cwiseAbs().maxCoeff() < 1e-12);
    }

    const Matrix y1 = oracle::complexMatrix(2, {{2, 0}, {1, 1}, {1, -1}, {3, 0}});
    const Matrix y2 = oracle::complexMatrix(2, {{1, 0}, {0, -0.5}, {0, 0.5}, {2, 0}});
    const Matrix gy = oracle::complexMatrix(2, {{1.0964300015912796, 0.0},
                                                {0.15889178039090774, -0.23043144001382431},
                                                {0.15889178039090774, 0.23043144001382431},
                                                {2.0339682227916514, 0.0}});
    SolverOptions o;
    o.residual_tol = 1e-13;
    const SpdMatrix gc = barycenterPoint(DiscreteMeasure({SpdMatrix(y1), SpdMatrix(y2)}, {0.25, 0.75}), o);
    CHECK((gc.entries() - gy).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("two-point barycenter is the weighted geometric mean") {
    Rng rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t m = 2 + rng.index(3);
        const SpdMatrix a = randomSpd(rng, m, 1e3);
        const SpdMatrix b = randomSpd(rng, m, 1e3);
        for (int k = 1; k <= 9; ++k) {
            const double alpha = 0.1 * k;
            const SpdMatrix g = barycenterPoint(DiscreteMeasure({a, b}, {1 - alpha, alpha}));
            CHECK(traceMetric(g, geodesic(a, b, alpha)) <= 1e-8);
        }
    }
}

TEST_CASE("commuting atoms give the log-Euclidean mean") {
    Rng rng(44);
    for (int trial = 0; trial < 20; ++trial) {
        const DiscreteMeasure mu = randomCommutingMeasure(rng, shapeFor(trial, 1e3));
        CHECK(traceMetric(barycenterPoint(mu), expm(logMean(mu))) <= 1e-8);
    }
}

TEST_CASE("barycenter is permutation invariant and congruence equivariant") {
    Rng rng(45);
    for (int trial = 0; trial < 20; ++trial) {
        const DiscreteMeasure mu = randomMeasure(rng, shapeFor(trial));
        std::vector<SpdMatrix> atoms(mu.atoms().rbegin(), mu.atoms().rend());
        std::vector<double> weights(mu.weights().rbegin(), mu.weights().rend());
        const SpdMatrix g = barycenterPoint(mu);
        CHECK(traceMetric(g, barycenterPoint(DiscreteMeasure(atoms, weights))) <= 1e-9);

        const std::size_t m = mu.dim();
        Matrix mm(m, m);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) mm(i, j) = {rng.normal(), rng.normal()};
        }
        const DiscreteMeasure moved = pushforward(mu, [&](const SpdMatrix& x) { return congruence(mm, x); });
        CHECK(traceMetric(barycenterPoint(moved), congruence(mm, g)) <= 1e-8);
    }
}

TEST_CASE("solver reports iterations, residual and non-convergence") {
    Rng rng(46);
    const DiscreteMeasure mu = randomMeasure(rng, {3, 5, 1e3});
    const BarycenterResult r = cartanBarycenter(mu);
    CHECK(r.converged);
    CHECK(r.iterations >= 1);
    CHECK(r.relative_residual <= 1e-10);
    CHECK(r.residual_norm <= 1e-10 * (1 + logm(r.point).frobeniusNorm()));
    CHECK(std::abs(r.relative_residual - relativeResidual(r.point, mu)) <= 1e-14);

    SolverOptions tight;
    tight.max_iter = 1;
    tight.residual_tol = 1e-15;
    const BarycenterResult capped = cartanBarycenter(mu, tight);
    CHECK_FALSE(capped.converged);
    CHECK(capped.iterations == 1);
    CHECK_THROWS_AS(barycenterPoint(mu, tight), BarycenterConvergenceError);
    try {
        barycenterPoint(mu, tight);
    } catch (const BarycenterConvergenceError& e) {
        CHECK(e.best().iterations == 1);
    }
}

TEST_CASE("explicit initial point and damped steps reach the same barycenter") {
    Rng rng(47);
    const DiscreteMeasure mu = randomMeasure(rng, {3, 4, 100.0});
    const SpdMatrix g = barycenterPoint(mu);
    const SpdMatrix g2 = barycenterPoint(mu, SolverOptions::explicitInit(randomSpd(rng, 3, 100.0)));
    CHECK(traceMetric(g, g2) <= 1e-9);
    SolverOptions damped;
    damped.step = 0.5;
    CHECK(traceMetric(g, barycenterPoint(mu, damped)) <= 1e-9);
}

TEST_CASE("barycenter is a local minimum of the Karcher objective") {
    Rng rng(48);
    for (int trial = 0; trial < 10; ++trial) {
        const DiscreteMeasure mu = randomMeasure(rng, shapeFor(trial));
        const SpdMatrix g = barycenterPoint(mu);
        const double f = karcherObjective(g, mu);
        for (int k = 0; k < 20; ++k) {
            const HermitianMatrix h = randomHermitian(rng, mu.dim(), 1e-3);
            CHECK(f <= karcherObjective(riemExp(g, h), mu) + 1e-14);
        }
    }
}

TEST_CASE("scalar barycenter") {
    const double e = std::numbers::e;
    CHECK(barycenter1d({{0.5, 1.0}, {0.5, e * e}}) == doctest::Approx(e).epsilon(1e-15));
    CHECK(barycenter1d({{1.0, 3.7}}) == doctest::Approx(3.7).epsilon(1e-15));
    CHECK(barycenter1d({{0.5, 7.0}, {0.5, 1 / 7.0}}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(barycenter1d({{1.0, -1.0}}), DomainError);
    CHECK_THROWS_AS(barycenter1d({{0.5, 1.0}}), DomainError);
    CHECK_THROWS_AS(barycenter1d({}), DomainError);
}

TEST_CASE("AGH inequalities") {
    Rng rng(49);
    const SpdMatrix a = randomSpd(rng, 3, 100.0);
    const AghReport d = aghCheck(DiscreteMeasure::dirac(a));
    CHECK(d.harmonic_leq_g);
    CHECK(d.g_leq_arithmetic);
    CHECK(std::abs(d.harmonic_gap) < 1e-12);
    CHECK(std::abs(d.arithmetic_gap) < 1e-12);

    // Two commuting diagonal atoms: scalar AGH per entry.
    const AghReport c = aghCheck(DiscreteMeasure::uniform({diag({1, 4}), diag({4, 9})}));
    CHECK(c.harmonic_leq_g);
    CHECK(c.g_leq_arithmetic);
    // Gaps are min over entries of (2 - 1.6, 6 - 72/13) and (2.5 - 2, 6.5 - 6).
    CHECK(c.harmonic_gap == doctest::Approx(std::min(2 - 1.6, 6 - 72.0 / 13)).epsilon(1e-12));
    CHECK(c.arithmetic_gap == doctest::Approx(0.5).epsilon(1e-12));

    for (int trial = 0; trial < 20; ++trial) {
        const AghReport r = aghCheck(randomMeasure(rng, {3, 5, 1e3}));
        CHECK(r.harmonic_leq_g);
        CHECK(r.g_leq_arithmetic);
    }
}

TEST_CASE("property: fundamental contraction") {
    Rng rng(50);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t m = 2 + rng.index(3);
        const DiscreteMeasure mu = randomMeasure(rng, {m, 1 + rng.index(6), 100.0});
        const DiscreteMeasure nu = randomMeasure(rng, {m, 1 + rng.index(6), 100.0});
        CHECK(traceMetric(barycenterPoint(mu), barycenterPoint(nu)) <= wasserstein(mu, nu, 1.0).distance + 1e-7);
    }
}

TEST_CASE("property: monotonicity under the stochastic order") {
    Rng rng(51);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t m = 2 + rng.index(3);
        std::vector<SpdMatrix> lo, hi;
        for (std::size_t i = 0; i < 4; ++i) {
            auto [a, b] = oracle::orderedPair(rng, m);
            lo.push_back(a);
            hi.push_back(b);
        }
        std::rotate(hi.begin(), hi.begin() + 1, hi.end());
        const DiscreteMeasure mu = DiscreteMeasure::uniform(lo);
        const DiscreteMeasure nu = DiscreteMeasure::uniform(hi);
        REQUIRE(stochasticLeq(mu, nu).holds);
        CHECK(loewnerLeq(barycenterPoint(mu), barycenterPoint(nu), 1e-8));
    }
}

TEST_CASE("property: inversion invariance and operator norm inequality") {
    Rng rng(52);
    for (int trial = 0; trial < 20; ++trial) {
        const DiscreteMeasure mu = randomMeasure(rng, shapeFor(trial));
        const SpdMatrix g = barycenterPoint(mu);
        CHECK(traceMetric(barycenterPoint(powerMeasure(mu, -1.0)), inverse(g)) <= 1e-8);
        for (double t : {1.5, 2.0, 3.0}) {
            const double lhs = barycenterPoint(powerMeasure(mu, t)).lambdaMax();
            const double rhs = powm(g, t).lambdaMax();
            CHECK(lhs <= rhs * (1 + 1e-9));
        }
    }
}
