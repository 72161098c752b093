#include "cartan/random.hpp"

#include <cmath>
#include <numbers>

namespace cartan {

double Rng::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

std::size_t Rng::index(std::size_t n) {
    if (n == 0) throw DomainError("Rng::index: empty range");
    return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

Matrix randomUnitary(Rng& rng, std::size_t m, Field field) {
    const auto n = static_cast<Eigen::Index>(m);
    Matrix g(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double re = rng.normal();
            const double im = field == Field::Complex ? rng.normal() : 0.0;
            g(i, j) = Complex(re, im);
        }
    }
    const Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix& r = qr.matrixQR();
    for (Eigen::Index j = 0; j < n; ++j) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0) q.col(j) *= d / mag;
    }
    return q;
}

SpdMatrix randomSpd(Rng& rng, std::size_t m, double kappa, Field field) {
    if (!(kappa >= 1.0)) throw DomainError("randomSpd: kappa must be >= 1");
    const auto n = static_cast<Eigen::Index>(m);
    const Matrix q = randomUnitary(rng, m, field);
    if (kappa == 1.0) return SpdMatrix::identity(m);
    const double log_kappa = std::log(kappa);
    RealVector lambda(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        lambda(i) = std::exp((rng.uniform() - 0.5) * log_kappa);
    }
    return SpdMatrix(Matrix(q * lambda.cast<Complex>().asDiagonal() * q.adjoint()));
}

HermitianMatrix randomHermitian(Rng& rng, std::size_t m, double scale, Field field) {
    const auto n = static_cast<Eigen::Index>(m);
    Matrix g(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double re = rng.normal();
            const double im = field == Field::Complex ? rng.normal() : 0.0;
            g(i, j) = Complex(re, im) * scale;
        }
    }
    return HermitianMatrix(g);
}

namespace {

std::vector<double> drawWeights(Rng& rng, const MeasureShape& shape) {
    std::vector<double> w(shape.atoms, 1.0);
    if (!shape.uniform_weights) {
        for (double& x : w) x = rng.uniform(0.1, 1.0);
    }
    return w;
}

}  // namespace

DiscreteMeasure randomMeasure(Rng& rng, const MeasureShape& shape) {
    if (shape.atoms == 0 || shape.m == 0) throw DomainError("randomMeasure: empty shape");
    std::vector<SpdMatrix> atoms;
    atoms.reserve(shape.atoms);
    for (std::size_t i = 0; i < shape.atoms; ++i) {
        atoms.push_back(randomSpd(rng, shape.m, shape.kappa, shape.field));
    }
    return DiscreteMeasure::normalized(std::move(atoms), drawWeights(rng, shape));
}

DiscreteMeasure randomCommutingMeasure(Rng& rng, const MeasureShape& shape) {
    if (shape.atoms == 0 || shape.m == 0) throw DomainError("randomCommutingMeasure: empty shape");
    const auto n = static_cast<Eigen::Index>(shape.m);
    const Matrix q = randomUnitary(rng, shape.m, shape.field);
    const double log_kappa = std::log(shape.kappa);
    std::vector<SpdMatrix> atoms;
    for (std::size_t i = 0; i < shape.atoms; ++i) {
        RealVector lambda(n);
        for (Eigen::Index j = 0; j < n; ++j) {
            lambda(j) = std::exp((rng.uniform() - 0.5) * log_kappa);
        }
        atoms.push_back(SpdMatrix::fromSpectrum(lambda, q));
    }
    return DiscreteMeasure::normalized(std::move(atoms), drawWeights(rng, shape));
}

}  // namespace cartan
