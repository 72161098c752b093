#include "cartan/matcore.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace cartan {

EigenConvergenceError::EigenConvergenceError(double residual, int sweeps)
    : Error("eigh: Jacobi sweeps did not converge after " + std::to_string(sweeps) +
            " sweeps (off-diagonal residual " + std::to_string(residual) + ")"),
      residual_(residual),
      sweeps_(sweeps) {}

void requireSameDim(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        std::ostringstream os;
        os << what << ": dimension mismatch (" << a << " vs " << b << ")";
        throw DimensionError(os.str());
    }
}

double maxAbsDiff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("maxAbsDiff: shape mismatch");
    }
    return (a - b).cwiseAbs().maxCoeff();
}

Matrix EigenSystem::reconstruct() const {
    return frame * values.cast<Complex>().asDiagonal() * frame.adjoint();
}

// HermitianMatrix -------------------------------------------------------------

HermitianMatrix::HermitianMatrix(const Matrix& entries) {
    if (entries.rows() != entries.cols()) {
        throw DimensionError("HermitianMatrix: input is not square");
    }
    if (!entries.allFinite()) {
        throw DomainError("HermitianMatrix: non-finite entry");
    }
    entries_ = (entries + entries.adjoint()) * 0.5;
}

HermitianMatrix::HermitianMatrix(const Eigen::MatrixXd& entries)
    : HermitianMatrix(Matrix(entries.cast<Complex>())) {}

HermitianMatrix HermitianMatrix::zero(std::size_t m) {
    return HermitianMatrix(Matrix(Matrix::Zero(m, m)));
}

HermitianMatrix HermitianMatrix::identity(std::size_t m) {
    return HermitianMatrix(Matrix(Matrix::Identity(m, m)));
}

HermitianMatrix HermitianMatrix::diagonal(const RealVector& diag) {
    return HermitianMatrix(Matrix(diag.cast<Complex>().asDiagonal()));
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& rhs) const {
    requireSameDim(dim(), rhs.dim(), "HermitianMatrix::operator+");
    HermitianMatrix out;
    out.entries_ = entries_ + rhs.entries_;
    return out;
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& rhs) const {
    requireSameDim(dim(), rhs.dim(), "HermitianMatrix::operator-");
    HermitianMatrix out;
    out.entries_ = entries_ - rhs.entries_;
    return out;
}

HermitianMatrix HermitianMatrix::operator*(double s) const {
    HermitianMatrix out;
    out.entries_ = entries_ * s;
    return out;
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& rhs) {
    requireSameDim(dim(), rhs.dim(), "HermitianMatrix::operator+=");
    entries_ += rhs.entries_;
    return *this;
}

// Jacobi ----------------------------------------------------------------------

namespace {

double offDiagonalNorm(const Matrix& a) {
    double sum = 0.0;
    const Eigen::Index m = a.rows();
    for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
            if (i != j) sum += std::norm(a(i, j));
        }
    }
    return std::sqrt(sum);
}

Eigen::Index dominantIndex(const Matrix& frame, Eigen::Index col) {
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index i = 0; i < frame.rows(); ++i) {
        const double v = std::abs(frame(i, col));
        if (v > best_abs) {
            best_abs = v;
            best = i;
        }
    }
    return best;
}

// Sorts (values, frame) descending and fixes eigenvector phases.
EigenSystem canonicalize(const RealVector& values, const Matrix& frame) {
    const Eigen::Index m = values.size();
    std::vector<Eigen::Index> dominant(static_cast<std::size_t>(m));
    for (Eigen::Index j = 0; j < m; ++j) dominant[j] = dominantIndex(frame, j);

    std::vector<Eigen::Index> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        if (values(a) != values(b)) return values(a) > values(b);
        return dominant[a] < dominant[b];
    });

    EigenSystem out;
    out.values.resize(m);
    out.frame.resize(frame.rows(), m);
    for (Eigen::Index j = 0; j < m; ++j) {
        const Eigen::Index src = order[static_cast<std::size_t>(j)];
        out.values(j) = values(src);
        const Complex pivot = frame(dominant[src], src);
        const double mag = std::abs(pivot);
        const Complex phase = mag > 0.0 ? std::conj(pivot) / mag : Complex(1.0, 0.0);
        out.frame.col(j) = frame.col(src) * phase;
        out.frame(dominant[src], j) = mag;
    }
    return out;
}

}  // namespace

EigenSystem eigh(const HermitianMatrix& h, const JacobiOptions& opts) {
    const Eigen::Index m = static_cast<Eigen::Index>(h.dim());
    Matrix a = h.entries();
    Matrix v = Matrix::Identity(m, m);
    const double scale = a.norm();

    int sweep = 0;
    double off = offDiagonalNorm(a);
    while (off > opts.relative_tol * scale) {
        if (sweep >= opts.max_sweeps) throw EigenConvergenceError(off, sweep);
        for (Eigen::Index p = 0; p < m; ++p) {
            for (Eigen::Index q = p + 1; q < m; ++q) {
                const Complex z = a(p, q);
                const double az = std::abs(z);
                if (az == 0.0) continue;
                const Complex phase = std::conj(z / az);
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * az);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = (theta >= 0.0 ? 1.0 : -1.0) /
                        (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // G = diag(1, phase) * [[c, s], [-s, c]] restricted to (p, q).
                const Complex gpp(c, 0.0);
                const Complex gpq(s, 0.0);
                const Complex gqp = -s * phase;
                const Complex gqq = c * phase;
                for (Eigen::Index k = 0; k < m; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * gpp + akq * gqp;
                    a(k, q) = akp * gpq + akq * gqq;
                }
                for (Eigen::Index k = 0; k < m; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
                    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
                }
                for (Eigen::Index k = 0; k < m; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * gpp + vkq * gqp;
                    v(k, q) = vkp * gpq + vkq * gqq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
        ++sweep;
        off = offDiagonalNorm(a);
    }
    return canonicalize(a.diagonal().real(), v);
}

RealVector eigenvalues(const HermitianMatrix& h) { return eigh(h).values; }

double lambdaMin(const HermitianMatrix& h) {
    const RealVector v = eigenvalues(h);
    return v(v.size() - 1);
}

double lambdaMax(const HermitianMatrix& h) { return eigenvalues(h)(0); }

// SpdMatrix -------------------------------------------------------------------

SpdMatrix::SpdMatrix(HermitianMatrix h, EigenSystem e, double pd_floor)
    : herm_(std::move(h)), eig_(std::move(e)) {
    validate(pd_floor);
}

SpdMatrix::SpdMatrix(const Matrix& entries, double pd_floor)
    : SpdMatrix(HermitianMatrix(entries), pd_floor) {}

SpdMatrix::SpdMatrix(const Eigen::MatrixXd& entries, double pd_floor)
    : SpdMatrix(HermitianMatrix(entries), pd_floor) {}

SpdMatrix::SpdMatrix(const HermitianMatrix& h, double pd_floor) : herm_(h), eig_(eigh(h)) {
    validate(pd_floor);
}

void SpdMatrix::validate(double pd_floor) const {
    if (dim() == 0) throw DimensionError("SpdMatrix: empty matrix");
    const double lo = lambdaMin();
    const double hi = lambdaMax();
    if (!(lo > 0.0) || !(lo > pd_floor * hi) || !std::isfinite(hi)) {
        std::ostringstream os;
        os << "SpdMatrix: not positive definite (lambda_min=" << lo << ", lambda_max=" << hi
           << ", pd_floor=" << pd_floor << ")";
        throw NotPositiveDefinite(os.str());
    }
}

SpdMatrix SpdMatrix::fromSpectrum(const RealVector& values, const Matrix& frame,
                                  double pd_floor) {
    if (frame.rows() != frame.cols() || frame.cols() != values.size()) {
        throw DimensionError("SpdMatrix::fromSpectrum: shape mismatch");
    }
    EigenSystem e = canonicalize(values, frame);
    HermitianMatrix h(e.reconstruct());
    return SpdMatrix(std::move(h), std::move(e), pd_floor);
}

SpdMatrix SpdMatrix::identity(std::size_t m) {
    return fromSpectrum(RealVector::Ones(static_cast<Eigen::Index>(m)),
                        Matrix::Identity(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m)));
}

SpdMatrix SpdMatrix::diagonal(const RealVector& diag, double pd_floor) {
    const Eigen::Index m = diag.size();
    return fromSpectrum(diag, Matrix::Identity(m, m), pd_floor);
}

SpdMatrix SpdMatrix::scalar(std::size_t m, double value) {
    return diagonal(RealVector::Constant(static_cast<Eigen::Index>(m), value));
}

double SpdMatrix::logDet() const { return eig_.values.array().log().sum(); }

// Spectral calculus -----------------------------------------------------------

namespace {

RealVector applyMap(const RealVector& values, const ScalarMap& f) {
    RealVector out(values.size());
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        out(i) = f(values(i));
        if (!std::isfinite(out(i))) {
            std::ostringstream os;
            os << "matrixFunction: map is not finite at eigenvalue " << values(i);
            throw DomainError(os.str());
        }
    }
    return out;
}

HermitianMatrix assemble(const Matrix& frame, const RealVector& values) {
    return HermitianMatrix(Matrix(frame * values.cast<Complex>().asDiagonal() * frame.adjoint()));
}

}  // namespace

HermitianMatrix matrixFunction(const SpdMatrix& a, const ScalarMap& f) {
    return assemble(a.eigen().frame, applyMap(a.eigen().values, f));
}

HermitianMatrix matrixFunction(const HermitianMatrix& h, const ScalarMap& f) {
    const EigenSystem e = eigh(h);
    return assemble(e.frame, applyMap(e.values, f));
}

SpdMatrix positiveMatrixFunction(const SpdMatrix& a, const ScalarMap& f) {
    return SpdMatrix::fromSpectrum(applyMap(a.eigen().values, f), a.eigen().frame, kDerivedPdFloor);
}

HermitianMatrix logm(const SpdMatrix& a) {
    return matrixFunction(a, [](double x) { return std::log(x); });
}

SpdMatrix expm(const HermitianMatrix& h) {
    const EigenSystem e = eigh(h);
    return SpdMatrix::fromSpectrum(e.values.array().exp().matrix(), e.frame, kDerivedPdFloor);
}

SpdMatrix powm(const SpdMatrix& a, double t) {
    if (t == 1.0) return a;
    return positiveMatrixFunction(a, [t](double x) { return std::pow(x, t); });
}

SpdMatrix sqrtm(const SpdMatrix& a) {
    return positiveMatrixFunction(a, [](double x) { return std::sqrt(x); });
}

SpdMatrix invsqrtm(const SpdMatrix& a) {
    return positiveMatrixFunction(a, [](double x) { return 1.0 / std::sqrt(x); });
}

SpdMatrix inverse(const SpdMatrix& a) {
    return positiveMatrixFunction(a, [](double x) { return 1.0 / x; });
}

HermitianMatrix congruence(const Matrix& m, const HermitianMatrix& h) {
    if (m.cols() != static_cast<Eigen::Index>(h.dim())) {
        throw DimensionError("congruence: shape mismatch");
    }
    return HermitianMatrix(Matrix(m * h.entries() * m.adjoint()));
}

SpdMatrix congruence(const Matrix& m, const SpdMatrix& a) {
    return SpdMatrix(congruence(m, a.hermitian()), kDerivedPdFloor);
}

SpdMatrix symmetricProduct(const SpdMatrix& a, double p, const SpdMatrix& b) {
    requireSameDim(a.dim(), b.dim(), "symmetricProduct");
    const EigenSystem& ea = a.eigen();
    const EigenSystem& eb = b.eigen();
    const Matrix factor = ea.values.array().pow(p).matrix().cast<Complex>().asDiagonal() *
                          (ea.frame.adjoint() * eb.frame) *
                          eb.values.array().sqrt().matrix().cast<Complex>().asDiagonal();
    Eigen::JacobiSVD<Matrix, Eigen::ColPivHouseholderQRPreconditioner> svd(factor,
                                                                          Eigen::ComputeFullU);
    const RealVector values = svd.singularValues().array().square().matrix();
    return SpdMatrix::fromSpectrum(values, Matrix(ea.frame * svd.matrixU()), kDerivedPdFloor);
}

// Riemannian geometry ---------------------------------------------------------

SpdMatrix riemExp(const SpdMatrix& a, const HermitianMatrix& x) {
    requireSameDim(a.dim(), x.dim(), "riemExp");
    const SpdMatrix inv_half = invsqrtm(a);
    return symmetricProduct(a, 0.5, expm(congruence(inv_half.entries(), x)));
}

HermitianMatrix riemLog(const SpdMatrix& a, const SpdMatrix& b) {
    requireSameDim(a.dim(), b.dim(), "riemLog");
    const SpdMatrix half = sqrtm(a);
    return congruence(half.entries(), logm(symmetricProduct(a, -0.5, b)));
}

double traceMetric(const SpdMatrix& a, const SpdMatrix& b) {
    requireSameDim(a.dim(), b.dim(), "traceMetric");
    return symmetricProduct(a, -0.5, b).eigen().values.array().log().matrix().norm();
}

SpdMatrix geodesic(const SpdMatrix& a, const SpdMatrix& b, double t) {
    requireSameDim(a.dim(), b.dim(), "geodesic");
    if (t == 0.0) return a;
    return symmetricProduct(a, 0.5, powm(symmetricProduct(a, -0.5, b), t));
}

// Norms -----------------------------------------------------------------------

NormSpec NormSpec::kyFan(std::size_t k) {
    if (k == 0) throw DomainError("NormSpec::kyFan: k must be >= 1");
    return NormSpec(Kind::KyFan, k, 1.0);
}

NormSpec NormSpec::schatten(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("NormSpec::schatten: p must be >= 1");
    return NormSpec(Kind::Schatten, 0, p);
}

std::string NormSpec::name() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Frobenius: return "frobenius";
        case Kind::Operator: return "operator";
        case Kind::KyFan: os << "ky-fan-" << k_; return os.str();
        case Kind::Schatten: os << "schatten-" << p_; return os.str();
    }
    return "unknown";
}

namespace {

double normFromSingular(RealVector sv, const NormSpec& spec) {
    std::sort(sv.data(), sv.data() + sv.size(), std::greater<>());
    switch (spec.kind()) {
        case NormSpec::Kind::Frobenius: return sv.norm();
        case NormSpec::Kind::Operator: return sv.size() ? sv(0) : 0.0;
        case NormSpec::Kind::KyFan:
            if (spec.k() > static_cast<std::size_t>(sv.size())) {
                throw DomainError("norm: Ky Fan index exceeds the dimension");
            }
            return sv.head(static_cast<Eigen::Index>(spec.k())).sum();
        case NormSpec::Kind::Schatten:
            return std::pow(sv.array().pow(spec.p()).sum(), 1.0 / spec.p());
    }
    return 0.0;
}

}  // namespace

double norm(const HermitianMatrix& h, const NormSpec& spec) {
    if (spec.kind() == NormSpec::Kind::Frobenius) return h.frobeniusNorm();
    return normFromSingular(eigenvalues(h).cwiseAbs(), spec);
}

double norm(const SpdMatrix& a, const NormSpec& spec) {
    return normFromSingular(a.eigen().values, spec);
}

}  // namespace cartan
