#pragma once

// Hermitian linear algebra and the Riemannian trace-metric geometry of the
// cone of positive definite matrices.
//
// Every SpdMatrix carries its own eigendecomposition, computed once at
// construction (or inherited from the spectral calculus that produced it).
// All spectral functions (log, powers, inverse square roots) reuse it.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>

namespace cartan {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Base class of all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class NotPositiveDefinite : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

/// Raised when the Jacobi sweeps fail to annihilate the off-diagonal part.
class EigenConvergenceError : public Error {
public:
    EigenConvergenceError(double residual, int sweeps);
    double offDiagonalResidual() const { return residual_; }
    int sweeps() const { return sweeps_; }

private:
    double residual_;
    int sweeps_;
};

/// Relative positivity floor for matrices built from raw entries.
inline constexpr double kDefaultPdFloor = 1e-13;
/// Floor for values derived from an already valid SpdMatrix (spectral
/// calculus, congruences): strict positivity only.
inline constexpr double kDerivedPdFloor = 0.0;

/// Eigenvalues sorted descending with the matching unitary frame (columns).
struct EigenSystem {
    RealVector values;
    Matrix frame;

    std::size_t dim() const { return static_cast<std::size_t>(values.size()); }
    Matrix reconstruct() const;
};

/// m x m complex Hermitian matrix. The input is replaced by (M + M*) / 2.
class HermitianMatrix {
public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(const Matrix& entries);
    explicit HermitianMatrix(const Eigen::MatrixXd& entries);

    static HermitianMatrix zero(std::size_t m);
    static HermitianMatrix identity(std::size_t m);
    static HermitianMatrix diagonal(const RealVector& diag);

    std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
    const Matrix& entries() const { return entries_; }
    Complex operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }

    double frobeniusNorm() const { return entries_.norm(); }
    double trace() const { return entries_.trace().real(); }

    HermitianMatrix operator+(const HermitianMatrix& rhs) const;
    HermitianMatrix operator-(const HermitianMatrix& rhs) const;
    HermitianMatrix operator*(double s) const;
    HermitianMatrix& operator+=(const HermitianMatrix& rhs);

private:
    Matrix entries_;
};

inline HermitianMatrix operator*(double s, const HermitianMatrix& h) { return h * s; }

/// Positive definite Hermitian matrix: a point of the manifold.
///
/// Construction symmetrizes the input and rejects it unless
/// lambda_min > pd_floor * lambda_max (and lambda_min > 0).
class SpdMatrix {
public:
    explicit SpdMatrix(const Matrix& entries, double pd_floor = kDefaultPdFloor);
    explicit SpdMatrix(const Eigen::MatrixXd& entries, double pd_floor = kDefaultPdFloor);
    explicit SpdMatrix(const HermitianMatrix& h, double pd_floor = kDefaultPdFloor);

    /// Builds frame * diag(values) * frame* and keeps (values, frame) as the
    /// eigensystem; values need not be sorted.
    static SpdMatrix fromSpectrum(const RealVector& values, const Matrix& frame,
                                  double pd_floor = kDefaultPdFloor);
    static SpdMatrix identity(std::size_t m);
    static SpdMatrix diagonal(const RealVector& diag, double pd_floor = kDefaultPdFloor);
    static SpdMatrix scalar(std::size_t m, double value);

    std::size_t dim() const { return herm_.dim(); }
    const Matrix& entries() const { return herm_.entries(); }
    const HermitianMatrix& hermitian() const { return herm_; }
    const EigenSystem& eigen() const { return eig_; }
    Complex operator()(std::size_t i, std::size_t j) const { return herm_(i, j); }

    double lambdaMax() const { return eig_.values(0); }
    double lambdaMin() const { return eig_.values(eig_.values.size() - 1); }
    double logDet() const;

private:
    SpdMatrix(HermitianMatrix h, EigenSystem e, double pd_floor);
    void validate(double pd_floor) const;

    HermitianMatrix herm_;
    EigenSystem eig_;
};

// Eigendecomposition ----------------------------------------------------------

struct JacobiOptions {
    double relative_tol = 1e-13;
    int max_sweeps = 60;
};

/// Cyclic complex Jacobi. Eigenvalues descending; ties broken by the index of
/// each eigenvector's dominant component. Each eigenvector is phase-fixed so its
/// dominant component is real and positive.
EigenSystem eigh(const HermitianMatrix& h, const JacobiOptions& opts = {});

RealVector eigenvalues(const HermitianMatrix& h);
double lambdaMin(const HermitianMatrix& h);
double lambdaMax(const HermitianMatrix& h);

// Spectral calculus -----------------------------------------------------------

using ScalarMap = std::function<double(double)>;

/// frame * diag(f(lambda_j)) * frame*. Throws DomainError if f is not finite
/// somewhere on the spectrum.
HermitianMatrix matrixFunction(const SpdMatrix& a, const ScalarMap& f);
HermitianMatrix matrixFunction(const HermitianMatrix& h, const ScalarMap& f);
/// Same as matrixFunction but for maps positive on the spectrum.
SpdMatrix positiveMatrixFunction(const SpdMatrix& a, const ScalarMap& f);

HermitianMatrix logm(const SpdMatrix& a);
SpdMatrix expm(const HermitianMatrix& h);
SpdMatrix powm(const SpdMatrix& a, double t);
SpdMatrix sqrtm(const SpdMatrix& a);
SpdMatrix invsqrtm(const SpdMatrix& a);
SpdMatrix inverse(const SpdMatrix& a);

/// M H M*.
HermitianMatrix congruence(const Matrix& m, const HermitianMatrix& h);
SpdMatrix congruence(const Matrix& m, const SpdMatrix& a);

/// A^p B A^p for SPD A, B. Built from the two eigensystems through an SVD of
/// diag(alpha^p) U_A* U_B diag(beta^{1/2}), so small eigenvalues keep their
/// relative accuracy when the spread is large.
SpdMatrix symmetricProduct(const SpdMatrix& a, double p, const SpdMatrix& b);

// Riemannian geometry ---------------------------------------------------------

/// exp_A(X) = A^{1/2} exp(A^{-1/2} X A^{-1/2}) A^{1/2}.
SpdMatrix riemExp(const SpdMatrix& a, const HermitianMatrix& x);
/// log_A(B) = A^{1/2} log(A^{-1/2} B A^{-1/2}) A^{1/2}.
HermitianMatrix riemLog(const SpdMatrix& a, const SpdMatrix& b);
/// d(A, B) = || log(A^{-1/2} B A^{-1/2}) ||_F.
double traceMetric(const SpdMatrix& a, const SpdMatrix& b);
/// A #_t B = A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}, any real t.
SpdMatrix geodesic(const SpdMatrix& a, const SpdMatrix& b, double t);

// Norms -----------------------------------------------------------------------

class NormSpec {
public:
    enum class Kind { Frobenius, Operator, KyFan, Schatten };

    static NormSpec frobenius() { return NormSpec(Kind::Frobenius, 0, 2.0); }
    static NormSpec operatorNorm() { return NormSpec(Kind::Operator, 0, 0.0); }
    static NormSpec kyFan(std::size_t k);
    static NormSpec schatten(double p);

    Kind kind() const { return kind_; }
    std::size_t k() const { return k_; }
    double p() const { return p_; }
    std::string name() const;

private:
    NormSpec(Kind kind, std::size_t k, double p) : kind_(kind), k_(k), p_(p) {}

    Kind kind_;
    std::size_t k_;
    double p_;
};

/// Unitarily invariant norm evaluated from singular values (|eigenvalues|).
double norm(const HermitianMatrix& h, const NormSpec& spec);
double norm(const SpdMatrix& a, const NormSpec& spec);

/// Largest absolute entrywise difference.
double maxAbsDiff(const Matrix& a, const Matrix& b);

void requireSameDim(std::size_t a, std::size_t b, const char* what);

}  // namespace cartan
