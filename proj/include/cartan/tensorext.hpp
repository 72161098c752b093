#pragma once

// Antisymmetric tensor (compound) powers.
//
// Basis of the k-th exterior power: all k-subsets of {0, ..., m-1} in
// lexicographic order. Entry (S, T) of the k-th compound of A is det A[S, T].
// Every equality between compound matrices in this library assumes that order.

#include "cartan/barycenter.hpp"
#include "cartan/matcore.hpp"
#include "cartan/measure.hpp"

#include <cstddef>
#include <vector>

namespace cartan {

class CompoundIndex {
public:
    CompoundIndex(std::size_t m, std::size_t k);

    std::size_t m() const { return m_; }
    std::size_t k() const { return k_; }
    std::size_t size() const { return subsets_.size(); }
    const std::vector<std::vector<std::size_t>>& subsets() const { return subsets_; }

private:
    std::size_t m_;
    std::size_t k_;
    std::vector<std::vector<std::size_t>> subsets_;
};

double binomial(std::size_t n, std::size_t k);

/// Determinant by closed form (k <= 3) or LU with partial pivoting.
Complex determinant(const Matrix& a);

Matrix compound(const Matrix& a, std::size_t k);
HermitianMatrix compound(const HermitianMatrix& a, std::size_t k);
SpdMatrix compound(const SpdMatrix& a, std::size_t k);

/// Product of the k largest eigenvalues.
double topEigenProduct(const SpdMatrix& a, std::size_t k);

DiscreteMeasure compoundPushforward(const DiscreteMeasure& mu, std::size_t k);

/// sqrt(k * C(m - 1, k - 1)).
double lipschitzBound(std::size_t m, std::size_t k);

struct CommutingDiagramReport {
    double distance;  // d(compound(G(mu)), G(compound_*(mu)))
    bool pass;
};

CommutingDiagramReport verifyCommutingDiagram(const DiscreteMeasure& mu, std::size_t k,
                                              double tol, const SolverOptions& opts = {});

}  // namespace cartan
