#include "cartan/tensorext.hpp"

#include <cmath>
#include <numeric>

namespace cartan {

namespace {

void requireK(std::size_t m, std::size_t k, const char* what) {
    if (k < 1 || k > m) {
        throw DomainError(std::string(what) + ": k must satisfy 1 <= k <= m (k=" +
                          std::to_string(k) + ", m=" + std::to_string(m) + ")");
    }
}

}  // namespace

CompoundIndex::CompoundIndex(std::size_t m, std::size_t k) : m_(m), k_(k) {
    requireK(m, k, "CompoundIndex");
    std::vector<std::size_t> cur(k);
    std::iota(cur.begin(), cur.end(), std::size_t{0});
    while (true) {
        subsets_.push_back(cur);
        // Advance to the next combination in lexicographic order.
        std::size_t i = k;
        while (i > 0 && cur[i - 1] == m - k + (i - 1)) --i;
        if (i == 0) break;
        ++cur[i - 1];
        for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
}

double binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0.0;
    k = std::min(k, n - k);
    double out = 1.0;
    for (std::size_t i = 1; i <= k; ++i) {
        out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return std::round(out);
}

Complex determinant(const Matrix& a) {
    if (a.rows() != a.cols()) throw DimensionError("determinant: matrix is not square");
    const Eigen::Index n = a.rows();
    switch (n) {
        case 0: return 1.0;
        case 1: return a(0, 0);
        case 2: return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
        case 3:
            return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                   a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                   a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
        default: break;
    }
    Matrix lu = a;
    Complex det = 1.0;
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index pivot = c;
        for (Eigen::Index r = c + 1; r < n; ++r) {
            if (std::abs(lu(r, c)) > std::abs(lu(pivot, c))) pivot = r;
        }
        if (lu(pivot, c) == Complex(0.0)) return 0.0;
        if (pivot != c) {
            lu.row(pivot).swap(lu.row(c));
            det = -det;
        }
        det *= lu(c, c);
        for (Eigen::Index r = c + 1; r < n; ++r) {
            const Complex f = lu(r, c) / lu(c, c);
            lu.row(r).tail(n - c - 1) -= f * lu.row(c).tail(n - c - 1);
        }
    }
    return det;
}

Matrix compound(const Matrix& a, std::size_t k) {
    if (a.rows() != a.cols()) throw DimensionError("compound: matrix is not square");
    const auto m = static_cast<std::size_t>(a.rows());
    const CompoundIndex index(m, k);
    const auto& subsets = index.subsets();
    const auto len = static_cast<Eigen::Index>(subsets.size());
    const auto kk = static_cast<Eigen::Index>(k);
    Matrix out(len, len);
    Matrix block(kk, kk);
    for (Eigen::Index s = 0; s < len; ++s) {
        for (Eigen::Index t = 0; t < len; ++t) {
            for (Eigen::Index i = 0; i < kk; ++i) {
                for (Eigen::Index j = 0; j < kk; ++j) {
                    block(i, j) = a(static_cast<Eigen::Index>(subsets[s][i]),
                                    static_cast<Eigen::Index>(subsets[t][j]));
                }
            }
            out(s, t) = determinant(block);
        }
    }
    return out;
}

HermitianMatrix compound(const HermitianMatrix& a, std::size_t k) {
    return HermitianMatrix(compound(a.entries(), k));
}

SpdMatrix compound(const SpdMatrix& a, std::size_t k) {
    return SpdMatrix(compound(a.entries(), k), kDerivedPdFloor);
}

double topEigenProduct(const SpdMatrix& a, std::size_t k) {
    requireK(a.dim(), k, "topEigenProduct");
    return a.eigen().values.head(static_cast<Eigen::Index>(k)).prod();
}

DiscreteMeasure compoundPushforward(const DiscreteMeasure& mu, std::size_t k) {
    requireK(mu.dim(), k, "compoundPushforward");
    return pushforward(mu, [k](const SpdMatrix& x) { return compound(x, k); });
}

double lipschitzBound(std::size_t m, std::size_t k) {
    requireK(m, k, "lipschitzBound");
    return std::sqrt(static_cast<double>(k) * binomial(m - 1, k - 1));
}

CommutingDiagramReport verifyCommutingDiagram(const DiscreteMeasure& mu, std::size_t k,
                                              double tol, const SolverOptions& opts) {
    requireK(mu.dim(), k, "verifyCommutingDiagram");
    const SpdMatrix lhs = compound(barycenterPoint(mu, opts), k);
    const SpdMatrix rhs = barycenterPoint(compoundPushforward(mu, k), opts);
    const double d = traceMetric(lhs, rhs);
    return {d, d <= tol};
}

}  // namespace cartan
