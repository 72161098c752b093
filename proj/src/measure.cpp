#include "cartan/measure.hpp"

#include "cartan/transport.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>

namespace cartan {

// DiscreteMeasure -------------------------------------------------------------

DiscreteMeasure::DiscreteMeasure(std::vector<SpdMatrix> atoms, std::vector<double> weights) {
    if (atoms.size() != weights.size()) {
        throw DimensionError("DiscreteMeasure: atom and weight counts differ");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const double w = weights[i];
        if (!std::isfinite(w) || w < 0.0) {
            throw DomainError("DiscreteMeasure: weights must be finite and non-negative");
        }
        if (w == 0.0) continue;
        if (!atoms_.empty()) requireSameDim(atoms_.front().dim(), atoms[i].dim(), "DiscreteMeasure");
        atoms_.push_back(std::move(atoms[i]));
        weights_.push_back(w);
        total += w;
    }
    if (atoms_.empty()) throw DomainError("DiscreteMeasure: no atom with positive weight");
    if (std::abs(total - 1.0) > 1e-12) {
        std::ostringstream os;
        os.precision(17);
        os << "DiscreteMeasure: weights sum to " << total << ", expected 1";
        throw DomainError(os.str());
    }
}

DiscreteMeasure DiscreteMeasure::dirac(SpdMatrix atom) {
    std::vector<SpdMatrix> atoms;
    atoms.push_back(std::move(atom));
    return DiscreteMeasure(std::move(atoms), {1.0});
}

DiscreteMeasure DiscreteMeasure::uniform(std::vector<SpdMatrix> atoms) {
    std::vector<double> weights(atoms.size(), 1.0);
    return normalized(std::move(atoms), std::move(weights));
}

DiscreteMeasure DiscreteMeasure::normalized(std::vector<SpdMatrix> atoms,
                                            std::vector<double> weights) {
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(total > 0.0) || !std::isfinite(total)) {
        throw DomainError("DiscreteMeasure::normalized: total weight must be positive");
    }
    for (double& w : weights) w /= total;
    // Division may leave the sum a few ulps away from 1; fold the slack into the
    // largest weight so the constructor's check is met.
    const double slack = 1.0 - std::accumulate(weights.begin(), weights.end(), 0.0);
    if (slack != 0.0 && !weights.empty()) {
        auto it = std::max_element(weights.begin(), weights.end());
        *it += slack;
    }
    return DiscreteMeasure(std::move(atoms), std::move(weights));
}

Eigen::VectorXd DiscreteMeasure::weightVector() const {
    return Eigen::Map<const Eigen::VectorXd>(weights_.data(),
                                             static_cast<Eigen::Index>(weights_.size()));
}

DiscreteMeasure DiscreteMeasure::merged() const {
    std::vector<SpdMatrix> atoms;
    std::vector<double> weights;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        bool absorbed = false;
        for (std::size_t j = 0; j < atoms.size(); ++j) {
            if ((atoms[j].entries() - atoms_[i].entries()).norm() <= kAtomMergeTol) {
                weights[j] += weights_[i];
                absorbed = true;
                break;
            }
        }
        if (!absorbed) {
            atoms.push_back(atoms_[i]);
            weights.push_back(weights_[i]);
        }
    }
    return DiscreteMeasure(std::move(atoms), std::move(weights));
}

// Coupling --------------------------------------------------------------------

Coupling::Coupling(DiscreteMeasure rows, DiscreteMeasure cols, Eigen::MatrixXd mass)
    : rows_(std::move(rows)), cols_(std::move(cols)), mass_(std::move(mass)) {
    if (mass_.rows() != static_cast<Eigen::Index>(rows_.size()) ||
        mass_.cols() != static_cast<Eigen::Index>(cols_.size())) {
        throw DimensionError("Coupling: mass matrix shape does not match the marginals");
    }
    if ((mass_.array() < 0.0).any()) throw DomainError("Coupling: negative mass");
    const double row_err = (mass_.rowwise().sum() - rows_.weightVector()).cwiseAbs().maxCoeff();
    const double col_err =
        (mass_.colwise().sum().transpose() - cols_.weightVector()).cwiseAbs().maxCoeff();
    if (row_err > 1e-10 || col_err > 1e-10) {
        std::ostringstream os;
        os << "Coupling: marginals violated (row error " << row_err << ", column error "
           << col_err << ")";
        throw DomainError(os.str());
    }
}

// Push-forwards ---------------------------------------------------------------

DiscreteMeasure pushforward(const DiscreteMeasure& mu, const SpdMap& map) {
    std::vector<SpdMatrix> atoms;
    atoms.reserve(mu.size());
    for (const SpdMatrix& x : mu.atoms()) atoms.push_back(map(x));
    return DiscreteMeasure(std::move(atoms), mu.weights()).merged();
}

DiscreteMeasure powerMeasure(const DiscreteMeasure& mu, double t) {
    if (t == 0.0) throw DomainError("powerMeasure: t must be non-zero");
    return pushforward(mu, [t](const SpdMatrix& x) { return powm(x, t); });
}

DiscreteMeasure truncate(const DiscreteMeasure& mu, double n, TruncationAnchor anchor) {
    if (!(n > 1.0)) throw DomainError("truncate: n must be > 1");
    std::vector<SpdMatrix> atoms;
    std::vector<double> weights;
    double excluded = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const SpdMatrix& x = mu.atom(i);
        if (x.lambdaMin() >= 1.0 / n && x.lambdaMax() <= n) {
            atoms.push_back(x);
            weights.push_back(mu.weight(i));
        } else {
            excluded += mu.weight(i);
        }
    }
    if (excluded > 0.0) {
        double level = 1.0;
        switch (anchor) {
            case TruncationAnchor::Low: level = 1.0 / n; break;
            case TruncationAnchor::High: level = n; break;
            case TruncationAnchor::Identity: level = 1.0; break;
        }
        atoms.push_back(SpdMatrix::scalar(mu.dim(), level));
        weights.push_back(excluded);
    }
    return DiscreteMeasure(std::move(atoms), std::move(weights)).merged();
}

// Wasserstein -----------------------------------------------------------------

WassersteinResult wasserstein(const DiscreteMeasure& mu, const DiscreteMeasure& nu, double p) {
    requireSameDim(mu.dim(), nu.dim(), "wasserstein");
    if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("wasserstein: p must be >= 1");
    const auto n = static_cast<Eigen::Index>(mu.size());
    const auto k = static_cast<Eigen::Index>(nu.size());
    Eigen::MatrixXd cost(n, k);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            cost(i, j) = std::pow(traceMetric(mu.atom(i), nu.atom(j)), p);
        }
    }
    const transport::TransportPlan plan =
        transport::solveTransport(mu.weightVector(), nu.weightVector(), cost);
    const double distance = std::pow(std::max(0.0, plan.cost), 1.0 / p);
    return {distance, Coupling(mu, nu, plan.flow)};
}

// Orders ----------------------------------------------------------------------

bool loewnerLeq(const SpdMatrix& a, const SpdMatrix& b, double tol) {
    requireSameDim(a.dim(), b.dim(), "loewnerLeq");
    return lambdaMin(b.hermitian() - a.hermitian()) >= -tol * (1.0 + b.lambdaMax());
}

StochasticOrderResult stochasticLeq(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                    double tol) {
    requireSameDim(mu.dim(), nu.dim(), "stochasticLeq");
    std::vector<std::vector<bool>> admissible(mu.size(), std::vector<bool>(nu.size(), false));
    for (std::size_t i = 0; i < mu.size(); ++i) {
        for (std::size_t j = 0; j < nu.size(); ++j) {
            admissible[i][j] = lambdaMin(nu.atom(j).hermitian() - mu.atom(i).hermitian()) >= -tol;
        }
    }
    const transport::FlowResult flow =
        transport::maxBipartiteFlow(mu.weightVector(), nu.weightVector(), admissible);
    StochasticOrderResult out;
    out.holds = flow.value >= 1.0 - 1e-12;
    if (out.holds) out.witness.emplace(mu, nu, flow.flow);
    return out;
}

// Means -----------------------------------------------------------------------

SpdMatrix arithmeticMean(const DiscreteMeasure& mu) {
    HermitianMatrix acc = HermitianMatrix::zero(mu.dim());
    for (std::size_t i = 0; i < mu.size(); ++i) acc += mu.weight(i) * mu.atom(i).hermitian();
    return SpdMatrix(acc);
}

SpdMatrix harmonicMean(const DiscreteMeasure& mu) {
    HermitianMatrix acc = HermitianMatrix::zero(mu.dim());
    for (std::size_t i = 0; i < mu.size(); ++i) {
        acc += mu.weight(i) * inverse(mu.atom(i)).hermitian();
    }
    return inverse(SpdMatrix(acc));
}

HermitianMatrix logMean(const DiscreteMeasure& mu) {
    HermitianMatrix acc = HermitianMatrix::zero(mu.dim());
    for (std::size_t i = 0; i < mu.size(); ++i) acc += mu.weight(i) * logm(mu.atom(i));
    return acc;
}

}  // namespace cartan
