#pragma once

// Seeded, platform-independent random instances.
//
// std::normal_distribution is implementation-defined, so Gaussians are drawn by
// Box-Muller from raw mt19937_64 output (whose sequence is fixed by the
// standard). Same seed, same bits, on every conforming platform.

#include "cartan/matcore.hpp"
#include "cartan/measure.hpp"

#include <cstdint>
#include <random>

namespace cartan {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal();
    std::uint64_t next() { return engine_(); }
    std::size_t index(std::size_t n);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

enum class Field { Real, Complex };

/// Gaussian matrix -> Householder QR -> Q with the phases of diag(R) removed.
Matrix randomUnitary(Rng& rng, std::size_t m, Field field = Field::Complex);

/// Q diag(lambda) Q* with lambda log-uniform in [1/sqrt(kappa), sqrt(kappa)].
/// kappa == 1 yields the identity exactly.
SpdMatrix randomSpd(Rng& rng, std::size_t m, double kappa, Field field = Field::Complex);

HermitianMatrix randomHermitian(Rng& rng, std::size_t m, double scale = 1.0,
                                Field field = Field::Complex);

struct MeasureShape {
    std::size_t m = 3;
    std::size_t atoms = 4;
    double kappa = 100.0;
    Field field = Field::Complex;
    bool uniform_weights = false;
};

/// Random atoms per randomSpd; weights uniform or drawn from [0.1, 1) and
/// normalized.
DiscreteMeasure randomMeasure(Rng& rng, const MeasureShape& shape);

/// Measure whose atoms share one random frame (pairwise commuting).
DiscreteMeasure randomCommutingMeasure(Rng& rng, const MeasureShape& shape);

}  // namespace cartan
