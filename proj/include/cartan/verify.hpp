#pragma once

// Seeded property suites driven by `cartan verify`.

#include "cartan/io.hpp"
#include "cartan/random.hpp"

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cartan::verify {

/// Slacks used by the suites. Keys accepted by `applyOverrides` are the member
/// names.
struct Tolerances {
    double residual = 1e-10;      // solver relative residual
    double contraction = 1e-7;    // d(G(mu), G(nu)) <= W1 + slack
    double wasserstein = 1e-9;    // W1 <= W2 + slack
    double monotonicity = 1e-8;   // lambda_min(G(nu) - G(mu)) >= -slack
    double logmaj = 1e-7;         // prefix and determinant log gaps
    double commute = 1e-7;        // d(compound(G(mu)), G(compound_* mu))
    double agh = 1e-8;            // Loewner slack in H <= G <= A
    double trotter_slope = 0.9;   // minimal log-log slope
    double trotter_exact = 1e-9;  // distance for commuting atoms
    double sandwich = 1e-9;       // norm and Loewner slack

    /// "key=value,key=value"; throws io::SchemaError on unknown keys or bad values.
    void applyOverrides(const std::string& spec);
};

/// Environment variable holding "key=value,..." tolerance overrides.
inline constexpr const char* kToleranceEnv = "CARTAN_TOL";

Tolerances tolerancesFromEnvironment();

const std::vector<std::string>& suiteNames();

struct Config {
    std::uint64_t seed = 0;
    int trials = 100;
    /// Fixed shape if set; otherwise m cycles over {2, 3, 4} and the atom
    /// count over {2, ..., 8} with the trial index.
    std::optional<std::size_t> m;
    std::optional<std::size_t> atoms;
    double kappa = 100.0;
    Tolerances tol;
    /// Hand-fed (A, B) for the logmaj suite: checks A <_log B directly.
    std::optional<std::pair<SpdMatrix, SpdMatrix>> pair;
};

struct SuiteResult {
    std::string suite;
    int trials = 0;
    int failures = 0;
    /// Largest excess (measured minus allowed) over all checks; a check fails
    /// when its excess is positive.
    double worst = -std::numeric_limits<double>::infinity();
    /// Full inputs and measured values of the first failing trial.
    std::optional<io::Json> counterexample;
    bool passed() const { return failures == 0; }
};

/// Deterministic per-trial generator.
Rng trialRng(std::uint64_t seed, const std::string& suite, int trial);

SuiteResult runSuite(const std::string& suite, const Config& config);

io::Json toJson(const std::vector<SuiteResult>& results, const Config& config);

}  // namespace cartan::verify
