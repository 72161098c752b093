#include "cartan/verify.hpp"

#include "cartan/barycenter.hpp"
#include "cartan/lietrotter.hpp"
#include "cartan/majorization.hpp"
#include "cartan/tensorext.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <sstream>

namespace cartan::verify {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t nameHash(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

double parseDouble(const std::string& key, const std::string& text) {
    double v = 0.0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
        throw io::SchemaError("tolerance override " + key + ": bad value '" + text + "'");
    }
    return v;
}

MeasureShape shapeFor(const Config& c, int trial) {
    MeasureShape s;
    s.m = c.m.value_or(2 + static_cast<std::size_t>(trial % 3));
    s.atoms = c.atoms.value_or(2 + static_cast<std::size_t>(trial % 7));
    s.kappa = c.kappa;
    return s;
}

SolverOptions solverOptions(const Tolerances& tol) {
    SolverOptions o;
    o.residual_tol = tol.residual;
    return o;
}

// Collects checks of one trial: excess = measured - allowed, fails if > 0.
class Trial {
public:
    void check(const std::string& name, double measured, double allowed) {
        const double excess = measured - allowed;
        worst_ = std::max(worst_, std::isnan(excess) ? std::numeric_limits<double>::infinity() : excess);
        values_[name] = {{"measured", measured}, {"allowed", allowed}};
        if (!(excess <= 0.0)) failed_ = true;
    }
    void fail(const std::string& why) {
        failed_ = true;
        worst_ = std::numeric_limits<double>::infinity();
        values_["error"] = why;
    }
    void input(const std::string& name, io::Json j) { inputs_[name] = std::move(j); }

    bool failed() const { return failed_; }
    double worst() const { return worst_; }
    io::Json payload(int index) const {
        return {{"trial", index}, {"inputs", inputs_}, {"values", values_}};
    }

private:
    bool failed_ = false;
    double worst_ = -std::numeric_limits<double>::infinity();
    io::Json inputs_ = io::Json::object();
    io::Json values_ = io::Json::object();
};

using TrialBody = std::function<void(Rng&, const Config&, int, Trial&)>;

// Y = X + P with P a random positive semidefinite matrix.
SpdMatrix dominate(Rng& rng, const SpdMatrix& x) {
    const std::size_t m = x.dim();
    const Matrix q = randomUnitary(rng, m);
    RealVector bump(static_cast<Eigen::Index>(m));
    for (Eigen::Index i = 0; i < bump.size(); ++i) {
        bump(i) = rng.uniform() < 0.25 ? 0.0 : rng.uniform(0.0, 0.5) * x.lambdaMax();
    }
    const Matrix p = q * bump.cast<Complex>().asDiagonal() * q.adjoint();
    return SpdMatrix(Matrix(x.entries() + p));
}

void contraction(Rng& rng, const Config& c, int trial, Trial& out) {
    const MeasureShape shape = shapeFor(c, trial);
    const DiscreteMeasure mu = randomMeasure(rng, shape);
    MeasureShape other = shape;
    other.atoms = 1 + rng.index(8);
    const DiscreteMeasure nu = randomMeasure(rng, other);
    out.input("mu", io::measureToJson(mu));
    out.input("nu", io::measureToJson(nu));
    const SolverOptions o = solverOptions(c.tol);
    const double d = traceMetric(barycenterPoint(mu, o), barycenterPoint(nu, o));
    const double w1 = wasserstein(mu, nu, 1.0).distance;
    const double w2 = wasserstein(mu, nu, 2.0).distance;
    out.check("d(G(mu),G(nu)) <= W1", d, w1 + c.tol.contraction);
    out.check("W1 <= W2", w1, w2 + c.tol.wasserstein);
}

void monotonicity(Rng& rng, const Config& c, int trial, Trial& out) {
    const DiscreteMeasure mu = randomMeasure(rng, shapeFor(c, trial));
    // Each atom's mass is split between up to two dominating atoms, then the
    // atom order is shuffled so the witness is not the identity pairing.
    std::vector<SpdMatrix> atoms;
    std::vector<double> weights;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (rng.uniform() < 0.5) {
            const double split = rng.uniform(0.2, 0.8);
            atoms.push_back(dominate(rng, mu.atom(i)));
            weights.push_back(mu.weight(i) * split);
            atoms.push_back(dominate(rng, mu.atom(i)));
            weights.push_back(mu.weight(i) * (1.0 - split));
        } else {
            atoms.push_back(dominate(rng, mu.atom(i)));
            weights.push_back(mu.weight(i));
        }
    }
    for (std::size_t i = atoms.size(); i > 1; --i) {
        const std::size_t j = rng.index(i);
        std::swap(atoms[i - 1], atoms[j]);
        std::swap(weights[i - 1], weights[j]);
    }
    const DiscreteMeasure nu = DiscreteMeasure::normalized(std::move(atoms), std::move(weights));
    out.input("mu", io::measureToJson(mu));
    out.input("nu", io::measureToJson(nu));
    const StochasticOrderResult order = stochasticLeq(mu, nu);
    out.check("stochastic order witness found", order.holds ? 0.0 : 1.0, 0.0);
    const SolverOptions o = solverOptions(c.tol);
    const SpdMatrix gmu = barycenterPoint(mu, o);
    const SpdMatrix gnu = barycenterPoint(nu, o);
    out.check("-lambda_min(G(nu)-G(mu))", -lambdaMin(gnu.hermitian() - gmu.hermitian()),
              c.tol.monotonicity);
}

void logmaj(Rng& rng, const Config& c, int trial, Trial& out) {
    if (c.pair) {
        const auto& [a, b] = *c.pair;
        out.input("a", io::matrixToJson(a.entries()));
        out.input("b", io::matrixToJson(b.entries()));
        const MajorizationReport r = logMajorize(a, b, c.tol.logmaj);
        for (Eigen::Index k = 0; k + 1 < r.prefix_log_gaps.size(); ++k) {
            out.check("-prefix_gap[" + std::to_string(k + 1) + "]", -r.prefix_log_gaps(k), c.tol.logmaj);
        }
        out.check("|det_log_gap|", std::abs(r.det_log_gap), c.tol.logmaj);
        return;
    }
    const DiscreteMeasure mu = randomMeasure(rng, shapeFor(c, trial));
    out.input("mu", io::measureToJson(mu));
    const SolverOptions o = solverOptions(c.tol);
    for (const TheoremCheck& tc : checkMainTheorem(mu, {1.5, 2.0, 3.0}, c.tol.logmaj, o)) {
        std::ostringstream tag;
        tag << "t=" << tc.t << " ";
        out.check(tag.str() + "-min prefix gap", -tc.report.prefix_log_gaps.minCoeff(), c.tol.logmaj);
        out.check(tag.str() + "|det gap|", std::abs(tc.report.det_log_gap), c.tol.logmaj);
    }
    std::vector<NormSpec> norms;
    for (std::size_t k = 1; k <= mu.dim(); ++k) norms.push_back(NormSpec::kyFan(k));
    const CorollaryReport chain = checkCorollaryChain(mu, {0.25, 0.5, 1.0, 2.0, 4.0}, norms, c.tol.logmaj, o);
    for (const CorollaryPair& p : chain.pairs) {
        std::ostringstream tag;
        tag << "p=" << p.p << ",q=" << p.q << " ";
        out.check(tag.str() + "-min prefix gap", -p.majorization.prefix_log_gaps.minCoeff(), c.tol.logmaj);
        for (const NormComparison& n : p.norms) {
            out.check(tag.str() + n.norm.name(), n.lhs - n.rhs, c.tol.logmaj);
        }
    }
}

void commute(Rng& rng, const Config& c, int trial, Trial& out) {
    const DiscreteMeasure mu = randomMeasure(rng, shapeFor(c, trial));
    out.input("mu", io::measureToJson(mu));
    const SolverOptions o = solverOptions(c.tol);
    for (std::size_t k = 1; k <= mu.dim(); ++k) {
        const CommutingDiagramReport r = verifyCommutingDiagram(mu, k, c.tol.commute, o);
        out.check("k=" + std::to_string(k) + " distance", r.distance, c.tol.commute);
    }
}

void agh(Rng& rng, const Config& c, int trial, Trial& out) {
    const DiscreteMeasure mu = randomMeasure(rng, shapeFor(c, trial));
    out.input("mu", io::measureToJson(mu));
    const AghReport r = aghCheck(mu, c.tol.agh, solverOptions(c.tol));
    out.check("-lambda_min(G-H)", -r.harmonic_gap, c.tol.agh);
    out.check("-lambda_min(A-G)", -r.arithmetic_gap, c.tol.agh);
}

void trotter(Rng& rng, const Config& c, int trial, Trial& out) {
    const MeasureShape shape = shapeFor(c, trial);
    const DiscreteMeasure mu = randomMeasure(rng, shape);
    const DiscreteMeasure comm = randomCommutingMeasure(rng, shape);
    out.input("mu", io::measureToJson(mu));
    out.input("commuting", io::measureToJson(comm));
    const SolverOptions o = solverOptions(c.tol);
    const std::vector<double> ts{1e-1, 1e-2, 1e-3};
    const TrotterCurve curve = lieTrotterCurve(mu, ts, o);
    out.check("-slope", -logLogSlope(curve.ts, curve.distances), -c.tol.trotter_slope);
    const TrotterCurve exact = lieTrotterCurve(comm, ts, o);
    for (std::size_t i = 0; i < ts.size(); ++i) {
        std::ostringstream tag;
        tag << "commuting distance t=" << ts[i];
        out.check(tag.str(), exact.distances[i], c.tol.trotter_exact);
    }
}

void sandwich(Rng& rng, const Config& c, int trial, Trial& out) {
    const DiscreteMeasure mu = randomMeasure(rng, shapeFor(c, trial));
    out.input("mu", io::measureToJson(mu));
    const std::vector<double> ts{2.0, 1.0, 0.5, 0.25, 0.1};
    const SolverOptions o = solverOptions(c.tol);
    for (std::size_t k = 1; k <= mu.dim(); ++k) {
        const SandwichReport r = sandwichCheck(mu, ts, NormSpec::kyFan(k), c.tol.sandwich, o);
        const std::string tag = "ky-fan-" + std::to_string(k) + " ";
        out.check(tag + "ordered", r.ordered ? 0.0 : 1.0, 0.0);
        out.check(tag + "monotone", r.monotone ? 0.0 : 1.0, 0.0);
        out.check(tag + "loewner", r.loewner ? 0.0 : 1.0, 0.0);
    }
    for (const PowerMeanOrderCheck& p : checkPowerMeanOrder(mu, ts, c.tol.sandwich)) {
        std::ostringstream tag;
        tag << "power means t'=" << p.t_small << ",t=" << p.t_large;
        out.check(tag.str(), p.holds ? 0.0 : 1.0, 0.0);
    }
}

const std::map<std::string, TrialBody>& registry() {
    static const std::map<std::string, TrialBody> table{
        {"contraction", contraction}, {"monotonicity", monotonicity}, {"logmaj", logmaj},
        {"commute", commute},         {"agh", agh},                   {"trotter", trotter},
        {"sandwich", sandwich},
    };
    return table;
}

}  // namespace

void Tolerances::applyOverrides(const std::string& spec) {
    const std::map<std::string, double*> keys{
        {"residual", &residual},         {"contraction", &contraction},
        {"wasserstein", &wasserstein},   {"monotonicity", &monotonicity},
        {"logmaj", &logmaj},             {"commute", &commute},
        {"agh", &agh},                   {"trotter_slope", &trotter_slope},
        {"trotter_exact", &trotter_exact}, {"sandwich", &sandwich},
    };
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw io::SchemaError("tolerance override '" + item + "': expected key=value");
        const std::string key = item.substr(0, eq);
        const auto it = keys.find(key);
        if (it == keys.end()) throw io::SchemaError("unknown tolerance key '" + key + "'");
        *it->second = parseDouble(key, item.substr(eq + 1));
    }
}

Tolerances tolerancesFromEnvironment() {
    Tolerances t;
    if (const char* env = std::getenv(kToleranceEnv)) t.applyOverrides(env);
    return t;
}

const std::vector<std::string>& suiteNames() {
    static const std::vector<std::string> names{"contraction", "monotonicity", "logmaj", "commute",
                                                "agh",         "trotter",      "sandwich"};
    return names;
}

Rng trialRng(std::uint64_t seed, const std::string& suite, int trial) {
    return Rng(splitmix(splitmix(seed ^ nameHash(suite)) + static_cast<std::uint64_t>(trial)));
}

SuiteResult runSuite(const std::string& suite, const Config& config) {
    const auto it = registry().find(suite);
    if (it == registry().end()) throw io::SchemaError("unknown suite '" + suite + "'");
    SuiteResult out;
    out.suite = suite;
    const int trials = suite == "logmaj" && config.pair ? 1 : config.trials;
    for (int i = 0; i < trials; ++i) {
        Rng rng = trialRng(config.seed, suite, i);
        Trial t;
        try {
            it->second(rng, config, i, t);
        } catch (const Error& e) {
            t.fail(e.what());
        }
        ++out.trials;
        out.worst = std::max(out.worst, t.worst());
        if (t.failed()) {
            if (!out.counterexample) out.counterexample = t.payload(i);
            ++out.failures;
        }
    }
    return out;
}

io::Json toJson(const std::vector<SuiteResult>& results, const Config& config) {
    io::Json suites = io::Json::array();
    bool all = true;
    for (const SuiteResult& r : results) {
        all = all && r.passed();
        suites.push_back({{"suite", r.suite},
                          {"pass", r.passed()},
                          {"trials", r.trials},
                          {"failures", r.failures},
                          {"worst_excess", r.worst},
                          {"counterexample", r.counterexample ? *r.counterexample : io::Json()}});
    }
    io::Json shape = io::Json::object();
    shape["m"] = config.m ? io::Json(*config.m) : io::Json("2..4");
    shape["atoms"] = config.atoms ? io::Json(*config.atoms) : io::Json("2..8");
    shape["kappa"] = config.kappa;
    return {{"seed", config.seed}, {"trials", config.trials}, {"shape", shape},
            {"pass", all},         {"suites", suites}};
}

}  // namespace cartan::verify
