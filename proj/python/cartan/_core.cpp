#include "cartan/barycenter.hpp"
#include "cartan/io.hpp"
#include "cartan/lietrotter.hpp"
#include "cartan/majorization.hpp"
#include "cartan/random.hpp"
#include "cartan/tensorext.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

namespace py = pybind11;
using namespace cartan;

namespace {

// Complex128 arrays in, complex128 arrays out. Real input is promoted by the
// Eigen caster.
DiscreteMeasure toMeasure(const std::vector<Matrix>& atoms, const std::vector<double>& weights) {
    if (atoms.size() != weights.size()) throw DimensionError("atoms and weights differ in length");
    std::vector<SpdMatrix> xs;
    xs.reserve(atoms.size());
    for (const Matrix& a : atoms) xs.emplace_back(a);
    return DiscreteMeasure(std::move(xs), weights);
}

std::pair<std::vector<Matrix>, std::vector<double>> fromMeasure(const DiscreteMeasure& mu) {
    std::vector<Matrix> atoms;
    for (const SpdMatrix& x : mu.atoms()) atoms.push_back(x.entries());
    return {atoms, mu.weights()};
}

SolverOptions solverOptions(double tol, int max_iter, const std::string& init) {
    SolverOptions o;
    o.residual_tol = tol;
    o.max_iter = max_iter;
    if (init == "arith") {
        o.init = InitKind::Arithmetic;
    } else if (init != "logmean") {
        throw DomainError("init must be 'logmean' or 'arith'");
    }
    o.validate();
    return o;
}

NormSpec parseNorm(const std::string& name, std::size_t k, double p) {
    if (name == "frobenius") return NormSpec::frobenius();
    if (name == "operator") return NormSpec::operatorNorm();
    if (name == "kyfan") return NormSpec::kyFan(k);
    if (name == "schatten") return NormSpec::schatten(p);
    throw DomainError("unknown norm '" + name + "'");
}

py::dict resultDict(const BarycenterResult& r) {
    py::dict d;
    d["point"] = r.point.entries();
    d["residual"] = r.residual_norm;
    d["relative_residual"] = r.relative_residual;
    d["iterations"] = r.iterations;
    d["converged"] = r.converged;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Cartan barycenters of positive definite matrices.";

    auto base = py::register_exception<Error>(m, "CartanError", PyExc_ValueError);
    py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
    py::register_exception<NotPositiveDefinite>(m, "NotPositiveDefinite", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<EigenConvergenceError>(m, "EigenConvergenceError", base.ptr());
    py::register_exception<BarycenterConvergenceError>(m, "BarycenterConvergenceError", base.ptr());
    py::register_exception<io::SchemaError>(m, "SchemaError", base.ptr());

    m.def(
        "eigh",
        [](const Matrix& h) {
            const EigenSystem e = eigh(HermitianMatrix(h));
            return py::make_tuple(e.values, e.frame);
        },
        py::arg("h"), "Descending eigenvalues and unitary frame of a Hermitian matrix.");

    m.def(
        "trace_metric", [](const Matrix& a, const Matrix& b) { return traceMetric(SpdMatrix(a), SpdMatrix(b)); },
        py::arg("a"), py::arg("b"));
    m.def(
        "geodesic",
        [](const Matrix& a, const Matrix& b, double t) {
            return geodesic(SpdMatrix(a), SpdMatrix(b), t).entries();
        },
        py::arg("a"), py::arg("b"), py::arg("t"));
    m.def(
        "powm", [](const Matrix& a, double t) { return powm(SpdMatrix(a), t).entries(); }, py::arg("a"),
        py::arg("t"));
    m.def(
        "logm", [](const Matrix& a) { return logm(SpdMatrix(a)).entries(); }, py::arg("a"));
    m.def(
        "expm", [](const Matrix& h) { return expm(HermitianMatrix(h)).entries(); }, py::arg("h"));

    m.def(
        "barycenter",
        [](const std::vector<Matrix>& atoms, const std::vector<double>& weights, double tol, int max_iter,
           const std::string& init) {
            return resultDict(cartanBarycenter(toMeasure(atoms, weights), solverOptions(tol, max_iter, init)));
        },
        py::arg("atoms"), py::arg("weights"), py::arg("tol") = 1e-10, py::arg("max_iter") = 1000,
        py::arg("init") = "logmean", "Karcher mean; never raises on non-convergence (check 'converged').");

    m.def(
        "karcher_residual",
        [](const Matrix& z, const std::vector<Matrix>& atoms, const std::vector<double>& weights) {
            return karcherResidual(SpdMatrix(z), toMeasure(atoms, weights)).entries();
        },
        py::arg("z"), py::arg("atoms"), py::arg("weights"));

    m.def(
        "wasserstein",
        [](const std::vector<Matrix>& a, const std::vector<double>& wa, const std::vector<Matrix>& b,
           const std::vector<double>& wb, double p) {
            const WassersteinResult w = wasserstein(toMeasure(a, wa), toMeasure(b, wb), p);
            return py::make_tuple(w.distance, Eigen::MatrixXd(w.coupling.mass()));
        },
        py::arg("atoms_a"), py::arg("weights_a"), py::arg("atoms_b"), py::arg("weights_b"), py::arg("p") = 1.0,
        "(distance, coupling mass matrix).");

    m.def(
        "compound", [](const Matrix& a, std::size_t k) { return compound(a, k); }, py::arg("a"), py::arg("k"));
    m.def("lipschitz_bound", &lipschitzBound, py::arg("m"), py::arg("k"));

    m.def(
        "log_majorize",
        [](const Matrix& a, const Matrix& b, double tol) {
            const MajorizationReport r = logMajorize(SpdMatrix(a), SpdMatrix(b), tol);
            py::dict d;
            d["prefix_log_gaps"] = r.prefix_log_gaps;
            d["det_log_gap"] = r.det_log_gap;
            d["tol"] = r.tol;
            d["holds"] = r.holds;
            return d;
        },
        py::arg("a"), py::arg("b"), py::arg("tol") = 1e-8);

    m.def(
        "lie_trotter_target",
        [](const std::vector<Matrix>& atoms, const std::vector<double>& weights) {
            return lieTrotterTarget(toMeasure(atoms, weights)).entries();
        },
        py::arg("atoms"), py::arg("weights"));
    m.def(
        "lie_trotter_curve",
        [](const std::vector<Matrix>& atoms, const std::vector<double>& weights, const std::vector<double>& ts,
           double tol) {
            SolverOptions o;
            o.residual_tol = tol;
            const TrotterCurve c = lieTrotterCurve(toMeasure(atoms, weights), ts, o);
            std::vector<Matrix> points;
            for (const SpdMatrix& x : c.points) points.push_back(x.entries());
            py::dict d;
            d["ts"] = c.ts;
            d["points"] = points;
            d["distances"] = c.distances;
            d["target"] = c.target.entries();
            return d;
        },
        py::arg("atoms"), py::arg("weights"), py::arg("ts"), py::arg("tol") = 1e-10);
    m.def(
        "power_mean",
        [](const std::vector<Matrix>& atoms, const std::vector<double>& weights, double t) {
            return powerMean(toMeasure(atoms, weights), t).entries();
        },
        py::arg("atoms"), py::arg("weights"), py::arg("t"));

    m.def(
        "norm",
        [](const Matrix& h, const std::string& kind, std::size_t k, double p) {
            return norm(HermitianMatrix(h), parseNorm(kind, k, p));
        },
        py::arg("h"), py::arg("kind") = "frobenius", py::arg("k") = 1, py::arg("p") = 2.0,
        "kind: frobenius, operator, kyfan (uses k) or schatten (uses p).");

    m.def(
        "random_measure",
        [](std::uint64_t seed, std::size_t dim, std::size_t atoms, double kappa, bool real) {
            if (!(kappa >= 1.0)) throw DomainError("kappa must be >= 1");
            Rng rng(seed);
            return fromMeasure(
                randomMeasure(rng, {dim, atoms, kappa, real ? Field::Real : Field::Complex, false}));
        },
        py::arg("seed"), py::arg("m"), py::arg("atoms"), py::arg("kappa"), py::arg("real") = false,
        "Same construction as `cartan gen`: (atoms, weights).");

    m.def(
        "load_measure",
        [](const std::string& path) { return fromMeasure(io::loadMeasure(path)); }, py::arg("path"));
    m.def(
        "save_measure",
        [](const std::string& path, const std::vector<Matrix>& atoms, const std::vector<double>& weights) {
            io::saveMeasure(path, toMeasure(atoms, weights));
        },
        py::arg("path"), py::arg("atoms"), py::arg("weights"));
}
