#include "cartan/io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace cartan::io {

namespace {

double number(const Json& j, const char* what) {
    if (!j.is_number()) throw SchemaError(std::string(what) + ": expected a number");
    return j.get<double>();
}

Complex entry(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && (j.size() == 1 || j.size() == 2)) {
        const double re = number(j[0], "matrix entry");
        const double im = j.size() == 2 ? number(j[1], "matrix entry") : 0.0;
        return {re, im};
    }
    throw SchemaError("matrix entry: expected a number, [re] or [re, im]");
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw SchemaError(std::string("missing field \"") + key + "\"");
    }
    return j.at(key);
}

void putLe(std::uint64_t& h, double x) {
    const auto bits = std::bit_cast<std::uint64_t>(x);
    for (int b = 0; b < 8; ++b) {
        h ^= (bits >> (8 * b)) & 0xffU;
        h *= 0x100000001b3ULL;
    }
}

}  // namespace

Json matrixToJson(const Matrix& a) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            row.push_back(Json::array({a(i, j).real(), a(i, j).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrixFromJson(const Json& j, std::size_t m) {
    const auto n = static_cast<Eigen::Index>(m);
    if (!j.is_array() || j.size() != m) throw SchemaError("matrix: expected " + std::to_string(m) + " rows");
    Matrix a(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const Json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || row.size() != m) {
            throw SchemaError("matrix: expected " + std::to_string(m) + " columns");
        }
        for (Eigen::Index c = 0; c < n; ++c) a(r, c) = entry(row[static_cast<std::size_t>(c)]);
    }
    if (!a.allFinite()) throw SchemaError("matrix: non-finite entry");
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw SchemaError("matrix: not Hermitian");
    }
    return a;
}

Json measureToJson(const DiscreteMeasure& mu) {
    Json atoms = Json::array();
    for (std::size_t i = 0; i < mu.size(); ++i) {
        atoms.push_back({{"weight", mu.weight(i)}, {"matrix", matrixToJson(mu.atom(i).entries())}});
    }
    return {{"dim", mu.dim()}, {"atoms", std::move(atoms)}};
}

DiscreteMeasure measureFromJson(const Json& j) {
    const Json& dim = field(j, "dim");
    if (!dim.is_number_integer() || dim.get<long long>() < 1) {
        throw SchemaError("dim: expected a positive integer");
    }
    const auto m = dim.get<std::size_t>();
    const Json& atoms = field(j, "atoms");
    if (!atoms.is_array() || atoms.empty()) throw SchemaError("atoms: expected a non-empty array");

    std::vector<SpdMatrix> mats;
    std::vector<double> weights;
    double total = 0.0;
    for (const Json& a : atoms) {
        const double w = number(field(a, "weight"), "weight");
        if (!std::isfinite(w) || w < 0.0) throw SchemaError("weight: must be finite and >= 0");
        try {
            mats.emplace_back(matrixFromJson(field(a, "matrix"), m));
        } catch (const NotPositiveDefinite& e) {
            throw SchemaError(std::string("atom is not positive definite: ") + e.what());
        }
        weights.push_back(w);
        total += w;
    }
    const double slack = std::abs(total - 1.0);
    try {
        if (slack <= kWeightExactTol) return DiscreteMeasure(std::move(mats), std::move(weights));
        if (slack <= kWeightNormalizeTol) {
            return DiscreteMeasure::normalized(std::move(mats), std::move(weights));
        }
    } catch (const DomainError& e) {
        throw SchemaError(e.what());
    }
    std::ostringstream os;
    os << "weights sum to " << std::setprecision(17) << total << ", not 1";
    throw SchemaError(os.str());
}

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void writeFile(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
    if (!out) throw Error("write failed: " + path);
}

Json parse(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw SchemaError(std::string("invalid JSON: ") + e.what());
    }
}

DiscreteMeasure loadMeasure(const std::string& path) { return measureFromJson(parse(readFile(path))); }

void saveMeasure(const std::string& path, const DiscreteMeasure& mu) {
    writeFile(path, dump(measureToJson(mu)));
}

SpdMatrix loadMatrix(const std::string& path) {
    const Json j = parse(readFile(path));
    if (j.is_object() && j.contains("matrix")) {
        const Json& rows = j.at("matrix");
        if (!rows.is_array() || rows.empty()) throw SchemaError("matrix: expected a non-empty array");
        try {
            return SpdMatrix(matrixFromJson(rows, rows.size()));
        } catch (const NotPositiveDefinite& e) {
            throw SchemaError(std::string("matrix is not positive definite: ") + e.what());
        }
    }
    const DiscreteMeasure mu = measureFromJson(j);
    if (mu.size() != 1) throw SchemaError("expected a single matrix");
    return mu.atom(0);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json barycenterToJson(const BarycenterResult& r) {
    return {{"point", matrixToJson(r.point.entries())},
            {"residual", r.residual_norm},
            {"relative_residual", r.relative_residual},
            {"iterations", r.iterations},
            {"converged", r.converged}};
}

Json curveToJson(const TrotterCurve& curve) {
    Json points = Json::array();
    for (std::size_t i = 0; i < curve.ts.size(); ++i) {
        points.push_back({{"t", curve.ts[i]},
                          {"matrix", matrixToJson(curve.points[i].entries())},
                          {"distance", curve.distances[i]}});
    }
    return {{"target", matrixToJson(curve.target.entries())}, {"points", std::move(points)}};
}

std::string curveToCsv(const TrotterCurve& curve) {
    std::ostringstream os;
    os << "t,distance\n" << std::setprecision(17);
    for (std::size_t i = 0; i < curve.ts.size(); ++i) os << curve.ts[i] << ',' << curve.distances[i] << '\n';
    return os.str();
}

std::uint64_t fnv1a(const Matrix& a) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            putLe(h, a(i, j).real());
            putLe(h, a(i, j).imag());
        }
    }
    return h;
}

std::string hashHex(std::uint64_t h) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

Json majorizationToJson(const MajorizationReport& r, const SpdMatrix& a, const SpdMatrix& b) {
    Json gaps = Json::array();
    for (Eigen::Index i = 0; i < r.prefix_log_gaps.size(); ++i) gaps.push_back(r.prefix_log_gaps(i));
    return {{"prefix_log_gaps", std::move(gaps)},
            {"det_log_gap", r.det_log_gap},
            {"tol", r.tol},
            {"holds", r.holds},
            {"hash_a", hashHex(fnv1a(a.entries()))},
            {"hash_b", hashHex(fnv1a(b.entries()))}};
}

}  // namespace cartan::io
