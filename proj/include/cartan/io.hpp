#pragma once

// JSON and CSV serialization for measures, solver results and reports.
//
// Measure files look like
//   {"dim": m, "atoms": [{"weight": w, "matrix": [[[re, im], ...], ...]}, ...]}
// where a real entry may be written as a bare number or as [re].

#include "cartan/barycenter.hpp"
#include "cartan/lietrotter.hpp"
#include "cartan/majorization.hpp"
#include "cartan/matcore.hpp"
#include "cartan/measure.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace cartan::io {

using Json = nlohmann::json;

/// Malformed input file (exit code 2 at the command line).
class SchemaError : public Error {
public:
    using Error::Error;
};

/// Weights summing to 1 within this are kept bit-for-bit.
inline constexpr double kWeightExactTol = 1e-12;
/// Weights summing to 1 within this are renormalized; anything else is rejected.
inline constexpr double kWeightNormalizeTol = 1e-6;

Json matrixToJson(const Matrix& a);
/// Expects an m x m array of entries; requires Hermitian input (up to 1e-12
/// relative to the largest entry).
Matrix matrixFromJson(const Json& j, std::size_t m);

Json measureToJson(const DiscreteMeasure& mu);
DiscreteMeasure measureFromJson(const Json& j);

std::string readFile(const std::string& path);
void writeFile(const std::string& path, const std::string& text);
Json parse(const std::string& text);

DiscreteMeasure loadMeasure(const std::string& path);
void saveMeasure(const std::string& path, const DiscreteMeasure& mu);

/// {"matrix": ...} or a one-atom measure file.
SpdMatrix loadMatrix(const std::string& path);

/// Two-space indented dump with a trailing newline. Numbers use the shortest
/// representation that round-trips.
std::string dump(const Json& j);

Json barycenterToJson(const BarycenterResult& r);
Json curveToJson(const TrotterCurve& curve);
/// "t,distance" header then one row per grid point.
std::string curveToCsv(const TrotterCurve& curve);

/// 64-bit FNV-1a over the little-endian bytes of (re, im) in row-major order.
std::uint64_t fnv1a(const Matrix& a);
std::string hashHex(std::uint64_t h);

/// Report fields plus "hash_a" / "hash_b" of the compared matrices.
Json majorizationToJson(const MajorizationReport& r, const SpdMatrix& a, const SpdMatrix& b);

}  // namespace cartan::io
