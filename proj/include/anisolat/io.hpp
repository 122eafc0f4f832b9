// io.hpp -- JSON problem specs and reports, CSV sweep output.
//
// All rationals travel as strings ("p/q"), Q(sqrt(d)) scalars as
// "a+b*sqrt(d)"; doubles are printed with %.17g so files are reproducible
// byte for byte.  Every report carries schema_version.
#pragma once

#include "anisolat/asymptotics.hpp"
#include "anisolat/spectral.hpp"

#include <json.hpp>

#include <string>

namespace anisolat {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::json;

// ---- scalars ----
Json rat_to_json(const Rat& x);
Rat rat_from_json(const Json& j);
Json quad_to_json(const QuadScalar& x);
QuadScalar quad_from_json(const Json& j);
std::string format_double(double v);

// ---- subspace ----
// Input: {"n": 2, "d": 2, "F_basis": [["1", "sqrt(2)"]]}; d defaults to 1,
// F_basis to empty.  Output adds p, q, r, gamma/gamma*/gamma_perp bases and
// covolume_sq.
SubspaceData subspace_from_json(const Json& j);
Json subspace_to_json(const SubspaceData& s);

// ---- domain ----
// {"type":"ellipsoid","center":[...],"shape":[[...]]}
// {"type":"box","lower":[...],"upper":[...]}
// {"type":"superellipsoid","power":4,"center":[...],"semi_axes":[...]}
Domain domain_from_json(const Json& j);
Json domain_to_json(const Domain& d);

// ---- problem spec ----
struct ProblemSpec {
    SubspaceData subspace;
    Domain domain;
    std::vector<Rat> eps_grid;
    std::string mode = "sweep";
    long long budget = 1000000000;
    long long mc_samples = 1000000;
    std::uint64_t seed = 20240901;
    Vec<Rat> potential;  // spectral mode; defaults to 0
    Rat mu = 1;          // spectral mode threshold
};

ProblemSpec problem_from_json(const Json& j);

// ---- reports ----
Json count_report(const CountResult& c);
Json leading_report(const LeadingTerm& l, const Rat& eps);
Json sweep_report(const std::vector<SweepRecord>& records, const Domain& d);
std::string sweep_csv(const std::vector<SweepRecord>& records);
Json fit_report(const FitResult& f);
Json spectral_report(const SpectralConfig& cfg, long long count, double leading);

struct VerifyCheck {
    std::string name;
    bool pass = false;
    bool skipped = false;
    std::string detail;
};

// Structural identities for one problem spec: dual pairing, covolume
// duality, perp covolume identity, saturation, projection containment,
// fiber decomposition, and (when applicable) the Gauss baseline and the
// spectral equivalence.
std::vector<VerifyCheck> verify_suite(const ProblemSpec& spec);
Json verify_report(const std::vector<VerifyCheck>& checks);

}  // namespace anisolat
