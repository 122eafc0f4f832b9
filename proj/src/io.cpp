#include "anisolat/io.hpp"

#include <cmath>
#include <cstdio>

namespace anisolat {

namespace {

Vec<Rat> rat_vec_from_json(const Json& j) {
    Vec<Rat> out;
    for (const auto& item : j) out.push_back(rat_from_json(item));
    return out;
}

Vec<QuadScalar> quad_vec_from_json(const Json& j) {
    Vec<QuadScalar> out;
    for (const auto& item : j) out.push_back(quad_from_json(item));
    return out;
}

Json rat_vec_to_json(const Vec<Rat>& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(rat_to_json(x));
    return out;
}

Json int_vec_to_json(const Vec<Int>& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(x.get_str());
    return out;
}

Json quad_vec_to_json(const Vec<QuadScalar>& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(x.to_string());
    return out;
}

}  // namespace

Json rat_to_json(const Rat& x) { return rat_to_string(x); }

Rat rat_from_json(const Json& j) {
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    throw std::invalid_argument("rational values must be strings like \"p/q\" or integers");
}

Json quad_to_json(const QuadScalar& x) { return x.to_string(); }

QuadScalar quad_from_json(const Json& j) {
    if (j.is_string()) return parse_quad(j.get<std::string>());
    if (j.is_number_integer()) return QuadScalar(static_cast<long>(j.get<long long>()));
    throw std::invalid_argument("scalar values must be strings or integers");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

SubspaceData subspace_from_json(const Json& j) {
    if (!j.contains("n")) throw std::invalid_argument("subspace spec needs \"n\"");
    std::size_t n = j.at("n").get<std::size_t>();
    long d = j.value("d", 1L);
    std::vector<Vec<QuadScalar>> basis;
    if (j.contains("F_basis")) {
        for (const auto& row : j.at("F_basis")) basis.push_back(quad_vec_from_json(row));
    }
    return build_subspace(basis, n, d);
}

Json subspace_to_json(const SubspaceData& s) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = s.n;
    j["p"] = s.p;
    j["q"] = s.q;
    j["d"] = s.d;
    j["r"] = s.r;
    j["F_basis"] = Json::array();
    for (const auto& row : s.f_basis) j["F_basis"].push_back(quad_vec_to_json(row));
    j["H_basis"] = Json::array();
    for (const auto& row : s.h_basis) j["H_basis"].push_back(quad_vec_to_json(row));
    j["gamma_basis"] = Json::array();
    for (const auto& row : s.gamma.basis) j["gamma_basis"].push_back(int_vec_to_json(row));
    j["gamma_star_basis"] = Json::array();
    for (const auto& row : s.gamma_star.basis) j["gamma_star_basis"].push_back(rat_vec_to_json(row));
    j["gamma_perp_basis"] = Json::array();
    for (const auto& row : s.gamma_perp.basis) j["gamma_perp_basis"].push_back(int_vec_to_json(row));
    j["covolume_sq"] = rat_to_json(s.covolume_sq);
    return j;
}

Domain domain_from_json(const Json& j) {
    std::string type = j.at("type").get<std::string>();
    if (type == "ellipsoid") {
        Vec<QuadScalar> center = quad_vec_from_json(j.at("center"));
        const auto& rows = j.at("shape");
        Mat<QuadScalar> shape(rows.size(), rows.empty() ? 0 : rows[0].size());
        for (std::size_t i = 0; i < shape.rows; ++i) {
            Vec<QuadScalar> row = quad_vec_from_json(rows[i]);
            if (row.size() != shape.cols) throw std::invalid_argument("ragged shape matrix");
            for (std::size_t k = 0; k < shape.cols; ++k) shape(i, k) = row[k];
        }
        return make_ellipsoid(std::move(center), std::move(shape));
    }
    if (type == "box") {
        return make_box(rat_vec_from_json(j.at("lower")), rat_vec_from_json(j.at("upper")));
    }
    if (type == "superellipsoid") {
        return make_superellipsoid(rat_vec_from_json(j.at("center")),
                                   rat_vec_from_json(j.at("semi_axes")), j.at("power").get<long>(),
                                   j.value("tolerance", 1e-12));
    }
    throw std::invalid_argument("unknown domain type: '" + type + "'");
}

Json domain_to_json(const Domain& d) {
    Json j;
    j["type"] = domain_kind(d);
    if (const auto* e = std::get_if<Ellipsoid>(&d)) {
        j["center"] = quad_vec_to_json(e->center);
        Json shape = Json::array();
        for (std::size_t i = 0; i < e->shape.rows; ++i) {
            Json row = Json::array();
            for (std::size_t k = 0; k < e->shape.cols; ++k) row.push_back(e->shape(i, k).to_string());
            shape.push_back(row);
        }
        j["shape"] = shape;
    } else if (const auto* b = std::get_if<Box>(&d)) {
        j["lower"] = rat_vec_to_json(b->lower);
        j["upper"] = rat_vec_to_json(b->upper);
    } else {
        const auto& o = std::get<OracleDomain>(d);
        if (o.kind == "superellipsoid") {
            j["power"] = o.power;
            j["center"] = rat_vec_to_json(o.center);
            j["semi_axes"] = rat_vec_to_json(o.semi_axes);
            j["tolerance"] = o.tolerance;
        }
        Box bb = bounding_box(d);
        j["bounding_box"] = {{"lower", rat_vec_to_json(bb.lower)}, {"upper", rat_vec_to_json(bb.upper)}};
    }
    j["smooth"] = smooth_boundary(d);
    j["slices_strictly_convex"] = slices_strictly_convex(d);
    return j;
}

ProblemSpec problem_from_json(const Json& j) {
    ProblemSpec spec;
    spec.subspace = subspace_from_json(j.at("subspace"));
    spec.domain = domain_from_json(j.at("domain"));
    if (dimension(spec.domain) != spec.subspace.n)
        throw std::invalid_argument("domain and subspace dimensions differ");
    if (j.contains("eps_grid")) {
        for (const auto& e : j.at("eps_grid")) spec.eps_grid.push_back(rat_from_json(e));
    } else if (j.contains("eps")) {
        spec.eps_grid.push_back(rat_from_json(j.at("eps")));
    }
    for (std::size_t i = 0; i < spec.eps_grid.size(); ++i) {
        if (spec.eps_grid[i] <= 0) throw std::invalid_argument("eps values must be positive");
        if (i > 0 && spec.eps_grid[i] >= spec.eps_grid[i - 1])
            throw std::invalid_argument("eps grid must be strictly decreasing");
    }
    spec.mode = j.value("mode", std::string("sweep"));
    spec.budget = j.value("budget", spec.budget);
    spec.mc_samples = j.value("mc_samples", spec.mc_samples);
    spec.seed = j.value("seed", spec.seed);
    if (j.contains("A")) {
        spec.potential = rat_vec_from_json(j.at("A"));
        if (spec.potential.size() != spec.subspace.n)
            throw std::invalid_argument("potential A has wrong dimension");
    } else {
        spec.potential.assign(spec.subspace.n, Rat(0));
    }
    if (j.contains("mu")) {
        spec.mu = rat_from_json(j.at("mu"));
        if (spec.mu < 0) throw std::invalid_argument("mu must be nonnegative");
    }
    return spec;
}

Json count_report(const CountResult& c) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["eps"] = rat_to_json(c.eps);
    j["total"] = c.total;
    j["ambiguous"] = c.ambiguous;
    Json fibers = Json::array();
    for (const auto& [coords, count] : c.by_fiber) {
        fibers.push_back({{"coords", coords}, {"count", count}});
    }
    j["by_fiber"] = fibers;
    return j;
}

Json leading_report(const LeadingTerm& l, const Rat& eps) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["eps"] = rat_to_json(eps);
    j["leading"] = l.value;
    j["stderr"] = l.stderr_value;
    j["fibers"] = l.fibers;
    return j;
}

Json sweep_report(const std::vector<SweepRecord>& records, const Domain& d) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["domain"] = domain_to_json(d);
    // The predicted remainder exponents assume a smooth boundary; flag
    // domains where that assumption fails so readers can discount the fit.
    j["nonsmooth_boundary"] = !smooth_boundary(d);
    Json rows = Json::array();
    for (const auto& rec : records) {
        Json row;
        row["eps"] = rat_to_json(rec.eps);
        row["skipped"] = rec.skipped;
        row["predicted_exponent"] = rec.predicted_exponent;
        if (!rec.skipped) {
            row["count"] = rec.count;
            row["ambiguous"] = rec.ambiguous;
            row["leading"] = rec.leading;
            row["remainder"] = rec.remainder;
        }
        rows.push_back(row);
    }
    j["records"] = rows;
    return j;
}

std::string sweep_csv(const std::vector<SweepRecord>& records) {
    std::string out = "eps_num,eps_den,count,leading,remainder,predicted_exponent,ambiguous_count\n";
    for (const auto& rec : records) {
        out += rec.eps.get_num().get_str();
        out += ',';
        out += rec.eps.get_den().get_str();
        out += ',';
        if (rec.skipped) {
            out += ",,,";
            out += format_double(rec.predicted_exponent);
            out += ',';
        } else {
            out += std::to_string(rec.count);
            out += ',';
            out += format_double(rec.leading);
            out += ',';
            out += format_double(rec.remainder);
            out += ',';
            out += format_double(rec.predicted_exponent);
            out += ',';
            out += std::to_string(rec.ambiguous);
        }
        out += '\n';
    }
    return out;
}

Json fit_report(const FitResult& f) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["slope"] = f.slope;
    j["intercept"] = f.intercept;
    j["stderr_slope"] = f.stderr_slope;
    j["points"] = f.points;
    j["dropped"] = f.dropped;
    return j;
}

Json spectral_report(const SpectralConfig& cfg, long long count, double leading) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["n"] = cfg.subspace->n;
    j["eps"] = rat_to_json(cfg.eps);
    j["mu"] = rat_to_json(cfg.mu);
    j["lambda"] = 4.0 * M_PI * M_PI * rat_to_double(cfg.mu);
    j["A"] = rat_vec_to_json(cfg.potential);
    j["counting_function"] = count;
    j["leading_term"] = leading;
    return j;
}

// ---------------------------------------------------------------------------
// Verification suite
// ---------------------------------------------------------------------------

namespace {

VerifyCheck check_dual_pairing(const SubspaceData& s) {
    VerifyCheck c{"dual-pairing"};
    c.pass = true;
    for (std::size_t i = 0; i < s.r && c.pass; ++i) {
        for (std::size_t j = 0; j < s.r && c.pass; ++j) {
            Rat v(0);
            for (std::size_t t = 0; t < s.n; ++t)
                v += Rat(s.gamma.basis[i][t]) * s.gamma_star.basis[j][t];
            if (v != (i == j ? 1 : 0)) c.pass = false;
        }
    }
    c.detail = "<gamma_i, dual_j> == delta_ij";
    return c;
}

VerifyCheck check_dual_covolume(const SubspaceData& s) {
    VerifyCheck c{"dual-covolume"};
    Rat dual_sq = covolume_sq(s.gamma_star.basis);
    c.pass = dual_sq * s.covolume_sq == 1;
    c.detail = "covol^2(dual) * covol^2(gamma) == 1";
    return c;
}

VerifyCheck check_perp_covolume(const SubspaceData& s) {
    VerifyCheck c{"perp-covolume"};
    c.pass = s.gamma_perp.gram_det == s.covolume_sq;
    c.detail = "covol^2(gamma_perp) == covol^2(gamma) == " + rat_to_string(s.covolume_sq);
    return c;
}

// Walks k over [-bound, bound]^n and applies fn to each point.
template <class F>
void walk_points(std::size_t n, long bound, F&& fn) {
    Vec<Int> k(n, Int(0));
    auto rec = [&](auto&& self, std::size_t dim) -> void {
        for (long v = -bound; v <= bound; ++v) {
            k[dim] = v;
            if (dim + 1 == n) {
                fn(k);
            } else {
                self(self, dim + 1);
            }
        }
    };
    rec(rec, 0);
}

VerifyCheck check_saturation(const SubspaceData& s) {
    VerifyCheck c{"saturation"};
    c.pass = true;
    walk_points(s.n, 4, [&](const Vec<Int>& k) {
        if (!c.pass) return;
        Vec<Rat> kr = convert_vec<Rat>(k);
        Vec<Rat> pv = project_v(s, kr);
        if (pv != kr) return;  // not in V
        // Every integer point of V must have integer coordinates in gamma.
        for (std::size_t j = 0; j < s.r; ++j) {
            Rat coord(0);
            for (std::size_t t = 0; t < s.n; ++t) coord += s.gamma_star.basis[j][t] * kr[t];
            if (coord.get_den() != 1) c.pass = false;
        }
        if (s.r == 0) {
            bool zero = true;
            for (const auto& x : k) zero = zero && x == 0;
            if (!zero) c.pass = false;
        }
    });
    c.detail = "Z^n cap V = Z gamma on [-4,4]^n";
    return c;
}

VerifyCheck check_projection(const SubspaceData& s) {
    VerifyCheck c{"projection-into-dual"};
    c.pass = true;
    walk_points(s.n, 3, [&](const Vec<Int>& k) {
        if (!c.pass) return;
        Vec<Rat> kr = convert_vec<Rat>(k);
        Vec<Rat> pv = project_v(s, kr);
        Vec<Rat> rebuilt = dual_point(s, fiber_coords(s, k));
        if (pv != rebuilt) c.pass = false;
    });
    c.detail = "pi_V(k) == sum <gamma_j,k> dual_j on [-3,3]^n";
    return c;
}

}  // namespace

std::vector<VerifyCheck> verify_suite(const ProblemSpec& spec) {
    const SubspaceData& s = spec.subspace;
    std::vector<VerifyCheck> checks;
    checks.push_back(check_dual_pairing(s));
    checks.push_back(check_dual_covolume(s));
    checks.push_back(check_perp_covolume(s));
    checks.push_back(check_saturation(s));
    checks.push_back(check_projection(s));

    Rat eps = spec.eps_grid.empty() ? Rat(1, 2) : spec.eps_grid.front();

    {
        VerifyCheck c{"fiber-decomposition"};
        try {
            CountResult res = count_points(spec.domain, s, eps, spec.budget);
            long long sum = 0;
            for (const auto& [key, cnt] : res.by_fiber) sum += cnt;
            c.pass = sum == res.total;
            c.detail = "sum over fibers == total == " + std::to_string(res.total) + " at eps = " +
                       rat_to_string(eps);
        } catch (const BudgetExceeded&) {
            c.skipped = true;
            c.detail = "enumeration budget exceeded";
        }
        checks.push_back(c);
    }

    {
        VerifyCheck c{"gauss-baseline"};
        if (s.p != 0) {
            c.skipped = true;
            c.detail = "only defined for the trivial subspace";
        } else {
            try {
                CountResult res = count_points(spec.domain, s, eps, spec.budget);
                long long ref = gauss_reference(spec.domain, eps, spec.budget);
                c.pass = res.total == ref;
                c.detail = "count == direct dilation count == " + std::to_string(ref);
            } catch (const BudgetExceeded&) {
                c.skipped = true;
                c.detail = "enumeration budget exceeded";
            }
        }
        checks.push_back(c);
    }

    {
        VerifyCheck c{"spectral-equivalence"};
        Vec<QuadScalar> aq = convert_vec<QuadScalar>(spec.potential);
        Vec<QuadScalar> af = mat_vec(s.proj_f, aq);
        bool a_in_f = true;
        for (std::size_t i = 0; i < s.n; ++i)
            if (!(af[i] - aq[i]).is_zero()) a_in_f = false;
        if (!a_in_f) {
            c.skipped = true;
            c.detail = "A has a component transverse to F; identity does not apply";
        } else if (spec.mu <= 0) {
            c.skipped = true;
            c.detail = "mu must be positive";
        } else {
            try {
                SpectralConfig cfg{&s, spec.potential, eps, spec.mu};
                long long n_spec = counting_function(cfg, spec.budget);
                Mat<QuadScalar> shape(s.n, s.n);
                for (std::size_t i = 0; i < s.n; ++i) shape(i, i) = QuadScalar(Rat(1) / spec.mu);
                Ellipsoid ball = make_ellipsoid(aq, shape);
                CountResult res = count_points(Domain{ball}, s, eps, spec.budget);
                c.pass = n_spec == res.total;
                c.detail = "N_eps(4 pi^2 mu) == n_eps(ball) == " + std::to_string(n_spec);
            } catch (const BudgetExceeded&) {
                c.skipped = true;
                c.detail = "enumeration budget exceeded";
            }
        }
        checks.push_back(c);
    }

    return checks;
}

Json verify_report(const std::vector<VerifyCheck>& checks) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    Json rows = Json::array();
    bool all = true;
    for (const auto& c : checks) {
        rows.push_back({{"name", c.name}, {"pass", c.pass}, {"skipped", c.skipped}, {"detail", c.detail}});
        if (!c.skipped && !c.pass) all = false;
    }
    j["checks"] = rows;
    j["all_pass"] = all;
    return j;
}

}  // namespace anisolat
