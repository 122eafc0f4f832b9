// test_io_cli.cpp -- JSON round trips, CSV formatting, the verify suite on
// the bundled problem files, and end-to-end runs of the command line tool.
#include <doctest.h>

#include "anisolat/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

using namespace anisolat;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

// Runs the installed binary, captures stdout, discards stderr.
CliResult run_cli(const std::string& args) {
    CliResult r;
    std::string cmd = std::string(ANISOLAT_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (size_t got = fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string spec_path(const std::string& name) {
    return std::string(ANISOLAT_SPECS_DIR) + "/" + name;
}

Json load_spec_json(const std::string& name) {
    std::ifstream in(spec_path(name));
    REQUIRE(in.good());
    Json j;
    in >> j;
    return j;
}

std::string write_temp(const std::string& name, const std::string& text) {
    std::string path = "/tmp/" + name;
    std::ofstream out(path);
    out << text;
    return path;
}

}  // namespace

TEST_CASE("scalar JSON round trips") {
    CHECK(rat_to_json(Rat(1, 2)) == Json("1/2"));
    CHECK(rat_to_json(Rat(-5)) == Json("-5"));
    CHECK(rat_from_json(Json("3/6")) == Rat(1, 2));
    CHECK(rat_from_json(Json(7)) == Rat(7));
    CHECK(quad_from_json(quad_to_json(QuadScalar(Rat(1, 3), Rat(-2), 5))) ==
          QuadScalar(Rat(1, 3), Rat(-2), 5));
    CHECK(quad_to_json(QuadScalar::sqrt_of(2)) == Json("sqrt(2)"));
    CHECK_THROWS_AS(rat_from_json(Json(0.5)), std::invalid_argument);
}

TEST_CASE("doubles print with 17 significant digits") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(4.0) == "4");
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(-1.0) == "-1");
    CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
}

TEST_CASE("subspace JSON: parse, emit, re-parse") {
    Json j = Json::parse(R"({"n": 2, "F_basis": [["1", "1/2"]]})");
    SubspaceData s = subspace_from_json(j);  // d defaults to 1
    CHECK(s.d == 1);
    CHECK(s.gamma.basis[0] == Vec<Int>{Int(2), Int(1)});
    CHECK(s.covolume_sq == Rat(5));

    Json out = subspace_to_json(s);
    CHECK(out["schema_version"] == kSchemaVersion);
    CHECK(out["p"] == 1);
    CHECK(out["q"] == 1);
    CHECK(out["r"] == 1);
    CHECK(out["gamma_basis"] == Json::parse(R"([["2","1"]])"));
    CHECK(out["gamma_star_basis"] == Json::parse(R"([["2/5","1/5"]])"));
    CHECK(out["gamma_perp_basis"] == Json::parse(R"([["1","-2"]])"));
    CHECK(out["covolume_sq"] == Json("5"));

    SubspaceData back = subspace_from_json(out);
    CHECK(back.gamma.basis == s.gamma.basis);
    CHECK(back.covolume_sq == s.covolume_sq);
    CHECK(back.d == s.d);
}

TEST_CASE("domain JSON round trips") {
    SUBCASE("ellipsoid") {
        Json j = Json::parse(
            R"({"type": "ellipsoid", "center": ["0", "1/2"], "shape": [["1", "0"], ["0", "4"]]})");
        Domain d = domain_from_json(j);
        CHECK(domain_kind(d) == "ellipsoid");
        Domain back = domain_from_json(domain_to_json(d));
        const auto& e = std::get<Ellipsoid>(back);
        CHECK(e.center[1] == QuadScalar(Rat(1, 2)));
        CHECK(e.shape(1, 1) == QuadScalar(4));
    }
    SUBCASE("box") {
        Json j = Json::parse(R"({"type": "box", "lower": ["-1", "-3/4"], "upper": ["1", "3/4"]})");
        Domain d = domain_from_json(j);
        Domain back = domain_from_json(domain_to_json(d));
        CHECK(std::get<Box>(back).upper == Vec<Rat>{Rat(1), Rat(3, 4)});
    }
    SUBCASE("superellipsoid") {
        Json j = Json::parse(
            R"({"type": "superellipsoid", "power": 4, "center": ["0", "0"], "semi_axes": ["1", "1"]})");
        Domain d = domain_from_json(j);
        CHECK(domain_kind(d) == "superellipsoid");
        Json out = domain_to_json(d);
        CHECK(out["power"] == 4);
        CHECK(out["tolerance"] == 1e-12);  // default
    }
    SUBCASE("unknown type is rejected") {
        CHECK_THROWS_AS(domain_from_json(Json::parse(R"({"type": "polygon"})")),
                        std::invalid_argument);
    }
}

TEST_CASE("problem specs fill in defaults") {
    Json j = Json::parse(R"({
        "subspace": {"n": 2, "F_basis": []},
        "domain": {"type": "ellipsoid", "center": ["0", "0"], "shape": [["1", "0"], ["0", "1"]]}
    })");
    ProblemSpec spec = problem_from_json(j);
    CHECK(spec.mode == "sweep");
    CHECK(spec.budget == 1000000000);
    CHECK(spec.mc_samples == 1000000);
    CHECK(spec.seed == 20240901);
    CHECK(spec.mu == Rat(1));
    CHECK(spec.potential == Vec<Rat>(2, Rat(0)));
    CHECK(spec.eps_grid.empty());

    // eps grids must decrease
    Json bad = j;
    bad["eps_grid"] = Json::parse(R"(["1/4", "1/2"])");
    CHECK_THROWS_AS(problem_from_json(bad), std::invalid_argument);
}

TEST_CASE("sweep CSV is byte exact") {
    SweepRecord a;
    a.eps = Rat(1, 2);
    a.count = 3;
    a.leading = 4.0;
    a.remainder = -1.0;
    a.predicted_exponent = 0.0;
    SweepRecord b;
    b.eps = Rat(1, 1024);
    b.skipped = true;
    b.predicted_exponent = 0.5;
    std::string csv = sweep_csv({a, b});
    CHECK(csv ==
          "eps_num,eps_den,count,leading,remainder,predicted_exponent,ambiguous_count\n"
          "1,2,3,4,-1,0,0\n"
          "1,1024,,,,0.5,\n");
}

TEST_CASE("verify suite passes on the bundled problems") {
    for (const char* name : {"gauss_disk.json", "line_rational.json", "line_irrational.json",
                             "plane_r1_3d.json"}) {
        CAPTURE(name);
        ProblemSpec spec = problem_from_json(load_spec_json(name));
        auto checks = verify_suite(spec);
        CHECK(checks.size() >= 6);
        for (const auto& c : checks) {
            CAPTURE(c.name);
            CAPTURE(c.detail);
            if (!c.skipped) CHECK(c.pass);
        }
    }
}

TEST_CASE("command line: lattice report") {
    CliResult r = run_cli("lattice --spec " + spec_path("line_rational.json"));
    REQUIRE(r.exit_code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["gamma_basis"] == Json::parse(R"([["2","1"]])"));
    CHECK(j["covolume_sq"] == Json("5"));
    CHECK(j["schema_version"] == kSchemaVersion);
}

TEST_CASE("command line: count with an eps override") {
    CliResult r = run_cli("count --spec " + spec_path("line_rational.json") + " --eps 1/2");
    REQUIRE(r.exit_code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["total"] == 7);
    CHECK(j["eps"] == Json("1/2"));
    long long fiber_total = 0;
    for (const auto& f : j["by_fiber"]) fiber_total += f["count"].get<long long>();
    CHECK(fiber_total == 7);
}

TEST_CASE("command line: spectral mode") {
    CliResult r = run_cli("spectral --spec " + spec_path("plane_r1_3d.json") +
                          " --eps 1/2 --mu 5/2 --A 1/2,0,0");
    REQUIRE(r.exit_code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["counting_function"].get<long long>() > 0);
    CHECK(j["leading_term"].get<double>() > 0.0);
    CHECK(j["mu"] == Json("5/2"));
}

TEST_CASE("command line: sweep determinism and fit") {
    std::string spec_text = R"json({
      "subspace": {"n": 2, "d": 2, "F_basis": [["1", "sqrt(2)"]]},
      "domain": {"type": "ellipsoid", "center": ["0", "0"], "shape": [["1", "0"], ["0", "1"]]},
      "eps_grid": ["1/2", "1/4", "1/8", "1/16", "1/32"],
      "seed": 20240901
    })json";
    std::string path = write_temp("anisolat_sweep_test.json", spec_text);
    std::string csv1 = "/tmp/anisolat_sweep_1.csv";
    std::string csv2 = "/tmp/anisolat_sweep_2.csv";
    CliResult r1 = run_cli("sweep --spec " + path + " --csv " + csv1);
    CliResult r2 = run_cli("sweep --spec " + path + " --csv " + csv2);
    REQUIRE(r1.exit_code == 0);
    REQUIRE(r2.exit_code == 0);
    std::ifstream f1(csv1), f2(csv2);
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());
    CHECK(s1.str().substr(0, 8) == "eps_num,");

    CliResult fit = run_cli("fit --spec " + path);
    REQUIRE(fit.exit_code == 0);
    Json j = Json::parse(fit.out);
    REQUIRE(j.contains("fit"));
    CHECK(j["fit"].contains("slope"));
    CHECK(j["fit"]["points"].get<int>() >= 3);
}

TEST_CASE("command line: verify exits zero on the bundled gauss problem") {
    CliResult r = run_cli("verify --spec " + spec_path("gauss_disk.json"));
    CHECK(r.exit_code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["all_pass"] == true);
}

TEST_CASE("command line error contracts") {
    // malformed JSON -> 2
    std::string bad = write_temp("anisolat_bad.json", "{ not json");
    CHECK(run_cli("count --spec " + bad + " --eps 1/2").exit_code == 2);
    // missing file -> 2
    CHECK(run_cli("count --spec /tmp/anisolat_missing.json --eps 1/2").exit_code == 2);
    // blown budget -> 3
    CHECK(run_cli("count --spec " + spec_path("line_rational.json") +
                  " --eps 1/512 --budget 100")
              .exit_code == 3);
    // invalid eps -> 2
    CHECK(run_cli("count --spec " + spec_path("line_rational.json") + " --eps 0").exit_code == 2);
}
