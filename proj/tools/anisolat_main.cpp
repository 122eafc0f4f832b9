// anisolat -- lattice counts in anisotropically dilated domains, their
// asymptotics, and the equivalent torus eigenvalue counts.
//
// Exit codes: 0 success, 2 invalid input, 3 enumeration budget exceeded,
// 4 internal error or failed verification.

#include "anisolat/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

using namespace anisolat;

namespace {

struct CommonArgs {
    std::string spec_path;
    std::string out_path;
    std::string eps_text;
    std::string potential_text;
    std::string mu_text;
    long long budget = -1;
    long long samples = -1;
    long long seed = -1;
    int threads = 0;
    bool pretty = false;
};

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open spec file: " + path);
    Json j;
    in >> j;
    return j;
}

std::vector<Rat> parse_eps_list(const std::string& text) {
    std::vector<Rat> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string piece =
            comma == std::string::npos ? text.substr(start) : text.substr(start, comma - start);
        if (!piece.empty()) out.push_back(parse_rat(piece));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw std::invalid_argument("empty eps list");
    return out;
}

Vec<Rat> parse_rat_vector(const std::string& text, std::size_t n) {
    std::vector<Rat> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string piece =
            comma == std::string::npos ? text.substr(start) : text.substr(start, comma - start);
        if (!piece.empty()) out.push_back(parse_rat(piece));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.size() != n) throw std::invalid_argument("vector literal of wrong dimension");
    return out;
}

// Loads the problem spec and applies command-line overrides.
ProblemSpec load_problem(const CommonArgs& args) {
    ProblemSpec spec = problem_from_json(load_json(args.spec_path));
    if (!args.eps_text.empty()) spec.eps_grid = parse_eps_list(args.eps_text);
    if (args.budget >= 0) spec.budget = args.budget;
    if (args.samples >= 0) spec.mc_samples = args.samples;
    if (args.seed >= 0) spec.seed = static_cast<std::uint64_t>(args.seed);
    if (!args.potential_text.empty())
        spec.potential = parse_rat_vector(args.potential_text, spec.subspace.n);
    if (!args.mu_text.empty()) spec.mu = parse_rat(args.mu_text);
    return spec;
}

Rat first_eps(const ProblemSpec& spec) {
    if (spec.eps_grid.empty())
        throw std::invalid_argument("no eps given (spec eps_grid or --eps)");
    return spec.eps_grid.front();
}

void emit(const Json& j, const CommonArgs& args) {
    std::string text = args.pretty ? j.dump(2) : j.dump();
    text += '\n';
    if (args.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(args.out_path);
        if (!out) throw std::invalid_argument("cannot open output file: " + args.out_path);
        out << text;
    }
}

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_eps) {
    cmd->add_option("--spec", args.spec_path, "problem spec JSON file")->required();
    cmd->add_option("--out", args.out_path, "write the JSON report here instead of stdout");
    cmd->add_option("--eps", args.eps_text,
                    needs_eps ? "dilation parameter, e.g. 1/8" : "comma-separated eps grid");
    cmd->add_option("--budget", args.budget, "candidate budget for exact enumeration");
    cmd->add_option("--samples", args.samples, "Monte Carlo samples per slice");
    cmd->add_option("--seed", args.seed, "Monte Carlo seed");
    cmd->add_option("--threads", args.threads, "enumeration threads (0 = auto)");
    cmd->add_flag("--pretty", args.pretty, "indent JSON output");
}

int run_lattice(const CommonArgs& args) {
    ProblemSpec spec = load_problem(args);
    emit(subspace_to_json(spec.subspace), args);
    return 0;
}

int run_count(const CommonArgs& args) {
    ProblemSpec spec = load_problem(args);
    CountResult res =
        count_points(spec.domain, spec.subspace, first_eps(spec), spec.budget, args.threads);
    emit(count_report(res), args);
    return 0;
}

int run_leading(const CommonArgs& args) {
    ProblemSpec spec = load_problem(args);
    Rat eps = first_eps(spec);
    LeadingTerm lead = leading_term(spec.domain, spec.subspace, eps, spec.mc_samples, spec.seed);
    emit(leading_report(lead, eps), args);
    return 0;
}

std::vector<SweepRecord> run_sweep_records(const ProblemSpec& spec, int threads) {
    if (spec.eps_grid.empty())
        throw std::invalid_argument("sweep needs a nonempty eps grid");
    return sweep(spec.domain, spec.subspace, spec.eps_grid, spec.budget, spec.mc_samples,
                 spec.seed, threads);
}

int run_sweep(const CommonArgs& args, const std::string& csv_path) {
    ProblemSpec spec = load_problem(args);
    auto records = run_sweep_records(spec, args.threads);
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw std::invalid_argument("cannot open output file: " + csv_path);
        out << sweep_csv(records);
    }
    emit(sweep_report(records, spec.domain), args);
    return 0;
}

int run_fit(const CommonArgs& args) {
    ProblemSpec spec = load_problem(args);
    auto records = run_sweep_records(spec, args.threads);
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["sweep"] = sweep_report(records, spec.domain);
    j["fit"] = fit_report(fit_remainder(records));
    emit(j, args);
    return 0;
}

int run_spectral(const CommonArgs& args) {
    ProblemSpec spec = load_problem(args);
    SpectralConfig cfg{&spec.subspace, spec.potential, first_eps(spec), spec.mu};
    long long count = counting_function(cfg, spec.budget, args.threads);
    double leading = spectral_leading_term(cfg);
    emit(spectral_report(cfg, count, leading), args);
    return 0;
}

int run_verify(const CommonArgs& args) {
    ProblemSpec spec = load_problem(args);
    auto checks = verify_suite(spec);
    Json report = verify_report(checks);
    for (const auto& c : checks) {
        const char* tag = c.skipped ? "SKIP" : (c.pass ? "PASS" : "FAIL");
        std::cerr << tag << " " << c.name << ": " << c.detail << "\n";
    }
    emit(report, args);
    return report["all_pass"].get<bool>() ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"anisotropic lattice point counting and torus spectral asymptotics"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string csv_path;

    CLI::App* lattice = app.add_subcommand("lattice", "print the lattice apparatus for F");
    add_common(lattice, args, false);
    CLI::App* count = app.add_subcommand("count", "exact point count at one eps");
    add_common(count, args, true);
    CLI::App* leading = app.add_subcommand("leading", "leading term at one eps");
    add_common(leading, args, true);
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "count and leading term over an eps grid");
    add_common(sweep_cmd, args, false);
    sweep_cmd->add_option("--csv", csv_path, "also write the sweep as CSV");
    CLI::App* fit = app.add_subcommand("fit", "sweep plus log-log remainder fit");
    add_common(fit, args, false);
    CLI::App* spectral = app.add_subcommand("spectral", "torus eigenvalue count and leading term");
    add_common(spectral, args, true);
    spectral->add_option("--mu", args.mu_text, "threshold mu = lambda / (4 pi^2)");
    spectral->add_option("--A", args.potential_text, "magnetic potential, e.g. 1/2,0");
    CLI::App* verify = app.add_subcommand("verify", "structural identity checks");
    add_common(verify, args, false);
    verify->add_option("--mu", args.mu_text, "threshold for the spectral check");
    verify->add_option("--A", args.potential_text, "potential for the spectral check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (lattice->parsed()) return run_lattice(args);
        if (count->parsed()) return run_count(args);
        if (leading->parsed()) return run_leading(args);
        if (sweep_cmd->parsed()) return run_sweep(args, csv_path);
        if (fit->parsed()) return run_fit(args);
        if (spectral->parsed()) return run_spectral(args);
        if (verify->parsed()) return run_verify(args);
        std::cerr << "{\"error\":\"no subcommand\"}\n";
        return 2;
    } catch (const BudgetExceeded& e) {
        Json err{{"error", "budget_exceeded"}, {"estimated_candidates", e.estimated_candidates}};
        std::cerr << err.dump() << "\n";
        return 3;
    } catch (const Json::exception& e) {
        Json err{{"error", "invalid_input"}, {"detail", e.what()}};
        std::cerr << err.dump() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        Json err{{"error", "invalid_input"}, {"detail", e.what()}};
        std::cerr << err.dump() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        Json err{{"error", "invalid_input"}, {"detail", e.what()}};
        std::cerr << err.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        Json err{{"error", "internal"}, {"detail", e.what()}};
        std::cerr << err.dump() << "\n";
        return 4;
    }
}
