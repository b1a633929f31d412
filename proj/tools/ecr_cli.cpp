#include "CLI11.hpp"
#include "ecr/report.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using ecr::report::ConfigError;
using ecr::report::SuiteConfig;

namespace {

struct Common {
    std::string out, format = "text", tol;
    std::vector<std::string> suites;
};

// "1e-3" applies to every requested letter; "d=1e-2,b=1e-3" sets letters individually
std::map<std::string, double> parse_tol(const std::string& spec, const std::string& checks) {
    std::map<std::string, double> out;
    if (spec.empty()) return out;
    auto number = [](const std::string& s) {
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw ConfigError("bad tolerance: " + s);
        }
        if (used != s.size()) throw ConfigError("bad tolerance: " + s);
        return v;
    };
    if (spec.find('=') == std::string::npos) {
        double v = number(spec);
        for (char c : checks)
            if (c != 'f') out[std::string(1, c)] = v;
        return out;
    }
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw ConfigError("bad tolerance entry: " + item);
        out[item.substr(0, eq)] = number(item.substr(eq + 1));
    }
    return out;
}

void add_common(CLI::App* sub, SuiteConfig& cfg, Common& com) {
    sub->add_option("--out", com.out, "write the report here instead of stdout");
    sub->add_option("--format", com.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--seed", cfg.seed, "RNG seed for sampled grids and property checks");
    sub->add_option("--workers", cfg.workers, "quadrature worker threads (ECR_WORKERS overrides)");
    sub->add_flag("--timing", cfg.timing, "include wall time in the report");
}

int emit(const ecr::report::Report& r, const Common& com) {
    std::string body = com.format == "json" ? r.to_json().dump(2) + "\n" : r.to_text();
    if (com.out.empty()) {
        std::cout << body;
    } else {
        std::ofstream f(com.out, std::ios::binary);
        f << body;
        if (!f) {
            std::cerr << "error: cannot write " << com.out << "\n";
            return 2;
        }
    }
    return r.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and numerical checks of the local Hecke relations, Satake data and Archimedean test functions"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a TOML/INI file (keys as the long flags)");

    SuiteConfig cfg;
    Common com;
    long prime = 0;
    bool ramified = false;
    int kappa = 10;

    auto* vu = app.add_subcommand("verify-unramified", "coset tables, closed vs brute J-sums and the relations at p");
    vu->add_option("--prime", prime, "the prime p")->required();
    vu->add_option("--grid", cfg.grid, "small or full")->check(CLI::IsMember({"small", "full"}));
    vu->add_option("--ops", cfg.ops, "Hecke operators T_i to exercise")->delimiter(',');
    add_common(vu, cfg, com);

    auto* vr = app.add_subcommand("verify-ramified", "ramified J-sums, spot values and the relation at p");
    vr->add_option("--prime", prime, "an odd prime p")->required();
    vr->add_option("--grid", cfg.grid, "small or full")->check(CLI::IsMember({"small", "full"}));
    add_common(vr, cfg, com);

    auto* sa = app.add_subcommand("satake", "Satake eigenvalues against the displayed Laurent polynomials");
    sa->add_option("--prime", prime, "the prime p")->required();
    sa->add_flag("--ramified", ramified, "also the ramified tables");
    add_common(sa, cfg, com);

    auto* fu = app.add_subcommand("functoriality", "eigenvalue transport and the local L-factor identity");
    fu->add_option("--prime", prime, "the prime p")->required();
    fu->add_flag("--ramified", ramified, "the ramified case");
    add_common(fu, cfg, com);

    auto* ar = app.add_subcommand("arch", "Archimedean numerical checks");
    ar->add_option("--kappa", kappa, "weight, > 4");
    ar->add_option("--checks", cfg.checks, "letters from abcdef, plus m");
    ar->add_option("--tol", com.tol, "one tolerance, or per letter: d=1e-2,b=1e-3");
    add_common(ar, cfg, com);

    auto* rp = app.add_subcommand("report", "run several suites into one report");
    rp->add_option("--suites", com.suites, "subset of coset,jsum-unram,jsum-ram,helper,ecr,satake,functoriality,arch")
        ->delimiter(',');
    rp->add_option("--primes", cfg.primes)->delimiter(',');
    rp->add_option("--ramified", cfg.ramified, "odd primes dividing d_B")->delimiter(',');
    rp->add_option("--grid", cfg.grid, "small or full")->check(CLI::IsMember({"small", "full"}));
    rp->add_option("--ops", cfg.ops)->delimiter(',');
    rp->add_option("--kappa", cfg.kappas)->delimiter(',');
    rp->add_option("--checks", cfg.checks);
    rp->add_option("--tol", com.tol);
    add_common(rp, cfg, com);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (const char* w = std::getenv("ECR_WORKERS")) {
        try {
            cfg.workers = std::stoi(w);
        } catch (const std::exception&) {
            std::cerr << "error: ECR_WORKERS is not an integer\n";
            return 2;
        }
    }

    try {
        std::vector<std::string> suites;
        std::string id;
        if (vu->parsed()) {
            cfg.primes = {prime};
            cfg.ramified.clear();
            suites = {"coset", "jsum-unram", "ecr"};
            id = "verify-unramified.p" + std::to_string(prime);
        } else if (vr->parsed()) {
            cfg.primes = {prime};
            cfg.ramified.clear();
            if (prime % 2) cfg.ramified = {prime};
            suites = {"jsum-ram"};
            id = "verify-ramified.p" + std::to_string(prime);
        } else if (sa->parsed() || fu->parsed()) {
            cfg.primes = {prime};
            cfg.ramified.clear();
            if (ramified) {
                if (prime % 2 == 0) throw ConfigError("UnsupportedPrime: the ramified model needs odd p");
                cfg.ramified = {prime};
            }
            suites = {sa->parsed() ? "satake" : "functoriality"};
            id = suites[0] + ".p" + std::to_string(prime) + (ramified ? ".ramified" : "");
        } else if (ar->parsed()) {
            cfg.primes.clear();
            cfg.ramified.clear();
            cfg.kappas = {kappa};
            cfg.tol = parse_tol(com.tol, cfg.checks);
            suites = {"arch"};
            id = "arch.k" + std::to_string(kappa);
        } else {
            cfg.tol = parse_tol(com.tol, cfg.checks);
            suites = com.suites;
            id = "report";
        }
        return emit(ecr::report::run_suite(cfg, suites, id), com);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
}
