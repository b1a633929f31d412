#include "ecr/report.hpp"

#include "ecr/arch.hpp"
#include "ecr/closed_forms.hpp"
#include "ecr/satake.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <sstream>

namespace ecr::report {

using nlohmann::json;

namespace {

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

std::string slug(const std::string& s) {
    std::string out;
    bool sep = false;
    for (char c : s) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            if (sep && !out.empty()) out += '_';
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            sep = false;
        } else {
            sep = true;
        }
    }
    return out;
}

bool has(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }
bool has(const std::vector<long>& v, long x) { return std::find(v.begin(), v.end(), x) != v.end(); }

Case from_line(const std::string& id, const CheckLine& l, json inputs) {
    Case c;
    c.id = id;
    inputs["cases"] = l.cases;
    c.inputs = std::move(inputs);
    c.expected = "exact equality on every case";
    c.got = std::to_string(l.cases - l.failures) + "/" + std::to_string(l.cases) + " equal";
    c.status = l.ok && l.cases > 0 ? "pass" : "fail";
    c.note = l.first_failure;
    return c;
}

Case from_num(const std::string& id, const arch::NumCheck& n, json inputs) {
    Case c;
    c.id = id;
    inputs["cases"] = n.cases;
    if (n.error_estimate > 0) inputs["error_estimate"] = n.error_estimate;
    c.inputs = std::move(inputs);
    c.expected = std::string(n.relative ? "relative" : "absolute") + " residual <= " + sci(n.tolerance);
    c.got = sci(n.residual);
    c.residual = n.residual;
    c.status = n.ok && n.cases > 0 ? "pass" : "fail";
    c.note = n.note.empty() ? n.name : n.name + "; " + n.note;
    return c;
}

Case exact_value(const std::string& id, const ExactRational& want, const ExactRational& got, json inputs) {
    Case c;
    c.id = id;
    c.inputs = std::move(inputs);
    c.expected = want.get_str();
    c.got = got.get_str();
    c.status = want == got ? "pass" : "fail";
    return c;
}

Case skipped(const std::string& id, const std::string& why, json inputs) {
    Case c;
    c.id = id;
    c.inputs = std::move(inputs);
    c.status = "skipped";
    c.note = why;
    return c;
}

struct Grids {
    std::size_t per_pair, per_ord, stride_small_p, stride_large_p;
};

Grids grid_sizes(const std::string& g) {
    // full: 15 (alpha, beta) pairs x 140 = 2100 points per prime
    if (g == "full") return {140, 40, 50, 100};
    return {20, 8, 50, 100};
}

class Runner {
public:
    explicit Runner(const SuiteConfig& c) : cfg_(c), sizes_(grid_sizes(c.grid)) {}

    void coset(Report& r) {
        const TableLabel split[4] = {TableLabel::T1H, TableLabel::T2H, TableLabel::T1G, TableLabel::T2G};
        for (long p : cfg_.primes) {
            for (auto l : split) {
                CosetTable t = coset_table(l, p);
                if (!has(cfg_.ops, t.index())) continue;
                add_coset(r, t, p);
            }
            if (!has(cfg_.ramified, p)) continue;
            for (auto l : {TableLabel::T1H_ram, TableLabel::T1G_ram}) add_coset(r, coset_table(l, p), p);
        }
    }

    void jsum_unram(Report& r) {
        static const char* names[4] = {"J1H", "J2H", "J1G", "J2G"};
        for (long p : cfg_.primes) {
            const EcrReport& e = unram(p);
            json in{{"prime", p}, {"grid", cfg_.grid}, {"seed", cfg_.seed}};
            for (int k = 0; k < 4; ++k) {
                if (!has(cfg_.ops, k % 2 + 1)) continue;
                r.cases.push_back(from_line("jsum.p" + std::to_string(p) + "." + names[k] + ".brute_vs_closed",
                                            e.brute_vs_closed[k], in));
            }
            for (const auto& lit : e.literal_cases)
                r.flags.push_back({{"id", "jsum.p" + std::to_string(p) + ".literal." + slug(lit)},
                                   {"note", lit + ": printed display differs from the coset sum; corrected form used"}});
            std::size_t stride = p <= 3 ? sizes_.stride_small_p : sizes_.stride_large_p;
            r.cases.push_back(
                from_line("jsum.p" + std::to_string(p) + ".engine_recheck", engine_recheck(p, grid(p), stride), in));
            if (p == 3) {
                Mat2 zero;
                json at{{"prime", 3}, {"alpha", 1}, {"beta", 1}, {"y", "0"}};
                if (has(cfg_.ops, 1)) {
                    r.cases.push_back(exact_value("jsum.p3.spot.J1G.closed", 120,
                                                  j_closed_unramified(Side::G, 1, 1, 1, zero, 3), at));
                    r.cases.push_back(exact_value("jsum.p3.spot.J1G.brute", 120,
                                                  j_brute_unramified(Side::G, 1, 1, 1, zero, 3).value, at));
                }
                if (has(cfg_.ops, 2)) {
                    r.cases.push_back(exact_value("jsum.p3.spot.J2H.closed", rat(856, 9),
                                                  j_closed_unramified(Side::H, 2, 1, 1, zero, 3), at));
                    r.cases.push_back(exact_value("jsum.p3.spot.J2H.brute", rat(856, 9),
                                                  j_brute_unramified(Side::H, 2, 1, 1, zero, 3).value, at));
                }
            }
        }
    }

    void jsum_ram(Report& r) {
        for (long p : cfg_.primes) {
            std::string base = "jsum_ram.p" + std::to_string(p);
            json in{{"prime", p}, {"grid", cfg_.grid}, {"seed", cfg_.seed}};
            if (p == 2) {
                r.cases.push_back(skipped(base, "UnsupportedPrime: the ramified model needs odd p", in));
                continue;
            }
            if (!has(cfg_.ramified, p)) continue;
            const EcrRamifiedReport& e = ram(p);
            r.cases.push_back(from_line(base + ".JH.brute_vs_closed", e.brute_vs_closed[0], in));
            r.cases.push_back(from_line(base + ".JG.brute_vs_closed", e.brute_vs_closed[1], in));
            in["points"] = e.points;
            r.cases.push_back(from_line(base + ".relation.brute", e.relation_brute, in));
            r.cases.push_back(from_line(base + ".relation.closed", e.relation_closed, in));
            const long eps = smallest_nonresidue(p);
            auto Pi = RamifiedQuaternion::Pi(p, eps);
            auto one = RamifiedQuaternion::scalar(p, eps, 1);
            json at{{"prime", p}, {"x", "Pi"}, {"y", "1"}};
            const ExactRational P = p;
            r.cases.push_back(exact_value(base + ".spot.JH", P * P + 1 / P, j_closed_ramified(Side::H, Pi, one), at));
            r.cases.push_back(exact_value(base + ".spot.JG", P * P * P + P, j_closed_ramified(Side::G, Pi, one), at));
            r.cases.push_back(
                exact_value(base + ".spot.JG.brute", P * P * P + P, j_brute_ramified(Side::G, Pi, one).value, at));
        }
    }

    void helper(Report& r) {
        for (long p : cfg_.primes)
            for (const auto& l : helper_identity_suite(p, cfg_.seed))
                r.cases.push_back(from_line("helper.p" + std::to_string(p) + "." + slug(l.name), l, {{"prime", p}}));
        for (long p : cfg_.ramified)
            for (const auto& l : ramified_residue_suite(p, cfg_.seed))
                r.cases.push_back(from_line("helper_ram.p" + std::to_string(p) + "." + slug(l.name), l, {{"prime", p}}));
    }

    void ecr(Report& r) {
        for (long p : cfg_.primes) {
            const EcrReport& e = unram(p);
            json in{{"prime", p}, {"grid", cfg_.grid}, {"seed", cfg_.seed}, {"points", e.points}};
            for (int i = 0; i < 2; ++i) {
                if (!has(cfg_.ops, i + 1)) continue;
                std::string base = "ecr.p" + std::to_string(p) + ".T" + std::to_string(i + 1);
                r.cases.push_back(from_line(base + ".brute", e.relation_brute[i], in));
                r.cases.push_back(from_line(base + ".closed", e.relation_closed[i], in));
            }
        }
    }

    void satake(Report& r) {
        for (long p : cfg_.primes) {
            for (auto l : {TableLabel::T1H, TableLabel::T2H, TableLabel::T1G, TableLabel::T2G}) {
                Case c;
                c.id = "satake.p" + std::to_string(p) + "." + label_name(l);
                c.inputs = {{"prime", p}};
                c.expected = eigenvalue_display(l, p).str();
                c.got = satake_eigenvalue(coset_table(l, p)).str();
                c.status = c.expected == c.got ? "pass" : "fail";
                r.cases.push_back(c);
            }
            if (!has(cfg_.ramified, p)) continue;
            for (auto l : {TableLabel::T1H_ram, TableLabel::T1G_ram}) {
                Case c;
                c.id = "satake.p" + std::to_string(p) + "." + label_name(l);
                c.inputs = {{"prime", p}};
                c.expected = eigenvalue_display_ramified(l, p).str();
                c.got = satake_eigenvalue_ramified(coset_table(l, p)).str();
                c.status = c.expected == c.got ? "pass" : "fail";
                r.cases.push_back(c);
            }
        }
    }

    void functoriality(Report& r) {
        for (long p : cfg_.primes) {
            for (bool ramified : {false, true}) {
                if (ramified && !has(cfg_.ramified, p)) continue;
                std::string base = std::string(ramified ? "functoriality_ram.p" : "functoriality.p") + std::to_string(p);
                FunctorialityReport f = functoriality_check(p, ramified);
                for (const auto& l : f.lines) r.cases.push_back(from_line(base + "." + slug(l.name), l, {{"prime", p}}));
            }
        }
    }

    void arch(Report& r) {
        std::string letters;
        for (char ch : cfg_.checks)
            if (ch != 'm') letters += ch;
        auto tol = [&](const char* key, double dflt) {
            auto it = cfg_.tol.find(key);
            return it == cfg_.tol.end() ? dflt : it->second;
        };
        for (int k : cfg_.kappas) {
            if (letters.empty()) break;
            arch::ArchConfig a;
            a.kappa = k;
            a.checks = letters;
            a.seed = cfg_.seed;
            a.workers = cfg_.workers;
            a.tol_ei = tol("a", a.tol_ei);
            a.tol_testf1 = tol("b", a.tol_testf1);
            a.tol_testf2 = tol("c", a.tol_testf2);
            a.tol_fourier = tol("d", a.tol_fourier);
            a.tol_property = tol("e", a.tol_property);
            for (const auto& n : arch::arch_check_suite(a))
                r.cases.push_back(from_num("arch." + n.id + (n.id.find(".k") == std::string::npos ? ".k" + std::to_string(k) : ""),
                                           n, {{"kappa", k}}));
        }
        if (cfg_.checks.find('m') == std::string::npos) return;
        const double tm = tol("m", 1e-6);
        for (int k : {5, 8})
            for (double t : {0.1, 1.0}) {
                auto m = arch::m_kappa_check(k, t, tm, cfg_.workers);
                r.cases.push_back(from_num("arch." + m.id, m, {{"kappa", k}, {"t", t}}));
            }
        auto pos = arch::integral_residue_check(6, 1, 1, 1e-6, true);
        auto neg = arch::integral_residue_check(6, 1, -1, 1e-8, false);
        r.cases.push_back(from_num("arch." + pos.id, pos, {{"kappa", 6}, {"t", 1}, {"s", 1}}));
        r.cases.push_back(from_num("arch." + neg.id, neg, {{"kappa", 6}, {"t", 1}, {"s", -1}}));
        for (int k : cfg_.kappas) {
            auto ip = arch::inner_product_check(k, 1e-10);
            r.cases.push_back(from_num("arch." + ip.id + ".k" + std::to_string(k), ip, {{"kappa", k}}));
        }
    }

private:
    void add_coset(Report& r, const CosetTable& t, long p) {
        CosetVerification v = verify_coset_table(t);
        Case c;
        c.id = "coset." + label_name(t.label) + ".p" + std::to_string(p);
        c.inputs = {{"prime", p}};
        c.expected = std::to_string(v.expected) + " distinct cosets in the double coset";
        c.got = std::to_string(v.count) + (v.ok ? " distinct, all members" : " with failures");
        c.status = v.ok ? "pass" : "fail";
        if (!v.failures.empty()) c.note = v.failures.front();
        r.cases.push_back(c);
    }

    const std::vector<UnramifiedGridPoint>& grid(long p) {
        auto it = grids_.find(p);
        if (it == grids_.end()) it = grids_.emplace(p, unramified_grid(p, sizes_.per_pair, cfg_.seed)).first;
        return it->second;
    }
    const EcrReport& unram(long p) {
        auto it = unram_.find(p);
        if (it == unram_.end()) it = unram_.emplace(p, ecr_check_unramified(p, grid(p))).first;
        return it->second;
    }
    const EcrRamifiedReport& ram(long p) {
        auto it = ram_.find(p);
        if (it == ram_.end()) it = ram_.emplace(p, ecr_check_ramified(p, ramified_grid(p, sizes_.per_ord, cfg_.seed))).first;
        return it->second;
    }

    const SuiteConfig& cfg_;
    Grids sizes_;
    std::map<long, std::vector<UnramifiedGridPoint>> grids_;
    std::map<long, EcrReport> unram_;
    std::map<long, EcrRamifiedReport> ram_;
};

}  // namespace

json SuiteConfig::to_json() const {
    json tols = json::object();
    for (const auto& [k, v] : tol) tols[k] = v;
    return {{"primes", primes}, {"ramified", ramified}, {"grid", grid},   {"ops", ops},
            {"kappa", kappas},  {"checks", checks},     {"tol", tols},    {"workers", workers},
            {"seed", seed}};
}

void validate(const SuiteConfig& c) {
    for (long p : c.primes)
        if (!is_prime(p)) throw ConfigError("not a prime: " + std::to_string(p));
    for (long p : c.ramified) {
        if (!has(c.primes, p)) throw ConfigError("ramified prime " + std::to_string(p) + " is not in the prime list");
        if (p % 2 == 0) throw ConfigError("ramified primes must be odd");
    }
    if (c.grid != "small" && c.grid != "full") throw ConfigError("grid must be small or full");
    if (c.ops.empty()) throw ConfigError("ops must name at least one of 1, 2");
    for (int o : c.ops)
        if (o != 1 && o != 2) throw ConfigError("ops must be a subset of {1, 2}");
    for (int k : c.kappas)
        if (k <= 4 || k > 40) throw ConfigError("kappa must lie in 5..40");
    for (char ch : c.checks)
        if (std::string("abcdefm").find(ch) == std::string::npos)
            throw ConfigError(std::string("unknown arch check letter: ") + ch);
    for (const auto& [k, v] : c.tol) {
        if (k.size() != 1 || std::string("abcdem").find(k[0]) == std::string::npos)
            throw ConfigError("unknown tolerance key: " + k);
        if (!(v > 0)) throw ConfigError("tolerances must be positive");
    }
    if (c.workers < 1 || c.workers > 256) throw ConfigError("workers must lie in 1..256");
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"coset", "jsum-unram", "jsum-ram", "helper",
                                                "ecr",   "satake",     "functoriality", "arch"};
    return names;
}

std::size_t Report::count(const std::string& status) const {
    return static_cast<std::size_t>(
        std::count_if(cases.begin(), cases.end(), [&](const Case& c) { return c.status == status; }));
}

json Report::to_json() const {
    json cs = json::array();
    for (const auto& c : cases) {
        json j{{"id", c.id}, {"inputs", c.inputs}, {"expected", c.expected}, {"got", c.got}, {"status", c.status}};
        j["residual"] = c.residual ? json(*c.residual) : json(nullptr);
        if (!c.note.empty()) j["note"] = c.note;
        cs.push_back(j);
    }
    json out{{"schema", 1},
             {"suite", suite},
             {"config", config},
             {"cases", cs},
             {"flags", flags},
             {"summary", {{"pass", count("pass")}, {"fail", count("fail")}, {"skipped", count("skipped")}}}};
    if (wall_seconds) out["wall_seconds"] = *wall_seconds;
    return out;
}

std::string Report::to_text() const {
    std::ostringstream os;
    os << "suite " << suite << "\n";
    for (const auto& c : cases) {
        std::string st = c.status == "pass" ? "PASS" : c.status == "fail" ? "FAIL" : "SKIP";
        os << st << "  " << c.id;
        if (c.status != "skipped") os << "  expected " << c.expected << ", got " << c.got;
        if (!c.note.empty() && c.status != "pass") os << "  [" << c.note << "]";
        os << "\n";
    }
    for (const auto& f : flags) os << "FLAG  " << f["id"].get<std::string>() << "  " << f["note"].get<std::string>() << "\n";
    os << "summary: " << count("pass") << " pass, " << count("fail") << " fail, " << count("skipped") << " skipped\n";
    if (wall_seconds) os << "wall time " << sci(*wall_seconds) << " s\n";
    return os.str();
}

Report run_suite(const SuiteConfig& config, const std::vector<std::string>& suites, const std::string& suite_id) {
    validate(config);
    for (const auto& s : suites)
        if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
            throw ConfigError("unknown suite: " + s);
    auto t0 = std::chrono::steady_clock::now();
    Report r;
    r.suite = suite_id;
    r.config = config.to_json();
    r.config["suites"] = suites;
    Runner run(config);
    // fixed order regardless of how the suites were listed
    for (const auto& name : suite_names()) {
        if (std::find(suites.begin(), suites.end(), name) == suites.end()) continue;
        if (name == "coset") run.coset(r);
        if (name == "jsum-unram") run.jsum_unram(r);
        if (name == "jsum-ram") run.jsum_ram(r);
        if (name == "helper") run.helper(r);
        if (name == "ecr") run.ecr(r);
        if (name == "satake") run.satake(r);
        if (name == "functoriality") run.functoriality(r);
        if (name == "arch") run.arch(r);
    }
    if (config.timing)
        r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

}  // namespace ecr::report
