#pragma once

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qdilog/report.hpp"

namespace qdilog {
namespace cli {

// exit code contract: 0 success, 1 property/identity failure, 2 input error,
// 3 slope-symmetry violation (partial output was still produced)
constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitSymmetryViolation = 3;

inline uint64_t fnv1a64(const std::string& bytes) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

/// Re-derives one randomly chosen structural fact from a cached report; a
/// corrupt cache file fails here and triggers recomputation.
inline bool verify_cached_kronecker(const KroneckerReport& rep) {
    std::vector<const DTRecord*> nonzero;
    for (const auto& rec : rep.entries)
        if (rec.p) nonzero.push_back(&rec);
    if (nonzero.empty()) return false;
    std::mt19937 rng{std::random_device{}()};
    const DTRecord& rec = *nonzero[std::uniform_int_distribution<size_t>(
        0, nonzero.size() - 1)(rng)];
    std::uniform_int_distribution<int> which(0, 2);
    auto [quiver, stability] = kronecker_quiver(rep.m);
    long ee = euler_form(quiver, rec.d, rec.d);
    switch (which(rng)) {
        case 0: {
            auto pu = is_palindromic_unimodal(*rec.p);
            return pu.palindromic && pu.unimodal;
        }
        case 1:
            // dt and P must be tied by the exact normalization
            return QCoeff::from_laurent(rec.dt) ==
                   QCoeff::neg_s_power(static_cast<int>(ee - 1)) * rec.p->to_qcoeff();
        default:
            return rec.p->degree() == 1 - ee && rec.p->coeff(0) == 1;
    }
}

inline bool verify_cached_quiver(const QuiverRunReport& rep) {
    std::mt19937 rng{std::random_device{}()};
    std::vector<const DTRecord*> nonzero;
    for (const auto& rec : rep.entries)
        if (rec.p) nonzero.push_back(&rec);
    if (!nonzero.empty()) {
        const DTRecord& rec = *nonzero[std::uniform_int_distribution<size_t>(
            0, nonzero.size() - 1)(rng)];
        long ee = euler_form(rep.quiver, rec.d, rec.d);
        return QCoeff::from_laurent(rec.dt) ==
               QCoeff::neg_s_power(static_cast<int>(ee - 1)) * rec.p->to_qcoeff();
    }
    if (rep.symmetry.witness) {
        // the recorded violation must actually violate slope symmetry
        const auto& [d, e] = *rep.symmetry.witness;
        return slope(rep.stability, d) == slope(rep.stability, e) &&
               antisym(rep.quiver, d, e) != 0;
    }
    return !rep.slope_series.empty();
}

struct OutputTarget {
    std::string path;  // empty = stdout

    void write(std::ostream& fallback, const std::string& text) const {
        if (path.empty()) {
            fallback << text;
            return;
        }
        std::ofstream f(path);
        if (!f) throw std::invalid_argument("cannot open output file " + path);
        f << text;
    }
};

inline int run_kronecker(int m, int degree, const std::string& format,
                         const OutputTarget& out_target, const std::string& cache_dir,
                         std::ostream& out, std::ostream& err) {
    KroneckerReport rep;
    bool have = false;
    std::filesystem::path cache_file;
    if (!cache_dir.empty()) {
        cache_file = std::filesystem::path(cache_dir) /
                     ("kronecker-m" + std::to_string(m) + "-N" + std::to_string(degree) +
                      ".json");
        if (std::filesystem::exists(cache_file)) {
            try {
                std::ifstream f(cache_file);
                json j = json::parse(f);
                rep = kronecker_report_from_json(j);
                if (rep.m == m && rep.weight == degree && verify_cached_kronecker(rep)) {
                    have = true;
                    err << "cache hit (verified): " << cache_file.string() << "\n";
                } else {
                    err << "cache entry failed verification, recomputing\n";
                }
            } catch (const std::exception& e) {
                err << "ignoring unreadable cache entry: " << e.what() << "\n";
            }
        }
    }
    if (!have) {
        rep = check_properties(m, degree);
        if (!cache_dir.empty()) {
            std::error_code ec;
            std::filesystem::create_directories(cache_dir, ec);
            std::ofstream f(cache_file);
            if (f) f << kronecker_report_to_json(rep).dump(1) << "\n";
        }
    }

    if (format == "json") {
        out_target.write(out, kronecker_report_to_json(rep).dump(1) + "\n");
    } else if (format == "csv") {
        out_target.write(out, kronecker_report_to_csv(rep));
    } else {
        std::ostringstream os;
        write_kronecker_pretty(os, rep);
        out_target.write(out, os.str());
    }
    if (!rep.all_pass()) {
        for (const auto& [name, r] : rep.properties)
            if (!r.pass) err << "property failed: " << name << "\n";
        return kExitPropertyFailure;
    }
    return kExitOk;
}

inline int run_pentagon(int degree, const std::string& format, const OutputTarget& out_target,
                        std::ostream& out, std::ostream& err) {
    PentagonReport rep;
    rep.degree = degree;
    rep.check = pentagon_check(degree);
    if (format == "json") {
        out_target.write(out, pentagon_report_to_json(rep).dump(1) + "\n");
    } else {
        std::ostringstream os;
        write_pentagon_pretty(os, rep);
        out_target.write(os.str().empty() ? err : out, os.str());
    }
    if (!rep.check.ok()) {
        err << "five-term identity check failed"
            << (rep.check.failure ? ": " + *rep.check.failure : "") << "\n";
        return kExitPropertyFailure;
    }
    return kExitOk;
}

inline int run_quiver_file(const std::string& path, int degree, const std::string& format,
                           const OutputTarget& out_target, const std::string& cache_dir,
                           std::ostream& out, std::ostream& err) {
    std::ifstream f(path);
    if (!f) {
        err << "cannot read quiver file " << path << "\n";
        return kExitInputError;
    }
    std::stringstream buffer;
    buffer << f.rdbuf();
    json j;
    try {
        j = json::parse(buffer.str());
    } catch (const json::parse_error& e) {
        err << "malformed JSON in " << path << ": " << e.what() << "\n";
        return kExitInputError;
    }
    QuiverData q;
    Stability st;
    try {
        std::tie(q, st) = parse_quiver_json(j);
        check_stability(q, st);
    } catch (const std::invalid_argument& e) {
        err << "invalid quiver file " << path << ": " << e.what() << "\n";
        return kExitInputError;
    }

    QuiverRunReport rep;
    bool have = false;
    std::filesystem::path cache_file;
    if (!cache_dir.empty()) {
        char key[32];
        std::snprintf(key, sizeof key, "%016llx",
                      static_cast<unsigned long long>(fnv1a64(buffer.str())));
        cache_file = std::filesystem::path(cache_dir) /
                     ("quiver-" + std::string(key) + "-N" + std::to_string(degree) + ".json");
        if (std::filesystem::exists(cache_file)) {
            try {
                std::ifstream cf(cache_file);
                QuiverRunReport cached = quiver_report_from_json(json::parse(cf));
                if (cached.degree == degree && cached.quiver == q &&
                    cached.stability == st && verify_cached_quiver(cached)) {
                    rep = std::move(cached);
                    have = true;
                    err << "cache hit (verified): " << cache_file.string() << "\n";
                } else {
                    err << "cache entry failed verification, recomputing\n";
                }
            } catch (const std::exception& e) {
                err << "ignoring unreadable cache entry: " << e.what() << "\n";
            }
        }
    }
    if (!have) {
        try {
            rep = run_quiver(std::move(q), std::move(st), degree);
        } catch (const std::invalid_argument& e) {
            err << "invalid quiver file " << path << ": " << e.what() << "\n";
            return kExitInputError;
        }
        if (!cache_dir.empty()) {
            std::error_code ec;
            std::filesystem::create_directories(cache_dir, ec);
            std::ofstream cf(cache_file);
            if (cf) cf << quiver_report_to_json(rep).dump(1) << "\n";
        }
    }

    if (format == "json") {
        out_target.write(out, quiver_report_to_json(rep).dump(1) + "\n");
    } else if (format == "csv") {
        std::ostringstream os;
        os << "d,slope,stable,dt_min_exp_s,dt_coeffs,P\n";
        for (const auto& rec : rep.entries) {
            for (int i = 0; i < rec.d.size(); ++i) os << (i ? " " : "") << rec.d[i];
            os << "," << to_string(rec.slope) << "," << (rec.stable ? 1 : 0) << ","
               << rec.dt.min_exp << ",";
            for (size_t i = 0; i < rec.dt.coeffs.size(); ++i)
                os << (i ? ";" : "") << to_string(rec.dt.coeffs[i]);
            os << ",";
            if (rec.p)
                for (size_t i = 0; i < rec.p->coeffs().size(); ++i)
                    os << (i ? ";" : "") << to_string(rec.p->coeffs()[i]);
            os << "\n";
        }
        out_target.write(out, os.str());
    } else {
        std::ostringstream os;
        write_quiver_pretty(os, rep);
        out_target.write(out, os.str());
    }

    if (!rep.symmetry.symmetric) {
        err << "slope symmetry violated";
        if (rep.symmetry.witness)
            err << " at " << rep.symmetry.witness->first.to_string() << ", "
                << rep.symmetry.witness->second.to_string();
        err << "; semistable series emitted, DT extraction skipped\n";
        return kExitSymmetryViolation;
    }
    return rep.all_pass() ? kExitOk : kExitPropertyFailure;
}

/// Entry point shared by the binary and the tests.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact quantum dilogarithm identities from quiver wall-crossing"};
    app.require_subcommand(1);
    app.footer("environment: QDILOG_THREADS caps internal parallelism");

    int degree = 0;
    int m = 0;
    std::string format = "pretty";
    std::string out_path;
    std::string cache_dir;
    std::string file;

    auto add_common = [&](CLI::App* cmd, bool with_cache) {
        cmd->add_option("--degree", degree, "truncation weight N")->required();
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"json", "csv", "pretty"}));
        cmd->add_option("--out", out_path, "write the report to this path");
        if (with_cache) cmd->add_option("--cache", cache_dir, "results cache directory");
    };

    CLI::App* pentagon = app.add_subcommand("pentagon", "verify the five-term identity");
    pentagon->add_option("--degree", degree, "truncation weight N")->required();
    pentagon->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "pretty"}));
    pentagon->add_option("--out", out_path, "write the report to this path");

    CLI::App* kronecker = app.add_subcommand(
        "kronecker", "factorization and property report for the m-arrow Kronecker quiver");
    kronecker->add_option("--m", m, "number of arrows")->required();
    add_common(kronecker, true);

    CLI::App* quiver =
        app.add_subcommand("quiver", "DT factorization of a quiver given as a JSON file");
    quiver->add_option("--file", file, "quiver JSON file")->required();
    add_common(quiver, true);

    try {
        std::vector<const char*> argv;
        argv.push_back("qdilog");
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitInputError;
    }

    OutputTarget target{out_path};
    try {
        if (pentagon->parsed()) {
            if (degree < 1) {
                err << "pentagon: --degree must be >= 1\n";
                return kExitInputError;
            }
            return run_pentagon(degree, format, target, out, err);
        }
        if (kronecker->parsed()) {
            if (m < 1 || degree < 2) {
                err << "kronecker: need --m >= 1 and --degree >= 2\n";
                return kExitInputError;
            }
            return run_kronecker(m, degree, format, target, cache_dir, out, err);
        }
        if (degree < 1) {
            err << "quiver: --degree must be >= 1\n";
            return kExitInputError;
        }
        return run_quiver_file(file, degree, format, target, cache_dir, out, err);
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitPropertyFailure;
    }
}

}  // namespace cli
}  // namespace qdilog
