#include "deltasums/cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <fstream>
#include <functional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "deltasums/expsums.hpp"
#include "deltasums/lfunctions.hpp"
#include "deltasums/suites.hpp"

namespace deltasums::cli {

namespace {

enum class ValueType { integer, text, boolean };

struct Key {
    std::string name;
    ValueType type = ValueType::integer;
    i64 lo = 0;
    i64 hi = 0;
    std::vector<std::string> choices;  // for text keys; empty means any
};

constexpr i64 kBig = i64{1} << 62;

const std::vector<Key>& schema(const std::string& command) {
    static const std::map<std::string, std::vector<Key>> schemas{
        {"verify",
         {{"suite", ValueType::text, 0, 0, {"delta", "characters", "appendix", "pipeline", "voronoi", "all"}},
          {"mmax", ValueType::integer, 5, 2000, {}},
          {"qmax", ValueType::integer, 1, 5000, {}},
          {"dmax", ValueType::integer, 0, 100000, {}},
          {"M", ValueType::integer, 5, 1000000, {}},
          {"samples", ValueType::integer, 1, 1000000, {}}}},
        {"sums",
         {{"kind", ValueType::text, 0, 0, {"gauss", "ramanujan", "kloosterman", "frak_k", "frak_c", "trivial_delta"}},
          {"M", ValueType::integer, 1, 10000000, {}},
          {"char", ValueType::integer, 0, 10000000, {}},
          {"a", ValueType::integer, -kBig, kBig, {}},
          {"b", ValueType::integer, -kBig, kBig, {}},
          {"r", ValueType::integer, -kBig, kBig, {}},
          {"ell", ValueType::integer, -kBig, kBig, {}},
          {"n", ValueType::integer, -kBig, kBig, {}},
          {"m", ValueType::integer, -kBig, kBig, {}},
          {"q", ValueType::integer, 1, 10000000, {}},
          {"r1", ValueType::integer, -kBig, kBig, {}},
          {"r2", ValueType::integer, -kBig, kBig, {}},
          {"alpha", ValueType::integer, -kBig, kBig, {}},
          {"beta", ValueType::integer, -kBig, kBig, {}}}},
        {"sweep",
         {{"kind", ValueType::text, 0, 0, {"dirichlet", "twist"}},
          {"pmin", ValueType::integer, 0, 1000000, {}},
          {"pmax", ValueType::integer, 0, 1000000, {}},
          {"coeff", ValueType::text, 0, 0, {"divisor", "delta"}},
          {"chars", ValueType::integer, 0, 1000000, {}},
          {"quadratic", ValueType::boolean, 0, 0, {}}}},
        {"bench",
         {{"kind", ValueType::text, 0, 0, {"kloosterman", "frak_k", "frak_c", "gauss", "ramanujan"}},
          {"M", ValueType::integer, 5, 10000000, {}},
          {"samples", ValueType::integer, 1, 1000000, {}}}},
    };
    const auto it = schemas.find(command);
    if (it == schemas.end()) throw ConfigError(fmt::format("unknown command '{}'", command));
    return it->second;
}

std::optional<i64> parse_integer(std::string_view s) {
    i64 v = 0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end || s.empty()) return std::nullopt;
    return v;
}

std::optional<bool> parse_boolean(std::string_view s) {
    if (s == "1" || s == "true" || s == "yes") return true;
    if (s == "0" || s == "false" || s == "no") return false;
    return std::nullopt;
}

CLI::Validator integer_in(i64 lo, i64 hi) {
    return CLI::Validator(
        [lo, hi](std::string& value) -> std::string {
            const auto v = parse_integer(value);
            if (!v) return fmt::format("'{}' is not an integer", value);
            if (*v < lo || *v > hi) return fmt::format("{} outside [{}, {}]", *v, lo, hi);
            return {};
        },
        "INT");
}

const CLI::Validator kBoolean(
    [](std::string& value) -> std::string {
        return parse_boolean(value) ? std::string{} : fmt::format("'{}' is not a boolean", value);
    },
    "BOOL");

i64 get_int(const RunConfig& c, const std::string& key, std::optional<i64> fallback = std::nullopt) {
    const auto it = c.params.find(key);
    if (it == c.params.end()) {
        if (fallback) return *fallback;
        throw ConfigError(fmt::format("missing parameter --{}", key));
    }
    return *parse_integer(it->second);
}

std::string get_text(const RunConfig& c, const std::string& key, std::optional<std::string> fallback = std::nullopt) {
    const auto it = c.params.find(key);
    if (it == c.params.end()) {
        if (fallback) return *fallback;
        throw ConfigError(fmt::format("missing parameter --{}", key));
    }
    return it->second;
}

bool get_bool(const RunConfig& c, const std::string& key, bool fallback) {
    const auto it = c.params.find(key);
    return it == c.params.end() ? fallback : *parse_boolean(it->second);
}

// Writes to --out when given, else to `out`.
int with_output(const RunConfig& c, std::ostream& out, std::ostream& err, const std::function<int(std::ostream&)>& body) {
    if (!c.output_path) return body(out);
    std::ofstream file(*c.output_path, std::ios::binary);
    if (!file) {
        err << "error: cannot open output file '" << *c.output_path << "'\n";
        return kExitConfigError;
    }
    const int code = body(file);
    file.flush();
    if (!file) {
        err << "error: writing '" << *c.output_path << "' failed\n";
        return kExitConfigError;
    }
    return code;
}

}  // namespace

RunConfig parse_args(std::span<const std::string> args) {
    if (args.empty()) throw ConfigError("missing command");
    RunConfig config;
    config.command = args[0];
    const auto& keys = schema(config.command);

    CLI::App app("deltasums " + config.command);
    app.set_help_flag();
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.set_config("--config", "", "key = value file; flags override it");
    std::map<std::string, std::string> values;
    for (const Key& k : keys) {
        CLI::Option* opt = app.add_option("--" + k.name, values[k.name]);
        switch (k.type) {
            case ValueType::integer: opt->check(integer_in(k.lo, k.hi)); break;
            case ValueType::boolean: opt->check(kBoolean); break;
            case ValueType::text:
                if (!k.choices.empty()) opt->check(CLI::IsMember(k.choices));
                break;
        }
    }
    std::string out_path, seed, jobs;
    app.add_option("--out", out_path);
    app.add_option("--seed", seed)->check(integer_in(0, kBig));
    app.add_option("--jobs", jobs)->check(integer_in(1, 256));

    // CLI11 consumes arguments from the back.
    std::vector<std::string> rest(args.rbegin(), args.rend() - 1);
    try {
        app.parse(rest);
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }
    for (const Key& k : keys) {
        if (app.count("--" + k.name) > 0) config.params[k.name] = values[k.name];
    }
    if (app.count("--out") > 0) {
        if (out_path.empty()) throw ConfigError("--out: empty path");
        config.output_path = out_path;
    }
    if (app.count("--seed") > 0) config.seed = static_cast<u64>(*parse_integer(seed));
    if (app.count("--jobs") > 0) config.jobs = static_cast<int>(*parse_integer(jobs));
    return config;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
    SuiteOptions options;
    options.mmax = get_int(c, "mmax", 100);
    options.qmax = get_int(c, "qmax", 500);
    options.dmax = get_int(c, "dmax", 1000);
    options.samples = get_int(c, "samples", 500);
    if (c.params.count("M")) {
        options.M = get_int(c, "M");
        if (!is_prime(*options.M)) throw ConfigError(fmt::format("--M: {} is not prime", *options.M));
    }
    options.seed = c.seed;
    options.jobs = c.jobs;
    const std::string suite = get_text(c, "suite", "all");
    const auto reports = run_suite(suite, options);
    std::size_t failed = 0;
    for (const auto& r : reports) {
        if (!r.pass) {
            ++failed;
            err << "FAILED " << r.name << " [" << r.config << "]\n";
        }
    }
    const int code = with_output(c, out, err, [&](std::ostream& o) {
        write_report(o, reports);
        return kExitOk;
    });
    if (code != kExitOk) return code;
    err << reports.size() << " checks, " << failed << " failed\n";
    return failed == 0 ? kExitOk : kExitCheckFailed;
}

namespace {

void print_sum_row(std::ostream& o, const std::string& kind, const ExpSumResult& r) {
    o << kind << ',' << to_string(r.method) << ',' << format_double(r.value.real()) << ','
      << format_double(r.value.imag()) << ',' << format_double(std::abs(r.value)) << ','
      << format_double(r.normalized_size) << '\n';
}

DirichletCharacter character_param(const RunConfig& c) {
    return DirichletCharacter(get_int(c, "M"), get_int(c, "char"));
}

}  // namespace

int cmd_sums(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const std::string kind = get_text(c, "kind");
    std::vector<ExpSumResult> rows;
    std::string note;
    if (kind == "ramanujan") {
        const i64 M = get_int(c, "M"), a = get_int(c, "a");
        rows.push_back(make_result(ramanujan_sum(M, a), M, SumMethod::brute_force));
        rows.push_back(make_result(static_cast<double>(ramanujan_sum_closed(M, a)), M, SumMethod::closed_form));
    } else if (kind == "gauss") {
        const auto chi = character_param(c);
        rows.push_back(make_result(gauss_sum(chi), chi.M(), SumMethod::brute_force));
    } else if (kind == "kloosterman") {
        const i64 M = get_int(c, "M");
        rows.push_back(make_result(kloosterman_sum_complex(get_int(c, "a"), get_int(c, "b"), M), M, SumMethod::brute_force));
    } else if (kind == "frak_k") {
        const auto chi = character_param(c);
        const i64 r = get_int(c, "r"), ell = get_int(c, "ell"), n = get_int(c, "n");
        rows.push_back(frak_k(chi, r, ell, n));
        if (auto closed = frak_k_closed_form(chi, r, ell, n)) rows.push_back(*closed);
    } else if (kind == "frak_c") {
        const auto chi = character_param(c);
        const i64 r1 = get_int(c, "r1"), r2 = get_int(c, "r2"), a = get_int(c, "alpha"), b = get_int(c, "beta"),
                  n = get_int(c, "n");
        rows.push_back(frak_c(chi, r1, r2, a, b, n));
        if (auto closed = frak_c_closed_form(chi, r1, r2, a, b, n)) rows.push_back(*closed);
        note = std::string(to_string(classify_frak_c(chi.M(), r1, r2, a, b, n)));
    } else if (kind == "trivial_delta") {
        const i64 q = get_int(c, "q");
        rows.push_back(make_result(trivial_delta(get_int(c, "n"), get_int(c, "m"), q), q, SumMethod::brute_force));
    }
    return with_output(c, out, err, [&](std::ostream& o) {
        o << "kind,method,re,im,abs,normalized\n";
        for (const auto& r : rows) print_sum_row(o, kind, r);
        if (!note.empty()) o << "# case " << note << '\n';
        return kExitOk;
    });
}

int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
    SweepOptions options;
    options.kind = get_text(c, "kind", "dirichlet") == "twist" ? SweepKind::twist : SweepKind::dirichlet;
    options.coeff = get_text(c, "coeff", "divisor") == "delta" ? CoefficientKind::delta_form : CoefficientKind::divisor;
    options.pmin = get_int(c, "pmin", 5);
    options.pmax = get_int(c, "pmax", 97);
    options.chars_per_modulus = get_int(c, "chars", 0);
    options.quadratic_only = get_bool(c, "quadratic", false);
    options.jobs = c.jobs;
    if (options.pmax > sweep_modulus_limit(options)) {
        throw ConfigError(fmt::format("--pmax={} is beyond the feasible limit {} for this sweep", options.pmax,
                                      sweep_modulus_limit(options)));
    }
    const auto records = burgess_sweep(options);
    return with_output(c, out, err, [&](std::ostream& o) {
        write_sweep_csv(o, records);
        return kExitOk;
    });
}

int cmd_bench(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const std::string kind = get_text(c, "kind");
    const i64 samples = get_int(c, "samples", 10);
    std::vector<i64> moduli;
    if (c.params.count("M")) {
        const i64 M = get_int(c, "M");
        if (!is_prime(M)) throw ConfigError(fmt::format("--M: {} is not prime", M));
        moduli.push_back(M);
    } else {
        moduli = {1009, 10007, 100003};
    }
    struct Row {
        i64 M;
        double seconds;
        double checksum;
    };
    std::vector<Row> rows;
    for (i64 M : moduli) {
        std::mt19937_64 rng(c.seed);
        const auto unit = [&] { return static_cast<i64>(rng() % static_cast<u64>(M - 1)) + 1; };
        const auto chi = [&] { return DirichletCharacter(M, static_cast<i64>(rng() % static_cast<u64>(M - 2)) + 1); };
        double checksum = 0.0;
        const auto start = std::chrono::steady_clock::now();
        for (i64 s = 0; s < samples; ++s) {
            if (kind == "kloosterman") {
                checksum += kloosterman_sum(unit(), unit(), M);
            } else if (kind == "ramanujan") {
                checksum += ramanujan_sum(M, unit());
            } else if (kind == "gauss") {
                checksum += std::abs(gauss_sum(chi()));
            } else if (kind == "frak_k") {
                const auto x = chi();
                checksum += std::abs(frak_k(x, unit(), unit(), unit()).value);
            } else {
                const auto x = chi();
                checksum += std::abs(frak_c(x, unit(), unit(), unit(), unit(), unit()).value);
            }
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        rows.push_back({M, seconds, checksum});
    }
    return with_output(c, out, err, [&](std::ostream& o) {
        o << "# wall-clock timings are nondeterministic; the checksum column is reproducible\n";
        o << "kind,M,samples,seconds,sums_per_second,checksum\n";
        for (const auto& r : rows) {
            const double rate = r.seconds > 0.0 ? static_cast<double>(samples) / r.seconds : 0.0;
            o << kind << ',' << r.M << ',' << samples << ',' << fmt::format("{:.6f}", r.seconds) << ','
              << fmt::format("{:.1f}", rate) << ',' << format_double(r.checksum) << '\n';
        }
        return kExitOk;
    });
}

std::string usage() {
    return "usage: deltasums <verify|sums|sweep|bench> [--key=value ...] [--config=FILE]\n"
           "  verify --suite=delta|characters|appendix|pipeline|voronoi|all [--mmax= --qmax= --dmax= --M= --samples=]\n"
           "  sums   --kind=gauss|ramanujan|kloosterman|frak_k|frak_c|trivial_delta [--M= --char= --a= ...]\n"
           "  sweep  --kind=dirichlet|twist [--coeff=divisor|delta --pmin= --pmax= --chars= --quadratic=]\n"
           "  bench  --kind=kloosterman|frak_k|frak_c|gauss|ramanujan [--M= --samples=]\n"
           "common: --out=FILE --seed=N --jobs=N\n";
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    RunConfig config;
    try {
        if (!args.empty() && (args[0] == "--help" || args[0] == "-h" || args[0] == "help")) {
            out << usage();
            return kExitOk;
        }
        config = parse_args(args);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n' << usage();
        return kExitConfigError;
    }
    try {
        if (config.command == "verify") return cmd_verify(config, out, err);
        if (config.command == "sums") return cmd_sums(config, out, err);
        if (config.command == "sweep") return cmd_sweep(config, out, err);
        return cmd_bench(config, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfigError;
    }
}

}  // namespace deltasums::cli
