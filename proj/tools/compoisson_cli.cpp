// Copyright 2026 the compoisson authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line surface: compute Z by any method, cross-compare methods
// against the series reference, emit pmf tables and samples, run the
// benchmark grid, and inspect the inverse Gamma. Data goes to stdout,
// diagnostics to stderr. Exit codes: 0 success, 2 domain error, 3 validation
// breach (compare only).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <compoisson/compoisson.hpp>
#include <compoisson/run_record.hpp>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_domain = 2;
constexpr int exit_validation = 3;

using compoisson::ComPoissonParams;
using compoisson::Method;
using compoisson::QuadConfig;
using compoisson::ZResult;

Method parse_method(const std::string& name) {
    if (name == "series") return Method::series;
    if (name == "cahen-exact") return Method::cahen_exact;
    if (name == "cahen-quad") return Method::cahen_quad;
    if (name == "hyper") return Method::hypergeometric;
    if (name == "shmueli") return Method::shmueli;
    throw std::domain_error("unknown method: " + name);
}

// Grids come as comma lists ("0.5,2") or start:stop:step ("0.1:1:0.1",
// inclusive of stop up to rounding).
std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    const auto colon = text.find(':');
    if (colon != std::string::npos) {
        double start = 0.0, stop = 0.0, step = 0.0;
        if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3 ||
            !(step > 0.0))
            throw std::domain_error("bad grid: " + text);
        for (double v = start; v <= stop + 1e-12 * std::abs(step); v += step)
            out.push_back(v);
    } else {
        std::string cur;
        for (const char c : text + ",") {
            if (c == ',') {
                if (!cur.empty()) out.push_back(std::stod(cur));
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
    }
    if (out.empty())
        throw std::domain_error("empty grid: " + text);
    return out;
}

void validate_cli_params(const ComPoissonParams& p) {
    if (!(p.lambda > 0.0) || !std::isfinite(p.lambda))
        throw std::domain_error("lambda must be > 0 and finite");
    if (!(p.nu > 0.0) || !std::isfinite(p.nu))
        throw std::domain_error("nu must be > 0 and finite");
}

std::int64_t now_ns() {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

struct ZOptions {
    double lambda = 1.0;
    double nu = 1.0;
    std::string method = "series";
    double tol = compoisson::z_series_default_tol;
    std::string format = "plain";
    int nodes = 8;
    int segments = 60;
    int shmueli_nodes = 64;
};

QuadConfig quad_for(const ZOptions& opt, Method method) {
    QuadConfig q;
    if (method == Method::shmueli) {
        q.nodes_per_dim = opt.shmueli_nodes;
        q.rule = QuadConfig::Rule::trapezoid_periodic;
    } else {
        q.nodes_per_dim = opt.nodes;
        q.tail_segments = opt.segments;
    }
    return q;
}

void print_record(const compoisson::RunRecord& r, const std::string& format) {
    if (format == "json") {
        std::cout << compoisson::to_json(r).dump() << "\n";
    } else if (format == "csv") {
        std::cout << compoisson::run_record_csv_header << "\n" << compoisson::to_csv(r) << "\n";
    } else {
        std::cout << "lambda=" << compoisson::format_double(r.lambda)
                  << " nu=" << compoisson::format_double(r.nu) << " method=" << r.method
                  << " value=" << r.value << " error_bound="
                  << (r.error_bound ? compoisson::format_double(*r.error_bound) : "none")
                  << " terms=" << r.terms << " wall_time_ns=" << r.wall_time_ns << "\n";
    }
}

int run_z(const ZOptions& opt) {
    const ComPoissonParams params{opt.lambda, opt.nu};
    validate_cli_params(params);
    const Method method = parse_method(opt.method);
    const std::int64_t t0 = now_ns();
    const ZResult z = compoisson::evaluate(params, method, opt.tol, quad_for(opt, method));
    const std::int64_t elapsed = std::max<std::int64_t>(1, now_ns() - t0);
    print_record(compoisson::make_run_record(params, z, elapsed), opt.format);
    return exit_ok;
}

struct CompareOptions {
    std::string lambda_grid;
    std::string nu_grid;
    std::string methods = "series,cahen-exact";
    double max_rel = 1e-9;
    double perturb = 0.0;
    std::string format = "plain";
    ZOptions defaults;
};

struct CompareRow {
    double lambda;
    double nu;
    std::string method;
    std::string value;
    double rel_dev;
    bool fallback;
};

int run_compare(const CompareOptions& opt) {
    const std::vector<double> lambdas = parse_grid(opt.lambda_grid);
    const std::vector<double> nus = parse_grid(opt.nu_grid);
    std::vector<Method> methods;
    {
        std::string cur;
        for (const char c : opt.methods + ",") {
            if (c == ',') {
                if (!cur.empty()) methods.push_back(parse_method(cur));
                cur.clear();
            } else {
                cur.push_back(c);
            }
        }
    }
    if (methods.empty())
        throw std::domain_error("no methods given");

    std::vector<CompareRow> rows;
    bool breached = false;
    for (const double lambda : lambdas) {
        for (const double nu : nus) {
            const ComPoissonParams params{lambda, nu};
            validate_cli_params(params);
            const ZResult ref = compoisson::z_series(params, opt.defaults.tol);
            for (const Method m : methods) {
                ZResult z = m == Method::series
                                ? ref
                                : compoisson::evaluate(params, m, opt.defaults.tol,
                                                       quad_for(opt.defaults, m));
                if (m != Method::series && opt.perturb != 0.0)
                    z.log_value += std::log1p(opt.perturb);
                const double dev =
                    m == Method::series ? 0.0 : std::abs(std::expm1(z.log_value - ref.log_value));
                const bool fallback = z.method != m;
                if (dev > opt.max_rel)
                    breached = true;
                rows.push_back({lambda, nu, compoisson::method_name(m),
                                compoisson::format_value_string(z), dev, fallback});
            }
        }
    }

    if (opt.format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
            nlohmann::ordered_json j;
            j["lambda"] = r.lambda;
            j["nu"] = r.nu;
            j["method"] = r.method;
            j["value"] = r.value;
            j["rel_dev"] = r.rel_dev;
            j["fallback"] = r.fallback;
            arr.push_back(j);
        }
        std::cout << arr.dump() << "\n";
    } else if (opt.format == "csv") {
        std::cout << "lambda,nu,method,value,rel_dev,fallback\n";
        for (const auto& r : rows)
            std::cout << compoisson::format_double(r.lambda) << ','
                      << compoisson::format_double(r.nu) << ',' << r.method << ',' << r.value
                      << ',' << compoisson::format_double(r.rel_dev) << ','
                      << (r.fallback ? 1 : 0) << "\n";
    } else {
        for (const auto& r : rows)
            std::cout << "lambda=" << compoisson::format_double(r.lambda)
                      << " nu=" << compoisson::format_double(r.nu) << " method=" << r.method
                      << " value=" << r.value
                      << " rel_dev=" << compoisson::format_double(r.rel_dev)
                      << (r.fallback ? " fallback=1" : "") << "\n";
    }
    if (breached) {
        std::cerr << "compare: deviation above " << opt.max_rel << "\n";
        return exit_validation;
    }
    return exit_ok;
}

struct PmfOptions {
    double lambda = 1.0;
    double nu = 1.0;
    std::int64_t max_n = -1;
    std::string format = "plain";
};

int run_pmf(const PmfOptions& opt) {
    const ComPoissonParams params{opt.lambda, opt.nu};
    validate_cli_params(params);
    const compoisson::ComPoissonDistribution dist(params);
    const std::int64_t last =
        opt.max_n >= 0 ? opt.max_n : dist.table().support_max;
    if (opt.format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (std::int64_t n = 0; n <= last; ++n) {
            nlohmann::ordered_json j;
            j["n"] = n;
            j["pmf"] = dist.pmf(n);
            arr.push_back(j);
        }
        std::cout << arr.dump() << "\n";
    } else if (opt.format == "csv") {
        std::cout << "n,pmf\n";
        for (std::int64_t n = 0; n <= last; ++n)
            std::cout << n << ',' << compoisson::format_double(dist.pmf(n)) << "\n";
    } else {
        for (std::int64_t n = 0; n <= last; ++n)
            std::cout << n << ' ' << compoisson::format_double(dist.pmf(n)) << "\n";
    }
    return exit_ok;
}

struct SampleOptions {
    double lambda = 1.0;
    double nu = 1.0;
    std::uint64_t seed = 12345;
    std::int64_t count = 10;
    std::string format = "plain";
};

int run_sample(const SampleOptions& opt) {
    const ComPoissonParams params{opt.lambda, opt.nu};
    validate_cli_params(params);
    if (opt.count < 0)
        throw std::domain_error("count must be >= 0");
    const compoisson::ComPoissonDistribution dist(params);
    std::mt19937_64 rng(opt.seed);
    const auto draws = dist.sample(rng, opt.count);
    if (opt.format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto d : draws)
            arr.push_back(d);
        std::cout << arr.dump() << "\n";
    } else if (opt.format == "csv") {
        std::cout << "value\n";
        for (const auto d : draws)
            std::cout << d << "\n";
    } else {
        for (const auto d : draws)
            std::cout << d << "\n";
    }
    return exit_ok;
}

struct BenchOptions {
    std::string grid = "default";
    int reps = 25;
    std::string format = "csv";
};

int run_bench(const BenchOptions& opt) {
    if (opt.grid != "default")
        throw std::domain_error("bench: only the default grid is available");
    if (opt.reps < 1)
        throw std::domain_error("bench: reps must be >= 1");
    const std::vector<double> lambdas{0.5, 2.0, 5.0};
    const std::vector<double> nus{0.5, 1.0, 2.0};
    const std::vector<Method> methods{Method::series, Method::cahen_exact, Method::cahen_quad,
                                      Method::hypergeometric, Method::shmueli};
    ZOptions defaults;

    std::vector<std::vector<double>> per_method(methods.size());

    if (opt.format == "csv")
        std::cout << compoisson::run_record_csv_header << "\n";
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const double lambda : lambdas) {
        for (const double nu : nus) {
            const ComPoissonParams params{lambda, nu};
            for (std::size_t mi = 0; mi < methods.size(); ++mi) {
                const Method m = methods[mi];
                const bool integer_nu = nu == std::floor(nu);
                if ((m == Method::hypergeometric || m == Method::shmueli) && !integer_nu)
                    continue;
                const QuadConfig q = quad_for(defaults, m);
                ZResult z = compoisson::evaluate(params, m, defaults.tol, q);  // warm up
                std::vector<double> times;
                times.reserve(static_cast<std::size_t>(opt.reps));
                for (int rep = 0; rep < opt.reps; ++rep) {
                    const std::int64_t t0 = now_ns();
                    z = compoisson::evaluate(params, m, defaults.tol, q);
                    times.push_back(static_cast<double>(std::max<std::int64_t>(1, now_ns() - t0)));
                }
                std::nth_element(times.begin(), times.begin() + times.size() / 2, times.end());
                const std::int64_t median_ns =
                    static_cast<std::int64_t>(times[times.size() / 2]);
                per_method[mi].push_back(static_cast<double>(median_ns));
                const auto record = compoisson::make_run_record(params, z, median_ns);
                if (opt.format == "json")
                    arr.push_back(compoisson::to_json(record));
                else if (opt.format == "csv")
                    std::cout << compoisson::to_csv(record) << "\n";
                else
                    print_record(record, "plain");
            }
        }
    }
    if (opt.format == "json")
        std::cout << arr.dump() << "\n";

    for (std::size_t mi = 0; mi < methods.size(); ++mi) {
        auto& med = per_method[mi];
        if (med.empty())
            continue;
        std::nth_element(med.begin(), med.begin() + med.size() / 2, med.end());
        std::cerr << "bench: method=" << compoisson::method_name(methods[mi])
                  << " median_ns_per_eval=" << static_cast<std::int64_t>(med[med.size() / 2])
                  << "\n";
    }
    return exit_ok;
}

struct InvGammaOptions {
    double y = 1.0;
    std::string format = "plain";
};

int run_invgamma(const InvGammaOptions& opt) {
    const double x = compoisson::inverse_gamma(opt.y);
    const std::int64_t floor_k =
        opt.y >= 1.0 ? compoisson::floor_inverse_gamma(opt.y) : 1;
    if (opt.format == "json") {
        nlohmann::ordered_json j;
        j["y"] = opt.y;
        j["x"] = x;
        j["floor"] = floor_k;
        std::cout << j.dump() << "\n";
    } else if (opt.format == "csv") {
        std::cout << "y,x,floor\n"
                  << compoisson::format_double(opt.y) << ',' << compoisson::format_double(x)
                  << ',' << floor_k << "\n";
    } else {
        std::cout << "x = " << compoisson::format_double(x) << "\n"
                  << "floor = " << floor_k << "\n";
    }
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"COM-Poisson normalizing constants: series, breakpoint-integral, "
                 "hypergeometric and trigonometric-integral evaluators with a "
                 "distribution layer"};
    app.require_subcommand(1);

    ZOptions z_opt;
    auto* z_cmd = app.add_subcommand("z", "compute Z(lambda, nu) by one method");
    z_cmd->add_option("--lambda", z_opt.lambda, "weight parameter, > 0")->required();
    z_cmd->add_option("--nu", z_opt.nu, "dispersion parameter, > 0")->required();
    z_cmd->add_option("--method", z_opt.method,
                      "series|cahen-exact|cahen-quad|hyper|shmueli");
    z_cmd->add_option("--tol", z_opt.tol, "relative truncation tolerance");
    z_cmd->add_option("--format", z_opt.format, "plain|csv|json");
    z_cmd->add_option("--nodes", z_opt.nodes, "Gauss nodes per segment (cahen-quad)");
    z_cmd->add_option("--segments", z_opt.segments, "pointwise segments (cahen-quad)");
    z_cmd->add_option("--shmueli-nodes", z_opt.shmueli_nodes, "grid points per dimension");

    CompareOptions cmp_opt;
    auto* cmp_cmd = app.add_subcommand("compare",
                                       "cross-compare methods against the series reference");
    cmp_cmd->add_option("--lambda-grid", cmp_opt.lambda_grid,
                        "comma list or start:stop:step")->required();
    cmp_cmd->add_option("--nu-grid", cmp_opt.nu_grid, "comma list or start:stop:step")->required();
    cmp_cmd->add_option("--methods", cmp_opt.methods, "comma list of methods");
    cmp_cmd->add_option("--max-rel", cmp_opt.max_rel,
                        "largest allowed relative deviation (exit 3 above)");
    cmp_cmd->add_option("--perturb", cmp_opt.perturb,
                        "validation hook: relative perturbation applied to "
                        "non-reference methods");
    cmp_cmd->add_option("--format", cmp_opt.format, "plain|csv|json");

    PmfOptions pmf_opt;
    auto* pmf_cmd = app.add_subcommand("pmf", "emit the probability table");
    pmf_cmd->add_option("--lambda", pmf_opt.lambda, "weight parameter, > 0")->required();
    pmf_cmd->add_option("--nu", pmf_opt.nu, "dispersion parameter, > 0")->required();
    pmf_cmd->add_option("--max-n", pmf_opt.max_n, "last support point (default: table)");
    pmf_cmd->add_option("--format", pmf_opt.format, "plain|csv|json");

    SampleOptions sample_opt;
    auto* sample_cmd = app.add_subcommand("sample", "draw by exact quantile inversion");
    sample_cmd->add_option("--lambda", sample_opt.lambda, "weight parameter, > 0")->required();
    sample_cmd->add_option("--nu", sample_opt.nu, "dispersion parameter, > 0")->required();
    sample_cmd->add_option("--seed", sample_opt.seed, "generator seed");
    sample_cmd->add_option("--count", sample_opt.count, "number of draws");
    sample_cmd->add_option("--format", sample_opt.format, "plain|csv|json");

    BenchOptions bench_opt;
    auto* bench_cmd = app.add_subcommand("bench", "time every method over a fixed grid");
    bench_cmd->add_option("--grid", bench_opt.grid, "grid name (default)");
    bench_cmd->add_option("--reps", bench_opt.reps, "repetitions per point");
    bench_cmd->add_option("--format", bench_opt.format, "plain|csv|json");

    InvGammaOptions ig_opt;
    auto* ig_cmd = app.add_subcommand("invgamma",
                                      "increasing-branch inverse Gamma and its integer part");
    ig_cmd->add_option("--y", ig_opt.y, "argument, >= Gamma minimum ~ 0.8856")->required();
    ig_cmd->add_option("--format", ig_opt.format, "plain|csv|json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return exit_domain;
    }

    try {
        if (z_cmd->parsed())
            return run_z(z_opt);
        if (cmp_cmd->parsed())
            return run_compare(cmp_opt);
        if (pmf_cmd->parsed())
            return run_pmf(pmf_opt);
        if (sample_cmd->parsed())
            return run_sample(sample_opt);
        if (bench_cmd->parsed())
            return run_bench(bench_opt);
        if (ig_cmd->parsed())
            return run_invgamma(ig_opt);
    } catch (const compoisson::convergence_failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_domain;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_domain;
    }
    return exit_ok;
}
