#include "hypersum/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hypersum/arith_core.hpp"
#include "hypersum/asymptotics.hpp"
#include "hypersum/constants.hpp"
#include "hypersum/error.hpp"
#include "hypersum/format.hpp"
#include "hypersum/identities.hpp"
#include "hypersum/sums.hpp"
#include "hypersum/table_cache.hpp"

namespace hsum::cli {

namespace {

// Writes the command's report to --out when given, else to `out`.
void emit(const RunConfig& config, std::ostream& out, const std::string& text) {
    if (config.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(config.out, std::ios::binary | std::ios::trunc);
    if (!file) throw ResourceError("cannot open output file " + config.out);
    file << text;
}

std::string resolve_cache_dir(const RunConfig& config, bool flag_given) {
    if (flag_given) return config.cache_dir;
    if (const char* env = std::getenv("HYPERSUM_CACHE"); env != nullptr && *env != '\0') return env;
    return config.cache_dir;
}

TableSet build_tables(const RunConfig& config, std::uint64_t needed, std::vector<int> extra_r) {
    const std::uint64_t limit = config.table_limit.value_or(needed);
    if (limit < needed) {
        throw InvalidArgument("--table-limit " + std::to_string(limit) + " is below the required " +
                              std::to_string(needed));
    }
    std::unique_ptr<TableCache> cache;
    if (!config.cache_dir.empty()) cache = std::make_unique<TableCache>(config.cache_dir);
    TableSet::Options options;
    options.limit = limit;
    options.extra_r = std::move(extra_r);
    options.cache = cache.get();
    return TableSet::build(options);
}

void require_format(const RunConfig& config) {
    if (config.format != "csv" && config.format != "json") {
        throw InvalidArgument("--format must be csv or json, got '" + config.format + "'");
    }
}

}  // namespace

std::vector<std::uint64_t> parse_decade_grid(const std::string& text) {
    std::vector<std::uint64_t> grid;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        int e = -1;
        try {
            e = std::stoi(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != item.size() || e < 0 || e > 12) {
            throw InvalidArgument("--grid expects comma-separated decade exponents 0..12, got '" + item + "'");
        }
        std::uint64_t x = 1;
        for (int i = 0; i < e; ++i) x *= 10;
        grid.push_back(x);
    }
    if (grid.empty()) throw InvalidArgument("--grid is empty");
    return grid;
}

int cmd_identities(const RunConfig& config, std::ostream& out, std::ostream& err) {
    require_format(config);
    const SuiteBounds bounds = config.bound ? SuiteBounds::uniform(*config.bound) : SuiteBounds{};
    TableSet tables = build_tables(config, bounds.table_limit(), {4, 5});
    if (!config.inject_fault.empty()) {
        if (config.inject_fault != "tau3") {
            throw InvalidArgument("--inject-fault supports only 'tau3'");
        }
        // tau_3(2) = 3; any suite that reads tau_3 must notice.
        const FunctionTable& tau3 = tables.tau(3);
        tables = tables.with_table(tau3.with_value(2, tau3[2] + 1));
    }

    const auto reports = run_identity_suites(bounds, tables, config.threads);
    std::uint64_t failures = 0;
    std::ostringstream text;
    if (config.format == "csv") {
        text << "suite,checked,failed\n";
        for (const auto& r : reports) text << r.name << ',' << r.checked << ',' << r.failed << '\n';
    } else {
        text << "[\n";
        for (std::size_t i = 0; i < reports.size(); ++i) {
            const auto& r = reports[i];
            text << "  {\"suite\": " << json_string(r.name) << ", \"checked\": " << r.checked
                 << ", \"failed\": " << r.failed << "}" << (i + 1 < reports.size() ? "," : "") << "\n";
        }
        text << "]\n";
    }
    for (const auto& r : reports) {
        failures += r.failed;
        for (const auto& f : r.failures) {
            err << "FAIL " << f.identity << " " << f.argument << " lhs=" << f.lhs << " rhs=" << f.rhs << "\n";
        }
    }
    emit(config, out, text.str());
    return failures == 0 ? kExitOk : kExitCheckFailed;
}

int cmd_sum(const RunConfig& config, std::ostream& out, std::ostream& err) {
    require_format(config);
    if (!config.x || *config.x < 1) throw InvalidArgument("sum: --x must be given and >= 1");
    if (config.kind.empty()) throw InvalidArgument("sum: --kind is required");
    const SumKind kind = parse_sum_kind(config.kind);
    const std::uint64_t x = *config.x;
    const int r = config.r.value_or(kind == SumKind::omega_lcm ? 2 : 3);
    if (kind == SumKind::omega_lcm && r < 2) throw InvalidArgument("sum: --r must be >= 2");

    std::vector<Method> methods;
    if (config.method == "both") {
        methods = {Method::brute, Method::fast};
    } else {
        methods = {parse_method(config.method)};
    }
    const bool need_tables = std::find(methods.begin(), methods.end(), Method::fast) != methods.end();
    std::optional<TableSet> tables;
    if (need_tables) {
        std::vector<int> extra;
        if (kind == SumKind::omega_lcm) extra.push_back(r);
        tables = build_tables(config, x, extra);
    }

    struct Row {
        Method method;
        std::string value;
    };
    std::vector<Row> rows;
    bool agree = true;
    if (kind == SumKind::weighted_gcd_pairs) {
        std::vector<WeightedSum> results;
        for (const Method m : methods) {
            results.push_back(m == Method::brute ? weighted_pairgcd_sum_brute(x) : weighted_pairgcd_sum(x, *tables));
            rows.push_back({m, results.back().render()});
        }
        if (results.size() == 2) agree = results[0].weights == results[1].weights;
    } else {
        std::vector<SumResult> results;
        for (const Method m : methods) {
            results.push_back(compute_sum(kind, m, x, r, tables ? &*tables : nullptr, config.threads));
            rows.push_back({m, std::to_string(results.back().value)});
        }
        if (results.size() == 2) agree = results[0].value == results[1].value;
    }

    const bool both = methods.size() == 2;
    const int r_out = kind == SumKind::omega_lcm ? r : (kind == SumKind::weighted_gcd_pairs ? 2 : 3);
    std::ostringstream text;
    if (config.format == "csv") {
        text << "kind,x,r,method,value" << (both ? ",agreement" : "") << "\n";
        for (const auto& row : rows) {
            text << to_string(kind) << ',' << x << ',' << r_out << ',' << to_string(row.method) << ','
                 << row.value;
            if (both) text << ',' << (agree ? "true" : "false");
            text << '\n';
        }
    } else {
        text << "[\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            text << "  {\"kind\": " << json_string(to_string(kind)) << ", \"x\": " << x << ", \"r\": " << r_out
                 << ", \"method\": " << json_string(to_string(rows[i].method))
                 << ", \"value\": " << json_string(rows[i].value);
            if (both) text << ", \"agreement\": " << (agree ? "true" : "false");
            text << "}" << (i + 1 < rows.size() ? "," : "") << "\n";
        }
        text << "]\n";
    }
    emit(config, out, text.str());
    if (!agree) {
        err << "brute and fast disagree for " << to_string(kind) << " at x=" << x << "\n";
        return kExitCheckFailed;
    }
    return kExitOk;
}

int cmd_constants(const RunConfig& config, std::ostream& out, std::ostream& err) {
    require_format(config);
    if (config.prime_limit < 1000) throw InvalidArgument("constants: --prime-limit must be >= 1000");
    const ConstantSet set = build_constant_set(config.prime_limit);

    // Invariants: finite non-negative tails; per-prime summand signs.
    std::vector<std::string> breaches;
    for (const auto& c : set.all()) {
        if (!std::isfinite(c.value) || !std::isfinite(c.tail_bound) || c.tail_bound < 0) {
            breaches.push_back(c.name + ": non-finite value or invalid tail bound");
        }
    }
    for (const std::uint32_t p : primes_up_to(config.prime_limit)) {
        if (!(prime_sum_term(PrimeSumFamily::s_omega, p) > 0)) {
            breaches.push_back("S_Omega summand not positive at p=" + std::to_string(p));
            break;
        }
        bool bad = false;
        for (int r = kConstantSetMinR; r <= kConstantSetMaxR; ++r) bad |= !(prime_sum_term(PrimeSumFamily::s_r, p, r) < 0);
        if (bad) {
            breaches.push_back("S_r summand not negative at p=" + std::to_string(p));
            break;
        }
    }

    std::ostringstream text;
    const auto all = set.all();
    if (config.format == "json") {
        text << "[\n";
        for (std::size_t i = 0; i < all.size(); ++i) {
            const auto& c = all[i];
            text << "  {\"name\": " << json_string(c.name) << ", \"cutoff\": " << c.cutoff
                 << ", \"value\": " << json_number(c.value) << ", \"tail_bound\": " << json_number(c.tail_bound)
                 << ", \"formula\": " << json_string(c.formula) << "}" << (i + 1 < all.size() ? "," : "") << "\n";
        }
        text << "]\n";
    } else {
        text << "name,cutoff,value,tail_bound,formula\n";
        for (const auto& c : all) {
            text << c.name << ',' << c.cutoff << ',' << format_double(c.value) << ','
                 << format_double(c.tail_bound) << ",\"" << c.formula << "\"\n";
        }
    }
    emit(config, out, text.str());
    for (const auto& b : breaches) err << "INVARIANT " << b << "\n";
    return breaches.empty() ? kExitOk : kExitCheckFailed;
}

int cmd_compare(const RunConfig& config, std::ostream& out, std::ostream& err) {
    require_format(config);
    std::vector<std::uint64_t> grid = config.grid;
    if (grid.empty() && config.x) grid = {*config.x};
    if (grid.empty()) throw InvalidArgument("compare: give --grid or --x");
    const TheoremId theorem = TheoremId::parse(config.theorem, config.r.value_or(2));
    if (theorem.which == Theorem::t1 && (theorem.r < kConstantSetMinR || theorem.r > kConstantSetMaxR)) {
        throw InvalidArgument("compare: T1 supports r in [2, 5]");
    }
    if (config.prime_limit < 1000) throw InvalidArgument("compare: --prime-limit must be >= 1000");

    std::uint64_t needed = 0;
    for (const auto x : grid) needed = std::max(needed, x);
    std::vector<int> extra;
    if (theorem.which == Theorem::t1) extra.push_back(theorem.r);
    const TableSet tables = build_tables(config, needed, extra);
    const ConstantSet constants = build_constant_set(config.prime_limit);

    const auto reports = residual_scan(theorem, grid, tables, constants);
    emit(config, out, config.format == "csv" ? reports_to_csv(reports) : reports_to_json(reports));

    double worst = 0.0;
    for (const auto& r : reports) {
        if (!std::isfinite(r.normalized_residual)) {
            err << "non-finite normalized residual at x=" << r.x << "\n";
            return kExitCheckFailed;
        }
        worst = std::max(worst, std::fabs(r.normalized_residual));
    }
    err << theorem.label() << ": max |normalized residual| = " << format_double(worst) << " over "
        << reports.size() << " grid points\n";
    return kExitOk;
}

namespace {

template <typename T>
void from_json_if(const nlohmann::json& j, const char* key, T& target) {
    if (j.contains(key)) target = j.at(key).get<T>();
}

void apply_config_file(const std::string& path, RunConfig& c) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot read config file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument("config file " + path + ": " + e.what());
    }
    if (!j.is_object()) throw InvalidArgument("config file " + path + ": expected a JSON object");
    try {
        if (j.contains("x")) c.x = j.at("x").get<std::uint64_t>();
        if (j.contains("r")) c.r = j.at("r").get<int>();
        if (j.contains("table_limit")) c.table_limit = j.at("table_limit").get<std::uint64_t>();
        if (j.contains("bound")) c.bound = j.at("bound").get<std::uint64_t>();
        if (j.contains("grid")) {
            const auto& g = j.at("grid");
            c.grid = g.is_string() ? parse_decade_grid(g.get<std::string>()) : g.get<std::vector<std::uint64_t>>();
        }
        from_json_if(j, "prime_limit", c.prime_limit);
        from_json_if(j, "kind", c.kind);
        from_json_if(j, "method", c.method);
        from_json_if(j, "format", c.format);
        from_json_if(j, "out", c.out);
        from_json_if(j, "threads", c.threads);
        from_json_if(j, "cache_dir", c.cache_dir);
        from_json_if(j, "theorem", c.theorem);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument("config file " + path + ": " + e.what());
    }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact hyperbolic sums of Omega and omega over gcd/lcm tuples"};
    app.require_subcommand(1);

    std::string config_path;
    std::uint64_t x = 0, prime_limit = 0, table_limit = 0, bound = 0;
    int r = 0;
    unsigned threads = 1;
    std::string grid, kind, method, format, out_path, cache_dir, theorem, inject_fault;

    app.add_option("--config", config_path, "JSON config file; flags override it");
    auto* o_x = app.add_option("--x", x, "Summation bound x");
    auto* o_grid = app.add_option("--grid", grid, "Comma-separated decade exponents, e.g. 3,4,5,6");
    auto* o_r = app.add_option("--r", r, "Arity r");
    auto* o_prime = app.add_option("--prime-limit", prime_limit, "Prime cutoff P for constants");
    auto* o_table = app.add_option("--table-limit", table_limit, "Table limit N");
    auto* o_kind = app.add_option("--kind", kind, "Sum kind");
    auto* o_method = app.add_option("--method", method, "brute, fast or both")
                         ->check(CLI::IsMember({"brute", "fast", "both"}));
    auto* o_format = app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    auto* o_out = app.add_option("--out", out_path, "Output path (default stdout)");
    auto* o_threads = app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    auto* o_cache = app.add_option("--cache-dir", cache_dir, "Table cache directory (env HYPERSUM_CACHE)");
    auto* o_theorem = app.add_option("--theorem", theorem, "T1, T1(r=3), T2, T3, L3 or L4");
    auto* o_bound = app.add_option("--bound", bound, "identities: bound every suite at this value");
    auto* o_fault = app.add_option("--inject-fault", inject_fault, "identities test mode: corrupt a table (tau3)");

    for (const char* name : {"identities", "sum", "constants", "compare"}) {
        app.add_subcommand(name)->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        RunConfig config;
        config.command = app.get_subcommands().front()->get_name();
        if (!config_path.empty()) apply_config_file(config_path, config);
        if (o_x->count()) config.x = x;
        if (o_grid->count()) config.grid = parse_decade_grid(grid);
        if (o_r->count()) config.r = r;
        if (o_prime->count()) config.prime_limit = prime_limit;
        if (o_table->count()) config.table_limit = table_limit;
        if (o_kind->count()) config.kind = kind;
        if (o_method->count()) config.method = method;
        if (o_format->count()) config.format = format;
        if (o_out->count()) config.out = out_path;
        if (o_threads->count()) config.threads = threads;
        if (o_cache->count()) config.cache_dir = cache_dir;
        if (o_theorem->count()) config.theorem = theorem;
        if (o_bound->count()) config.bound = bound;
        if (o_fault->count()) config.inject_fault = inject_fault;
        config.cache_dir = resolve_cache_dir(config, o_cache->count() > 0);
        if (config.threads < 1) throw InvalidArgument("--threads must be >= 1");

        if (config.command == "identities") return cmd_identities(config, out, err);
        if (config.command == "sum") return cmd_sum(config, out, err);
        if (config.command == "constants") return cmd_constants(config, out, err);
        return cmd_compare(config, out, err);
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ResourceError& e) {
        err << "resource guard: " << e.what() << "\n";
        return kExitResource;
    } catch (const OverflowError& e) {
        err << "overflow: " << e.what() << "\n";
        return kExitResource;
    } catch (const CheckFailure& e) {
        err << "check failed: " << e.what() << "\n";
        return kExitCheckFailed;
    }
}

}  // namespace hsum::cli
