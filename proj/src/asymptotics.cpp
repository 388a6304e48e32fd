#include "hypersum/asymptotics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "hypersum/error.hpp"
#include "hypersum/format.hpp"
#include "hypersum/sums.hpp"

namespace hsum {

std::string TheoremId::label() const {
    switch (which) {
        case Theorem::t1: return "T1(r=" + std::to_string(r) + ")";
        case Theorem::t2: return "T2";
        case Theorem::t3: return "T3";
        case Theorem::l3: return "L3";
        case Theorem::l4: return "L4";
    }
    return "unknown";
}

TheoremId TheoremId::parse(const std::string& s, int default_r) {
    std::string u;
    for (const char ch : s) {
        if (!std::isspace(static_cast<unsigned char>(ch))) u.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
    }
    if (u == "T2") return {Theorem::t2};
    if (u == "T3") return {Theorem::t3};
    if (u == "L3") return {Theorem::l3};
    if (u == "L4") return {Theorem::l4};
    if (u == "T1") {
        if (default_r < 2) throw InvalidArgument("T1 needs r >= 2");
        return {Theorem::t1, default_r};
    }
    if (u.rfind("T1(R=", 0) == 0 && u.back() == ')') {
        try {
            const int r = std::stoi(u.substr(5, u.size() - 6));
            if (r >= 2) return {Theorem::t1, r};
        } catch (const std::exception&) {
        }
    }
    throw InvalidArgument("unknown theorem '" + s + "'");
}

std::uint64_t min_prediction_x(const TheoremId& theorem) {
    return (theorem.which == Theorem::t2 || theorem.which == Theorem::l3) ? kMinPredictionXNoLogLog
                                                                          : kMinPredictionX;
}

Prediction predict(const TheoremId& theorem, std::uint64_t x, const ConstantSet& constants,
                   std::optional<double> d_omega_estimate) {
    if (x < min_prediction_x(theorem)) {
        throw InvalidArgument("predict: " + theorem.label() + " needs x >= " +
                              std::to_string(min_prediction_x(theorem)) + ", got " + std::to_string(x));
    }
    const double xd = static_cast<double>(x);
    const double L = std::log(xd);
    const double LL = std::log(L);

    Prediction p;
    p.theorem = theorem;
    p.x = x;
    switch (theorem.which) {
        case Theorem::t1: {
            const int r = theorem.r;
            const double lr = std::pow(L, r - 1);
            p.breakdown = {
                {"C x log^(r-1) x loglog x", constants.c_of(r).value * xd * lr * LL},
                {"C1 x log^(r-1) x", constants.c1_of(r).value * xd * lr},
            };
            break;
        }
        case Theorem::t2:
            p.breakdown = {{"(C2/2) x log^2 x", constants.C2.value / 2.0 * xd * L * L}};
            break;
        case Theorem::t3:
            p.breakdown = {
                {"K x log^2 x loglog x", constants.K.value * xd * L * L * LL},
                {"(K1 + (C2 - 3 C_Omega)/2) x log^2 x", constants.thm3_coeff.value * xd * L * L},
            };
            break;
        case Theorem::l3: {
            if (!d_omega_estimate) {
                throw InvalidArgument("predict: L3 needs an empirical D_Omega estimate");
            }
            const double c = constants.C_Omega.value;
            p.breakdown = {
                {"(C_Omega/2) log^2 x", c / 2.0 * L * L},
                {"(C_Omega + 1) log x", (c + 1.0) * L},
                {"D_Omega (empirical estimate)", *d_omega_estimate},
            };
            break;
        }
        case Theorem::l4:
            p.breakdown = {
                {"K x log^2 x loglog x", constants.K.value * xd * L * L * LL},
                {"K1 x log^2 x", constants.K1.value * xd * L * L},
            };
            break;
    }
    for (const auto& t : p.breakdown) p.main_terms += t.value;
    return p;
}

double error_scale(const TheoremId& theorem, std::uint64_t x) {
    const double xd = static_cast<double>(x);
    const double L = std::log(xd);
    switch (theorem.which) {
        case Theorem::t1: return xd * std::pow(L, theorem.r - 2);
        case Theorem::t2:
        case Theorem::t3:
        case Theorem::l4: return xd * L;
        case Theorem::l3: return 1.0 / std::sqrt(xd);
    }
    return 1.0;
}

std::pair<std::string, long double> exact_sum(const TheoremId& theorem, std::uint64_t x,
                                              const TableSet& tables) {
    auto integer = [](const SumResult& s) {
        return std::pair<std::string, long double>{std::to_string(s.value), static_cast<long double>(s.value)};
    };
    switch (theorem.which) {
        case Theorem::t1: return integer(sum_omega_lcm_fast(x, theorem.r, tables));
        case Theorem::t2: return integer(sum_bigomega_gcd3_fast(x, tables));
        case Theorem::t3: return integer(sum_bigomega_lcm3_fast(x, tables));
        case Theorem::l4: return integer(sum_bigomega_tau3(x, tables));
        case Theorem::l3: {
            const WeightedSum w = weighted_pairgcd_sum(x, tables);
            return {w.render(), static_cast<long double>(w.value)};
        }
    }
    throw InvalidArgument("exact_sum: unknown theorem");
}

void verify_fast_path(const TheoremId& theorem, std::uint64_t x, const TableSet& tables) {
    auto compare = [&](const SumResult& brute, const SumResult& fast) {
        if (brute.value != fast.value) {
            throw CheckFailure(theorem.label() + ": brute " + std::to_string(brute.value) + " != fast " +
                               std::to_string(fast.value) + " at x=" + std::to_string(x));
        }
    };
    switch (theorem.which) {
        case Theorem::t1:
            compare(sum_omega_lcm_brute(x, theorem.r), sum_omega_lcm_fast(x, theorem.r, tables));
            return;
        case Theorem::t2:
            compare(sum_bigomega_gcd3_brute(x), sum_bigomega_gcd3_fast(x, tables));
            return;
        case Theorem::t3:
            compare(sum_bigomega_lcm3_brute(x), sum_bigomega_lcm3_fast(x, tables));
            return;
        case Theorem::l4:
            compare(sum_bigomega_tau3_brute(x), sum_bigomega_tau3(x, tables));
            return;
        case Theorem::l3:
            if (pair_gcd_weights_brute(x) != pair_gcd_weights_fast(x, tables)) {
                throw CheckFailure("L3: brute and fast pair-gcd weights differ at x=" + std::to_string(x));
            }
            return;
    }
}

namespace {

void require_grid(std::span<const std::uint64_t> grid, std::uint64_t min_x, const char* what) {
    if (grid.empty()) throw InvalidArgument(std::string(what) + ": empty grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < min_x) {
            throw InvalidArgument(std::string(what) + ": grid point " + std::to_string(grid[i]) +
                                  " below " + std::to_string(min_x));
        }
        if (i > 0 && grid[i] <= grid[i - 1]) {
            throw InvalidArgument(std::string(what) + ": grid must be strictly ascending");
        }
    }
}

}  // namespace

std::vector<SumReport> residual_scan(const TheoremId& theorem, std::span<const std::uint64_t> grid,
                                     const TableSet& tables, const ConstantSet& constants,
                                     std::optional<double> d_omega_estimate) {
    require_grid(grid, min_prediction_x(theorem), "residual_scan");
    tables.require(grid.back(), "residual_scan");

    verify_fast_path(theorem, std::min(grid.front(), kScanVerifyX), tables);

    if (theorem.which == Theorem::l3 && !d_omega_estimate) {
        d_omega_estimate = fit_DOmega(grid, tables, constants).estimate;
    }

    std::vector<SumReport> out;
    out.reserve(grid.size());
    for (const std::uint64_t x : grid) {
        SumReport rep;
        rep.theorem = theorem;
        rep.x = x;
        std::tie(rep.exact, rep.exact_value) = exact_sum(theorem, x, tables);
        rep.predicted = predict(theorem, x, constants, d_omega_estimate).main_terms;
        rep.residual = static_cast<double>(rep.exact_value - static_cast<long double>(rep.predicted));
        rep.error_scale = error_scale(theorem, x);
        rep.normalized_residual = rep.residual / rep.error_scale;
        out.push_back(std::move(rep));
    }
    return out;
}

DOmegaFit fit_DOmega_series(std::span<const std::uint64_t> grid, std::span<const double> values,
                            double c_omega) {
    if (grid.size() < 3) throw InvalidArgument("fit_DOmega: need at least 3 grid points");
    if (values.size() != grid.size()) throw InvalidArgument("fit_DOmega: one value per grid point");
    require_grid(grid, 1000, "fit_DOmega");

    DOmegaFit fit;
    double total = 0.0;
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double L = std::log(static_cast<double>(grid[i]));
        const double d = values[i] - (c_omega / 2.0 * L * L + (c_omega + 1.0) * L);
        fit.points.emplace_back(grid[i], d);
        total += d;
        lo = i == 0 ? d : std::min(lo, d);
        hi = i == 0 ? d : std::max(hi, d);
    }
    fit.estimate = total / static_cast<double>(grid.size());
    fit.spread = hi - lo;
    fit.positive = fit.estimate > 0.0;
    return fit;
}

DOmegaFit fit_DOmega(std::span<const std::uint64_t> grid, const TableSet& tables,
                     const ConstantSet& constants) {
    if (grid.size() < 3) throw InvalidArgument("fit_DOmega: need at least 3 grid points");
    require_grid(grid, 1000, "fit_DOmega");
    tables.require(grid.back(), "fit_DOmega");
    std::vector<double> values;
    values.reserve(grid.size());
    for (const std::uint64_t x : grid) values.push_back(weighted_pairgcd_sum(x, tables).value);
    return fit_DOmega_series(grid, values, constants.C_Omega.value);
}

std::string reports_to_csv(std::span<const SumReport> reports) {
    std::ostringstream out;
    out << "theorem,x,exact,predicted,residual,normalized_residual,error_scale\n";
    for (const auto& r : reports) {
        out << r.theorem.label() << ',' << r.x << ',' << r.exact << ',' << format_double(r.predicted) << ','
            << format_double(r.residual) << ',' << format_double(r.normalized_residual) << ','
            << format_double(r.error_scale) << '\n';
    }
    return out.str();
}

std::string reports_to_json(std::span<const SumReport> reports) {
    std::ostringstream out;
    out << "[\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        out << "  {\"theorem\": " << json_string(r.theorem.label()) << ", \"x\": " << r.x
            << ", \"exact\": " << json_string(r.exact) << ", \"predicted\": " << json_number(r.predicted)
            << ", \"residual\": " << json_number(r.residual)
            << ", \"normalized_residual\": " << json_number(r.normalized_residual)
            << ", \"error_scale\": " << json_number(r.error_scale) << "}" << (i + 1 < reports.size() ? "," : "")
            << "\n";
    }
    out << "]\n";
    return out.str();
}

}  // namespace hsum
