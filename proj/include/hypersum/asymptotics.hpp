#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hypersum/arith_core.hpp"
#include "hypersum/constants.hpp"

namespace hsum {

// Smallest x at which main terms with a log log x factor are evaluated
// (log log 16 > 0). T2 and L3 have no such factor and only need log x > 0.
inline constexpr std::uint64_t kMinPredictionX = 16;
inline constexpr std::uint64_t kMinPredictionXNoLogLog = 2;

enum class Theorem {
    t1,  // sum omega(lcm(n_1..n_r)) over n_1...n_r <= x
    t2,  // sum Omega((a,b,c)) over abc <= x
    t3,  // sum Omega([a,b,c]) over abc <= x
    l3,  // sum_{n<=x} (1/n) sum_{ab=n} Omega((a,b))
    l4,  // sum_{n<=x} Omega(n) tau_3(n)
};

struct TheoremId {
    Theorem which = Theorem::t2;
    int r = 0;  // arity, T1 only

    // "T1(r=3)", "T2", "T3", "L3", "L4"
    [[nodiscard]] std::string label() const;
    // Accepts "T1", "T1(r=3)", "T2", ... (case-insensitive). A bare "T1"
    // takes `default_r`.
    static TheoremId parse(const std::string& s, int default_r = 2);
    friend bool operator==(const TheoremId&, const TheoremId&) = default;
};

std::uint64_t min_prediction_x(const TheoremId& theorem);

struct Term {
    std::string label;
    double value = 0.0;
};

struct Prediction {
    TheoremId theorem;
    std::uint64_t x = 0;
    double main_terms = 0.0;
    std::vector<Term> breakdown;
};

/// Main terms of the asymptotic formula at x (natural logs throughout).
/// L3 needs an empirical D_Omega estimate; the others ignore it.
Prediction predict(const TheoremId& theorem, std::uint64_t x, const ConstantSet& constants,
                   std::optional<double> d_omega_estimate = std::nullopt);

/// Argument of the O-term: x log^{r-2} x (T1), x log x (T2, T3, L4), x^{-1/2} (L3).
double error_scale(const TheoremId& theorem, std::uint64_t x);

struct SumReport {
    TheoremId theorem;
    std::uint64_t x = 0;
    std::string exact;         // integer kinds: decimal; L3: "p/q" or 17-digit float
    long double exact_value = 0;
    double predicted = 0.0;
    double residual = 0.0;
    double error_scale = 0.0;
    double normalized_residual = 0.0;
};

/// Exact value of the summed quantity for `theorem` at x, from the fast
/// paths. Returns (decimal rendering, numeric value).
std::pair<std::string, long double> exact_sum(const TheoremId& theorem, std::uint64_t x,
                                              const TableSet& tables);

/// Cross-checks fast against brute at `x` for the quantity behind `theorem`.
/// Throws CheckFailure on disagreement.
void verify_fast_path(const TheoremId& theorem, std::uint64_t x, const TableSet& tables);

// x at which residual_scan verifies the fast path before trusting it.
inline constexpr std::uint64_t kScanVerifyX = 1000;

/// One report per grid point, in grid order. Before the scan, the fast path
/// is checked against brute force at min(grid[0], kScanVerifyX). For L3,
/// when no estimate is given, D_Omega is fitted on the grid itself.
std::vector<SumReport> residual_scan(const TheoremId& theorem, std::span<const std::uint64_t> grid,
                                     const TableSet& tables, const ConstantSet& constants,
                                     std::optional<double> d_omega_estimate = std::nullopt);

struct DOmegaFit {
    double estimate = 0.0;  // mean of the pointwise values
    double spread = 0.0;    // max - min
    std::vector<std::pair<std::uint64_t, double>> points;
    bool positive = false;  // estimate > 0
};

/// D_Omega(x) = L3(x) - (C_Omega/2) log^2 x - (C_Omega+1) log x at each
/// grid point. Needs >= 3 points, all >= 1000.
DOmegaFit fit_DOmega(std::span<const std::uint64_t> grid, const TableSet& tables,
                     const ConstantSet& constants);
/// Same fit on caller-supplied L3 values.
DOmegaFit fit_DOmega_series(std::span<const std::uint64_t> grid, std::span<const double> values,
                            double c_omega);

/// theorem,x,exact,predicted,residual,normalized_residual,error_scale
std::string reports_to_csv(std::span<const SumReport> reports);
std::string reports_to_json(std::span<const SumReport> reports);

}  // namespace hsum
