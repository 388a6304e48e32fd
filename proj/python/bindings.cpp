#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hypersum/arith_core.hpp"
#include "hypersum/asymptotics.hpp"
#include "hypersum/cli.hpp"
#include "hypersum/constants.hpp"
#include "hypersum/error.hpp"
#include "hypersum/format.hpp"
#include "hypersum/identities.hpp"
#include "hypersum/sums.hpp"

namespace py = pybind11;
using namespace hsum;

namespace {

// 128-bit integers cross into Python through their decimal form.
py::int_ to_pyint(__int128 v) {
    return py::reinterpret_steal<py::int_>(PyLong_FromString(format_int128(v).c_str(), nullptr, 10));
}

void check_index(std::uint64_t n, std::uint64_t limit, const char* what) {
    if (n < 1 || n > limit) {
        throw py::index_error(std::string(what) + ": index " + std::to_string(n) + " outside [1, " +
                              std::to_string(limit) + "]");
    }
}

}  // namespace

PYBIND11_MODULE(_hypersum, m) {
    m.doc() = "Exact hyperbolic sums of prime-factor counts over gcd/lcm tuples";

    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<hsum::OverflowError>(m, "OverflowError", PyExc_OverflowError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
    py::register_exception<CheckFailure>(m, "CheckFailure", PyExc_AssertionError);

    // arith_core
    py::class_<FactorSieve>(m, "FactorSieve")
        .def_property_readonly("limit", &FactorSieve::limit)
        .def("spf",
             [](const FactorSieve& s, std::uint64_t n) {
                 if (n < 2 || n > s.limit()) throw py::index_error("spf: n outside [2, limit]");
                 return s.spf(static_cast<std::uint32_t>(n));
             })
        .def("is_prime", &FactorSieve::is_prime);
    m.def("build_spf_sieve", &build_spf_sieve, py::arg("limit"), py::arg("ceiling") = kDefaultTableCeiling);
    m.def(
        "factorize",
        [](std::uint64_t n, const FactorSieve& sieve) {
            std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
            for (const auto& pp : factorize(n, sieve)) out.emplace_back(pp.prime, pp.exponent);
            return out;
        },
        py::arg("n"), py::arg("sieve"));
    m.def("tau_r_at_prime_power", &tau_r_at_prime_power, py::arg("r"), py::arg("m"));

    py::class_<FunctionTable>(m, "FunctionTable")
        .def_property_readonly("name", &FunctionTable::name)
        .def_property_readonly("limit", &FunctionTable::limit)
        .def("__len__", &FunctionTable::limit)
        .def("__getitem__",
             [](const FunctionTable& t, std::uint64_t n) {
                 check_index(n, t.limit(), "FunctionTable");
                 return t[n];
             })
        .def("values", [](const FunctionTable& t) {
            const auto v = t.values();
            return std::vector<FunctionTable::value_type>(v.begin(), v.end());
        })
        .def("prefix_sums", &FunctionTable::prefix_sums)
        .def("__eq__", [](const FunctionTable& a, const FunctionTable& b) { return a == b; });
    m.def(
        "build_table",
        [](const std::string& name, std::uint64_t limit, const FactorSieve& sieve) {
            return build_table(FunctionName::parse(name), limit, sieve);
        },
        py::arg("name"), py::arg("limit"), py::arg("sieve"));
    m.def("dirichlet_convolve", &dirichlet_convolve, py::arg("f"), py::arg("g"), py::arg("name") = "");
    m.def("ones_table", &ones_table, py::arg("limit"));
    m.def("build_mu_star_bigomega_by_convolution", &build_mu_star_bigomega_by_convolution, py::arg("limit"),
          py::arg("sieve"));

    py::class_<TableSet>(m, "TableSet")
        .def_static(
            "build",
            [](std::uint64_t limit, std::vector<int> extra_r) {
                py::gil_scoped_release release;
                return TableSet::build(limit, std::move(extra_r));
            },
            py::arg("limit"), py::arg("extra_r") = std::vector<int>{})
        .def_property_readonly("limit", &TableSet::limit)
        .def_property_readonly("big_omega", &TableSet::big_omega, py::return_value_policy::reference_internal)
        .def_property_readonly("small_omega", &TableSet::small_omega, py::return_value_policy::reference_internal)
        .def_property_readonly("mu_star_bigomega", &TableSet::mu_star_bigomega,
                               py::return_value_policy::reference_internal)
        .def("tau", &TableSet::tau, py::arg("r"), py::return_value_policy::reference_internal)
        .def("has_tau", &TableSet::has_tau, py::arg("r"));

    // identities
    py::class_<IdentityVerdict>(m, "IdentityVerdict")
        .def_readonly("identity", &IdentityVerdict::identity)
        .def_readonly("argument", &IdentityVerdict::argument)
        .def_readonly("lhs", &IdentityVerdict::lhs)
        .def_readonly("rhs", &IdentityVerdict::rhs)
        .def_readonly("passed", &IdentityVerdict::pass)
        .def("__bool__", [](const IdentityVerdict& v) { return v.pass; })
        .def("__repr__", [](const IdentityVerdict& v) {
            return "IdentityVerdict(" + v.identity + ", " + v.argument + ", lhs=" + std::to_string(v.lhs) +
                   ", rhs=" + std::to_string(v.rhs) + ")";
        });
    m.def(
        "enumerate_ordered_factorizations",
        [](std::uint64_t k, int r) { return enumerate_ordered_factorizations(k, r); }, py::arg("k"), py::arg("r"));
    m.def("check_lemma1", &check_lemma1, py::arg("k"), py::arg("r"), py::arg("tables"));
    m.def("check_inclusion_exclusion", &check_inclusion_exclusion, py::arg("k"), py::arg("r"), py::arg("tables"));
    m.def("check_lcm_sevenfold", &check_lcm_sevenfold, py::arg("a"), py::arg("b"), py::arg("c"),
          py::arg("tables"));
    m.def("check_thm2_convolution", &check_thm2_convolution, py::arg("n"), py::arg("tables"));

    py::class_<SuiteReport>(m, "SuiteReport")
        .def_readonly("name", &SuiteReport::name)
        .def_readonly("checked", &SuiteReport::checked)
        .def_readonly("failed", &SuiteReport::failed)
        .def_readonly("failures", &SuiteReport::failures);
    m.def(
        "run_identity_suites",
        [](std::optional<std::uint64_t> bound, const TableSet& tables, unsigned threads) {
            const SuiteBounds b = bound ? SuiteBounds::uniform(*bound) : SuiteBounds{};
            py::gil_scoped_release release;
            return run_identity_suites(b, tables, threads);
        },
        py::arg("bound") = py::none(), py::arg("tables"), py::arg("threads") = 1);

    // sums
    py::class_<SumResult>(m, "SumResult")
        .def_property_readonly("kind", [](const SumResult& s) { return to_string(s.kind); })
        .def_readonly("x", &SumResult::x)
        .def_readonly("r", &SumResult::r)
        .def_readonly("value", &SumResult::value)
        .def_property_readonly("method", [](const SumResult& s) { return to_string(s.method); });
    m.def(
        "compute_sum",
        [](const std::string& kind, const std::string& method, std::uint64_t x, int r, const TableSet* tables,
           unsigned threads) {
            const SumKind k = parse_sum_kind(kind);
            const Method meth = parse_method(method);
            py::gil_scoped_release release;
            return compute_sum(k, meth, x, r, tables, threads);
        },
        py::arg("kind"), py::arg("method"), py::arg("x"), py::arg("r") = 3, py::arg("tables") = nullptr,
        py::arg("threads") = 1);
    m.def("summatory_tau3", &summatory_tau3, py::arg("y"), py::arg("tables"));

    py::class_<WeightedSum>(m, "WeightedSum")
        .def_readonly("x", &WeightedSum::x)
        .def_readonly("weights", &WeightedSum::weights)
        .def_readonly("exact", &WeightedSum::exact)
        .def_property_readonly("numerator", [](const WeightedSum& w) { return to_pyint(w.numerator); })
        .def_property_readonly("denominator", [](const WeightedSum& w) { return to_pyint(w.denominator); })
        .def_readonly("value", &WeightedSum::value)
        .def_readonly("error_bound", &WeightedSum::error_bound)
        .def("render", &WeightedSum::render);
    m.def("weighted_pairgcd_sum", &weighted_pairgcd_sum, py::arg("x"), py::arg("tables"));
    m.def("weighted_pairgcd_sum_brute", &weighted_pairgcd_sum_brute, py::arg("x"));

    // constants
    m.attr("EULER_GAMMA") = kEulerGamma;
    py::class_<PrimeSumValue>(m, "PrimeSumValue")
        .def_readonly("name", &PrimeSumValue::name)
        .def_readonly("formula", &PrimeSumValue::formula)
        .def_readonly("cutoff", &PrimeSumValue::cutoff)
        .def_readonly("largest_prime", &PrimeSumValue::largest_prime)
        .def_readonly("partial", &PrimeSumValue::partial)
        .def_readonly("tail_bound", &PrimeSumValue::tail_bound);
    m.def("primes_up_to", &primes_up_to, py::arg("limit"));
    m.def(
        "eval_prime_sum",
        [](const std::string& family, std::uint64_t cutoff, int r) {
            return eval_prime_sum(parse_prime_sum_family(family), cutoff, r);
        },
        py::arg("family"), py::arg("cutoff"), py::arg("r") = 0);
    m.def("gamma_prime", &gamma_prime, py::arg("r"));

    py::class_<ConstantValue>(m, "ConstantValue")
        .def_readonly("name", &ConstantValue::name)
        .def_readonly("formula", &ConstantValue::formula)
        .def_readonly("cutoff", &ConstantValue::cutoff)
        .def_readonly("value", &ConstantValue::value)
        .def_readonly("tail_bound", &ConstantValue::tail_bound)
        .def_property_readonly("exact", [](const ConstantValue& c) -> py::object {
            if (!c.exact) return py::none();
            return py::make_tuple(c.exact->num, c.exact->den);
        });
    py::class_<ConstantSet>(m, "ConstantSet")
        .def_readonly("cutoff", &ConstantSet::cutoff)
        .def_readonly("C2", &ConstantSet::C2)
        .def_readonly("C_Omega", &ConstantSet::C_Omega)
        .def_readonly("S_Omega", &ConstantSet::S_Omega)
        .def_readonly("K", &ConstantSet::K)
        .def_readonly("K1", &ConstantSet::K1)
        .def_readonly("thm3_coeff", &ConstantSet::thm3_coeff)
        .def("C", &ConstantSet::c_of, py::arg("r"))
        .def("C1", &ConstantSet::c1_of, py::arg("r"))
        .def("all", &ConstantSet::all);
    m.def(
        "build_constant_set",
        [](std::uint64_t cutoff) {
            py::gil_scoped_release release;
            return build_constant_set(cutoff);
        },
        py::arg("cutoff"));

    // asymptotics
    py::class_<Term>(m, "Term").def_readonly("label", &Term::label).def_readonly("value", &Term::value);
    py::class_<Prediction>(m, "Prediction")
        .def_property_readonly("theorem", [](const Prediction& p) { return p.theorem.label(); })
        .def_readonly("x", &Prediction::x)
        .def_readonly("main_terms", &Prediction::main_terms)
        .def_readonly("breakdown", &Prediction::breakdown);
    m.def(
        "predict",
        [](const std::string& theorem, std::uint64_t x, const ConstantSet& constants, int r,
           std::optional<double> d_omega) { return predict(TheoremId::parse(theorem, r), x, constants, d_omega); },
        py::arg("theorem"), py::arg("x"), py::arg("constants"), py::arg("r") = 2, py::arg("d_omega") = py::none());

    py::class_<SumReport>(m, "SumReport")
        .def_property_readonly("theorem", [](const SumReport& s) { return s.theorem.label(); })
        .def_readonly("x", &SumReport::x)
        .def_readonly("exact", &SumReport::exact)
        .def_readonly("predicted", &SumReport::predicted)
        .def_readonly("residual", &SumReport::residual)
        .def_readonly("error_scale", &SumReport::error_scale)
        .def_readonly("normalized_residual", &SumReport::normalized_residual);
    m.def(
        "residual_scan",
        [](const std::string& theorem, const std::vector<std::uint64_t>& grid, const TableSet& tables,
           const ConstantSet& constants, int r) {
            const TheoremId id = TheoremId::parse(theorem, r);
            py::gil_scoped_release release;
            return residual_scan(id, grid, tables, constants);
        },
        py::arg("theorem"), py::arg("grid"), py::arg("tables"), py::arg("constants"), py::arg("r") = 2);
    m.def(
        "reports_to_csv", [](const std::vector<SumReport>& reports) { return reports_to_csv(reports); },
        py::arg("reports"));

    py::class_<DOmegaFit>(m, "DOmegaFit")
        .def_readonly("estimate", &DOmegaFit::estimate)
        .def_readonly("spread", &DOmegaFit::spread)
        .def_readonly("points", &DOmegaFit::points)
        .def_readonly("positive", &DOmegaFit::positive);
    m.def(
        "fit_DOmega",
        [](const std::vector<std::uint64_t>& grid, const TableSet& tables, const ConstantSet& constants) {
            return fit_DOmega(grid, tables, constants);
        },
        py::arg("grid"), py::arg("tables"), py::arg("constants"));

    // cli
    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::vector<std::string> full = {"hypersum"};
            full.insert(full.end(), args.begin(), args.end());
            std::vector<const char*> argv;
            for (const auto& a : full) argv.push_back(a.c_str());
            std::ostringstream out, err;
            const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
