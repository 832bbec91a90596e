#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "derandom/family_io.hpp"
#include "derandom/mapping.hpp"
#include "derandom/primes.hpp"
#include "derandom/splitter.hpp"
#include "derandom/verify.hpp"

namespace py = pybind11;
using namespace derandom;

namespace {

Rational to_rational(const py::object& obj) {
    if (py::isinstance<Rational>(obj)) return obj.cast<Rational>();
    if (py::isinstance<py::str>(obj)) return Rational::parse(obj.cast<std::string>());
    if (py::isinstance<py::int_>(obj)) return Rational(obj.cast<std::int64_t>(), 1);
    if (py::isinstance<py::tuple>(obj)) {
        auto t = obj.cast<py::tuple>();
        return Rational(t[0].cast<std::int64_t>(), t[1].cast<std::int64_t>());
    }
    // fractions.Fraction and friends
    if (py::hasattr(obj, "numerator") && py::hasattr(obj, "denominator"))
        return Rational(obj.attr("numerator").cast<std::int64_t>(),
                        obj.attr("denominator").cast<std::int64_t>());
    throw py::type_error("expected a rational: Rational, 'p/q' string, int, or (p, q)");
}

UniformityMode to_mode(const std::string& s) {
    Uniformity u;
    int a = 0;
    parse_uniformity(s, u, a);
    if (u == Uniformity::none) throw py::value_error("mode must be uniform, a-uniform:a, or strong");
    return UniformityMode{u, a};
}

} // namespace

PYBIND11_MODULE(_derandom, m) {
    m.doc() = "Splitters, bisectors, mapping families, and universal sets with "
              "brute-force verification";

    py::register_exception<Error>(m, "DerandomError");

    py::class_<Rational>(m, "Rational")
        .def(py::init<std::int64_t, std::int64_t>(), py::arg("num"), py::arg("den") = 1)
        .def_static("parse", &Rational::parse)
        .def_readonly("num", &Rational::num)
        .def_readonly("den", &Rational::den)
        .def("__float__", &Rational::to_double)
        .def("__eq__", [](const Rational& a, const Rational& b) { return a == b; })
        .def("__repr__", [](const Rational& r) { return "Rational(" + r.str() + ")"; })
        .def("__str__", &Rational::str);

    py::class_<Function>(m, "Function")
        .def(py::init([](int n, int ell, const std::vector<std::int32_t>& images) {
                 return make_function(n, ell, images);
             }),
             py::arg("n"), py::arg("ell"), py::arg("images"))
        .def_property_readonly("n", &Function::n)
        .def_property_readonly("ell", &Function::ell)
        .def_property_readonly("images",
                               [](const Function& f) {
                                   return std::vector<std::int32_t>(f.images().begin(),
                                                                    f.images().end());
                               })
        .def("ones_count", &Function::ones_count)
        .def("__call__", [](const Function& f, int x) {
            if (x < 0 || x >= f.n()) throw py::index_error();
            return f(x);
        })
        .def("__len__", &Function::n)
        .def("__eq__", [](const Function& a, const Function& b) { return a == b; })
        .def("__repr__", [](const Function& f) {
            std::ostringstream os;
            os << "Function(n=" << f.n() << ", ell=" << f.ell() << ")";
            return os.str();
        });

    py::enum_<FamilyKind>(m, "FamilyKind")
        .value("splitter", FamilyKind::splitter)
        .value("bisector", FamilyKind::bisector)
        .value("mapping", FamilyKind::mapping)
        .value("universal", FamilyKind::universal);

    py::enum_<Uniformity>(m, "Uniformity")
        .value("none", Uniformity::none)
        .value("a_uniform", Uniformity::a_uniform)
        .value("uniform", Uniformity::uniform)
        .value("strong", Uniformity::strong);

    py::class_<GreedyLogEntry>(m, "GreedyLogEntry")
        .def_readonly("pool_scanned", &GreedyLogEntry::pool_scanned)
        .def_readonly("best_cover", &GreedyLogEntry::best_cover)
        .def_readonly("remaining_before", &GreedyLogEntry::remaining_before);

    py::class_<Family>(m, "Family")
        .def(py::init<>())
        .def_readwrite("kind", &Family::kind)
        .def_readwrite("n", &Family::n)
        .def_readwrite("k", &Family::k)
        .def_readwrite("ell", &Family::ell)
        .def_readwrite("alpha", &Family::alpha)
        .def_readwrite("beta", &Family::beta)
        .def_readwrite("k0", &Family::k0)
        .def_readwrite("k1", &Family::k1)
        .def_readwrite("uniformity", &Family::uniformity)
        .def_readwrite("uniformity_a", &Family::uniformity_a)
        .def_readwrite("out_of_regime", &Family::out_of_regime)
        .def_readwrite("builder", &Family::builder)
        .def_readwrite("seed", &Family::seed)
        .def_readwrite("sampled_pool", &Family::sampled_pool)
        .def_readwrite("functions", &Family::functions)
        .def_readonly("coverage_log", &Family::coverage_log)
        .def_readonly("guess_sizes", &Family::guess_sizes)
        .def("__len__", [](const Family& f) { return f.functions.size(); })
        .def("validate", &Family::validate)
        .def("__repr__", [](const Family& f) {
            std::ostringstream os;
            os << "Family(kind=" << kind_name(f.kind) << ", n=" << f.n
               << ", count=" << f.functions.size() << ")";
            return os.str();
        });

    py::class_<PrimeWindow>(m, "PrimeWindow")
        .def_readonly("moduli", &PrimeWindow::moduli)
        .def_readonly("r", &PrimeWindow::r)
        .def_readonly("n", &PrimeWindow::n)
        .def_readonly("k", &PrimeWindow::k)
        .def_readonly("ell", &PrimeWindow::ell)
        .def_readonly("out_of_regime", &PrimeWindow::out_of_regime)
        .def_property_readonly("capacity",
                               [](const PrimeWindow& w) {
                                   return py::module_::import("builtins").attr("int")(
                                       w.capacity.get_str());
                               })
        .def_property_readonly("required", [](const PrimeWindow& w) {
            return py::module_::import("builtins").attr("int")(w.required.get_str());
        });

    py::class_<BetaSchedule>(m, "BetaSchedule")
        .def_readonly("k", &BetaSchedule::k)
        .def_readonly("k1", &BetaSchedule::k1)
        .def_readonly("alpha", &BetaSchedule::alpha)
        .def_readonly("t", &BetaSchedule::t)
        .def_readonly("targets", &BetaSchedule::targets)
        .def_readonly("residuals", &BetaSchedule::residuals);

    py::class_<VerifyReport>(m, "VerifyReport")
        .def_readonly("valid", &VerifyReport::valid)
        .def_readonly("checked", &VerifyReport::checked)
        .def_readonly("witness", &VerifyReport::witness)
        .def_readonly("witness_function", &VerifyReport::witness_function)
        .def_readonly("stats", &VerifyReport::stats)
        .def("__bool__", [](const VerifyReport& r) { return r.valid; })
        .def("__repr__", [](const VerifyReport& r) {
            std::ostringstream os;
            os << "VerifyReport(valid=" << (r.valid ? "True" : "False")
               << ", checked=" << r.checked << ")";
            return os.str();
        });

    py::class_<BuildConfig>(m, "BuildConfig")
        .def(py::init<>())
        .def_readwrite("seed", &BuildConfig::seed)
        .def_readwrite("full_pool_limit", &BuildConfig::full_pool_limit)
        .def_readwrite("sample_size", &BuildConfig::sample_size)
        .def_readwrite("allow_out_of_regime", &BuildConfig::allow_out_of_regime)
        .def_readwrite("oracle_check", &BuildConfig::oracle_check)
        .def_readwrite("threads", &BuildConfig::threads)
        .def_readwrite("ell_prime_override", &BuildConfig::ell_prime_override)
        .def_readwrite("granularity", &BuildConfig::granularity)
        .def_readwrite("guess_budget", &BuildConfig::guess_budget);

    // family-core
    m.def("make_function", [](int n, int ell, const std::vector<std::int32_t>& images) {
        return make_function(n, ell, images);
    });
    m.def("compose", &compose, py::arg("outer"), py::arg("inner"));
    m.def("nonuniformity", &nonuniformity);
    m.def("image_histogram", &image_histogram);

    // prime-tools
    m.def("sieve", &sieve);
    m.def("required_prime_count", &required_prime_count);
    m.def("prime_window", &prime_window);
    m.def("check_crt_capacity", &check_crt_capacity);

    // splitter-builder
    m.def("modulo_splitter", &modulo_splitter, py::arg("n"), py::arg("k"), py::arg("ell"),
          py::arg("config") = BuildConfig{});
    m.def("composed_splitter", &composed_splitter, py::arg("n"), py::arg("k"), py::arg("ell"),
          py::arg("config") = BuildConfig{});
    m.def(
        "brute_force_splitter",
        [](int t, int k, int ell, const BuildConfig& cfg) {
            return brute_force_splitter(t, k, ell, cfg);
        },
        py::arg("t"), py::arg("k"), py::arg("ell"), py::arg("config") = BuildConfig{});
    m.def(
        "smooth",
        [](const Family& fam, int a, const BuildConfig& cfg) { return smooth(fam, a, cfg); },
        py::arg("family"), py::arg("a"), py::arg("config") = BuildConfig{});
    m.def(
        "build_splitter",
        [](int n, int k, int ell, const std::string& goal, const BuildConfig& cfg) {
            Uniformity u;
            int a = 0;
            parse_uniformity(goal, u, a);
            return build_splitter(n, k, ell, u, cfg);
        },
        py::arg("n"), py::arg("k"), py::arg("ell"), py::arg("goal") = "none",
        py::arg("config") = BuildConfig{});

    // bisector-builder
    m.def(
        "base_bisector",
        [](int m_, int k, const py::object& fraction, const BuildConfig& cfg) {
            return base_bisector(m_, k, to_rational(fraction), cfg);
        },
        py::arg("m"), py::arg("k"), py::arg("ones_fraction"), py::arg("config") = BuildConfig{});
    m.def(
        "extend_by_d",
        [](const Family& fam, int d, int k, const BuildConfig& cfg) {
            return extend_by_d(fam, d, k, cfg);
        },
        py::arg("family"), py::arg("d"), py::arg("k"), py::arg("config") = BuildConfig{});
    m.def(
        "extend_modulo",
        [](const Family& fam, int n1, int k, const BuildConfig& cfg) {
            return extend_modulo(fam, n1, k, cfg);
        },
        py::arg("family"), py::arg("n1"), py::arg("k"), py::arg("config") = BuildConfig{});
    m.def("iteration_count", [](int k, const py::object& alpha) {
        return iteration_count(k, to_rational(alpha));
    });
    m.def(
        "alpha_bisector",
        [](int n, int k, const py::object& alpha, const BuildConfig& cfg) {
            return alpha_bisector(n, k, to_rational(alpha), cfg);
        },
        py::arg("n"), py::arg("k"), py::arg("alpha"), py::arg("config") = BuildConfig{});
    m.def(
        "interval_bisector",
        [](int n, int k, const py::object& alpha, const BuildConfig& cfg) {
            return interval_bisector(n, k, to_rational(alpha), cfg);
        },
        py::arg("n"), py::arg("k"), py::arg("alpha"), py::arg("config") = BuildConfig{});
    m.def("adversary_lower_bound", &adversary_lower_bound);

    // mapping-builder
    m.def(
        "base_mapping_family",
        [](int m_, int k0, int k1, const py::object& fraction, const py::object& beta,
           const BuildConfig& cfg) {
            return base_mapping_family(m_, k0, k1, to_rational(fraction), to_rational(beta), cfg);
        },
        py::arg("m"), py::arg("k0"), py::arg("k1"), py::arg("ones_fraction"), py::arg("beta"),
        py::arg("config") = BuildConfig{});
    m.def(
        "lift_mapping_family",
        [](int n, int k, int k0, int k1, const py::object& beta, const Family& splitter,
           const Family& base, const BuildConfig& cfg) {
            return lift_mapping_family(n, k, k0, k1, to_rational(beta), splitter, base, cfg);
        },
        py::arg("n"), py::arg("k"), py::arg("k0"), py::arg("k1"), py::arg("beta"),
        py::arg("splitter"), py::arg("base"), py::arg("config") = BuildConfig{});
    m.def("beta_schedule", [](int k, int k1, const py::object& alpha) {
        return beta_schedule(k, k1, to_rational(alpha));
    });
    m.def(
        "iterated_mapping_family",
        [](int n, int k0, int k1, const py::object& alpha, const BuildConfig& cfg) {
            return iterated_mapping_family(n, k0, k1, to_rational(alpha), cfg);
        },
        py::arg("n"), py::arg("k0"), py::arg("k1"), py::arg("alpha"),
        py::arg("config") = BuildConfig{});
    m.def(
        "interval_mapping_family",
        [](int n, int k0, int k1, const py::object& alpha, const BuildConfig& cfg) {
            return interval_mapping_family(n, k0, k1, to_rational(alpha), cfg);
        },
        py::arg("n"), py::arg("k0"), py::arg("k1"), py::arg("alpha"),
        py::arg("config") = BuildConfig{});
    m.def(
        "universal_set",
        [](int n, int k, const py::object& alpha, const BuildConfig& cfg) {
            return universal_set(n, k, to_rational(alpha), cfg);
        },
        py::arg("n"), py::arg("k"), py::arg("alpha"), py::arg("config") = BuildConfig{});

    // verify-oracle
    m.def("verify_splitter", &verify_splitter);
    m.def("verify_uniformity", [](const Family& fam, const std::string& mode) {
        return verify_uniformity(fam, to_mode(mode));
    });
    m.def("verify_bisector", [](const Family& fam, int k, const py::object& alpha) {
        return verify_bisector(fam, k, to_rational(alpha));
    });
    m.def("verify_mapping_family", [](const Family& fam, int k0, int k1,
                                      const py::object& alpha, const py::object& beta) {
        return verify_mapping_family(fam, k0, k1, to_rational(alpha), to_rational(beta));
    });
    m.def("verify_universal", [](const Family& fam, int k, const py::object& alpha) {
        return verify_universal(fam, k, to_rational(alpha));
    });

    // cli-compatible serialization
    m.def("serialize_family", &serialize_family, py::arg("family"),
          py::arg("valid_flag") = true);
    m.def("parse_family", [](const std::string& text) {
        ParsedFamily p = parse_family(text);
        return py::make_tuple(p.family, p.valid_flag);
    });
    m.def("write_family_file", &write_family_file, py::arg("path"), py::arg("family"),
          py::arg("valid_flag") = true);
    m.def("read_family_file", [](const std::string& path) {
        ParsedFamily p = read_family_file(path);
        return py::make_tuple(p.family, p.valid_flag);
    });
}
