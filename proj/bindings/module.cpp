#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fptrace/attack.hpp"
#include "fptrace/construct.hpp"
#include "fptrace/core.hpp"
#include "fptrace/estimate.hpp"
#include "fptrace/trace.hpp"
#include "fptrace/verify.hpp"

namespace py = pybind11;
using namespace fptrace;

namespace {

py::object to_fraction(const Rational& r) {
    static py::object fraction_type = py::module_::import("fractions").attr("Fraction");
    return fraction_type(to_string(r));
}

Rational from_py(py::handle obj) {
    // accepts Fraction, int, or "p/q" string
    if (py::isinstance<py::str>(obj))
        return parse_rational(obj.cast<std::string>());
    if (py::isinstance<py::int_>(obj))
        return Rational(BigInt(py::str(obj).cast<std::string>()));
    std::string num = py::str(obj.attr("numerator")).cast<std::string>();
    std::string den = py::str(obj.attr("denominator")).cast<std::string>();
    return Rational(BigInt(num), BigInt(den));
}

py::dict report_to_dict(const VerificationReport& report) {
    py::dict d;
    d["property"] = property_name(report.property);
    d["t"] = report.t;
    if (report.property == Property::hamming_ltc)
        d["T"] = report.T;
    if (report.property == Property::euclidean_ltc)
        d["delta_sq"] = to_fraction(report.delta_sq);
    d["holds"] = report.holds;
    d["pairs_checked"] = report.pairs_checked;
    if (report.witness) {
        py::dict w;
        w["I1"] = report.witness->i1.indices();
        w["I2"] = report.witness->i2.indices();
        w["support_size"] = report.witness->stats.support_size;
        w["norm_sq"] = to_fraction(report.witness->stats.norm_sq);
        d["witness"] = w;
    } else if (report.dependent_columns) {
        py::dict w;
        w["columns"] = *report.dependent_columns;
        d["witness"] = w;
    } else {
        d["witness"] = py::none();
    }
    if (!report.note.empty())
        d["note"] = report.note;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "collusion-resistant fingerprinting codes: construction, verification, "
              "averaging-attack simulation, tracing, and rate estimation";

    py::class_<BinaryCode>(m, "BinaryCode")
        .def(py::init<int, int>(), py::arg("n"), py::arg("M"))
        .def_property_readonly("n", &BinaryCode::rows)
        .def_property_readonly("M", &BinaryCode::cols)
        .def("bit", &BinaryCode::bit, py::arg("row"), py::arg("col"))
        .def("set_bit", &BinaryCode::set_bit, py::arg("row"), py::arg("col"), py::arg("value"))
        .def("__eq__", [](const BinaryCode& a, const BinaryCode& b) { return a == b; })
        .def("__str__", &format_code);

    py::class_<Coalition>(m, "Coalition")
        .def(py::init<std::vector<int>>(), py::arg("indices"))
        .def_property_readonly("indices", &Coalition::indices)
        .def("__len__", &Coalition::size)
        .def("__eq__", [](const Coalition& a, const Coalition& b) { return a == b; });

    py::class_<Signature>(m, "Signature")
        .def_readonly("counts", &Signature::counts)
        .def_readonly("size", &Signature::size)
        .def("values", [](const Signature& s) {
            std::vector<double> v;
            v.reserve(s.counts.size());
            for (int c : s.counts)
                v.push_back(static_cast<double>(c) / s.size);
            return v;
        });

    py::class_<DeltaStats>(m, "DeltaStats")
        .def_readonly("support_size", &DeltaStats::support_size)
        .def_property_readonly("norm_sq", [](const DeltaStats& d) { return to_fraction(d.norm_sq); })
        .def_property_readonly("min_nonzero_abs", [](const DeltaStats& d) -> py::object {
            if (!d.min_nonzero_abs)
                return py::none();
            return to_fraction(*d.min_nonzero_abs);
        });

    py::class_<CarrierBasis>(m, "CarrierBasis")
        .def_readonly("n", &CarrierBasis::n)
        .def_readonly("N", &CarrierBasis::N)
        .def_readonly("vectors", &CarrierBasis::vectors);

    py::class_<Syndrome>(m, "Syndrome")
        .def(py::init([](std::vector<double> values) { return Syndrome{std::move(values)}; }),
             py::arg("values"))
        .def_readonly("s", &Syndrome::s);

    py::class_<NoiseSpec>(m, "NoiseSpec")
        .def_static("parse", &NoiseSpec::parse, py::arg("text"), py::arg("seed"))
        .def("__str__", &NoiseSpec::to_string);

    py::class_<TraceResult>(m, "TraceResult")
        .def_readonly("coalition", &TraceResult::coalition)
        .def_readonly("score", &TraceResult::score)
        .def_readonly("margin", &TraceResult::margin)
        .def_readonly("ambiguous", &TraceResult::ambiguous)
        .def_readonly("metric", &TraceResult::metric)
        .def_readonly("candidates", &TraceResult::candidates)
        .def("to_json", &trace_result_to_json);

    py::class_<RateEstimate>(m, "RateEstimate")
        .def_readonly("r_hat", &RateEstimate::r_hat)
        .def_readonly("argmin_q", &RateEstimate::argmin_q)
        .def_readonly("tau", &RateEstimate::tau);

    m.def("average_signature", &average_signature, py::arg("code"), py::arg("coalition"));
    m.def("delta_stats", &delta_stats, py::arg("code"), py::arg("I1"), py::arg("I2"));
    m.def("binary_entropy", &binary_entropy, py::arg("x"));
    m.def("load_code", &load_code, py::arg("path"));
    m.def("save_code", &save_code, py::arg("code"), py::arg("path"));
    m.def("parse_code", &parse_code, py::arg("text"));
    m.def("format_code", &format_code, py::arg("code"));

    m.def("random_code", &random_code, py::arg("n"), py::arg("M"), py::arg("seed"));
    m.def("bch_parity_matrix", py::overload_cast<int, int>(&bch_parity_matrix), py::arg("m"),
          py::arg("t"));
    m.def("delta_from_T",
          [](int t, long long T) { return to_fraction(delta_from_T(t, T).delta_sq); },
          py::arg("t"), py::arg("T"));
    m.def("T_from_delta", [](py::handle delta_sq) { return T_from_delta(from_py(delta_sq)); },
          py::arg("delta_sq"));

    m.def("is_hamming_ltc",
          [](const BinaryCode& code, int t, long long T, int threads) {
              return report_to_dict(is_hamming_ltc(code, t, T, threads));
          },
          py::arg("code"), py::arg("t"), py::arg("T"), py::arg("threads") = 1);
    m.def("is_euclidean_ltc",
          [](const BinaryCode& code, int t, py::handle delta_sq, int threads) {
              return report_to_dict(is_euclidean_ltc(code, t, from_py(delta_sq), threads));
          },
          py::arg("code"), py::arg("t"), py::arg("delta_sq"), py::arg("threads") = 1);
    m.def("check_2t_independence",
          [](const BinaryCode& code, int t) { return report_to_dict(check_2t_independence(code, t)); },
          py::arg("code"), py::arg("t"));

    m.def("make_carriers", &make_carriers, py::arg("n"), py::arg("N"), py::arg("seed"));
    m.def("make_host", &make_host, py::arg("N"), py::arg("n"), py::arg("seed"));
    m.def("embed", &embed, py::arg("host"), py::arg("carriers"), py::arg("code"), py::arg("user"));
    m.def("forge", &forge, py::arg("code"), py::arg("coalition"), py::arg("host"),
          py::arg("carriers"), py::arg("noise"));
    m.def("extract_syndrome", &extract_syndrome, py::arg("y"), py::arg("host"), py::arg("carriers"));

    m.def("trace_euclidean", &trace_euclidean, py::arg("code"), py::arg("syndrome"), py::arg("t"));
    m.def("trace_hamming", &trace_hamming, py::arg("code"), py::arg("syndrome"), py::arg("t"),
          py::arg("match_tol") = py::none());

    m.def("exact_bad_row_prob",
          [](int q, int r, int k) { return to_fraction(exact_bad_row_prob(q, r, k)); },
          py::arg("q"), py::arg("r"), py::arg("k"));
    m.def("mc_bad_row_prob",
          [](int q, int r, int k, long long trials, std::uint64_t seed) {
              McEstimate est = mc_bad_row_prob(q, r, k, trials, seed);
              return py::make_tuple(est.frequency, est.std_err);
          },
          py::arg("q"), py::arg("r"), py::arg("k"), py::arg("trials"), py::arg("seed"));
    m.def("rate_lower_bound",
          [](int t, double tau, const std::string& model) {
              return rate_lower_bound(t, tau, pmodel_from_name(model));
          },
          py::arg("t"), py::arg("tau"), py::arg("model") = "conservative");
    m.def("expected_bad_pairs_log2",
          [](int n, int M, int t, double tau, const std::string& model) {
              return expected_bad_pairs_log2(n, M, t, tau, pmodel_from_name(model));
          },
          py::arg("n"), py::arg("M"), py::arg("t"), py::arg("tau"),
          py::arg("model") = "conservative");
    m.def("find_code",
          [](int n, int M, int t, long long T, int max_attempts, std::uint64_t seed,
             int threads) -> py::object {
              auto result = find_code(n, M, t, T, max_attempts, seed, threads);
              if (!result)
                  return py::none();
              return py::make_tuple(result->code, result->attempts_used);
          },
          py::arg("n"), py::arg("M"), py::arg("t"), py::arg("T"), py::arg("max_attempts"),
          py::arg("seed"), py::arg("threads") = 1);
}
