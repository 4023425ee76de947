#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lingam/bootstrap.hpp"
#include "lingam/direct_lingam.hpp"
#include "lingam/eval.hpp"
#include "lingam/ica_baseline.hpp"
#include "lingam/independence.hpp"
#include "lingam/synth.hpp"

namespace py = pybind11;
using namespace lingam;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

// Python callers pass (n_samples, n_features) like most numeric libraries;
// variables_as_rows=True accepts the internal (p, n) layout instead.
Dataset to_dataset(const Array& x, bool variables_as_rows) {
    if (x.ndim() != 2) throw Error(ErrorCode::DimensionError, "data must be a 2-D array");
    const auto r = static_cast<Eigen::Index>(x.shape(0));
    const auto c = static_cast<Eigen::Index>(x.shape(1));
    Eigen::Map<const DataMatrix> view(x.data(), r, c);
    return Dataset::center(variables_as_rows ? DataMatrix(view) : DataMatrix(view.transpose()));
}

CausalOrder to_order(const std::vector<std::size_t>& order) { return CausalOrder(order); }

py::list diagnostics_list(const std::vector<StepDiagnostics>& steps) {
    py::list out;
    for (const auto& step : steps) {
        py::dict d;
        for (const auto& [v, t] : step) d[py::int_(v)] = t;
        out.append(d);
    }
    return out;
}

py::dict model_dict(const FittedModel& m) {
    py::dict d;
    d["order"] = m.order.indices();
    d["strengths"] = m.strengths.entries();
    d["diagnostics"] = diagnostics_list(m.diagnostics);
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "DirectLiNGAM and ICA-LiNGAM causal discovery";

    // The module attribute keeps the type alive; the raw handle is only borrowed.
    static PyObject* lingam_error = py::exception<Error>(m, "LingamError", PyExc_ValueError).ptr();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            const std::string code(to_string(e.code()));
            py::object exc = py::reinterpret_borrow<py::object>(lingam_error)(py::str(code + ": " + e.what()));
            exc.attr("code") = code;
            PyErr_SetObject(lingam_error, exc.ptr());
        }
    });

    m.def(
        "fit",
        [](const Array& x, unsigned threads, bool variables_as_rows) {
            const Dataset d = to_dataset(x, variables_as_rows);
            FittedModel model;
            {
                py::gil_scoped_release release;
                model = fit(d, {}, threads);
            }
            return model_dict(model);
        },
        py::arg("x"), py::arg("threads") = 1, py::arg("variables_as_rows") = false,
        "Estimate the causal order and connection strengths. Returns a dict with 0-based 'order', "
        "'strengths' (B, where B[i, j] is the effect of x_j on x_i) and per-step 'diagnostics'.");

    m.def(
        "estimate_order",
        [](const Array& x, unsigned threads, bool variables_as_rows) {
            const OrderEstimate est = estimate_order(to_dataset(x, variables_as_rows), {}, threads);
            return py::make_tuple(est.order.indices(), diagnostics_list(est.diagnostics));
        },
        py::arg("x"), py::arg("threads") = 1, py::arg("variables_as_rows") = false);

    m.def(
        "estimate_strengths",
        [](const Array& x, const std::vector<std::size_t>& order, bool variables_as_rows) {
            return Matrix(estimate_strengths(to_dataset(x, variables_as_rows), to_order(order)).entries());
        },
        py::arg("x"), py::arg("order"), py::arg("variables_as_rows") = false);

    m.def(
        "t_statistic",
        [](const Array& x, std::size_t j, const std::vector<std::size_t>& active, bool variables_as_rows) {
            return t_statistic(j, active, to_dataset(x, variables_as_rows));
        },
        py::arg("x"), py::arg("j"), py::arg("active"), py::arg("variables_as_rows") = false);

    m.def(
        "ica_lingam_fit",
        [](const Array& x, std::uint64_t seed, bool variables_as_rows) {
            FastIcaConfig cfg;
            cfg.seed = seed;
            const BaselineModel b = ica_lingam_fit(to_dataset(x, variables_as_rows), cfg);
            py::dict d;
            d["order"] = b.order.indices();
            d["strengths"] = b.strengths.entries();
            d["pruned"] = b.pruned.entries();
            d["converged"] = b.converged;
            return d;
        },
        py::arg("x"), py::arg("seed") = 0, py::arg("variables_as_rows") = false);

    m.def(
        "bootstrap",
        [](const Array& x, const std::vector<std::size_t>& order, double level, std::size_t resamples,
           std::uint64_t seed, unsigned threads, bool variables_as_rows) {
            BootstrapConfig cfg;
            cfg.level = level;
            cfg.resamples = resamples;
            cfg.seed = seed;
            const Dataset d = to_dataset(x, variables_as_rows);
            const CausalOrder k = to_order(order);
            BootstrapResult r;
            {
                py::gil_scoped_release release;
                r = bootstrap_cis(d, k, cfg, threads);
            }
            py::list edges;
            for (const auto& e : r.edges) {
                py::dict item;
                item["from"] = e.j;
                item["to"] = e.i;
                item["point"] = e.point;
                item["lower"] = e.lower;
                item["upper"] = e.upper;
                item["significant"] = e.significant;
                edges.append(item);
            }
            return edges;
        },
        py::arg("x"), py::arg("order"), py::arg("level") = 0.99, py::arg("resamples") = 2000, py::arg("seed") = 0,
        py::arg("threads") = 1, py::arg("variables_as_rows") = false,
        "Percentile intervals for every edge order[l] -> order[k], l < k, with the order held fixed.");

    m.def(
        "simulate",
        [](std::size_t p, std::size_t n, const std::string& network, std::uint64_t seed) {
            SynthConfig cfg;
            cfg.p = p;
            cfg.n = n;
            cfg.network = parse_network_kind(network);
            cfg.seed = seed;
            const SyntheticData s = generate(cfg);
            py::dict truth;
            truth["b"] = s.truth.emitted_b().entries();
            truth["order"] = s.truth.emitted_order().indices();
            truth["b_generation"] = s.truth.b_true.entries();
            truth["noise_stds"] = s.truth.noise_stds;
            truth["exponents"] = s.truth.exponents;
            truth["shuffle"] = s.truth.shuffle.indices();
            return py::make_tuple(Matrix(s.data.values().transpose()), truth);
        },
        py::arg("p"), py::arg("n"), py::arg("network") = "random", py::arg("seed") = 0,
        "Random LiNGAM sample. Returns (x of shape (n, p), truth) where truth['b'] is in the columns' coordinates.");

    m.def(
        "order_errors",
        [](const Matrix& b_true, const std::vector<std::size_t>& order) {
            return order_errors(ConnectionMatrix(b_true), to_order(order));
        },
        py::arg("b_true"), py::arg("order"));

    m.def(
        "frobenius_distance",
        [](const Matrix& a, const Matrix& b) { return frobenius_distance(ConnectionMatrix(a), ConnectionMatrix(b)); },
        py::arg("a"), py::arg("b"));
}
