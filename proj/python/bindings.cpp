#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "becimp/analytics.hpp"
#include "becimp/config.hpp"
#include "becimp/io.hpp"
#include "becimp/observables.hpp"
#include "becimp/scenarios.hpp"
#include "becimp/stationary.hpp"

namespace py = pybind11;
using namespace becimp;

namespace {

template <typename T>
py::array_t<T> to_array(const std::vector<T>& v) {
    py::array_t<T> a(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), a.mutable_data());
    return a;
}

ComplexField field_from(GridPtr g, py::array_t<cplx, py::array::c_style | py::array::forcecast> a) {
    if (a.ndim() != 1 || a.shape(0) != g->size())
        throw std::invalid_argument("field length does not match the grid");
    return ComplexField(g, std::vector<cplx>(a.data(), a.data() + a.shape(0)));
}

py::dict relax_dict(const RelaxationReport& r, const ModelParams& p) {
    py::dict d;
    d["converged"] = r.converged;
    d["iterations"] = r.iterations;
    d["psi_B"] = to_array(r.final_state.psi_B.values);
    d["psi_I"] = to_array(r.final_state.psi_I.values);
    d["density_B"] = to_array(density(r.final_state.psi_B));
    d["density_I"] = to_array(density(r.final_state.psi_I));
    const auto e = energy(r.final_state, p);
    d["E_B"] = e.E_B;
    d["E_I"] = e.E_I;
    d["m_eff_ratio"] = effective_mass_ratio(r.final_state.psi_I, p.alpha);
    return d;
}

}  // namespace

PYBIND11_MODULE(_becimp, m) {
    m.doc() = "Excited impurity in a 1D trapped condensate";

    py::class_<Grid1D, std::shared_ptr<Grid1D>>(m, "Grid")
        .def(py::init([](int n, double L) { return std::const_pointer_cast<Grid1D>(make_grid(n, L)); }),
             py::arg("n_points"), py::arg("half_width"))
        .def_property_readonly("n_points", &Grid1D::size)
        .def_property_readonly("half_width", &Grid1D::half_width)
        .def_property_readonly("dz", &Grid1D::dz)
        .def_property_readonly("k_max", &Grid1D::k_max)
        .def_property_readonly("z", [](const Grid1D& g) {
            return to_array(std::vector<double>(g.z().begin(), g.z().end()));
        })
        .def_property_readonly("k", [](const Grid1D& g) {
            return to_array(std::vector<double>(g.k().begin(), g.k().end()));
        })
        .def("mirror", &Grid1D::mirror);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init<>())
        .def(py::init([](double G_B, double g_IB, double alpha, py::object ratio) {
                 ModelParams p;
                 p.G_B = G_B;
                 p.g_IB = g_IB;
                 p.alpha = alpha;
                 if (!ratio.is_none()) p.G_BI_ratio = ratio.cast<double>();
                 return p;
             }),
             py::arg("G_B") = 4.71, py::arg("g_IB") = 0.0, py::arg("alpha") = 0.808,
             py::arg("G_BI_ratio") = py::none())
        .def_readwrite("G_B", &ModelParams::G_B)
        .def_readwrite("g_IB", &ModelParams::g_IB)
        .def_readwrite("N_B", &ModelParams::N_B)
        .def_readwrite("N_I", &ModelParams::N_I)
        .def_readwrite("alpha", &ModelParams::alpha)
        .def_readwrite("trap_B_on", &ModelParams::trap_B_on)
        .def_readwrite("trap_I_on", &ModelParams::trap_I_on)
        .def_readwrite("G_IB_override", &ModelParams::G_IB_override)
        .def_readwrite("G_BI_override", &ModelParams::G_BI_override)
        .def_readwrite("G_BI_ratio", &ModelParams::G_BI_ratio)
        .def_property_readonly("G_IB", &ModelParams::G_IB)
        .def_property_readonly("G_BI", &ModelParams::G_BI);

    m.def("trial_impurity", [](std::shared_ptr<Grid1D> g, double A) {
        return to_array(trial_impurity(g, A).values);
    }, py::arg("grid"), py::arg("A"));
    m.def("gaussian", [](std::shared_ptr<Grid1D> g, double w) {
        return to_array(gaussian(g, w).values);
    }, py::arg("grid"), py::arg("width") = 1.0);
    m.def("norm2", [](std::shared_ptr<Grid1D> g, py::array_t<cplx> f) { return norm2(field_from(g, f)); });
    m.def("moment", [](std::shared_ptr<Grid1D> g, py::array_t<cplx> f, int p) {
        return moment(field_from(g, f), p);
    });
    m.def("project_odd", [](std::shared_ptr<Grid1D> g, py::array_t<cplx> f) {
        return to_array(project_odd(field_from(g, f)).values);
    });
    m.def("effective_mass_ratio", [](std::shared_ptr<Grid1D> g, py::array_t<cplx> f, double alpha) {
        return effective_mass_ratio(field_from(g, f), alpha);
    });

    m.def("relax", [](const ModelParams& p, std::shared_ptr<Grid1D> g, double dtau, double tol,
                      long max_iters) {
        RelaxOptions o;
        o.dtau = dtau;
        o.tol = tol;
        o.max_iters = max_iters;
        py::gil_scoped_release release;
        auto r = relax_coupled(p, g, o);
        py::gil_scoped_acquire acquire;
        return relax_dict(r, p);
    }, py::arg("params"), py::arg("grid"), py::arg("dtau") = 1e-4, py::arg("tol") = 1e-10,
       py::arg("max_iters") = 5'000'000L);

    m.def("zeno_decay", [](std::shared_ptr<Grid1D> g, double alpha, double dtau, double tau_max,
                           bool zeno, double even_seed) {
        auto tr = zeno_durability_experiment(g, alpha, dtau, tau_max, zeno, even_seed);
        std::vector<double> tau, E;
        for (const auto& e : tr) tau.push_back(e.tau), E.push_back(e.E_I);
        return py::make_tuple(to_array(tau), to_array(E));
    }, py::arg("grid"), py::arg("alpha") = 0.808, py::arg("dtau") = 1e-3, py::arg("tau_max") = 100.0,
       py::arg("zeno") = false, py::arg("even_seed") = 0.0);

    m.def("dominant_frequency", [](std::vector<double> t, std::vector<double> v) {
        return dominant_frequency({std::move(t), std::move(v), "series"});
    }, py::arg("times"), py::arg("values"));
    m.def("variational_width", [](double A0, double alpha, std::vector<double> t) {
        auto w = variational_width(A0, alpha, t);
        return py::make_tuple(to_array(w.closed_form.values), to_array(w.numeric.values),
                              w.max_discrepancy);
    }, py::arg("A0"), py::arg("alpha"), py::arg("t"));
    m.def("count_fringes", &count_fringes, py::arg("density"));

    m.def("thomas_fermi", [](double G) {
        auto tf = thomas_fermi_profile(G);
        return py::make_tuple(tf.mu, tf.peak(), tf.radius());
    }, py::arg("G_B"));
    m.def("analyze", [](const std::string& constants) {
        const auto u = constants == "rounded_hbar" ? UnitConstants::rounded_hbar() : UnitConstants::codata();
        py::dict d;
        for (const auto& e : analyze(PhysicalParams{}, u))
            d[py::str(e.key)] = py::make_tuple(e.computed, e.quoted, e.mismatch);
        return d;
    }, py::arg("constants") = "codata");

    m.def("read_matrix", [](const std::string& path) {
        auto mtx = read_matrix_binary(path);
        py::array_t<double> a({static_cast<py::ssize_t>(mtx.rows), static_cast<py::ssize_t>(mtx.cols)});
        std::copy(mtx.data.begin(), mtx.data.end(), a.mutable_data());
        return py::make_tuple(a, mtx.dz, mtx.dt_snapshot);
    }, py::arg("path"));

    m.def("run_scenario", [](const std::string& scenario, const std::map<std::string, std::string>& keys) {
        KeyValueConfig kv;
        for (const auto& [k, v] : keys) kv.set(k, v);
        RunConfig cfg;
        try {
            cfg = make_run_config(parse_scenario(scenario), kv);
        } catch (const ConfigError& e) {
            throw py::value_error(e.what());
        }
        std::ostringstream log;
        int rc;
        {
            py::gil_scoped_release release;
            rc = run(cfg, log);
        }
        return py::make_tuple(rc, log.str());
    }, py::arg("scenario"), py::arg("config"));
}
