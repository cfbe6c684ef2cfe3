#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "enttime/cli/commands.hpp"
#include "enttime/cli/spec_file.hpp"
#include "enttime/entropy.hpp"
#include "enttime/errors.hpp"
#include "enttime/linalg.hpp"
#include "enttime/models.hpp"
#include "enttime/timescale.hpp"

namespace py = pybind11;
using namespace enttime;

namespace {

struct Model {
  BipartiteModel model;
  double natural_rate = 1.0;
  std::string rate_name;
};

Model from_resolved(cli::ResolvedModel r) {
  return {std::move(r.model), r.natural_rate, r.rate_name};
}

py::dict report_dict(const TimescaleReport& r) {
  py::dict d;
  d["t_ent_inv_sq"] = r.t_ent_inv_sq;
  d["raw_inv_sq"] = r.raw_inv_sq;
  d["imag_residual"] = r.imag_residual;
  d["scale"] = r.scale;
  d["degenerate"] = r.degenerate;
  d["t_ent"] = r.t_ent ? py::cast(*r.t_ent) : py::none();
  d["cov_a"] = r.cov_a.matrix();
  d["cov_b"] = r.cov_b.matrix();
  return d;
}

Subsystem parse_keep(const std::string& keep) {
  if (keep == "A" || keep == "a") return Subsystem::A;
  if (keep == "B" || keep == "b") return Subsystem::B;
  throw DomainError("keep must be 'A' or 'B'");
}

}  // namespace

PYBIND11_MODULE(_enttime, m) {
  m.doc() = "Entanglement timescale of bipartite product-state quenches";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<SchemaError>(m, "SchemaError", base.ptr());
  auto model_error = py::register_exception<ModelError>(m, "ModelError", base.ptr());
  py::register_exception<TruncationError>(m, "TruncationError", model_error.ptr());
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<StateError>(m, "StateError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

  py::class_<Model>(m, "Model")
      .def_property_readonly("dim_a", [](const Model& s) { return s.model.hamiltonian.dim_a(); })
      .def_property_readonly("dim_b", [](const Model& s) { return s.model.hamiltonian.dim_b(); })
      .def_property_readonly("n_terms",
                             [](const Model& s) { return s.model.hamiltonian.terms().size(); })
      .def_readonly("natural_rate", &Model::natural_rate)
      .def_readonly("rate_name", &Model::rate_name)
      .def("hamiltonian",
           [](const Model& s) { return Eigen::MatrixXcd(assemble(s.model.hamiltonian).matrix()); })
      .def("initial_state",
           [](const Model& s) {
             return Eigen::VectorXcd(product_state_vector(s.model.state).amplitudes());
           })
      .def("swapped", [](const Model& s) {
        return Model{{s.model.hamiltonian.swapped(), s.model.state.swapped()}, s.natural_rate,
                     s.rate_name};
      });

  m.def("load_model", [](const std::string& path) {
    return from_resolved(cli::load_model_spec(path));
  }, py::arg("path"));
  m.def("parse_model", [](const std::string& json_text) {
    return from_resolved(cli::parse_model_spec(nlohmann::json::parse(json_text)));
  }, py::arg("json_text"));

  m.def(
      "jcm",
      [](double lambda, double omega, int n_max, Complex c_e, Complex c_g, std::optional<int> fock,
         std::optional<Complex> nu) {
        if (fock && nu) throw DomainError("give either fock or nu, not both");
        JcmSpec spec;
        spec.lambda = lambda;
        spec.omega = omega;
        spec.n_max = n_max;
        spec.c_e = c_e;
        spec.c_g = c_g;
        if (nu) {
          spec.field = CoherentField{*nu};
        } else {
          spec.field = FockField{fock.value_or(0)};
        }
        return Model{build_jcm(spec), std::abs(lambda), "lambda"};
      },
      py::arg("lambda_") = 1.0, py::arg("omega") = 1.0, py::arg("n_max") = 10,
      py::arg("c_e") = Complex(1.0), py::arg("c_g") = Complex(0.0), py::arg("fock") = py::none(),
      py::arg("nu") = py::none());

  m.def(
      "bose_hubbard",
      [](double j, double u, int n_per_site_max, std::pair<int, int> occupancy) {
        BoseHubbardBoundarySpec spec;
        spec.j_rate = j;
        spec.u = u;
        spec.n_per_site_max = n_per_site_max;
        spec.occupancy_left = occupancy.first;
        spec.occupancy_right = occupancy.second;
        return Model{build_bose_hubbard_boundary(spec), std::abs(j), "J"};
      },
      py::arg("j"), py::arg("u") = 0.0, py::arg("n_per_site_max") = 2,
      py::arg("occupancy") = std::pair<int, int>{1, 1});

  m.def(
      "custom",
      [](const std::vector<std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd>>& terms,
         const Eigen::VectorXcd& psi_a, const Eigen::VectorXcd& psi_b) {
        std::vector<OperatorPair> pairs;
        for (const auto& [a, b] : terms) pairs.push_back({ComplexMatrix(a), ComplexMatrix(b)});
        ProductHamiltonian h(static_cast<std::size_t>(psi_a.size()),
                             static_cast<std::size_t>(psi_b.size()), std::move(pairs));
        assemble(h);  // surfaces a non-Hermitian sum as ModelError
        Model out{{std::move(h), ProductState(psi_a, psi_b)}, 1.0, ""};
        out.natural_rate =
            1.0 / characteristic_time(entanglement_timescale(out.model.hamiltonian, out.model.state));
        return out;
      },
      py::arg("terms"), py::arg("psi_a"), py::arg("psi_b"));

  m.def("timescale", [](const Model& s) {
    return report_dict(entanglement_timescale(s.model.hamiltonian, s.model.state));
  });
  m.def("curvature_coefficient", &curvature_coefficient, py::arg("alpha"));
  m.def(
      "predicted_curvature",
      [](const Model& s, int alpha) {
        return predicted_curvature(entanglement_timescale(s.model.hamiltonian, s.model.state), alpha)
            .curvature;
      },
      py::arg("model"), py::arg("alpha"));
  m.def(
      "measured_curvature",
      [](const Model& s, int alpha) {
        return measured_curvature(s.model.hamiltonian, s.model.state, alpha);
      },
      py::arg("model"), py::arg("alpha"));
  m.def(
      "first_derivative",
      [](const Model& s, int alpha, double dt) {
        return first_derivative_check(s.model.hamiltonian, s.model.state, alpha, dt);
      },
      py::arg("model"), py::arg("alpha"), py::arg("dt"));

  m.def(
      "entropy_series",
      [](const Model& s, const std::vector<int>& alphas, const std::vector<double>& times,
         bool spectra) {
        py::gil_scoped_release release;
        auto series = entropy_series(s.model.hamiltonian, s.model.state, alphas, times, spectra);
        py::gil_scoped_acquire acquire;
        py::dict out;
        for (auto& e : series) {
          py::dict d;
          d["times"] = e.times;
          d["values"] = e.values;
          if (spectra) d["spectra"] = e.spectra;
          out[py::int_(e.alpha)] = d;
        }
        return out;
      },
      py::arg("model"), py::arg("alphas"), py::arg("times"), py::arg("spectra") = false,
      "Entropies of the A subsystem along the exact evolution; order 1 is von Neumann.");

  m.def(
      "von_neumann_curvature_probe",
      [](const Model& s, const std::vector<double>& times) {
        std::vector<std::pair<double, double>> out;
        for (const auto& c : von_neumann_curvature_probe(s.model.hamiltonian, s.model.state, times)) {
          out.emplace_back(c.t, c.curvature);
        }
        return out;
      },
      py::arg("model"), py::arg("times"));

  m.def(
      "verify_json",
      [](const std::string& spec_path, const std::vector<int>& alphas, double tol) {
        const auto resolved = cli::load_model_spec(spec_path);
        return cli::to_json(cli::verify_model(resolved, alphas, tol)).dump();
      },
      py::arg("spec_path"), py::arg("alphas") = std::vector<int>{2, 3, 4}, py::arg("tol") = 0.01);

  m.def("kron", [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    return Eigen::MatrixXcd(kron(ComplexMatrix(a), ComplexMatrix(b)).matrix());
  });
  m.def(
      "partial_trace",
      [](const Eigen::MatrixXcd& rho, std::size_t dim_a, std::size_t dim_b, const std::string& keep) {
        return Eigen::MatrixXcd(
            partial_trace(ComplexMatrix(rho), dim_a, dim_b, parse_keep(keep)).matrix());
      },
      py::arg("rho"), py::arg("dim_a"), py::arg("dim_b"), py::arg("keep") = "A");
  m.def("alpha_purity", [](const Eigen::MatrixXcd& rho, int alpha) {
    return alpha_purity(ComplexMatrix(rho), alpha);
  });
  m.def("renyi_entropy", [](const Eigen::MatrixXcd& rho, int alpha) {
    return renyi_entropy(ComplexMatrix(rho), alpha);
  });
  m.def("von_neumann_entropy",
        [](const Eigen::MatrixXcd& rho) { return von_neumann_entropy(ComplexMatrix(rho)); });

  m.attr("__version__") = ENTTIME_VERSION;
}
