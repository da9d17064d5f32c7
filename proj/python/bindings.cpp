#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "krein/report.hpp"
#include "krein/verify.hpp"

namespace py = pybind11;
using namespace krein;

namespace {

Half half_of(const std::string& s) {
  if (s == "plus") return Half::Plus;
  if (s == "minus") return Half::Minus;
  throw Error(ErrorCode::BadFlags, "side must be \"plus\" or \"minus\", got \"" + s + "\"");
}

Tolerances make_tol(double rank_tol, double sym_tol, double recon_tol) {
  Tolerances t{rank_tol, sym_tol, recon_tol};
  t.validate();
  return t;
}

py::dict bounds_dict(const FrameBounds& b) {
  py::dict d;
  d["A"] = b.a;
  d["B"] = b.b;
  d["A_prime"] = b.a_prime;
  d["B_prime"] = b.b_prime;
  return d;
}

py::dict verdict_dict(const RieszVerdict& v) {
  py::dict d;
  d["is_riesz"] = v.is_riesz;
  d["complete_plus"] = v.complete_plus;
  d["complete_minus"] = v.complete_minus;
  d["failure_reason"] = std::string(to_string(v.failure_reason));
  d["margin_plus"] = v.margin_plus;
  d["margin_minus"] = v.margin_minus;
  d["bounds"] = v.bounds_witness ? py::object(bounds_dict(*v.bounds_witness)) : py::none();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Riesz bases, Gram matrices and duals in finite-dimensional Krein spaces";

  static py::exception<Error> krein_error(m, "KreinError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = krein_error;
      py::object inst = exc(e.what());
      inst.attr("code") = std::string(to_string(e.code()));
      inst.attr("value") = e.value() ? py::object(py::float_(*e.value())) : py::none();
      PyErr_SetObject(krein_error.ptr(), inst.ptr());
    }
  });

  py::class_<KreinSpace, std::shared_ptr<KreinSpace>>(m, "Space")
      .def(py::init([](const ComplexMatrix& g, double rank_tol, double sym_tol, double recon_tol) {
             return std::const_pointer_cast<KreinSpace>(
                 KreinSpace::create(KreinMetric(g, make_tol(rank_tol, sym_tol, recon_tol))));
           }),
           py::arg("metric"), py::arg("rank_tol") = 1e-10, py::arg("sym_tol") = 1e-10,
           py::arg("recon_tol") = 1e-8)
      .def_static(
          "from_signature",
          [](std::size_t p, std::size_t q) {
            return std::const_pointer_cast<KreinSpace>(
                KreinSpace::create(KreinMetric::from_signature(p, q)));
          },
          py::arg("p"), py::arg("q"))
      .def_property_readonly("dim", &KreinSpace::dim)
      .def_property_readonly("p", [](const KreinSpace& s) { return s.fd.p; })
      .def_property_readonly("q", [](const KreinSpace& s) { return s.fd.q; })
      .def_property_readonly("metric", [](const KreinSpace& s) { return s.metric.matrix(); })
      .def_property_readonly("basis", [](const KreinSpace& s) { return s.fd.w; })
      .def_property_readonly("signs", [](const KreinSpace& s) { return s.fd.j; })
      .def("projector", [](const KreinSpace& s, const std::string& side) {
        return ComplexMatrix(s.fd.projector(half_of(side)));
      })
      .def("inner", [](const KreinSpace& s, const KreinVector& x, const KreinVector& y) {
        return indefinite_inner(x, y, s.metric);
      })
      .def("j_norm", [](const KreinSpace& s, const KreinVector& x) { return j_norm(x, s); });

  py::class_<VectorFamily>(m, "Family")
      .def(py::init([](std::shared_ptr<KreinSpace> s, std::vector<KreinVector> vs) {
             return split_indices(std::move(vs), s);
           }),
           py::arg("space"), py::arg("vectors"))
      .def("__len__", &VectorFamily::size)
      .def_property_readonly("vectors", [](const VectorFamily& f) { return f.vectors; })
      .def_property_readonly("i_plus", [](const VectorFamily& f) { return f.i_plus; })
      .def_property_readonly("i_minus", [](const VectorFamily& f) { return f.i_minus; })
      .def_property_readonly("neutral", [](const VectorFamily& f) { return f.neutral; })
      .def_property_readonly("has_neutral", [](const VectorFamily& f) { return f.has_neutral; })
      .def("membership", &subspace_membership)
      .def("completeness", [](const VectorFamily& f) {
        const auto c = completeness(f);
        return py::make_tuple(c.plus, c.minus, c.total);
      })
      .def("analysis", [](const VectorFamily& f, const KreinVector& x) {
        const auto c = analysis(f, x);
        return py::make_tuple(c.plus, c.minus);
      })
      .def("synthesis", [](const VectorFamily& f, const ComplexVector& plus, const ComplexVector& minus) {
        const auto r = synthesis(f, {plus, minus});
        return py::make_tuple(r.f_plus, r.f_minus);
      });

  m.def("gram", [](const VectorFamily& f) {
    const auto gp = gram_matrices(f);
    const auto b = bessel_from_gram(gp);
    py::dict d;
    d["g_plus"] = gp.g_plus;
    d["g_minus"] = gp.g_minus;
    d["norm_plus"] = gp.norm_plus;
    d["norm_minus"] = gp.norm_minus;
    d["sigma_min_plus"] = gp.sigma_min_plus;
    d["sigma_min_minus"] = gp.sigma_min_minus;
    d["B"] = b.b;
    d["B_prime"] = b.b_prime;
    d["absolute_sum"] = absolute_sum_bessel_test(f);
    return d;
  });
  m.def("absolute_sum_bound", [](const ComplexMatrix& a) { return absolute_sum_bound(a); });

  m.def("riesz_via_gram", [](const VectorFamily& f) {
    return verdict_dict(riesz_via_gram(f, f.space->tol()));
  });
  m.def("riesz_via_inequalities", [](const VectorFamily& f) {
    return verdict_dict(riesz_via_inequalities(f, f.space->tol()));
  });
  m.def("frame_inequality_bounds", [](const VectorFamily& f) {
    return bounds_dict(frame_inequality_bounds(f));
  });
  m.def("optimal_frame_bounds", [](const ComplexMatrix& up, const ComplexMatrix& um) {
    return bounds_dict(optimal_frame_bounds(OperatorPair::make(up, um)));
  });
  m.def("factor_riesz", [](const VectorFamily& f) {
    const auto ops = factor_riesz(f, f.space->tol());
    return py::make_tuple(ops.u_plus, ops.u_minus);
  });
  m.def(
      "construct_riesz",
      [](const ComplexMatrix& up, const ComplexMatrix& um, std::shared_ptr<KreinSpace> s) {
        return construct_riesz(OperatorPair::make(up, um, s->tol()), s);
      },
      py::arg("u_plus"), py::arg("u_minus"), py::arg("space"));
  m.def(
      "dual_sequence",
      [](const ComplexMatrix& up, const ComplexMatrix& um, std::shared_ptr<KreinSpace> s) {
        return dual_sequence(OperatorPair::make(up, um, s->tol()), s);
      },
      py::arg("u_plus"), py::arg("u_minus"), py::arg("space"));
  m.def("certify", [](const VectorFamily& f) {
    const auto c = certify(f, f.space->tol());
    py::dict d;
    d["u_plus"] = c.ops.u_plus;
    d["u_minus"] = c.ops.u_minus;
    d["duals"] = c.duals;
    d["bounds"] = bounds_dict(c.bounds);
    return d;
  });
  m.def("biorthogonality_residual", &biorthogonality_residual);
  m.def(
      "reconstruct",
      [](const KreinVector& x, const VectorFamily& f, const VectorFamily& duals, const std::string& side) {
        return reconstruct(x, f, duals, half_of(side));
      },
      py::arg("f"), py::arg("family"), py::arg("duals"), py::arg("side"));

  m.def(
      "generate",
      [](std::uint64_t seed, std::optional<std::size_t> dim,
         std::optional<std::pair<std::size_t, std::size_t>> signature, double cond_cap,
         const std::string& defect) {
        GenSpec spec;
        spec.seed = seed;
        if (dim && signature) {
          throw Error(ErrorCode::BadFlags, "dim and signature are mutually exclusive");
        }
        if (dim) spec.dim_min = spec.dim_max = *dim;
        spec.signature = signature;
        spec.cond_cap = cond_cap;
        const auto d = defect_from_string(defect);
        if (!d) throw Error(ErrorCode::BadFlags, "unknown defect " + defect);
        spec.defect = *d;
        spec.validate();
        return emit_instance(instance_from_generated(generate_instance(spec), spec));
      },
      py::arg("seed") = 0, py::arg("dim") = py::none(), py::arg("signature") = py::none(),
      py::arg("cond_cap") = 1e4, py::arg("defect") = "none");
  m.def(
      "analyze_json",
      [](const std::string& text) { return report_to_json(analyze(parse_instance(text))); },
      py::arg("instance"));
  m.def(
      "certify_json",
      [](const std::string& text, std::uint64_t seed, std::uint64_t samples) {
        CertifyOptions opts;
        opts.seed = seed;
        opts.samples = samples;
        return report_to_json(certify_instance(parse_instance(text), opts));
      },
      py::arg("instance"), py::arg("seed") = 0, py::arg("samples") = 100);
  m.def(
      "verify_json",
      [](std::size_t trials, std::uint64_t seed, std::size_t dim_min, std::size_t dim_max,
         std::size_t threads) {
        VerifyOptions opts;
        opts.trials = trials;
        opts.seed = seed;
        opts.dim_min = dim_min;
        opts.dim_max = dim_max;
        opts.threads = threads;
        py::gil_scoped_release release;
        return run_verification(opts).to_json();
      },
      py::arg("trials") = 200, py::arg("seed") = 0, py::arg("dim_min") = 1,
      py::arg("dim_max") = 12, py::arg("threads") = 1);
}
