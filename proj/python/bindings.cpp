#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "walker4/classify.hpp"
#include "walker4/heavenly.hpp"
#include "walker4/runner.hpp"
#include "walker4/spinor.hpp"

namespace py = pybind11;
using namespace walker4;

namespace {

Point4 to_point(const std::array<double, 4>& p) { return Point4{p[0], p[1], p[2], p[3]}; }

py::list mat3_to_list(const Mat3& m) {
    py::list rows;
    for (int i = 0; i < 3; ++i) {
        py::list row;
        for (int j = 0; j < 3; ++j) row.append(m[i][j]);
        rows.append(row);
    }
    return rows;
}

py::list mat4_to_list(const Mat4& m) {
    py::list rows;
    for (int i = 0; i < 4; ++i) {
        py::list row;
        for (int j = 0; j < 4; ++j) row.append(m[i][j]);
        rows.append(row);
    }
    return rows;
}

py::dict summary_dict(const CurvatureSummary& cs) {
    py::dict d;
    d["S"] = cs.S;
    d["A"] = cs.A;
    d["A_literal"] = cs.A_literal;
    d["B"] = cs.B;
    d["P"] = cs.P;
    d["Q"] = cs.Q;
    d["T"] = cs.T;
    d["X"] = cs.X;
    d["Y"] = cs.Y;
    d["lambda"] = cs.Lambda;
    py::list ricci, E;
    for (int i = 0; i < 4; ++i) {
        py::list r1, r2;
        for (int j = 0; j < 4; ++j) {
            r1.append(cs.ricci[i][j]);
            r2.append(cs.E[i][j]);
        }
        ricci.append(r1);
        E.append(r2);
    }
    d["ricci"] = ricci;
    d["einstein"] = E;
    d["w_plus"] = mat3_to_list(cs.Wp);
    d["w_minus"] = mat3_to_list(cs.Wm);
    d["z"] = mat3_to_list(cs.Z);
    d["eigenvalues"] = py::make_tuple(-cs.S / 6, cs.S / 12, cs.S / 12);
    return d;
}

py::dict spinor_dict(const SpinorCurvature& sc) {
    py::dict d;
    d["psi"] = sc.psi;
    d["psit"] = sc.psit;
    py::list phi;
    for (int i = 0; i < 3; ++i) {
        py::list row;
        for (int j = 0; j < 3; ++j) row.append(sc.phi[i][j]);
        phi.append(row);
    }
    d["phi"] = phi;
    d["lambda"] = sc.lambda;
    return d;
}

} // namespace

PYBIND11_MODULE(_walker4, m) {
    m.doc() = "Curvature workbench for four-dimensional neutral Walker metrics";

    py::register_exception<ParseError>(m, "ExprParseError");
    py::register_exception<EvalError>(m, "ExprEvalError");
    py::register_exception<SpecError>(m, "SpecFileError");

    py::class_<WalkerMetric>(m, "WalkerMetric")
        .def_static(
            "from_abc",
            [](const std::string& a, const std::string& b, const std::string& c) {
                return WalkerMetric::from_abc(parse(a), parse(b), parse(c));
            },
            py::arg("a"), py::arg("b"), py::arg("c"))
        .def_static(
            "from_theta",
            [](const std::string& theta) { return WalkerMetric::from_theta(parse(theta)); },
            py::arg("theta"))
        .def("abc",
             [](const WalkerMetric& mm, const std::array<double, 4>& p) {
                 return mm.abc_values(to_point(p));
             })
        .def("metric",
             [](const WalkerMetric& mm, const std::array<double, 4>& p) {
                 const MetricAt at = mm.at(to_point(p));
                 py::dict d;
                 d["g"] = mat4_to_list(at.g);
                 d["g_inv"] = mat4_to_list(at.g_inv);
                 d["det"] = at.det_g;
                 return d;
             })
        .def("swapped", &WalkerMetric::swapped);

    py::class_<ProductMetric>(m, "ProductMetric")
        .def_static(
            "from_omega",
            [](const std::string& omega) { return ProductMetric::from_omega(parse(omega)); },
            py::arg("omega"))
        .def("det_d",
             [](const ProductMetric& pm, const std::array<double, 4>& p) {
                 return pm.det_d(to_point(p));
             })
        .def("metric", [](const ProductMetric& pm, const std::array<double, 4>& p) {
            const MetricAt at = pm.at(to_point(p));
            py::dict d;
            d["g"] = mat4_to_list(at.g);
            d["g_inv"] = mat4_to_list(at.g_inv);
            d["det"] = at.det_g;
            return d;
        });

    m.def("eval_value",
          [](const std::string& e, const std::array<double, 4>& p) {
              return eval_value(parse(e), to_point(p));
          },
          "Evaluate an expression at (u,v,x,y)");
    m.def("eval_partial",
          [](const std::string& e, const std::array<double, 4>& p,
             const std::array<int, 4>& alpha, int degree) {
              const Jet j = eval_jet(parse(e), to_point(p), degree);
              return j.partial(MultiIndex{alpha[0], alpha[1], alpha[2], alpha[3]});
          },
          py::arg("expr"), py::arg("point"), py::arg("alpha"), py::arg("degree") = 4,
          "Exact partial derivative of an expression via jets");

    m.def("christoffels", [](const WalkerMetric& mm, const std::array<double, 4>& p) {
        const Christoffels ch = christoffels_walker(mm, to_point(p));
        py::list out;
        for (int i = 0; i < 4; ++i) {
            py::list mi;
            for (int j = 0; j < 4; ++j) {
                py::list row;
                for (int k = 0; k < 4; ++k) row.append(ch.G[i][j][k]);
                mi.append(row);
            }
            out.append(mi);
        }
        return out;
    });

    m.def("curvature_summary", [](const WalkerMetric& mm, const std::array<double, 4>& p) {
        return summary_dict(curvature_summary(mm, to_point(p)));
    });

    m.def("spinor_curvature", [](const WalkerMetric& mm, const std::array<double, 4>& p) {
        return spinor_dict(spinor_curvature(mm, to_point(p)));
    });

    m.def("wps_residual", [](const WalkerMetric& mm, const std::array<double, 4>& p) {
        const WpsResidual r = wps_residual(spinor_curvature(mm, to_point(p)));
        return py::make_tuple(r.r_pipi, r.r_pixi, r.r_xixi);
    });

    m.def(
        "classify",
        [](const WalkerMetric& mm, const std::array<double, 4>& p, double tol) {
            const CurvatureSummary cs = curvature_summary(mm, to_point(p));
            const SpinorCurvature sc = spinor_curvature(mm, to_point(p));
            const double scale = mat3_max_abs(cs.Wp) + std::abs(cs.S) + 1e-30;
            const WeylPlusClass cls = classify_weyl_plus(cs.S, cs.A, cs.B, scale, tol);
            const JcfReport jcf = verify_jcf(cs.Wp, cls, tol);
            const RootPattern rp = classify_weyl_minus(sc.psi, tol);
            py::dict d;
            d["case"] = to_string(cls.kase);
            d["jcf"] = cls.jcf_label;
            d["eigenvalues"] = cls.eigenvalues;
            d["discriminant"] = cls.discriminant;
            d["marginal"] = cls.marginal;
            d["jcf_consistent"] = jcf.consistent;
            d["asd_pattern"] = rp.label;
            return d;
        },
        py::arg("metric"), py::arg("point"), py::arg("tol") = 1e-8);

    m.def("theta_analysis", [](const std::string& theta, const std::array<double, 4>& p) {
        const HeavenlyReport rep = theta_analysis(parse(theta), to_point(p));
        py::dict d;
        d["lsr"] = py::make_tuple(rep.lsr_r1, rep.lsr_r2);
        d["P"] = rep.P;
        d["A_via_box"] = rep.A_via_box;
        d["second_heavenly_residual"] = rep.second_heavenly_residual;
        d["psi"] = rep.psi_from_theta;
        d["phi"] = py::make_tuple(rep.phi_from_theta[0], rep.phi_from_theta[1],
                                  rep.phi_from_theta[2]);
        d["einstein_affine"] = rep.einstein_affine_flag;
        return d;
    });

    m.def("box_scalar", [](const WalkerMetric& mm, const std::string& f,
                           const std::array<double, 4>& p) {
        return box_scalar(mm, parse(f), to_point(p));
    });

    m.def("second_heavenly_residual",
          [](const std::string& Theta, const std::array<double, 4>& p) {
              return second_heavenly_residual(parse(Theta), to_point(p));
          });

    m.def("para_kahler_analysis",
          [](const ProductMetric& pm, const std::array<double, 4>& p) {
              const ParaKahlerReport rep = para_kahler_analysis(pm, to_point(p));
              py::dict d;
              d["det_D"] = rep.det_D;
              d["first_heavenly_residual"] = rep.first_heavenly_residual;
              d["S"] = rep.S;
              d["e_block_residual"] = rep.e_block_residual;
              d["spectrum_ok"] = rep.spectrum_ok;
              d["det_positive"] = rep.det_positive;
              return d;
          });

    m.def(
        "integrate_geodesic",
        [](const WalkerMetric& mm, const std::array<double, 4>& pos,
           const std::array<double, 4>& vel, double h, int n) {
            GeodesicState s0;
            s0.pos = to_point(pos);
            s0.vel = vel;
            const Trajectory tr = integrate_geodesic(mm, s0, h, n);
            py::list rows;
            for (const auto& row : tr.rows)
                rows.append(py::make_tuple(row.s, row.state.pos.u, row.state.pos.v,
                                           row.state.pos.x, row.state.pos.y, row.state.vel[0],
                                           row.state.vel[1], row.state.vel[2], row.state.vel[3],
                                           row.norm));
            py::dict d;
            d["rows"] = rows;
            d["max_norm_drift"] = tr.max_norm_drift;
            d["max_residual"] = tr.max_residual;
            return d;
        },
        py::arg("metric"), py::arg("pos"), py::arg("vel"), py::arg("h"), py::arg("n"));

    m.def(
        "run_spec",
        [](const std::string& spec_json, const std::string& suite) {
            const MetricSpec spec = parse_spec_json(spec_json);
            const Report rep = run_checks(spec, suite_from_string(suite));
            py::dict d;
            d["pass"] = rep.n_pass;
            d["fail"] = rep.n_fail;
            d["marginal"] = rep.n_marginal;
            d["json"] = report_to_json(rep);
            return d;
        },
        py::arg("spec_json"), py::arg("suite") = "all",
        "Run an analysis suite over a JSON spec document");

    m.attr("__version__") = "0.1.0";
}
