#include "walker4/runner.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "walker4/classify.hpp"
#include "walker4/heavenly.hpp"
#include "walker4/spinor.hpp"

namespace walker4 {

namespace {

using nlohmann::json;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

Expr parse_field(const json& j, const char* field) {
    if (!j.contains(field))
        throw SpecError(std::string("missing field \"") + field + "\"");
    if (!j[field].is_string())
        throw SpecError(std::string("field \"") + field + "\" must be an expression string");
    try {
        return parse(j[field].get<std::string>());
    } catch (const ParseError& e) {
        throw SpecError(std::string("field \"") + field + "\": " + e.what());
    }
}

const char* kVersion = "walker4 0.1.0";

// Formatting helpers for the deterministic emitter.
std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Emitter {
    std::string out;
    int indent = 0;
    void nl() {
        out += '\n';
        out.append(indent * 2, ' ');
    }
    void raw(const std::string& s) { out += s; }
    void key(const std::string& k) {
        out += '"';
        out += k;
        out += "\": ";
    }
    void str(const std::string& s) {
        out += '"';
        for (char c : s) {
            switch (c) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                default: out += c;
            }
        }
        out += '"';
    }
    void num(double v) { out += fmt_double(v); }
};

} // namespace

const char* to_string(MetricKind k) {
    switch (k) {
        case MetricKind::walker: return "walker";
        case MetricKind::theta: return "theta";
        case MetricKind::omega: return "omega";
        case MetricKind::general: return "general";
    }
    return "?";
}

const char* to_string(Suite s) {
    switch (s) {
        case Suite::curvature: return "curvature";
        case Suite::spinor: return "spinor";
        case Suite::classify: return "classify";
        case Suite::heavenly: return "heavenly";
        case Suite::all: return "all";
    }
    return "?";
}

Suite suite_from_string(const std::string& s) {
    if (s == "curvature") return Suite::curvature;
    if (s == "spinor") return Suite::spinor;
    if (s == "classify") return Suite::classify;
    if (s == "heavenly") return Suite::heavenly;
    if (s == "all") return Suite::all;
    throw SpecError("unknown suite \"" + s + "\"");
}

MetricSpec parse_spec_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SpecError(std::string("spec is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw SpecError("spec must be a JSON object");
    MetricSpec spec;

    if (!j.contains("kind") || !j["kind"].is_string())
        throw SpecError("missing field \"kind\"");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "walker") {
        spec.kind = MetricKind::walker;
        spec.a = parse_field(j, "a");
        spec.b = parse_field(j, "b");
        spec.c = parse_field(j, "c");
    } else if (kind == "theta") {
        spec.kind = MetricKind::theta;
        spec.theta = parse_field(j, "theta");
    } else if (kind == "omega") {
        spec.kind = MetricKind::omega;
        spec.omega = parse_field(j, "omega");
    } else if (kind == "general") {
        spec.kind = MetricKind::general;
        if (!j.contains("entries") || !j["entries"].is_array() || j["entries"].size() != 4)
            throw SpecError("field \"entries\" must be a 4x4 array of expression strings");
        for (int r = 0; r < 4; ++r) {
            const auto& row = j["entries"][r];
            if (!row.is_array() || row.size() != 4)
                throw SpecError("field \"entries\" must be a 4x4 array of expression strings");
            for (int c = 0; c < 4; ++c) {
                if (!row[c].is_string())
                    throw SpecError("field \"entries\" must contain expression strings");
                try {
                    spec.gentries[r][c] = parse(row[c].get<std::string>());
                } catch (const ParseError& e) {
                    throw SpecError("field \"entries[" + std::to_string(r) + "][" +
                                    std::to_string(c) + "]\": " + e.what());
                }
            }
        }
    } else {
        throw SpecError("field \"kind\" must be walker|theta|omega|general");
    }

    if (j.contains("points")) {
        if (!j["points"].is_array()) throw SpecError("field \"points\" must be an array");
        for (const auto& pt : j["points"]) {
            if (!pt.is_array() || pt.size() != 4)
                throw SpecError("each point must be an array of four numbers");
            Point4 p{pt[0].get<double>(), pt[1].get<double>(), pt[2].get<double>(),
                     pt[3].get<double>()};
            if (!p.finite()) throw SpecError("points must be finite");
            spec.points.push_back(p);
        }
    }
    if (j.contains("sample")) {
        const auto& s = j["sample"];
        if (!s.is_object()) throw SpecError("field \"sample\" must be an object");
        spec.sample.present = true;
        if (!s.contains("count") || !s["count"].is_number_integer() ||
            s["count"].get<int>() < 1)
            throw SpecError("field \"sample.count\" must be an integer >= 1");
        spec.sample.count = s["count"].get<int>();
        if (!s.contains("box") || !s["box"].is_array() || s["box"].size() != 4)
            throw SpecError("field \"sample.box\" must be four [lo,hi] intervals");
        for (int i = 0; i < 4; ++i) {
            const auto& iv = s["box"][i];
            if (!iv.is_array() || iv.size() != 2)
                throw SpecError("field \"sample.box\" must be four [lo,hi] intervals");
            spec.sample.box[i][0] = iv[0].get<double>();
            spec.sample.box[i][1] = iv[1].get<double>();
            if (!(spec.sample.box[i][0] <= spec.sample.box[i][1]))
                throw SpecError("field \"sample.box\": empty interval");
        }
        if (s.contains("seed")) spec.sample.seed = s["seed"].get<std::uint64_t>();
    }
    if (spec.points.empty() && !spec.sample.present)
        throw SpecError("spec needs \"points\" and/or \"sample\"");

    if (j.contains("degree")) {
        if (!j["degree"].is_number_integer()) throw SpecError("field \"degree\" must be an integer");
        spec.degree = j["degree"].get<int>();
        if (spec.degree < 2 || spec.degree > 6)
            throw SpecError("field \"degree\" must be in [2,6]");
    }
    if (j.contains("tolerances")) {
        const auto& t = j["tolerances"];
        if (t.contains("rel")) spec.tol.rel = t["rel"].get<double>();
        if (t.contains("classify")) spec.tol.classify = t["classify"].get<double>();
        if (!(spec.tol.rel > 0) || !(spec.tol.classify > 0))
            throw SpecError("tolerances must be positive");
    }
    return spec;
}

MetricSpec load_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SpecError("cannot open spec file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_spec_json(ss.str());
}

Point4 sample_point(const SampleSpec& s, std::uint64_t k) {
    Point4 p;
    double* coords[4] = {&p.u, &p.v, &p.x, &p.y};
    for (int d = 0; d < 4; ++d) {
        const std::uint64_t h = splitmix64(s.seed ^ splitmix64(k * 4 + d + 1));
        const double unit = static_cast<double>(h >> 11) * 0x1.0p-53;
        *coords[d] = s.box[d][0] + unit * (s.box[d][1] - s.box[d][0]);
    }
    return p;
}

std::vector<Point4> spec_points(const MetricSpec& spec) {
    std::vector<Point4> pts = spec.points;
    if (spec.sample.present)
        for (int k = 0; k < spec.sample.count; ++k)
            pts.push_back(sample_point(spec.sample, static_cast<std::uint64_t>(k)));
    return pts;
}

namespace {

double max4(const double t[4][4]) {
    double s = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s = std::max(s, std::abs(t[i][j]));
    return s;
}

double max44(const double t[4][4][4][4]) {
    double s = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) s = std::max(s, std::abs(t[i][j][k][l]));
    return s;
}

double diff44(const double x[4][4][4][4], const double y[4][4][4][4]) {
    double s = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) s = std::max(s, std::abs(x[i][j][k][l] - y[i][j][k][l]));
    return s;
}

struct Checker {
    PointRecord& rec;
    void add(const std::string& name, double residual, double threshold, bool hard = true) {
        CheckItem item;
        item.name = name;
        item.residual = residual;
        item.threshold = threshold;
        item.pass = std::abs(residual) <= threshold;
        item.hard = hard;
        rec.checks.push_back(std::move(item));
    }
};

void run_curvature_walker(const WalkerMetric& m, const Point4& p, const Tolerances& tol,
                          int degree, PointRecord& rec) {
    Checker ck{rec};
    const MetricAt at = m.at(p);
    const MetricEntryJets ej = m.entry_jets(p, std::max(degree, 3));

    const Christoffels gw = christoffels_walker(m, p);
    const Christoffels gg = christoffels_generic(ej, at.g_inv);
    double gscale = 0, gdiff = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) {
                gscale = std::max(gscale, std::abs(gg.G[i][j][k]));
                gdiff = std::max(gdiff, std::abs(gw.G[i][j][k] - gg.G[i][j][k]));
            }
    ck.add("gamma_closed_vs_generic", gdiff, tol.rel * gscale + 1e-14);

    const RiemannAt rw = riemann_walker(m, p);
    const RiemannAt rg = riemann_generic(ej, at);
    const double rscale = std::max(max44(rg.down), max44(rg.up));
    ck.add("riemann_down_closed_vs_generic", diff44(rw.down, rg.down),
           tol.rel * rscale + 1e-14);
    ck.add("riemann_up_closed_vs_generic", diff44(rw.up, rg.up), tol.rel * rscale + 1e-14);

    // Tensor symmetries and the first Bianchi identity on the oracle tensor.
    double sym = 0, bianchi = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    sym = std::max(sym, std::abs(rg.down[i][j][k][l] + rg.down[j][i][k][l]));
                    sym = std::max(sym, std::abs(rg.down[i][j][k][l] + rg.down[i][j][l][k]));
                    sym = std::max(sym, std::abs(rg.down[i][j][k][l] - rg.down[k][l][i][j]));
                    bianchi = std::max(bianchi,
                                       std::abs(rg.down[i][j][k][l] + rg.down[i][k][l][j] +
                                                rg.down[i][l][j][k]));
                }
    ck.add("riemann_symmetries", sym, 1e-10 * (rscale + 1));
    ck.add("first_bianchi", bianchi, 1e-10 * (rscale + 1));

    const CurvatureSummary cs = curvature_summary(m, p);
    rec.S = cs.S;
    rec.A = cs.A;
    rec.B = cs.B;

    double ricci_g[4][4];
    ricci_from_riemann(rg, ricci_g);
    const double S_g = scalar_from_ricci(ricci_g, at.g_inv);
    double rdiff = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) rdiff = std::max(rdiff, std::abs(cs.ricci[i][j] - ricci_g[i][j]));
    const double ricci_scale = max4(ricci_g);
    ck.add("ricci_closed_vs_generic", rdiff, tol.rel * ricci_scale + 1e-14);
    ck.add("scalar_closed_vs_generic", std::abs(cs.S - S_g),
           tol.rel * std::abs(S_g) + 1e-13);

    double E_g[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0;
            for (int k = 0; k < 4; ++k) s += at.g_inv[i][k] * ricci_g[k][j];
            E_g[i][j] = s - (i == j ? S_g / 4 : 0);
        }
    double ediff = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) ediff = std::max(ediff, std::abs(cs.E[i][j] - E_g[i][j]));
    ck.add("einstein_closed_vs_generic", ediff, tol.rel * (max4(E_g) + 1e-3) + 1e-14);

    double weyl_g[4][4][4][4];
    weyl_from_riemann(rg, ricci_g, S_g, at.g, weyl_g);
    ck.add("weyl_closed_vs_generic", diff44(cs.weyl, weyl_g),
           tol.rel * max44(weyl_g) + 1e-14);

    // Trace law: the curvature endomorphism has trace S/2, i.e. the
    // projected Weyl blocks are trace free on top of the S/12 identity part.
    const auto [av, bv, cv] = m.abc_values(p);
    const WeylBlocks wb_trace = project_blocks(rg, at, walker_psi_on_frame(av, bv, cv));
    const double tr_blocks = wb_trace.Wp[0][0] + wb_trace.Wp[1][1] + wb_trace.Wp[2][2] +
                             wb_trace.Wm[0][0] + wb_trace.Wm[1][1] + wb_trace.Wm[2][2];
    ck.add("curvature_trace_minus_half_s", (tr_blocks + 6 * S_g / 12) - S_g / 2,
           1e-10 * (std::abs(S_g) + 1));
    double wtrace = 0;
    for (int j = 0; j < 4; ++j)
        for (int l = 0; l < 4; ++l) {
            double s = 0;
            for (int i = 0; i < 4; ++i)
                for (int k = 0; k < 4; ++k) s += at.g_inv[i][k] * cs.weyl[i][j][k][l];
            wtrace = std::max(wtrace, std::abs(s));
        }
    ck.add("weyl_trace_free", wtrace, 1e-9 * (max44(cs.weyl) + 1));
    ck.add("weyl_c1234_minus_s12", cs.weyl[0][1][2][3] - cs.S / 12,
           1e-12 * (std::abs(cs.S) + 1));

    // Blocks: closed-form matrices against the projection of the oracle
    // Riemann onto the standard chart frame.
    const auto [a, b, c] = m.abc_values(p);
    const WeylBlocks wb = project_blocks(rg, at, walker_psi_on_frame(a, b, c));
    double wpdiff = 0, wmdiff = 0, zdiff = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            wpdiff = std::max(wpdiff, std::abs(cs.Wp[i][j] - wb.Wp[i][j]));
            wmdiff = std::max(wmdiff, std::abs(cs.Wm[i][j] - wb.Wm[i][j]));
            zdiff = std::max(zdiff, std::abs(cs.Z[i][j] - wb.Z[i][j]));
        }
    const double bscale = mat3_max_abs(wb.Wp) + mat3_max_abs(wb.Wm) + mat3_max_abs(wb.Z);
    ck.add("wp_closed_vs_projected", wpdiff, tol.rel * (bscale + 1e-3) + 1e-13);
    ck.add("wm_closed_vs_projected", wmdiff, tol.rel * (bscale + 1e-3) + 1e-13);
    // The tabulated Einstein block is recorded, not patched: forensic item.
    ck.add("z_literal_vs_projected", zdiff, tol.rel * (bscale + 1e-3) + 1e-13, false);
    ck.add("a_literal_vs_projected", cs.A_literal - cs.A,
           tol.rel * (std::abs(cs.A) + 1e-3) + 1e-13, false);

    // Spectrum law, in the pseudo-eigenvalue form that is
    // well posed for the defective S/12 eigenvalue.
    const double wscale = mat3_max_abs(cs.Wp) + std::abs(cs.S) + 1e-30;
    Mat3 sh1 = cs.Wp, sh2 = cs.Wp;
    for (int i = 0; i < 3; ++i) {
        sh1[i][i] += cs.S / 6;
        sh2[i][i] -= cs.S / 12;
    }
    const double evdiff =
        std::max(mat3_singular_values(sh1)[2], mat3_singular_values(sh2)[2]);
    rec.eigenvalues = {-cs.S / 6, cs.S / 12, cs.S / 12};
    ck.add("wp_eigenvalue_law", evdiff, tol.classify * wscale);
    const double tr = cs.Wp[0][0] + cs.Wp[1][1] + cs.Wp[2][2];
    const double m2 = (cs.Wp[0][0] * cs.Wp[1][1] - cs.Wp[0][1] * cs.Wp[1][0]) +
                      (cs.Wp[0][0] * cs.Wp[2][2] - cs.Wp[0][2] * cs.Wp[2][0]) +
                      (cs.Wp[1][1] * cs.Wp[2][2] - cs.Wp[1][2] * cs.Wp[2][1]);
    const double det = mat3_det(cs.Wp);
    ck.add("wp_charpoly_trace", tr, tol.classify * wscale);
    ck.add("wp_charpoly_m2", m2 + cs.S * cs.S / 48, tol.classify * wscale * wscale);
    ck.add("wp_charpoly_det", det + cs.S * cs.S * cs.S / 864,
           tol.classify * wscale * wscale * wscale);
}

void run_spinor_walker(const WalkerMetric& m, const Point4& p, const Tolerances& tol,
                       PointRecord& rec) {
    Checker ck{rec};
    const MetricAt at = m.at(p);
    const auto [a, b, c] = m.abc_values(p);
    const NullTetrad t = walker_tetrad(m, p);

    auto gdot = [&](const Vec4& u, const Vec4& v) {
        double s = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) s += at.g[i][j] * u[i] * v[j];
        return s;
    };
    double pairing = 0;
    pairing = std::max(pairing, std::abs(gdot(t.l_up, t.n_up) - 1));
    pairing = std::max(pairing, std::abs(gdot(t.m_up, t.mt_up) + 1));
    pairing = std::max(pairing, std::abs(gdot(t.l_up, t.l_up)));
    pairing = std::max(pairing, std::abs(gdot(t.n_up, t.n_up)));
    pairing = std::max(pairing, std::abs(gdot(t.m_up, t.m_up)));
    pairing = std::max(pairing, std::abs(gdot(t.mt_up, t.mt_up)));
    pairing = std::max(pairing, std::abs(gdot(t.l_up, t.m_up)));
    pairing = std::max(pairing, std::abs(gdot(t.l_up, t.mt_up)));
    pairing = std::max(pairing, std::abs(gdot(t.n_up, t.m_up)));
    pairing = std::max(pairing, std::abs(gdot(t.n_up, t.mt_up)));
    ck.add("tetrad_pairings", pairing, 1e-12 * (1 + std::abs(a) + std::abs(b) + std::abs(c)));

    const CurvatureSummary cs = curvature_summary(m, p);
    const SpinorCurvature sc = spinor_curvature(m, p);
    rec.psi = sc.psi;
    rec.psit = sc.psit;
    rec.lambda = sc.lambda;
    rec.S = cs.S;
    rec.A = cs.A;
    rec.B = cs.B;

    const double sscale =
        1 + std::abs(cs.S) + mat3_max_abs(cs.Wp) + mat3_max_abs(cs.Wm) + max4(cs.E);

    // Oracle side: generic Riemann projected onto the standard frame, then
    // conjugated into the spinor bases.
    const MetricEntryJets ej = m.entry_jets(p, 3);
    const RiemannAt rg = riemann_generic(ej, at);
    const WeylBlocks wb = project_blocks(rg, at, walker_psi_on_frame(a, b, c));
    const SpinorBlocks oracle = spinor_from_blocks(wb.Wp, wb.Wm, c);

    ck.add("psit0_oracle", oracle.psit[0], 1e-10 * sscale);
    ck.add("psit1_oracle", oracle.psit[1], 1e-10 * sscale);
    ck.add("psit2_minus_s12", oracle.psit[2] - cs.S / 12, 1e-10 * sscale);
    ck.add("lambda_plus_s24", sc.lambda + cs.S / 24, 1e-12 * sscale);

    double psit_diff = 0, psi_diff = 0;
    for (int k = 0; k < 5; ++k) {
        psit_diff = std::max(psit_diff, std::abs(oracle.psit[k] - sc.psit[k]));
        psi_diff = std::max(psi_diff, std::abs(oracle.psi[k] - sc.psi[k]));
    }
    ck.add("psit_closed_vs_oracle", psit_diff, tol.rel * sscale + 1e-12);
    ck.add("psi_closed_vs_oracle", psi_diff, tol.rel * sscale + 1e-12);
    ck.add("quartic_symmetry_defect", oracle.sym_defect, tol.rel * sscale + 1e-12);

    // Ricci spinor from the oracle Einstein endomorphism and the tetrad.
    double ricci_g[4][4];
    ricci_from_riemann(rg, ricci_g);
    const double S_g = scalar_from_ricci(ricci_g, at.g_inv);
    double E_g[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = 0;
            for (int k = 0; k < 4; ++k) s += at.g_inv[i][k] * ricci_g[k][j];
            E_g[i][j] = s - (i == j ? S_g / 4 : 0);
        }
    double phi_oracle[3][3];
    phi_from_e_tetrad(E_g, t, phi_oracle);
    double phi_diff = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            phi_diff = std::max(phi_diff, std::abs(phi_oracle[i][j] - sc.phi[i][j]));
    ck.add("phi_closed_vs_oracle", phi_diff, tol.rel * sscale + 1e-12);
    ck.add("phi_column0_zero",
           std::max({std::abs(phi_oracle[0][0]), std::abs(phi_oracle[1][0]),
                     std::abs(phi_oracle[2][0])}),
           1e-10 * sscale);

    const WpsResidual wps = wps_residual(sc);
    ck.add("wps_residual",
           std::max({std::abs(wps.r_pipi), std::abs(wps.r_pixi), std::abs(wps.r_xixi)}),
           1e-10 * sscale);

    // Reconstruction round trip through the spinor components.
    const RiemannAt rr = reconstruct_riemann(sc, m, p);
    ck.add("reconstruction_round_trip", diff44(rr.down, rg.down),
           1e-8 * (max44(rg.down) + 1e-2));
}

void run_classify_walker(const WalkerMetric& m, const Point4& p, const Tolerances& tol,
                         PointRecord& rec) {
    Checker ck{rec};
    const CurvatureSummary cs = curvature_summary(m, p);
    const SpinorCurvature sc = spinor_curvature(m, p);
    rec.S = cs.S;
    rec.A = cs.A;
    rec.B = cs.B;
    rec.psi = sc.psi;
    rec.psit = sc.psit;
    rec.lambda = sc.lambda;

    const double scale = mat3_max_abs(cs.Wp) + std::abs(cs.S) + 1e-30;
    const WeylPlusClass cls = classify_weyl_plus(cs.S, cs.A, cs.B, scale, tol.classify);
    rec.classification = to_string(cls.kase);
    rec.jcf_label = cls.jcf_label;
    rec.marginal = cls.marginal;
    rec.eigenvalues = cls.eigenvalues;

    const JcfReport jcf = verify_jcf(cs.Wp, cls, tol.classify);
    ck.add("jcf_consistent", jcf.consistent ? 0.0 : 1.0, 0.5);

    const RootPattern rp = classify_weyl_minus(sc.psi, tol.classify);
    rec.asd_pattern = rp.label;
}

void append_lsr_suite(const WalkerMetric& m, const Point4& p, const Tolerances& tol,
                      PointRecord& rec) {
    Checker ck{rec};
    const CurvatureSummary cs = curvature_summary(m, p);
    const LsrResidual lsr = lsr_parallel_residual(m, p);
    const double fscale = 1 + std::abs(cs.abc[0]) + std::abs(cs.abc[1]) + std::abs(cs.abc[2]);
    ck.add("lsr_offray", std::max(lsr.offray3, lsr.offray4), 1e-12 * fscale);
    ck.add("lsr_factor_consistency",
           std::max(std::abs(lsr.factor3 - lsr.r1 / 2), std::abs(lsr.factor4 - lsr.r2 / 2)),
           1e-12 * fscale);
    // Residuals themselves are reported (zero only for parallel-LSR charts).
    ck.add("lsr_r1", lsr.r1, 1e300, false);
    ck.add("lsr_r2", lsr.r2, 1e300, false);
    (void)tol;
}

void run_heavenly_theta(const Expr& theta, const Point4& p, const Tolerances& tol,
                        PointRecord& rec) {
    Checker ck{rec};
    const ThetaCrossCheck cc = cross_check_theta(theta, p);
    const HeavenlyReport rep = theta_analysis(theta, p);
    const WalkerMetric m = WalkerMetric::from_theta(theta);
    const CurvatureSummary cs = curvature_summary(m, p);
    rec.S = cs.S;
    rec.A = cs.A;
    rec.B = cs.B;
    const double scale = 1 + std::abs(cs.A) + std::abs(rep.P);
    ck.add("theta_lsr_residual", std::max(std::abs(rep.lsr_r1), std::abs(rep.lsr_r2)),
           1e-10 * scale);
    ck.add("theta_s_zero", cc.s_abs, 1e-8 * scale);
    ck.add("theta_b_zero", cc.b_abs, 1e-8 * scale);
    ck.add("theta_psit_pattern", cc.psit_pattern, 1e-8 * scale);
    ck.add("theta_psi_vs_fourth_derivatives", cc.psi_vs_theta, 1e-8 * scale);
    ck.add("theta_phi_vs_hessian_of_p", cc.phi_vs_theta, 1e-8 * scale);
    ck.add("theta_a_vs_12_box_p", cc.a_vs_box, 1e-8 * scale);
    (void)tol;
}

void run_heavenly_walker(const WalkerMetric& m, const std::vector<Point4>& pts,
                         const Tolerances& tol, Report& rep) {
    // Conditional laws over the whole sample: if the parallel-spinor
    // conditions hold everywhere, scalar-flatness must follow; if the second
    // distribution is parallel too, the geometry is right flat. Points with
    // evaluation errors are skipped here; they are already recorded.
    double lsr_max = 0, sd_max = 0;
    bool any_ok = false;
    for (size_t i = 0; i < pts.size(); ++i) {
        if (rep.records[i].eval_error) continue;
        try {
            const LsrResidual lsr = lsr_parallel_residual(m, pts[i]);
            lsr_max = std::max({lsr_max, std::abs(lsr.r1), std::abs(lsr.r2)});
            sd_max = std::max(sd_max, second_distribution_residual(m, pts[i]).max_abs());
            any_ok = true;
        } catch (const std::exception& e) {
            rep.records[i].eval_error = true;
            rep.records[i].error = e.what();
        }
    }
    if (!any_ok) return;
    const bool lsr_parallel = lsr_max <= 1e-10;
    const bool second_parallel = sd_max <= 1e-10;
    for (size_t i = 0; i < pts.size(); ++i) {
        PointRecord& rec = rep.records[i];
        if (rec.eval_error) continue;
        Checker ck{rec};
        const CurvatureSummary cs = curvature_summary(m, pts[i]);
        const SpinorCurvature sc = spinor_curvature(m, pts[i]);
        const double scale = 1 + std::abs(cs.S) + std::abs(cs.A) + std::abs(cs.B);
        if (lsr_parallel) {
            ck.add("parallel_lsr_scalar_flat", cs.S, 1e-8 * scale);
            ck.add("parallel_lsr_b_zero", cs.B, 1e-8 * scale);
        }
        if (lsr_parallel && second_parallel) {
            double phimax = 0;
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) phimax = std::max(phimax, std::abs(sc.phi[a][b]));
            ck.add("right_flat_s", cs.S, 1e-8 * scale);
            ck.add("right_flat_a", cs.A, 1e-8 * scale);
            ck.add("right_flat_b", cs.B, 1e-8 * scale);
            ck.add("right_flat_phi", phimax, 1e-8 * scale);
            const DoubleWalkerReport dw = double_walker_identities(m, pts[i], tol.classify);
            ck.add("double_walker_b_plus_sc", dw.r_b_plus_sc, 1e-8 * scale);
            ck.add("double_walker_3bc_a_s", dw.r_three_bc, 1e-8 * scale);
            ck.add("double_walker_discriminant", dw.r_discriminant, 1e-8 * scale * scale);
        }
    }
}

void run_heavenly_omega(const ProductMetric& pm, const Point4& p, const Tolerances& tol,
                        PointRecord& rec) {
    Checker ck{rec};
    const ParaKahlerReport rep = para_kahler_analysis(pm, p, tol.rel);
    rec.S = rep.S;
    ck.add("det_d_positive", rep.det_positive ? 0.0 : 1.0, 0.5);
    ck.add("parallel_dr_ds", rep.dist_residual_pi, 1e-9 * (1 + std::abs(rep.det_D)));
    ck.add("parallel_dx_dy", rep.dist_residual_chi, 1e-9 * (1 + std::abs(rep.det_D)));
    ck.add("einstein_preserves_distributions", rep.e_block_residual,
           1e-9 * (1 + std::abs(rep.S)));
    ck.add("wp_spectrum_22Ia_or_zero", rep.spectrum_ok ? 0.0 : 1.0, 0.5);
    // det g = (det D)^2
    const MetricAt at = pm.at(p);
    ck.add("det_g_vs_det_d_squared", at.det_g - rep.det_D * rep.det_D,
           tol.rel * (1 + rep.det_D * rep.det_D));
    ck.add("first_heavenly_residual", rep.first_heavenly_residual, 1e300, false);
}

void run_curvature_general(const MetricSpec& spec, const Point4& p, const Tolerances& tol,
                           PointRecord& rec) {
    Checker ck{rec};
    MetricEntryJets ej;
    ej.degree = 3;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) ej.entry[i][j] = eval_jet(spec.gentries[i][j], p, 3);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (std::abs(ej.entry[i][j].value() - ej.entry[j][i].value()) > 0)
                throw SpecError("general metric entries must be symmetric");
    const MetricAt at = metric_at_from_entries(ej);
    const RiemannAt rg = riemann_generic(ej, at);
    double ricci_g[4][4];
    ricci_from_riemann(rg, ricci_g);
    const double S_g = scalar_from_ricci(ricci_g, at.g_inv);
    rec.S = S_g;
    const double rscale = max44(rg.down) + 1;
    double sym = 0, bianchi = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    sym = std::max(sym, std::abs(rg.down[i][j][k][l] + rg.down[j][i][k][l]));
                    sym = std::max(sym, std::abs(rg.down[i][j][k][l] + rg.down[i][j][l][k]));
                    sym = std::max(sym, std::abs(rg.down[i][j][k][l] - rg.down[k][l][i][j]));
                    bianchi = std::max(bianchi,
                                       std::abs(rg.down[i][j][k][l] + rg.down[i][k][l][j] +
                                                rg.down[i][l][j][k]));
                }
    ck.add("riemann_symmetries", sym, 1e-9 * rscale);
    ck.add("first_bianchi", bianchi, 1e-9 * rscale);
    const WeylBlocks wb = weyl_blocks_generic(ej, at);
    ck.add("sd_asd_split", 0.0, 1.0);
    rec.eigenvalues = {wb.Wp[0][0] + wb.Wp[1][1] + wb.Wp[2][2], 0, 0};
    (void)tol;
}

} // namespace

Report run_checks(const MetricSpec& spec, Suite suite) {
    Report rep;
    rep.version = kVersion;
    rep.kind = to_string(spec.kind);
    rep.suite = to_string(suite);
    rep.seed = spec.sample.seed;
    rep.degree = spec.degree;
    rep.tol = spec.tol;

    const std::vector<Point4> pts = spec_points(spec);
    rep.records.resize(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) rep.records[i].point = pts[i];

    const bool want_curv = suite == Suite::curvature || suite == Suite::all;
    const bool want_spin = suite == Suite::spinor || suite == Suite::all;
    const bool want_class = suite == Suite::classify || suite == Suite::all;
    const bool want_heaven = suite == Suite::heavenly || suite == Suite::all;

    if (spec.kind == MetricKind::general) {
        if (suite != Suite::curvature && suite != Suite::all)
            throw SpecError("kind \"general\" supports only the curvature suite");
        for (size_t i = 0; i < pts.size(); ++i) {
            try {
                run_curvature_general(spec, pts[i], spec.tol, rep.records[i]);
            } catch (const std::exception& e) {
                rep.records[i].eval_error = true;
                rep.records[i].error = e.what();
            }
        }
    } else if (spec.kind == MetricKind::omega) {
        if (suite == Suite::spinor || suite == Suite::classify)
            throw SpecError("kind \"omega\" supports the curvature and heavenly suites");
        const ProductMetric pm = ProductMetric::from_omega(spec.omega);
        for (size_t i = 0; i < pts.size(); ++i) {
            try {
                run_heavenly_omega(pm, pts[i], spec.tol, rep.records[i]);
            } catch (const std::exception& e) {
                rep.records[i].eval_error = true;
                rep.records[i].error = e.what();
            }
        }
    } else {
        const WalkerMetric m = spec.kind == MetricKind::theta
                                   ? WalkerMetric::from_theta(spec.theta)
                                   : WalkerMetric::from_abc(spec.a, spec.b, spec.c);
        for (size_t i = 0; i < pts.size(); ++i) {
            PointRecord& rec = rep.records[i];
            try {
                if (want_curv) run_curvature_walker(m, pts[i], spec.tol, spec.degree, rec);
                if (want_spin) run_spinor_walker(m, pts[i], spec.tol, rec);
                if (want_class) run_classify_walker(m, pts[i], spec.tol, rec);
                if (want_heaven) {
                    append_lsr_suite(m, pts[i], spec.tol, rec);
                    if (spec.kind == MetricKind::theta)
                        run_heavenly_theta(spec.theta, pts[i], spec.tol, rec);
                }
            } catch (const EvalError& e) {
                rec.eval_error = true;
                rec.error = e.what();
            } catch (const JetError& e) {
                rec.eval_error = true;
                rec.error = e.what();
            }
        }
        if (want_heaven) {
            try {
                run_heavenly_walker(m, pts, spec.tol, rep);
            } catch (const std::exception&) {
                // per-point errors already recorded
            }
        }
    }

    for (const auto& rec : rep.records) {
        bool fail = rec.eval_error;
        for (const auto& c : rec.checks)
            if (c.hard && !c.pass) fail = true;
        if (fail)
            ++rep.n_fail;
        else
            ++rep.n_pass;
        if (rec.marginal) ++rep.n_marginal;
    }
    return rep;
}

std::string report_to_json(const Report& r) {
    Emitter e;
    e.raw("{");
    e.indent = 1;
    e.nl();
    e.key("meta");
    e.raw("{");
    e.indent = 2;
    e.nl();
    e.key("version");
    e.str(r.version);
    e.raw(",");
    e.nl();
    e.key("kind");
    e.str(r.kind);
    e.raw(",");
    e.nl();
    e.key("suite");
    e.str(r.suite);
    e.raw(",");
    e.nl();
    e.key("seed");
    char sbuf[32];
    std::snprintf(sbuf, sizeof sbuf, "%" PRIu64, r.seed);
    e.raw(sbuf);
    e.raw(",");
    e.nl();
    e.key("degree");
    e.raw(std::to_string(r.degree));
    e.raw(",");
    e.nl();
    e.key("tol_rel");
    e.num(r.tol.rel);
    e.raw(",");
    e.nl();
    e.key("tol_classify");
    e.num(r.tol.classify);
    e.indent = 1;
    e.nl();
    e.raw("},");
    e.nl();
    e.key("records");
    e.raw("[");
    for (size_t i = 0; i < r.records.size(); ++i) {
        const auto& rec = r.records[i];
        e.indent = 2;
        e.nl();
        e.raw("{");
        e.indent = 3;
        e.nl();
        e.key("point");
        e.raw("[");
        e.num(rec.point.u);
        e.raw(", ");
        e.num(rec.point.v);
        e.raw(", ");
        e.num(rec.point.x);
        e.raw(", ");
        e.num(rec.point.y);
        e.raw("],");
        e.nl();
        if (rec.eval_error) {
            e.key("error");
            e.str(rec.error);
            e.raw(",");
            e.nl();
        }
        e.key("S");
        e.num(rec.S);
        e.raw(",");
        e.nl();
        e.key("A");
        e.num(rec.A);
        e.raw(",");
        e.nl();
        e.key("B");
        e.num(rec.B);
        e.raw(",");
        e.nl();
        e.key("eigenvalues");
        e.raw("[");
        for (int k = 0; k < 3; ++k) {
            if (k) e.raw(", ");
            e.num(rec.eigenvalues[k]);
        }
        e.raw("],");
        e.nl();
        e.key("psi");
        e.raw("[");
        for (int k = 0; k < 5; ++k) {
            if (k) e.raw(", ");
            e.num(rec.psi[k]);
        }
        e.raw("],");
        e.nl();
        e.key("psit");
        e.raw("[");
        for (int k = 0; k < 5; ++k) {
            if (k) e.raw(", ");
            e.num(rec.psit[k]);
        }
        e.raw("],");
        e.nl();
        e.key("lambda");
        e.num(rec.lambda);
        e.raw(",");
        e.nl();
        e.key("classification");
        e.str(rec.classification);
        e.raw(",");
        e.nl();
        e.key("jcf");
        e.str(rec.jcf_label);
        e.raw(",");
        e.nl();
        e.key("asd_pattern");
        e.str(rec.asd_pattern);
        e.raw(",");
        e.nl();
        e.key("marginal");
        e.raw(rec.marginal ? "true" : "false");
        e.raw(",");
        e.nl();
        e.key("checks");
        e.raw("[");
        for (size_t k = 0; k < rec.checks.size(); ++k) {
            const auto& c = rec.checks[k];
            e.indent = 4;
            e.nl();
            e.raw("{");
            e.key("name");
            e.str(c.name);
            e.raw(", ");
            e.key("residual");
            e.num(c.residual);
            e.raw(", ");
            e.key("threshold");
            e.num(c.threshold);
            e.raw(", ");
            e.key("pass");
            e.raw(c.pass ? "true" : "false");
            e.raw(", ");
            e.key("hard");
            e.raw(c.hard ? "true" : "false");
            e.raw("}");
            if (k + 1 < rec.checks.size()) e.raw(",");
        }
        if (!rec.checks.empty()) {
            e.indent = 3;
            e.nl();
        }
        e.raw("]");
        e.indent = 2;
        e.nl();
        e.raw("}");
        if (i + 1 < r.records.size()) e.raw(",");
    }
    if (!r.records.empty()) {
        e.indent = 1;
        e.nl();
    }
    e.raw("],");
    e.nl();
    e.key("summary");
    e.raw("{");
    e.key("pass");
    e.raw(std::to_string(r.n_pass));
    e.raw(", ");
    e.key("fail");
    e.raw(std::to_string(r.n_fail));
    e.raw(", ");
    e.key("marginal");
    e.raw(std::to_string(r.n_marginal));
    e.raw("}");
    e.indent = 0;
    e.nl();
    e.raw("}");
    e.raw("\n");
    return e.out;
}

void emit_report(const Report& r, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open report file: " + path);
    out << report_to_json(r);
}

std::string trajectory_to_json(const Trajectory& t) {
    Emitter e;
    e.raw("{");
    e.indent = 1;
    e.nl();
    e.key("meta");
    e.raw("{");
    e.key("version");
    e.str(kVersion);
    e.raw(", ");
    e.key("columns");
    e.raw("[\"s\", \"u\", \"v\", \"x\", \"y\", \"du\", \"dv\", \"dx\", \"dy\", \"norm\"]");
    e.raw("},");
    e.nl();
    e.key("rows");
    e.raw("[");
    for (size_t i = 0; i < t.rows.size(); ++i) {
        const auto& row = t.rows[i];
        e.indent = 2;
        e.nl();
        e.raw("[");
        e.num(row.s);
        e.raw(", ");
        e.num(row.state.pos.u);
        e.raw(", ");
        e.num(row.state.pos.v);
        e.raw(", ");
        e.num(row.state.pos.x);
        e.raw(", ");
        e.num(row.state.pos.y);
        e.raw(", ");
        e.num(row.state.vel[0]);
        e.raw(", ");
        e.num(row.state.vel[1]);
        e.raw(", ");
        e.num(row.state.vel[2]);
        e.raw(", ");
        e.num(row.state.vel[3]);
        e.raw(", ");
        e.num(row.norm);
        e.raw("]");
        if (i + 1 < t.rows.size()) e.raw(",");
    }
    e.indent = 1;
    e.nl();
    e.raw("],");
    e.nl();
    e.key("summary");
    e.raw("{");
    e.key("max_norm_drift");
    e.num(t.max_norm_drift);
    e.raw(", ");
    e.key("max_residual");
    e.num(t.max_residual);
    e.raw("}");
    e.indent = 0;
    e.nl();
    e.raw("}");
    e.raw("\n");
    return e.out;
}

void write_trajectory(const Trajectory& t, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open trajectory file: " + path);
    out << trajectory_to_json(t);
}

} // namespace walker4
