#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hvk/coefficients.hpp"
#include "hvk/crossratio_lab.hpp"
#include "hvk/holonomy_lab.hpp"
#include "hvk/lie_core.hpp"
#include "hvk/poincare_series.hpp"
#include "hvk/report.hpp"
#include "hvk/variance_lab.hpp"

namespace hvk {

/* report grids shared by the CLI and the acceptance driver */

struct IntRange {
    int lo = 0, hi = 0;
};

inline IntRange clamp_range(IntRange r, int lo, int hi) {
    return {std::max(r.lo, lo), std::min(r.hi, hi)};
}

inline std::string nk_suffix(int n, int k) { return ".n" + std::to_string(n) + ".k" + std::to_string(k); }

inline std::string pi_text(const PiRational& v) {
    if (v.coeff == 0) return "0";
    return v.coeff.get_str() + "*pi^" + std::to_string(v.pi_power);
}

inline LabeledValue pi_value(const std::string& label, const PiRational& v) { return {label, v.value(), pi_text(v)}; }

// -Tr(E0_k F0_k) from the matrices against (k!)^2 C(n+k,2k+1)
inline std::vector<VerificationReport> trace_law_reports(IntRange n, std::optional<int> k_only = {}) {
    std::vector<VerificationReport> out;
    for (int m = std::max(2, n.lo); m <= n.hi; ++m) {
        PrincipalEmbedding P = build_principal(m);
        for (int k = 1; k < m; ++k) {
            if (k_only && *k_only != k) continue;
            VerificationReport r;
            r.claim_id = "traces.EF" + nk_suffix(m, k);
            r.computed.push_back(exact_value("-Tr(E0_k F0_k)", -trace_EF(P, k)));
            r.reference.push_back(exact_value("(k!)^2 C(n+k,2k+1)", -trace_EF_closed(m, k)));
            r.close();
            out.push_back(std::move(r));
        }
    }
    return out;
}

// Tr(E0_k pi_p) through Lagrange projections against the alternating closed form
inline std::vector<VerificationReport> projection_trace_reports(IntRange n, std::optional<int> k_only = {}) {
    std::vector<VerificationReport> out;
    for (int m = std::max(2, n.lo); m <= n.hi; ++m) {
        PrincipalEmbedding P = build_principal(m);
        for (int k = 1; k < m; ++k) {
            if (k_only && *k_only != k) continue;
            VerificationReport r;
            r.claim_id = "traces.E_pi" + nk_suffix(m, k);
            for (int p = 1; p <= m; ++p) {
                std::string lab = "p" + std::to_string(p);
                r.computed.push_back(exact_value(lab, trace_E_pi(P, k, p)));
                r.reference.push_back(exact_value(lab, trace_E_pi_closed(m, k, p)));
            }
            r.computed.push_back(exact_value("p1.highest", trace_E_pi(P, k, 1)));
            r.reference.push_back(exact_value("p1.highest", trace_E_pi_highest(m, k)));
            if (m == k * k + k + 1) r.diag("vanishing_entry", "p" + std::to_string(m - 1));
            r.close();
            out.push_back(std::move(r));
        }
    }
    return out;
}

inline std::vector<VerificationReport> bridge_reports(IntRange n, std::optional<int> k_only = {}) {
    std::vector<VerificationReport> out;
    for (int m = std::max(2, n.lo); m <= n.hi; ++m) {
        PrincipalEmbedding P = build_principal(m);
        for (int k = 2; k <= m; ++k) {
            if (k_only && *k_only != k) continue;
            VerificationReport r;
            r.claim_id = "bridge" + nk_suffix(m, k);
            Rational sum = 0;
            for (int p = 1; p <= m; ++p) {
                std::string lab = "p" + std::to_string(p);
                Rational c = gardiner_coefficient(m, k, p);
                sum += c;
                r.computed.push_back(exact_value(lab, c));
                r.reference.push_back(exact_value(lab + ".trace", -2 * trace_E_pi(P, k - 1, p)));
                if (k == 2) {
                    r.computed.push_back(exact_value(lab, c));
                    r.reference.push_back(exact_value(lab + ".linear", Rational(m + 1 - 2 * p)));
                }
                if (k == m) {
                    r.computed.push_back(exact_value(lab, c));
                    r.reference.push_back(exact_value(lab + ".top", gardiner_top_degree(m, p)));
                }
            }
            r.computed.push_back(exact_value("sum_p", sum));
            r.reference.push_back(exact_value("zero", Rational(0)));
            r.computed.push_back(exact_value("p1", gardiner_coefficient(m, k, 1)));
            r.reference.push_back(exact_value("largest", largest_gardiner(m, k)));
            r.close();
            out.push_back(std::move(r));
        }
    }
    return out;
}

inline std::vector<VerificationReport> laurent_reports(IntRange n) {
    std::vector<VerificationReport> out;
    for (int m = std::max(2, n.lo); m <= n.hi; ++m) {
        Laurent lhs = laurent_trace_variation_lhs(m), rhs = laurent_trace_variation_rhs(m);
        VerificationReport r;
        r.claim_id = "trace_variation.laurent.n" + std::to_string(m);
        for (int e = -(m - 1); e <= m - 1; ++e) {
            std::string lab = "t^" + std::to_string(e);
            Rational a = lhs.count(e) ? lhs[e] : Rational(0), b = rhs.count(e) ? rhs[e] : Rational(0);
            r.computed.push_back(exact_value(lab, a));
            r.reference.push_back(exact_value(lab, b));
        }
        r.close();
        out.push_back(std::move(r));
    }
    return out;
}

inline std::shared_ptr<const CylinderForm> oscillatory_form(double ell, int k) {
    return std::make_shared<CylinderForm>(ell, k, std::vector<CylinderMode>{{0, Complex(0.4, -0.3)}, {1, 0.6}});
}

inline std::shared_ptr<const CylinderForm> constant_form(double ell, int k) {
    return CylinderForm::constant(ell, k, Complex(0.7, -0.4));
}

inline const std::vector<DeformationMode>& all_modes() {
    static const std::vector<DeformationMode> m = {DeformationMode::standard_hitchin, DeformationMode::normalized_hitchin,
                                                   DeformationMode::oper_standard, DeformationMode::oper_normalized};
    return m;
}

struct GardinerGrid {
    IntRange n{2, 5};
    std::optional<int> k, p;
    std::vector<double> ells{1.0, 2.0};
    std::vector<DeformationMode> modes = all_modes();
    double tolerance = 1e-6;
};

inline std::vector<VerificationReport> gardiner_grid_reports(const GardinerGrid& g) {
    std::vector<VerificationReport> out;
    for (int n = std::max(2, g.n.lo); n <= g.n.hi; ++n)
        for (int k = 2; k <= n; ++k) {
            if (g.k && *g.k != k) continue;
            for (auto mode : g.modes)
                for (double ell : g.ells)
                    for (int variant = 0; variant < 2; ++variant) {
                        auto q = variant == 0 ? constant_form(ell, k) : oscillatory_form(ell, k);
                        for (auto& r : gardiner_reports(n, k, ell, q, mode, g.tolerance)) {
                            if (g.p && r.claim_id.find(".p" + std::to_string(*g.p) + ".") == std::string::npos)
                                continue;
                            r.claim_id += variant == 0 ? ".q-constant" : ".q-oscillatory";
                            out.push_back(std::move(r));
                        }
                    }
        }
    return out;
}

inline std::vector<VerificationReport> trace_variation_reports(IntRange n, const std::vector<double>& ells,
                                                               double tolerance = 1e-6) {
    std::vector<VerificationReport> out;
    for (int m = std::max(2, n.lo); m <= n.hi; ++m)
        for (double ell : ells) out.push_back(trace_variation_check(m, ell, oscillatory_form(ell, m), tolerance));
    return out;
}

struct KatokGrid {
    IntRange k{2, 5};
    std::vector<double> ells{0.5, 1.0, 2.0, 5.0};
    double tolerance = 1e-8;
    double oscillatory_tolerance = 1e-6;
};

inline std::vector<VerificationReport> katok_reports(const KatokGrid& g) {
    std::vector<VerificationReport> out;
    for (int k = std::max(2, g.k.lo); k <= g.k.hi; ++k)
        for (double ell : g.ells) {
            auto r = katok_check(CylinderForm::constant(ell, k), g.tolerance);
            r.claim_id += ".q-constant";
            out.push_back(std::move(r));
            auto q = std::make_shared<CylinderForm>(ell, k, std::vector<CylinderMode>{{0, Complex(0.5, 0.25)}, {1, 1.0}});
            auto s = katok_check(q, g.oscillatory_tolerance);
            s.claim_id += ".q-oscillatory";
            out.push_back(std::move(s));
        }
    VerificationReport r2;
    r2.claim_id = "katok.r2";
    r2.computed.push_back(pi_value("r_2", hejhal_constant(2)));
    r2.reference.push_back(pi_value("1/(2 pi)", PiRational{Rational(1, 2), -1}));
    r2.close();
    out.push_back(std::move(r2));
    return out;
}

inline std::vector<VerificationReport> pressure_reports(IntRange n, int chi, std::optional<int> k_only = {}) {
    std::vector<VerificationReport> out;
    for (int m = std::max(2, n.lo); m <= n.hi; ++m)
        for (int k = 2; k <= m; ++k) {
            if (k_only && *k_only != k) continue;
            VerificationReport r;
            r.claim_id = "pressure" + nk_suffix(m, k) + ".chi" + std::to_string(chi);
            PiRational standard = pressure_coefficient_standard(m, k, chi);
            r.computed.push_back(pi_value("standard", standard));
            r.reference.push_back(pi_value("largest^2 * variance", pressure_pipeline(m, k, chi)));
            r.computed.push_back(pi_value("normalized", pressure_coefficient_normalized(m, k, chi)));
            r.reference.push_back(pi_value("eta^2 * standard", standard * eta_squared(m, k - 1)));
            r.close();
            out.push_back(std::move(r));
        }
    return out;
}

inline std::vector<int> default_large_n_list() { return {125, 250, 500, 1000}; }

inline std::vector<VerificationReport> asymptotics_reports(IntRange k, int chi,
                                                           const std::vector<int>& n_list = default_large_n_list()) {
    std::vector<VerificationReport> out;
    for (int kk = std::max(2, k.lo); kk <= k.hi; ++kk)
        for (auto& r : large_n_checks(kk, n_list, chi)) out.push_back(std::move(r));
    return out;
}

struct ReciprocityGrid {
    int k = 2, p = 1, n = 3;
    std::vector<int> truncations{4, 6, 8};
    double tolerance = 1e-3;
};

// one report per truncation level, plus the monotone decrease of the defect
inline std::vector<VerificationReport> reciprocity_reports(const SchottkyGroup& G, const ReciprocityGrid& g) {
    if (G.rank() < 2) throw invalid_argument("reciprocity needs at least two generators");
    std::vector<VerificationReport> out;
    std::vector<double> defects;
    for (int L : g.truncations) {
        out.push_back(reciprocity_check(G, {1}, {2}, g.k, g.p, g.n, L, g.tolerance));
        defects.push_back(out.back().defect);
    }
    if (defects.size() >= 2) {
        VerificationReport d;
        d.claim_id = "reciprocity.n" + std::to_string(g.n) + ".k" + std::to_string(g.k) + ".p" + std::to_string(g.p) +
                     ".decreasing";
        double worst = 0.0;
        for (std::size_t i = 0; i + 1 < defects.size(); ++i) {
            double q = defects[i] > 0 ? defects[i + 1] / defects[i] : (defects[i + 1] > 0 ? INFINITY : 0.0);
            worst = std::max(worst, q);
        }
        for (std::size_t i = 0; i < defects.size(); ++i) d.diag("defect_L" + std::to_string(g.truncations[i]), defects[i]);
        d.computed.push_back({"worst_successive_ratio", worst, ""});
        d.reference.push_back({"bound", 1.0, ""});
        d.defect = worst;
        d.tolerance = 1.0;
        d.passed = worst < 1.0;
        out.push_back(std::move(d));
    }
    return out;
}

}  // namespace hvk
