#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hvk/hvk.hpp"

using namespace hvk;

namespace {

using Reports = std::vector<VerificationReport>;

struct Criterion {
    int id;
    std::string name;
    double time_limit;  // seconds
    std::function<Reports()> run;
    std::function<std::string(const Reports&)> extra = nullptr;  // empty string when satisfied
};

void append(Reports& a, Reports b) {
    for (auto& r : b) a.push_back(std::move(r));
}

// a report only counts if it was judged against a tolerance no looser than the pinned one
std::string pin(const Reports& rs, const std::string& prefix, double tol) {
    for (const auto& r : rs)
        if (r.claim_id.rfind(prefix, 0) == 0 && r.tolerance > tol * (1 + 1e-12))
            return r.claim_id + " tolerance " + format_short(r.tolerance) + " > " + format_short(tol);
    return "";
}

std::string first_nonempty(std::initializer_list<std::string> xs) {
    for (const auto& s : xs)
        if (!s.empty()) return s;
    return "";
}

std::string exact_zero(const Reports& rs) {
    for (const auto& r : rs)
        if (r.defect != 0.0 || r.tolerance != 0.0) return r.claim_id + " not exact";
    return "";
}

Reports crossratio_acceptance() {
    Reports out;
    for (int n = 2; n <= 4; ++n)
        for (int k = 2; k <= n; ++k) {
            out.push_back(cross_ratio_rhombus_check(n, k, 16.0, 4, 1e-4));
            out.push_back(hitchin_oper_check(n, k, 28.0, 4, 1e-8));
        }
    RhombusAutomorphicOptions o;
    o.tolerance = 5e-2;
    for (int k : {2, 3}) out.push_back(schottky_rhombus_automorphic_check(k, 4, o));
    return out;
}

std::string region_growth_documented(const Reports& rs) {
    for (const auto& r : rs) {
        if (r.claim_id.find(".rhombus.") == std::string::npos) continue;
        auto it = r.diagnostics.find("region_growth_relative");
        if (it == r.diagnostics.end()) return r.claim_id + " lacks region growth";
        if (!(std::stod(it->second) <= 5e-2)) return r.claim_id + " region growth " + it->second;
    }
    return "";
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "exact trace law, 2 <= n <= 12", 10.0, [] { return trace_law_reports({2, 12}); }, exact_zero},
        {2, "projection-trace law, 2 <= n <= 12", 30.0,
         [] {
             Reports rs = projection_trace_reports({2, 12});
             VerificationReport v;
             v.claim_id = "traces.E_pi.vanishing.n7.k2.p6";
             v.computed.push_back(exact_value("Lagrange", trace_E_pi(7, 2, 6)));
             v.computed.push_back(exact_value("closed", trace_E_pi_closed(7, 2, 6)));
             v.reference.push_back(exact_value("zero", Rational(0)));
             v.reference.push_back(exact_value("zero", Rational(0)));
             v.close();
             rs.push_back(v);
             return rs;
         },
         exact_zero},
        {3, "Gardiner coefficient bridge", 10.0, [] { return bridge_reports({2, 12}); }, exact_zero},
        {4, "ODE first variation of log-eigenvalues, n <= 5", 300.0,
         [] {
             GardinerGrid g;
             g.n = {2, 5};
             g.ells = {1.0, 2.0};
             g.tolerance = 1e-6;
             return gardiner_grid_reports(g);
         },
         [](const Reports& rs) { return pin(rs, "gardiner.", 1e-6); }},
        {5, "trace variation, Laurent n <= 12 and ODE n <= 4", 300.0,
         [] {
             Reports rs = laurent_reports({2, 12});
             append(rs, trace_variation_reports({2, 4}, {1.0, 2.0}, 1e-6));
             return rs;
         },
         [](const Reports& rs) {
             return first_nonempty({pin(rs, "trace_variation.n", 1e-6), pin(rs, "trace_variation.laurent", 0.0)});
         }},
        {6, "period = r_k * unfolded pairing on cylinders", 120.0,
         [] {
             KatokGrid g;
             g.k = {2, 5};
             g.ells = {0.5, 1.0, 2.0, 5.0};
             g.tolerance = 1e-8;
             return katok_reports(g);
         },
         [](const Reports& rs) {
             return first_nonempty({pin(rs, "katok.r2", 0.0), [&] {
                                        for (const auto& r : rs)
                                            if (r.claim_id.ends_with(".q-constant") && r.tolerance > 1e-8)
                                                return r.claim_id;
                                        return std::string();
                                    }()});
         }},
        {7, "incomplete beta, tech limits, series identities", 180.0, [] { return variance_reports(); },
         [](const Reports& rs) {
             return first_nonempty({pin(rs, "variance.incomplete_beta", 1e-11), pin(rs, "variance.tech", 0.05),
                                    pin(rs, "variance.series", 1e-8)});
         }},
        {8, "pressure pipeline and large-n ratios", 60.0,
         [] {
             Reports rs = pressure_reports({2, 12}, -2);
             append(rs, asymptotics_reports({2, 4}, -2, {125, 250, 500, 1000}));
             return rs;
         },
         [](const Reports& rs) {
             return first_nonempty({pin(rs, "pressure.", 0.0), [&] {
                                        for (const auto& r : rs)
                                            if (r.claim_id.ends_with(".limit") && r.tolerance > 0.02) return r.claim_id;
                                        return std::string();
                                    }()});
         }},
        {9, "cross-ratio direct route, Hitchin/oper, rhombus vs automorphic", 600.0, crossratio_acceptance,
         region_growth_documented},
        {10, "twist reciprocity on rank-2 Schottky pairs", 300.0,
         [] {
             ReciprocityGrid g;
             g.truncations = {4, 6, 8};
             g.tolerance = 1e-3;
             return reciprocity_reports(test_schottky_group(8), g);
         },
         [](const Reports& rs) {
             for (const auto& r : rs)
                 if (r.claim_id.ends_with(".L8")) return pin(rs, r.claim_id, 1e-3);
             return std::string("no L=8 report");
         }},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Reports rs;
        std::string why;
        try {
            rs = c.run();
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::size_t bad = 0;
        std::string first_bad;
        for (const auto& r : rs)
            if (!r.passed) {
                if (bad++ == 0) first_bad = r.claim_id + " defect " + format_short(r.defect);
            }
        if (why.empty() && rs.empty()) why = "no reports";
        if (why.empty() && bad) why = std::to_string(bad) + " failed, first " + first_bad;
        if (why.empty() && c.extra) why = c.extra(rs);
        if (why.empty() && secs > c.time_limit)
            why = "runtime " + format_short(secs) + " s over " + format_short(c.time_limit) + " s";
        bool ok = why.empty();
        if (!ok) ++failures;
        std::printf("%s %2d %s (%zu checks, %.2f s)%s%s\n", ok ? "PASS" : "FAIL", c.id, c.name.c_str(), rs.size(), secs,
                    ok ? "" : ": ", why.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
