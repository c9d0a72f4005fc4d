#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hvk/hvk.hpp"

using namespace hvk;
using nlohmann::ordered_json;

namespace {

struct Flags {
    std::optional<int> n, n_max, k, p, chi, truncation;
    std::vector<double> ell;
    std::optional<double> tolerance;
    std::string format = "json";
    std::string group;
    bool quick = false;
};

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ordered_json labeled_json(const std::vector<LabeledValue>& vs) {
    ordered_json a = ordered_json::array();
    for (const auto& v : vs) {
        ordered_json o;
        o["label"] = v.label;
        o["value"] = format17(v.value);
        if (!v.exact.empty()) o["exact"] = v.exact;
        a.push_back(o);
    }
    return a;
}

ordered_json report_json(const VerificationReport& r) {
    ordered_json o;
    o["claim_id"] = r.claim_id;
    o["computed"] = labeled_json(r.computed);
    o["reference"] = labeled_json(r.reference);
    o["tolerance"] = format17(r.tolerance);
    o["defect"] = format17(r.defect);
    o["passed"] = r.passed;
    ordered_json d = ordered_json::object();
    for (const auto& [key, v] : r.diagnostics) d[key] = v;
    o["diagnostics"] = d;
    return o;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void write_csv(std::ostream& os, const std::vector<VerificationReport>& rs) {
    os << "claim_id,side,label,value,exact,tolerance,defect,passed\n";
    for (const auto& r : rs) {
        auto rows = [&](const char* side, const std::vector<LabeledValue>& vs) {
            for (const auto& v : vs)
                os << csv_field(r.claim_id) << ',' << side << ',' << csv_field(v.label) << ',' << format17(v.value)
                   << ',' << csv_field(v.exact) << ',' << format17(r.tolerance) << ',' << format17(r.defect) << ','
                   << (r.passed ? "true" : "false") << '\n';
        };
        rows("computed", r.computed);
        rows("reference", r.reference);
    }
}

int emit_reports(std::vector<VerificationReport> rs, const Flags& f) {
    sort_reports(rs);
    if (f.format == "csv") write_csv(std::cout, rs);
    else {
        ordered_json a = ordered_json::array();
        for (const auto& r : rs) a.push_back(report_json(r));
        std::cout << a.dump(2) << '\n';
    }
    std::size_t failed = std::count_if(rs.begin(), rs.end(), [](const VerificationReport& r) { return !r.passed; });
    std::cerr << "hvk: " << rs.size() - failed << "/" << rs.size() << " checks passed\n";
    return failed == 0 ? 0 : 1;
}

IntRange n_range(const Flags& f, int lo, int default_hi) {
    if (f.n) return {*f.n, *f.n};
    return {lo, f.n_max.value_or(default_hi)};
}

int chi_of(const Flags& f) {
    int chi = f.chi.value_or(-2);
    check_chi(chi);
    return chi;
}

std::vector<double> ells_or(const Flags& f, std::vector<double> def) { return f.ell.empty() ? def : f.ell; }

double tol_or(const Flags& f, double def) { return f.tolerance.value_or(def); }

std::vector<VerificationReport> run_gardiner(const Flags& f) {
    GardinerGrid g;
    g.n = n_range(f, 2, 5);
    g.k = f.k;
    g.p = f.p;
    g.ells = ells_or(f, {1.0, 2.0});
    g.tolerance = tol_or(f, 1e-6);
    auto rs = gardiner_grid_reports(g);
    if (!f.p && !f.k) {
        for (auto& r : bridge_reports(f.n ? n_range(f, 2, 12) : IntRange{2, 12})) rs.push_back(std::move(r));
        for (auto& r : laurent_reports(f.n ? n_range(f, 2, 12) : IntRange{2, 12})) rs.push_back(std::move(r));
        IntRange tv = f.n ? n_range(f, 2, 4) : IntRange{2, std::min(4, g.n.hi)};
        for (auto& r : trace_variation_reports(tv, g.ells, g.tolerance)) rs.push_back(std::move(r));
    }
    return rs;
}

std::vector<VerificationReport> run_katok(const Flags& f) {
    KatokGrid g;
    if (f.k) g.k = {*f.k, *f.k};
    g.ells = ells_or(f, g.ells);
    g.tolerance = tol_or(f, g.tolerance);
    return katok_reports(g);
}

std::vector<VerificationReport> run_pressure(const Flags& f) {
    return pressure_reports(n_range(f, 2, 12), chi_of(f), f.k);
}

std::vector<VerificationReport> run_asymptotics(const Flags& f) {
    IntRange k = f.k ? IntRange{*f.k, *f.k} : IntRange{2, 4};
    std::vector<int> ns = default_large_n_list();
    if (f.n_max) {
        ns.clear();
        for (int n = *f.n_max; n > k.hi && ns.size() < 4; n /= 2) ns.insert(ns.begin(), n);
    }
    return asymptotics_reports(k, chi_of(f), ns);
}

std::vector<VerificationReport> run_crossratio(const Flags& f) {
    if (!f.n && !f.k && !f.truncation && !f.tolerance) return crossratio_reports(f.quick);
    std::vector<VerificationReport> out;
    IntRange n = f.n ? IntRange{*f.n, *f.n} : IntRange{2, f.n_max.value_or(4)};
    for (int m = n.lo; m <= n.hi; ++m)
        for (int k = 2; k <= m; ++k) {
            if (f.k && *f.k != k) continue;
            double T = f.truncation ? double(*f.truncation) : 16.0;
            out.push_back(cross_ratio_rhombus_check(m, k, T, 4, tol_or(f, 1e-4)));
            out.push_back(hitchin_oper_check(m, k, f.truncation ? T : 28.0, 4, tol_or(f, 1e-8)));
        }
    if (!f.k || *f.k == 2 || *f.k == 3) {
        RhombusAutomorphicOptions o;
        out.push_back(schottky_rhombus_automorphic_check(f.k.value_or(2), 4, o));
    }
    return out;
}

std::vector<VerificationReport> run_reciprocity(const Flags& f) {
    ReciprocityGrid g;
    g.k = f.k.value_or(2);
    g.n = f.n.value_or(std::max(3, g.k));
    g.p = f.p.value_or(1);
    check_gardiner_range(g.n, g.k, g.p);
    g.tolerance = tol_or(f, 1e-3);
    if (f.truncation) {
        int L = *f.truncation;
        if (L < 1) throw invalid_argument("--truncation must be positive");
        g.truncations = L > 2 ? std::vector<int>{L - 4 > 0 ? L - 4 : 1, L - 2, L} : std::vector<int>{L};
    }
    int max_len = *std::max_element(g.truncations.begin(), g.truncations.end());
    SchottkyGroup G = f.group.empty() ? test_schottky_group(std::max(8, max_len))
                                      : SchottkyGroup::from_file(f.group, std::max(8, max_len));
    return reciprocity_reports(G, g);
}

std::vector<VerificationReport> run_all(const Flags& f) {
    std::vector<VerificationReport> rs;
    auto add = [&rs](std::vector<VerificationReport> more) {
        for (auto& r : more) rs.push_back(std::move(r));
    };
    add(trace_law_reports({2, 12}));
    add(projection_trace_reports({2, 12}));
    add(bridge_reports({2, 12}));
    add(laurent_reports({2, 12}));
    add(gardiner_grid_reports(GardinerGrid{}));
    add(trace_variation_reports({2, 4}, {1.0, 2.0}));
    add(katok_reports(KatokGrid{}));
    add(variance_reports());
    add(pressure_reports({2, 12}, -2));
    add(asymptotics_reports({2, 4}, -2));
    add(crossratio_reports(f.quick));
    SchottkyGroup G = f.group.empty() ? test_schottky_group() : SchottkyGroup::from_file(f.group);
    add(reciprocity_reports(G, ReciprocityGrid{}));
    return rs;
}

void emit_coefficients(const Flags& f) {
    int n = f.n.value_or(f.n_max.value_or(0));
    if (n == 0) throw usage_error("coeffs needs --n");
    CoefficientTable t = coefficient_table(n);
    if (f.format == "csv") {
        std::cout << "quantity,n,k,p,exact,value\n";
        for (const auto& [kp, c] : t.entries)
            std::cout << "gardiner," << n << ',' << kp.first << ',' << kp.second << ',' << c.get_str() << ','
                      << format17(c.get_d()) << '\n';
        for (const auto& [k, c] : t.largest)
            std::cout << "largest_gardiner," << n << ',' << k << ",," << c.get_str() << ',' << format17(c.get_d()) << '\n';
        for (int k = 2; k <= n; ++k) {
            Rational a = cross_ratio_constant(n, k);
            std::cout << "cross_ratio_constant," << n << ',' << k << ",," << a.get_str() << ',' << format17(a.get_d())
                      << '\n';
        }
        for (int k = 2; k <= n; ++k) {
            PiRational r = hejhal_constant(k);
            std::cout << "hejhal_constant,," << k << ",," << pi_text(r) << ',' << format17(r.value()) << '\n';
        }
        for (const auto& [k, e] : t.eta_sq)
            std::cout << "eta_squared," << n << ',' << k << ",," << e.get_str() << ',' << format17(e.get_d()) << '\n';
        std::cout << "dynkin_index," << n << ",,," << t.dynkin.get_str() << ',' << format17(t.dynkin.get_d()) << '\n';
        return;
    }
    auto num = [](const Rational& r) {
        ordered_json o;
        o["exact"] = r.get_str();
        o["value"] = format17(r.get_d());
        return o;
    };
    ordered_json o;
    o["n"] = n;
    ordered_json g = ordered_json::array();
    for (const auto& [kp, c] : t.entries) {
        ordered_json e = num(c);
        e["k"] = kp.first;
        e["p"] = kp.second;
        g.push_back(e);
    }
    o["gardiner"] = g;
    ordered_json lg = ordered_json::array(), cr = ordered_json::array(), hj = ordered_json::array(),
                 eta = ordered_json::array();
    for (const auto& [k, c] : t.largest) {
        ordered_json e = num(c);
        e["k"] = k;
        lg.push_back(e);
        ordered_json a = num(cross_ratio_constant(n, k));
        a["k"] = k;
        cr.push_back(a);
        PiRational r = hejhal_constant(k);
        ordered_json h;
        h["k"] = k;
        h["exact"] = pi_text(r);
        h["value"] = format17(r.value());
        hj.push_back(h);
    }
    for (const auto& [k, e] : t.eta_sq) {
        ordered_json x = num(e);
        x["k"] = k;
        eta.push_back(x);
    }
    o["largest_gardiner"] = lg;
    o["cross_ratio_constant"] = cr;
    o["hejhal_constant"] = hj;
    o["eta_squared"] = eta;
    o["dynkin_index"] = num(t.dynkin);
    std::cout << o.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hvk: exact and numerical checks for Hitchin variation formulas"};
    app.require_subcommand(1);
    Flags f;

    auto add_flags = [&f](CLI::App* c) {
        c->add_option("--n", f.n, "dimension n")->check(CLI::Range(2, 100000));
        c->add_option("--n-max", f.n_max, "largest dimension in a grid")->check(CLI::Range(2, 100000));
        c->add_option("--k", f.k, "degree k")->check(CLI::Range(1, 1000));
        c->add_option("--p", f.p, "eigenvalue index p")->check(CLI::Range(1, 100000));
        c->add_option("--ell", f.ell, "cylinder lengths")->check(CLI::PositiveNumber);
        c->add_option("--chi", f.chi, "Euler characteristic (negative)");
        c->add_option("--truncation", f.truncation, "word length L (reciprocity) or cutoff T (crossratio)");
        c->add_option("--tolerance", f.tolerance, "override the default tolerance")->check(CLI::PositiveNumber);
        c->add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        c->add_option("--group", f.group, "Schottky group description file")->check(CLI::ExistingFile);
    };

    auto* coeffs = app.add_subcommand("coeffs", "coefficient table for one n");
    add_flags(coeffs);
    auto* traces = app.add_subcommand("traces", "exact trace laws on a grid of n");
    add_flags(traces);
    auto* verify = app.add_subcommand("verify", "run a verification family");
    verify->require_subcommand(1);
    const std::vector<std::string> families = {"gardiner",    "katok",       "variance", "pressure",
                                               "crossratio",  "reciprocity", "asymptotics", "all"};
    std::map<std::string, CLI::App*> fam;
    for (const auto& name : families) {
        auto* s = verify->add_subcommand(name);
        add_flags(s);
        s->add_flag("--quick", f.quick, "desk-scale grid");
        fam[name] = s;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    auto t0 = std::chrono::steady_clock::now();
    int code = 0;
    try {
        if (f.n && f.n_max) throw usage_error("--n and --n-max are exclusive");
        if (*coeffs) {
            emit_coefficients(f);
        } else if (*traces) {
            IntRange n = n_range(f, 2, 12);
            if (f.k) check_k(n.hi, *f.k);
            auto rs = trace_law_reports(n, f.k);
            for (auto& r : projection_trace_reports(n, f.k)) rs.push_back(std::move(r));
            code = emit_reports(std::move(rs), f);
        } else {
            std::vector<VerificationReport> rs;
            if (*fam["gardiner"]) rs = run_gardiner(f);
            else if (*fam["katok"]) rs = run_katok(f);
            else if (*fam["variance"]) rs = variance_reports();
            else if (*fam["pressure"]) rs = run_pressure(f);
            else if (*fam["crossratio"]) rs = run_crossratio(f);
            else if (*fam["reciprocity"]) rs = run_reciprocity(f);
            else if (*fam["asymptotics"]) rs = run_asymptotics(f);
            else rs = run_all(f);
            code = emit_reports(std::move(rs), f);
        }
    } catch (const usage_error& e) {
        std::cerr << "hvk: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "hvk: configuration error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "hvk: " << e.what() << '\n';
        return 1;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "hvk: finished in " << format_short(secs) << " s\n";
    return code;
}
