#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <regex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hvk/coefficients.hpp"
#include "hvk/errors.hpp"
#include "hvk/hyperbolic.hpp"
#include "hvk/report.hpp"

namespace hvk {

/* ---- cyclic groups and cylinder forms ---- */

struct CyclicGroup {
    double ell = 1.0;

    explicit CyclicGroup(double ell_) : ell(ell_) {
        if (!(ell_ > 0) || !std::isfinite(ell_)) throw invalid_argument("CyclicGroup: ell must be positive");
    }
    MobiusMap generator() const { return MobiusMap::dilation(ell); }
    // one period of the axis from i to i e^ell
    GeodesicArc axis() const { return {BoundaryPoint::at(0), BoundaryPoint::infinity(), 0.0, ell}; }
};

struct CylinderMode {
    int m = 0;
    Complex c = 1.0;
};

/*
 * q = (sum_m c_m z^{2 pi i m / ell}) theta_{0,inf}^k, automorphic under z -> e^ell z.
 */
class CylinderForm : public Differential {
public:
    CylinderForm(double ell, int k, std::vector<CylinderMode> modes) : ell_(ell), k_(k), modes_(std::move(modes)) {
        if (!(ell > 0)) throw invalid_argument("CylinderForm: ell must be positive");
        if (k < 1) throw invalid_argument("CylinderForm: degree must be positive");
    }
    static std::shared_ptr<CylinderForm> constant(double ell, int k, Complex c = 1.0) {
        return std::make_shared<CylinderForm>(ell, k, std::vector<CylinderMode>{{0, c}});
    }

    int degree() const override { return k_; }
    double ell() const { return ell_; }
    const std::vector<CylinderMode>& modes() const { return modes_; }
    double alpha(int m) const { return 2.0 * std::numbers::pi * m / ell_; }

    Complex coefficient(Complex z) const override {
        Complex lz = std::log(z);
        Complex s = 0.0;
        for (const auto& md : modes_) s += md.c * std::exp(Complex(0, alpha(md.m)) * lz);
        return s * ipow(-1.0 / z, k_);
    }

    // q-hat along the axis at arc length s from i
    Complex on_axis(double s) const {
        Complex v = 0.0;
        for (const auto& md : modes_) {
            double a = alpha(md.m);
            v += md.c * std::exp(-a * std::numbers::pi / 2) * std::polar(1.0, a * s);
        }
        return double(sign_power(k_)) * v;
    }

    // period over one turn of the axis; only the constant mode survives
    Complex axis_period() const {
        Complex c0 = 0.0;
        for (const auto& md : modes_)
            if (md.m == 0) c0 += md.c;
        return double(sign_power(k_)) * ell_ * c0;
    }

private:
    double ell_;
    int k_;
    std::vector<CylinderMode> modes_;
};

/* ---- Schottky groups ---- */

// letters are +-(i+1) for generator i; negative means inverse
using Word = std::vector<int>;

struct IsometricCircle {
    Complex center;
    double radius = 0.0;
};

// Cayley conjugate [[alpha, beta], [conj beta, conj alpha]] of g acting on the disk
inline std::pair<Complex, Complex> disk_coefficients(const MobiusMap& g) {
    Eigen::Matrix2cd C, Ci, G;
    const Complex I(0, 1);
    C << 1.0, -I, 1.0, I;
    Ci = C.inverse();
    G << g.a, g.b, g.c, g.d;
    Eigen::Matrix2cd D = C * G * Ci;
    return {D(0, 0), D(0, 1)};
}

inline IsometricCircle isometric_circle(const MobiusMap& g) {
    auto [alpha, beta] = disk_coefficients(g);
    if (std::abs(beta) < 1e-14) throw invalid_argument("isometric circle of a rotation about i");
    return {-std::conj(alpha) / std::conj(beta), 1.0 / std::abs(beta)};
}

class SchottkyGroup {
public:
    SchottkyGroup(std::vector<std::string> names, std::vector<MobiusMap> gens, int max_word_length = 8)
        : names_(std::move(names)), gens_(std::move(gens)), max_word_length_(max_word_length) {
        if (gens_.empty()) throw invalid_argument("Schottky group needs at least one generator");
        if (names_.size() != gens_.size()) throw invalid_argument("Schottky group: one name per generator");
        for (std::size_t i = 0; i < names_.size(); ++i)
            for (std::size_t j = i + 1; j < names_.size(); ++j)
                if (names_[i] == names_[j]) throw invalid_argument("Schottky group: duplicate generator name");
        for (const auto& g : gens_) {
            if (std::abs(g.det() - 1.0) > 1e-9) throw invalid_argument("Schottky generator must have det 1");
            if (!g.is_hyperbolic()) throw invalid_argument("Schottky generator must be hyperbolic");
        }
        margin_ = ping_pong_margin();
        if (!(margin_ > 0)) throw invalid_argument("ping-pong condition fails for the isometric circles");
    }

    int rank() const { return static_cast<int>(gens_.size()); }
    int max_word_length() const { return max_word_length_; }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<MobiusMap>& generators() const { return gens_; }
    double margin() const { return margin_; }

    MobiusMap letter(int l) const {
        if (l == 0 || std::abs(l) > rank()) throw invalid_argument("letter out of range");
        const MobiusMap& g = gens_[static_cast<std::size_t>(std::abs(l) - 1)];
        return l > 0 ? g : g.inverse();
    }
    MobiusMap element(const Word& w) const {
        MobiusMap g;
        for (int l : w) g = g * letter(l);
        return g;
    }
    std::vector<int> letters() const {
        std::vector<int> out;
        for (int i = 1; i <= rank(); ++i) {
            out.push_back(i);
            out.push_back(-i);
        }
        return out;
    }
    int letter_of(const std::string& name) const {
        for (int i = 0; i < rank(); ++i)
            if (names_[static_cast<std::size_t>(i)] == name) return i + 1;
        throw invalid_argument("unknown generator " + name);
    }
    std::string word_name(const Word& w) const {
        if (w.empty()) return "e";
        std::string s;
        for (int l : w) {
            if (!s.empty()) s += ' ';
            s += names_[static_cast<std::size_t>(std::abs(l) - 1)];
            if (l < 0) s += "^-1";
        }
        return s;
    }

    // reduced words of length <= L in breadth-first order
    std::vector<Word> reduced_words(int L) const {
        if (L < 0) throw invalid_argument("word length must be non-negative");
        std::vector<Word> out{{}};
        std::size_t shell_begin = 0;
        for (int len = 1; len <= L; ++len) {
            std::size_t shell_end = out.size();
            for (std::size_t i = shell_begin; i < shell_end; ++i)
                for (int l : letters()) {
                    if (!out[i].empty() && out[i].back() == -l) continue;
                    Word w = out[i];
                    w.push_back(l);
                    out.push_back(std::move(w));
                }
            shell_begin = shell_end;
        }
        return out;
    }

    // h^{-1} g h for every generator
    SchottkyGroup conjugated(const MobiusMap& h) const {
        std::vector<MobiusMap> g;
        for (const auto& x : gens_) g.push_back(h.inverse() * x * h);
        return SchottkyGroup(names_, g, max_word_length_);
    }

    std::string to_text() const {
        std::ostringstream os;
        os.precision(17);
        for (int i = 0; i < rank(); ++i) {
            const MobiusMap& g = gens_[static_cast<std::size_t>(i)];
            os << "gen " << names_[static_cast<std::size_t>(i)] << " = [[" << g.a << ", " << g.b << "], [" << g.c
               << ", " << g.d << "]]\n";
        }
        return os.str();
    }

    static SchottkyGroup parse(std::istream& in, int max_word_length = 8) {
        static const std::string num = R"(([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?))";
        static const std::regex line_re(R"(^\s*gen\s+([A-Za-z_]\w*)\s*=\s*\[\s*\[\s*)" + num + R"(\s*,\s*)" + num +
                                        R"(\s*\]\s*,\s*\[\s*)" + num + R"(\s*,\s*)" + num + R"(\s*\]\s*\]\s*$)");
        std::vector<std::string> names;
        std::vector<MobiusMap> gens;
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            std::smatch m;
            if (!std::regex_match(line, m, line_re))
                throw invalid_argument("group file line " + std::to_string(lineno) + ": expected gen <name> = [[a,b],[c,d]]");
            MobiusMap g{std::stod(m[2]), std::stod(m[3]), std::stod(m[4]), std::stod(m[5])};
            if (std::abs(g.det() - 1.0) > 1e-9)
                throw invalid_argument("group file line " + std::to_string(lineno) + ": determinant is not 1");
            names.push_back(m[1]);
            gens.push_back(g);
        }
        return SchottkyGroup(std::move(names), std::move(gens), max_word_length);
    }

    static SchottkyGroup from_file(const std::string& path, int max_word_length = 8) {
        std::ifstream f(path);
        if (!f) throw invalid_argument("cannot open group file " + path);
        return parse(f, max_word_length);
    }

    // smallest gap between the 2r isometric disks
    double ping_pong_margin() const {
        std::vector<IsometricCircle> circles;
        for (int l : letters()) circles.push_back(isometric_circle(letter(l)));
        double m = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < circles.size(); ++i)
            for (std::size_t j = i + 1; j < circles.size(); ++j)
                m = std::min(m, std::abs(circles[i].center - circles[j].center) - circles[i].radius - circles[j].radius);
        return m;
    }

private:
    std::vector<std::string> names_;
    std::vector<MobiusMap> gens_;
    int max_word_length_;
    double margin_ = 0.0;
};

// rank 2 test group, translation lengths 2.5 and 3 on well separated axes
inline SchottkyGroup test_schottky_group(int max_word_length = 8) {
    const double deg = std::numbers::pi / 180.0;
    MobiusMap r50 = MobiusMap::rotation(50 * deg), r20 = MobiusMap::rotation(20 * deg);
    MobiusMap a = MobiusMap::dilation(2.5);
    MobiusMap b = r50 * MobiusMap::dilation(3.0) * r50.inverse();
    return SchottkyGroup({"a", "b"}, {r20 * a * r20.inverse(), r20 * b * r20.inverse()}, max_word_length);
}

struct CosetRep {
    Word word;
    MobiusMap g;
};

// representatives of Gamma/<gamma>: reduced words of length <= L not ending in gamma^{+-1}
inline std::vector<CosetRep> coset_representatives(const SchottkyGroup& G, const Word& gamma, int L) {
    if (gamma.size() != 1 || gamma[0] == 0 || std::abs(gamma[0]) > G.rank())
        throw invalid_argument("coset_representatives: gamma must be a single generator letter");
    const int g = std::abs(gamma[0]);
    std::vector<CosetRep> out;
    for (auto& w : G.reduced_words(L)) {
        if (!w.empty() && std::abs(w.back()) == g) continue;
        MobiusMap m = G.element(w);
        out.push_back({std::move(w), m});
    }
    return out;
}

struct TruncatedPoincareSeries {
    Word gamma;
    int k = 2;
    int L = 0;
    BoundaryPoint u, U;  // repelling, attracting fixed points of gamma
    double length = 0.0;
    std::vector<CosetRep> reps;
    std::shared_ptr<const ThetaSum> form;
    std::vector<double> shell_mass;  // sum over |word| = j of |theta^k| at the base point
    double contraction = 0.0;
    double tail_bound = 0.0;

    Complex operator()(Complex z, Complex v) const { return form->evaluate(z, v); }
    GeodesicArc closed_geodesic(double s0 = 0.0) const { return {u, U, s0, s0 + length}; }
};

inline TruncatedPoincareSeries build_series(const CyclicGroup& G, int k) {
    if (k < 2) throw invalid_argument("build_series: k must be at least 2");
    TruncatedPoincareSeries S;
    S.gamma = {1};
    S.k = k;
    S.u = BoundaryPoint::at(0);
    S.U = BoundaryPoint::infinity();
    S.length = G.ell;
    S.reps = {{{}, MobiusMap{}}};
    S.form = std::make_shared<ThetaSum>(k, std::vector<ThetaTerm>{{S.u, S.U, 1.0}});
    S.shell_mass = {std::pow(std::sqrt(2.0), k)};
    return S;
}

inline TruncatedPoincareSeries build_series(const SchottkyGroup& G, const Word& gamma, int k, int L,
                                            double tolerance = std::numeric_limits<double>::infinity(),
                                            Complex base = Complex(0, 1)) {
    if (k < 2) throw invalid_argument("build_series: k must be at least 2");
    TruncatedPoincareSeries S;
    S.gamma = gamma;
    S.k = k;
    S.L = L;
    S.reps = coset_representatives(G, gamma, L);
    MobiusMap g = G.element(gamma);
    std::tie(S.u, S.U) = g.fixed_points();
    S.length = g.translation_length();

    std::vector<ThetaTerm> terms;
    terms.reserve(S.reps.size());
    S.shell_mass.assign(static_cast<std::size_t>(L) + 1, 0.0);
    for (const auto& r : S.reps) {
        ThetaTerm t{r.g.apply(S.u), r.g.apply(S.U), 1.0};
        S.shell_mass[r.word.size()] += norm_theta(ThetaForm{t.u, t.U, k}, base);
        terms.push_back(t);
    }
    S.form = std::make_shared<ThetaSum>(k, std::move(terms));

    if (L >= 2) {
        double r1 = S.shell_mass[L] / S.shell_mass[L - 1], r2 = S.shell_mass[L - 1] / S.shell_mass[L - 2];
        S.contraction = std::max(r1, r2);
        S.tail_bound = S.contraction < 1 ? S.shell_mass[L] * S.contraction / (1 - S.contraction)
                                         : std::numeric_limits<double>::infinity();
    } else {
        S.contraction = std::numeric_limits<double>::quiet_NaN();
        S.tail_bound = std::numeric_limits<double>::infinity();
    }
    if (S.tail_bound > tolerance) throw truncation_insufficient("Poincare series tail above tolerance", S.tail_bound);
    return S;
}

/* ---- periods and pairings ---- */

inline QuadResult<Complex> period(const GeodesicArc& arc, const DifferentialPtr& q,
                                  const QuadOptions& opt = line_options()) {
    return integrate_differential_along(arc, q, opt);
}

// <q, theta_{u,U}^k> over the cylinder H/<gamma>, with gamma translating by ell along (u, U)
inline QuadResult<Complex> unfolded_pairing(const DifferentialPtr& q, const BoundaryPoint& u, const BoundaryPoint& U,
                                            double ell, const QuadOptions& opt = area_options()) {
    const int k = q->degree();
    if (k < 2) throw invalid_argument("unfolded_pairing: k must be at least 2");
    DifferentialPtr local = q->pullback(geodesic_frame(u, U));
    return integrate_annulus(
        [&](Complex z) { return pointwise_pairing(local->coefficient(z), ipow(-1.0 / z, k), z, k); }, 1.0,
        std::exp(ell), opt);
}

inline QuadResult<Complex> unfolded_pairing(const DifferentialPtr& q, const CyclicGroup& G,
                                            const QuadOptions& opt = area_options()) {
    return unfolded_pairing(q, BoundaryPoint::at(0), BoundaryPoint::infinity(), G.ell, opt);
}

inline void add_complex(VerificationReport& r, const std::string& label, Complex c, Complex ref) {
    r.computed.push_back({label + ".re", c.real(), ""});
    r.computed.push_back({label + ".im", c.imag(), ""});
    r.reference.push_back({label + ".re", ref.real(), ""});
    r.reference.push_back({label + ".im", ref.imag(), ""});
}

// period = r_k <q, Theta> on the cylinder of length ell
inline VerificationReport katok_check(const std::shared_ptr<const CylinderForm>& q, double tolerance = 1e-8) {
    const int k = q->degree();
    CyclicGroup G(q->ell());
    VerificationReport rep;
    rep.claim_id = "katok.k" + std::to_string(k) + ".ell" + format_short(q->ell());
    rep.tolerance = tolerance;
    auto per = period(G.axis(), q);
    auto pair = unfolded_pairing(q, G);
    double rk = hejhal_constant(k).value();
    Complex rhs = rk * pair.value;
    add_complex(rep, "period", per.value, rhs);
    rep.close(std::abs(rhs));
    rep.diag("r_k", rk);
    rep.diag("pairing.re", pair.value.real());
    rep.diag("pairing.im", pair.value.imag());
    rep.diag("pairing.error", pair.error);
    rep.diag("period.error", per.error);
    return rep;
}

struct ReciprocitySides {
    double lhs = 0.0;  // c * int_alpha Re(i Theta_beta)
    double rhs = 0.0;  // -c * int_beta Re(i Theta_alpha)
    double defect = 0.0;
    double tail_alpha = 0.0, tail_beta = 0.0;
};

inline ReciprocitySides reciprocity_sides(const SchottkyGroup& G, const Word& alpha, const Word& beta, int k, int p,
                                          int n, int L) {
    if (alpha == beta) throw invalid_argument("reciprocity: alpha and beta must differ");
    double c = gardiner_coefficient(n, k, p).get_d();
    auto Sa = build_series(G, alpha, k, L), Sb = build_series(G, beta, k, L);
    Complex pa = period(Sa.closed_geodesic(), Sb.form).value;  // Theta_beta over alpha
    Complex pb = period(Sb.closed_geodesic(), Sa.form).value;
    ReciprocitySides out;
    out.lhs = c * (Complex(0, 1) * pa).real();
    out.rhs = -c * (Complex(0, 1) * pb).real();
    double scale = std::max(std::abs(out.lhs), std::abs(out.rhs));
    out.defect = scale > 0 ? std::abs(out.lhs - out.rhs) / scale : 0.0;
    out.tail_alpha = Sa.tail_bound;
    out.tail_beta = Sb.tail_bound;
    return out;
}

inline VerificationReport reciprocity_check(const SchottkyGroup& G, const Word& alpha, const Word& beta, int k,
                                            int p, int n, int L, double tolerance = 1e-3) {
    ReciprocitySides s = reciprocity_sides(G, alpha, beta, k, p, n, L);
    VerificationReport rep;
    rep.claim_id = "reciprocity.n" + std::to_string(n) + ".k" + std::to_string(k) + ".p" + std::to_string(p) +
                   ".L" + std::to_string(L);
    rep.tolerance = tolerance;
    rep.computed.push_back({"dlog_alpha(i Theta_beta)", s.lhs, ""});
    rep.reference.push_back({"-dlog_beta(i Theta_alpha)", s.rhs, ""});
    rep.defect = s.defect;
    rep.passed = s.defect <= tolerance;
    rep.diag("alpha", G.word_name(alpha));
    rep.diag("beta", G.word_name(beta));
    rep.diag("tail_alpha", s.tail_alpha);
    rep.diag("tail_beta", s.tail_beta);
    return rep;
}

}  // namespace hvk
