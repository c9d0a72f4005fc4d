#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "hvk/errors.hpp"

namespace hvk {

using Integer = mpz_class;
using Rational = mpq_class;

// a + b i with a, b rational
struct GaussRational {
    Rational re, im;

    GaussRational() : re(0), im(0) {}
    GaussRational(long v) : re(v), im(0) {}
    GaussRational(const Rational& r) : re(r), im(0) {}
    GaussRational(const Rational& r, const Rational& i) : re(r), im(i) {}

    GaussRational conj() const { return {re, -im}; }
    Rational norm2() const { return re * re + im * im; }
    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

    GaussRational& operator+=(const GaussRational& o) { re += o.re; im += o.im; return *this; }
    GaussRational& operator-=(const GaussRational& o) { re -= o.re; im -= o.im; return *this; }
    GaussRational& operator*=(const GaussRational& o) {
        Rational r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = r;
        return *this;
    }
    GaussRational& operator/=(const GaussRational& o) {
        Rational d = o.norm2();
        if (d == 0) throw domain_error("division by zero Gaussian rational");
        *this *= o.conj();
        re /= d;
        im /= d;
        return *this;
    }
};

inline GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
inline GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
inline GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
inline GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
inline GaussRational operator-(const GaussRational& a) { return {-a.re, -a.im}; }
inline bool operator==(const GaussRational& a, const GaussRational& b) { return a.re == b.re && a.im == b.im; }
inline bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }

inline std::ostream& operator<<(std::ostream& os, const GaussRational& z) {
    return os << z.re << (z.im < 0 ? "-" : "+") << abs(z.im) << "i";
}

// i^m
inline GaussRational i_power(long m) {
    switch (((m % 4) + 4) % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

// num/den in lowest terms; the two-argument mpq constructor does not reduce
inline Rational ratio(long num, long den) {
    if (den == 0) throw domain_error("ratio: zero denominator");
    Rational r(num, 1);
    r /= den;
    return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }
inline std::complex<double> to_complex(const Rational& r) { return {r.get_d(), 0.0}; }
inline std::complex<double> to_complex(const GaussRational& z) { return z.to_complex(); }

/* ---- combinatorics ---- */

inline Integer factorial(long n) {
    if (n < 0) throw invalid_argument("factorial of negative integer");
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

// n!! with the conventions 0!! = (-1)!! = 1
inline Integer double_factorial(long n) {
    if (n < -1) throw invalid_argument("double factorial below -1");
    if (n <= 0) return 1;
    Integer r;
    mpz_2fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

// C(n, k), zero outside 0 <= k <= n
inline Integer binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

// binomial with C(n-1, n) = 1/n, used by the incomplete-Beta asymptotics
inline Rational binomial_ext(long top, long k) {
    if (top == k - 1 && k >= 1) return Rational(1, k);
    return Rational(binomial(top, k));
}

inline Rational pow2(long e) {
    Integer p = 1;
    p <<= static_cast<unsigned long>(e < 0 ? -e : e);
    return e >= 0 ? Rational(p) : Rational(1) / Rational(p);
}

inline int sign_power(long e) { return (e % 2 == 0) ? 1 : -1; }

/* ---- dense square matrices over an exact field ---- */

template <typename T>
class Matrix {
public:
    Matrix() : n_(0) {}
    explicit Matrix(std::size_t n) : n_(n), a_(n * n, T(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t size() const { return n_; }
    T& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    Matrix& operator+=(const Matrix& o) {
        check_same(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    Matrix& operator*=(const T& s) {
        for (auto& x : a_) x *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
    friend Matrix operator*(const T& s, Matrix a) { return a *= s; }
    friend Matrix operator-(Matrix a) {
        for (auto& x : a.a_) x = -x;
        return a;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        a.check_same(b);
        const std::size_t n = a.n_;
        Matrix c(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                const T& aik = a(i, k);
                if (aik == T(0)) continue;
                for (std::size_t j = 0; j < n; ++j)
                    if (b(k, j) != T(0)) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) { return a.n_ == b.n_ && a.a_ == b.a_; }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    T trace() const {
        T t(0);
        for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
        return t;
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (x != T(0)) return false;
        return true;
    }

    Matrix pow(unsigned e) const {
        Matrix r = identity(n_);
        for (unsigned i = 0; i < e; ++i) r = r * (*this);
        return r;
    }

    void check_same(const Matrix& o) const {
        if (o.n_ != n_) throw invalid_argument("matrix dimension mismatch");
    }

private:
    std::size_t n_;
    std::vector<T> a_;
};

using ExactMatrix = Matrix<Rational>;
using GaussMatrix = Matrix<GaussRational>;

template <typename T>
Matrix<T> commutator(const Matrix<T>& a, const Matrix<T>& b) {
    return a * b - b * a;
}

inline GaussMatrix to_gauss(const ExactMatrix& m) {
    GaussMatrix g(m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) g(i, j) = GaussRational(m(i, j));
    return g;
}

inline ExactMatrix diagonal(const std::vector<Rational>& d) {
    ExactMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

// solves a x = b exactly; throws if a is singular
template <typename T>
std::vector<T> solve(Matrix<T> a, std::vector<T> b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw invalid_argument("solve: size mismatch");
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a(piv, c) == T(0)) ++piv;
        if (piv == n) throw internal_consistency_error("solve: singular system");
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(c, j), a(piv, j));
            std::swap(b[c], b[piv]);
        }
        T inv = T(1) / a(c, c);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a(r, c) == T(0)) continue;
            T f = a(r, c) * inv;
            for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
            b[r] -= f * b[c];
        }
    }
    for (std::size_t i = 0; i < n; ++i) b[i] /= a(i, i);
    return b;
}

}  // namespace hvk
