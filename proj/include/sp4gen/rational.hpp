#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace sp4gen {

using Q = mpq_class;
using Z = mpz_class;
using Vec = std::vector<Q>;

// Sentinel for the valuation of zero.
constexpr long kInfVal = std::numeric_limits<long>::max() / 4;

long valuation(const Z& n, long p);
// p-adic valuation of a nonzero rational; kInfVal for zero.
long valuation(const Q& x, long p);
// x * p^{-val(x)}; numerator and denominator prime to p.
Q unit_part(const Q& x, long p);
// Residue of a p-integral rational modulo m (m a power of p).
Z residue(const Q& x, const Z& m);
long residue_mod_p(const Q& x, long p);

long floor_div(long a, long b);
long ceil_div(long a, long b);
long pos_mod(long a, long m);
Q pow_p(long p, long k);

// Legendre symbol (a/p) for p an odd prime: 1, -1, or 0.
int legendre(long a, long p);
bool is_prime(long n);
// Least positive quadratic non-residue mod p.
long least_nonresidue(long p);

Q parse_rational(const std::string& s);
std::string to_string(const Q& x);

// Dense matrix over Q, row-major.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<Q> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    Q& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Q& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static Mat identity(int n);
    static Mat from_rows(const std::vector<std::vector<Q>>& rows);
    static Mat from_columns(const std::vector<Vec>& cols);
    Vec column(int j) const;
    Mat transpose() const;
    bool is_zero() const;
    bool is_symmetric() const;
    Q trace() const;
};

bool operator==(const Mat& x, const Mat& y);
inline bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }
Mat operator*(const Mat& x, const Mat& y);
Mat operator+(const Mat& x, const Mat& y);
Mat operator-(const Mat& x, const Mat& y);
Mat operator*(const Q& s, const Mat& x);
Vec operator*(const Mat& x, const Vec& v);
Vec operator+(const Vec& x, const Vec& y);
Vec operator-(const Vec& x, const Vec& y);
Vec operator*(const Q& s, const Vec& v);
Q dot(const Vec& x, const Vec& y);

Q det(const Mat& m);
int rank(const Mat& m);
// Throws PreconditionError when singular.
Mat inverse(const Mat& m);
// Rank of the span of the given vectors.
int rank_of(const std::vector<Vec>& vs);
// True iff w lies in span(vs).
bool in_span(const std::vector<Vec>& vs, const Vec& w);
bool is_zero(const Vec& v);
// Basis of the right kernel {x : m x = 0}.
std::vector<Vec> nullspace(const Mat& m);
// Some x with m x = b; throws PreconditionError when the system is inconsistent.
Vec solve_particular(const Mat& m, const Vec& b);

}  // namespace sp4gen
