#include "sp4gen/rational.hpp"

#include "sp4gen/errors.hpp"

#include <algorithm>
#include <cctype>

namespace sp4gen {

long valuation(const Z& n, long p) {
    if (n == 0) return kInfVal;
    Z m = abs(n);
    long v = 0;
    Z pz = p;
    while (mpz_divisible_p(m.get_mpz_t(), pz.get_mpz_t())) {
        m /= pz;
        ++v;
    }
    return v;
}

long valuation(const Q& x, long p) {
    if (x == 0) return kInfVal;
    return valuation(Z(x.get_num()), p) - valuation(Z(x.get_den()), p);
}

Q pow_p(long p, long k) {
    Z pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k >= 0 ? k : -k));
    Q r(pk);
    if (k < 0) r = 1 / r;
    return r;
}

Q unit_part(const Q& x, long p) {
    if (x == 0) throw PreconditionError("unit_part of zero");
    Q r = x * pow_p(p, -valuation(x, p));
    r.canonicalize();
    return r;
}

Z residue(const Q& x, const Z& m) {
    Z num = x.get_num();
    Z den = x.get_den();
    Z inv;
    if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
        throw PreconditionError("residue: denominator not invertible");
    Z r = (num * inv) % m;
    if (r < 0) r += m;
    return r;
}

long residue_mod_p(const Q& x, long p) { return residue(x, Z(p)).get_si(); }

long floor_div(long a, long b) {
    long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

long ceil_div(long a, long b) { return -floor_div(-a, b); }

long pos_mod(long a, long m) {
    long r = a % m;
    return r < 0 ? r + m : r;
}

int legendre(long a, long p) {
    a = pos_mod(a, p);
    if (a == 0) return 0;
    // Euler's criterion.
    long r = 1, b = a, e = (p - 1) / 2;
    while (e > 0) {
        if (e & 1) r = (r * b) % p;
        b = (b * b) % p;
        e >>= 1;
    }
    return r == 1 ? 1 : -1;
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

long least_nonresidue(long p) {
    for (long a = 2; a < p; ++a)
        if (legendre(a, p) == -1) return a;
    throw PreconditionError("no quadratic non-residue");
}

Q parse_rational(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) throw SchemaError("empty rational");
    auto ok = [](const std::string& part) {
        size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
        if (i >= part.size()) return false;
        for (; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
        return true;
    };
    auto slash = t.find('/');
    std::string num = t.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : t.substr(slash + 1);
    if (!ok(num) || !ok(den)) throw SchemaError("not a rational: " + s);
    if (num[0] == '+') num = num.substr(1);
    if (den[0] == '+') den = den.substr(1);
    Z n(num), d(den);
    if (d == 0) throw SchemaError("zero denominator: " + s);
    Q r(n, d);
    r.canonicalize();
    return r;
}

std::string to_string(const Q& x) { return x.get_str(); }

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Mat Mat::from_rows(const std::vector<std::vector<Q>>& rows) {
    Mat m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows; ++i) {
        if (static_cast<int>(rows[i].size()) != m.cols) throw SchemaError("ragged matrix");
        for (int j = 0; j < m.cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Mat Mat::from_columns(const std::vector<Vec>& cols) {
    Mat m(cols.empty() ? 0 : static_cast<int>(cols[0].size()), static_cast<int>(cols.size()));
    for (int j = 0; j < m.cols; ++j)
        for (int i = 0; i < m.rows; ++i) m(i, j) = cols[j][i];
    return m;
}

Vec Mat::column(int j) const {
    Vec v(rows);
    for (int i = 0; i < rows; ++i) v[i] = (*this)(i, j);
    return v;
}

Mat Mat::transpose() const {
    Mat t(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool Mat::is_zero() const {
    return std::all_of(a.begin(), a.end(), [](const Q& x) { return x == 0; });
}

bool Mat::is_symmetric() const {
    if (rows != cols) return false;
    for (int i = 0; i < rows; ++i)
        for (int j = i + 1; j < cols; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

Q Mat::trace() const {
    Q t = 0;
    for (int i = 0; i < std::min(rows, cols); ++i) t += (*this)(i, i);
    return t;
}

bool operator==(const Mat& x, const Mat& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
}

Mat operator*(const Mat& x, const Mat& y) {
    if (x.cols != y.rows) throw PreconditionError("matrix shape mismatch");
    Mat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            const Q& xik = x(i, k);
            if (xik == 0) continue;
            for (int j = 0; j < y.cols; ++j) r(i, j) += xik * y(k, j);
        }
    return r;
}

Mat operator+(const Mat& x, const Mat& y) {
    Mat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
    return r;
}

Mat operator-(const Mat& x, const Mat& y) {
    Mat r = x;
    for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
    return r;
}

Mat operator*(const Q& s, const Mat& x) {
    Mat r = x;
    for (auto& e : r.a) e *= s;
    return r;
}

Vec operator*(const Mat& x, const Vec& v) {
    Vec r(x.rows);
    for (int i = 0; i < x.rows; ++i)
        for (int j = 0; j < x.cols; ++j) r[i] += x(i, j) * v[j];
    return r;
}

Vec operator+(const Vec& x, const Vec& y) {
    Vec r = x;
    for (size_t i = 0; i < r.size(); ++i) r[i] += y[i];
    return r;
}

Vec operator-(const Vec& x, const Vec& y) {
    Vec r = x;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
    return r;
}

Vec operator*(const Q& s, const Vec& v) {
    Vec r = v;
    for (auto& e : r) e *= s;
    return r;
}

Q dot(const Vec& x, const Vec& y) {
    Q s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

namespace {

// Row echelon form in place; returns rank and the sign/scale product for det.
int echelon(Mat& m, Q* det_out) {
    int r = 0;
    Q d = 1;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int piv = -1;
        for (int i = r; i < m.rows; ++i)
            if (m(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) {
            d = 0;
            continue;
        }
        if (piv != r) {
            for (int j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(r, j));
            d = -d;
        }
        d *= m(r, c);
        for (int i = r + 1; i < m.rows; ++i) {
            if (m(i, c) == 0) continue;
            Q f = m(i, c) / m(r, c);
            for (int j = c; j < m.cols; ++j) m(i, j) -= f * m(r, j);
        }
        ++r;
    }
    if (det_out) *det_out = (r == m.rows && m.rows == m.cols) ? d : Q(0);
    return r;
}

}  // namespace

Q det(const Mat& m) {
    if (m.rows != m.cols) throw PreconditionError("det of non-square matrix");
    Mat t = m;
    Q d;
    echelon(t, &d);
    return d;
}

int rank(const Mat& m) {
    Mat t = m;
    return echelon(t, nullptr);
}

Mat inverse(const Mat& m) {
    if (m.rows != m.cols) throw PreconditionError("inverse of non-square matrix");
    int n = m.rows;
    Mat a(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a(i, j) = m(i, j);
        a(i, n + i) = 1;
    }
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int i = c; i < n; ++i)
            if (a(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) throw PreconditionError("singular matrix");
        if (piv != c)
            for (int j = 0; j < 2 * n; ++j) std::swap(a(piv, j), a(c, j));
        Q inv = 1 / a(c, c);
        for (int j = 0; j < 2 * n; ++j) a(c, j) *= inv;
        for (int i = 0; i < n; ++i) {
            if (i == c || a(i, c) == 0) continue;
            Q f = a(i, c);
            for (int j = 0; j < 2 * n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    Mat r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r(i, j) = a(i, n + j);
    return r;
}

int rank_of(const std::vector<Vec>& vs) {
    if (vs.empty()) return 0;
    return rank(Mat::from_columns(vs));
}

bool in_span(const std::vector<Vec>& vs, const Vec& w) {
    std::vector<Vec> ext = vs;
    ext.push_back(w);
    return rank_of(ext) == rank_of(vs);
}

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Q& x) { return x == 0; });
}

namespace {

// Reduced row echelon form of the augmented system; returns pivot columns.
std::vector<int> rref(Mat& a, int ncols) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < ncols && r < a.rows; ++c) {
        int piv = -1;
        for (int i = r; i < a.rows; ++i)
            if (a(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < a.cols; ++j) std::swap(a(piv, j), a(r, j));
        Q inv = 1 / a(r, c);
        for (int j = 0; j < a.cols; ++j) a(r, j) *= inv;
        for (int i = 0; i < a.rows; ++i) {
            if (i == r || a(i, c) == 0) continue;
            Q f = a(i, c);
            for (int j = 0; j < a.cols; ++j) a(i, j) -= f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::vector<Vec> nullspace(const Mat& m) {
    Mat a = m;
    auto pivots = rref(a, m.cols);
    std::vector<bool> is_piv(m.cols, false);
    for (int c : pivots) is_piv[c] = true;
    std::vector<Vec> basis;
    for (int f = 0; f < m.cols; ++f) {
        if (is_piv[f]) continue;
        Vec x(m.cols);
        x[f] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -a(static_cast<int>(r), f);
        basis.push_back(x);
    }
    return basis;
}

Vec solve_particular(const Mat& m, const Vec& b) {
    Mat a(m.rows, m.cols + 1);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) a(i, j) = m(i, j);
        a(i, m.cols) = b[i];
    }
    auto pivots = rref(a, m.cols);
    for (int i = static_cast<int>(pivots.size()); i < m.rows; ++i)
        if (a(i, m.cols) != 0) throw PreconditionError("inconsistent linear system");
    Vec x(m.cols);
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a(static_cast<int>(r), m.cols);
    return x;
}

}  // namespace sp4gen
