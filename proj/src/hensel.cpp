#include "sp4gen/hensel.hpp"

#include "sp4gen/errors.hpp"

#include <functional>

namespace sp4gen {

namespace {

Z form_value(const std::vector<std::vector<Z>>& g, const std::vector<Z>& v) {
    Z s = 0;
    const size_t n = v.size();
    for (size_t i = 0; i < n; ++i) {
        if (v[i] == 0) continue;
        Z row = 0;
        for (size_t j = 0; j < n; ++j) row += g[i][j] * v[j];
        s += v[i] * row;
    }
    return s;
}

long gradient_val(const std::vector<std::vector<Z>>& g, const std::vector<Z>& v, long p) {
    long mu = kInfVal;
    const size_t n = v.size();
    for (size_t i = 0; i < n; ++i) {
        Z row = 0;
        for (size_t j = 0; j < n; ++j) row += g[i][j] * v[j];
        mu = std::min(mu, valuation(Z(2 * row), p));
    }
    return mu;
}

}  // namespace

HenselResult hensel_search(const std::vector<std::vector<Z>>& gram, long p, long depth) {
    const int n = static_cast<int>(gram.size());
    if (n == 0) throw PreconditionError("empty form");
    if (depth < 1) throw PreconditionError("hensel depth must be positive");
    HenselResult res;
    res.status = HenselResult::Status::exhausted;
    bool undecided = false;
    long deepest = 0;

    // Returns true when a certificate is found.
    std::function<bool(std::vector<Z>&, int, long, const Z&)> visit =
        [&](std::vector<Z>& v, int idx, long level, const Z& pj) -> bool {
        deepest = std::max(deepest, level);
        Z val = form_value(gram, v);
        long vq = valuation(val, p);
        long mu = gradient_val(gram, v, p);
        if (val == 0 || (mu < kInfVal && vq > 2 * mu)) {
            res.status = HenselResult::Status::found;
            res.vector = v;
            res.value_val = vq;
            res.gradient_val = mu;
            res.level = level;
            return true;
        }
        if (level >= depth) {
            undecided = true;
            return false;
        }
        Z pnext = pj * p;
        // Enumerate digit vectors for the free coordinates, earliest coordinate fastest.
        std::vector<int> free;
        for (int i = 0; i < n; ++i)
            if (i != idx) free.push_back(i);
        std::vector<long> digit(free.size(), 0);
        while (true) {
            std::vector<Z> w = v;
            for (size_t f = 0; f < free.size(); ++f) w[free[f]] += pj * digit[f];
            Z fv = form_value(gram, w);
            if (mpz_divisible_p(fv.get_mpz_t(), pnext.get_mpz_t())) {
                if (visit(w, idx, level + 1, pnext)) return true;
            }
            size_t f = 0;
            while (f < digit.size() && ++digit[f] == p) digit[f++] = 0;
            if (f == digit.size()) break;
        }
        return false;
    };

    Z pz = p;
    for (int idx = 0; idx < n; ++idx) {
        std::vector<long> digit(n - idx - 1, 0);
        while (true) {
            std::vector<Z> v(n, Z(0));
            v[idx] = 1;
            for (size_t f = 0; f < digit.size(); ++f) v[idx + 1 + f] = digit[f];
            Z fv = form_value(gram, v);
            if (mpz_divisible_p(fv.get_mpz_t(), pz.get_mpz_t())) {
                if (visit(v, idx, 1, pz)) return res;
            }
            size_t f = 0;
            while (f < digit.size() && ++digit[f] == p) digit[f++] = 0;
            if (f == digit.size()) break;
        }
    }
    res.level = deepest + 1;
    if (undecided) res.status = HenselResult::Status::undecided;
    return res;
}

std::vector<std::vector<Z>> integral_gram(const Mat& gram) {
    Z l = 1;
    for (const auto& x : gram.a) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    // Scaling by l^2 keeps the square class of every value.
    Q s = Q(l) * Q(l);
    std::vector<std::vector<Z>> g(gram.rows, std::vector<Z>(gram.cols));
    for (int i = 0; i < gram.rows; ++i)
        for (int j = 0; j < gram.cols; ++j) {
            Q x = gram(i, j) * s;
            g[i][j] = x.get_num();
        }
    return g;
}

}  // namespace sp4gen
