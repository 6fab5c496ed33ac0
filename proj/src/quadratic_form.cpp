#include "sp4gen/quadratic_form.hpp"

#include "sp4gen/errors.hpp"

namespace sp4gen {

Mat symplectic_J(int dim) {
    if (dim != 2 && dim != 4) throw PreconditionError("symplectic space must have dimension 2 or 4");
    Mat J(dim, dim);
    for (int i = 0; i < dim / 2; ++i) {
        J(i, dim - 1 - i) = 1;
        J(dim - 1 - i, i) = -1;
    }
    return J;
}

Q h_form(const Mat& J, const Vec& v, const Vec& w) { return dot(v, J * w); }

bool is_skew(const Mat& beta, const Mat& J) { return (J * beta).is_symmetric(); }

bool is_symplectic(const Mat& g, const Mat& J) { return g.transpose() * J * g == J; }

QuadraticForm gram_from_beta(const Mat& J, const Mat& beta, long p) {
    if (!is_skew(beta, J)) throw InvariantViolation("beta is not skew: J beta is not symmetric");
    return QuadraticForm{J * beta, p};
}

namespace {

// A <- E^T A E, P <- P E for the elementary basis change e_k += c e_i.
void add_basis(Mat& A, Mat& P, int k, int i, const Q& c) {
    int n = A.rows;
    for (int r = 0; r < n; ++r) A(r, k) += c * A(r, i);
    for (int r = 0; r < n; ++r) A(k, r) += c * A(i, r);
    for (int r = 0; r < n; ++r) P(r, k) += c * P(r, i);
}

void swap_basis(Mat& A, Mat& P, int i, int j) {
    if (i == j) return;
    int n = A.rows;
    for (int r = 0; r < n; ++r) std::swap(A(r, i), A(r, j));
    for (int r = 0; r < n; ++r) std::swap(A(i, r), A(j, r));
    for (int r = 0; r < n; ++r) std::swap(P(r, i), P(r, j));
}

}  // namespace

Diagonalization diagonalize(const Mat& gram) {
    if (!gram.is_symmetric()) throw PreconditionError("Gram matrix must be symmetric");
    int n = gram.rows;
    Mat A = gram;
    Mat P = Mat::identity(n);
    for (int i = 0; i < n; ++i) {
        int piv = -1;
        for (int k = i; k < n; ++k)
            if (A(k, k) != 0) {
                piv = k;
                break;
            }
        if (piv < 0) {
            // All remaining diagonal entries vanish: e_j += e_k creates 2 A(j,k).
            int pj = -1, pk = -1;
            for (int j = i; j < n && pj < 0; ++j)
                for (int k = j + 1; k < n; ++k)
                    if (A(j, k) != 0) {
                        pj = j;
                        pk = k;
                        break;
                    }
            if (pj < 0) break;
            add_basis(A, P, pj, pk, 1);
            piv = pj;
        }
        swap_basis(A, P, i, piv);
        for (int k = i + 1; k < n; ++k) {
            if (A(k, i) == 0) continue;
            add_basis(A, P, k, i, -A(k, i) / A(i, i));
        }
    }
    Diagonalization D;
    D.P = P;
    D.d.resize(n);
    for (int i = 0; i < n; ++i) D.d[i] = A(i, i);
    return D;
}

FormInvariants invariants_of_diagonal(const Vec& d, const LocalField& F) {
    FormInvariants inv;
    inv.dim = static_cast<int>(d.size());
    Q prod = 1;
    for (const auto& x : d) {
        if (x == 0) throw PreconditionError("degenerate diagonal form");
        prod *= x;
    }
    inv.det_class = square_class(prod, F);
    for (size_t i = 0; i < d.size(); ++i)
        for (size_t j = i + 1; j < d.size(); ++j) inv.hasse *= hilbert_symbol(d[i], d[j], F);
    return inv;
}

FormInvariants invariants(const QuadraticForm& form) {
    int r = rank(form.gram);
    if (r < form.dim())
        throw PreconditionError("degenerate form: radical dimension " + std::to_string(form.dim() - r));
    return invariants_of_diagonal(diagonalize(form.gram).d, LocalField::concrete(form.p));
}

bool is_isotropic(const QuadraticForm& form) {
    if (form.dim() > 4) throw PreconditionError("forms of dimension above 4 are unsupported");
    if (form.degenerate()) return true;
    LocalField F = LocalField::concrete(form.p);
    FormInvariants inv = invariants(form);
    SquareClass m1 = minus_one_class(F);
    switch (form.dim()) {
        case 1:
            return false;
        case 2:
            return (m1 * inv.det_class).is_identity();
        case 3:
            return inv.hasse == hilbert_symbol(m1, m1 * inv.det_class, F);
        default:
            return !(inv.det_class.is_identity() && inv.hasse == -hilbert_symbol(m1, m1, F));
    }
}

bool is_rational_square(const Q& x) {
    if (x < 0) return false;
    return mpz_perfect_square_p(x.get_num_mpz_t()) && mpz_perfect_square_p(x.get_den_mpz_t());
}

namespace {

Q rational_sqrt(const Q& x) {
    Z n, d;
    mpz_sqrt(n.get_mpz_t(), x.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), x.get_den_mpz_t());
    return Q(n, d);
}

}  // namespace

IsotropicCertificate find_isotropic_vector(const QuadraticForm& form, long depth) {
    IsotropicCertificate cert;
    cert.depth = depth;
    int n = form.dim();
    if (form.degenerate()) {
        cert.found = true;
        cert.exact = true;
        cert.vector = nullspace(form.gram).front();
        return cert;
    }
    Diagonalization D = diagonalize(form.gram);
    // Exact rational witness from a hyperbolic pair of diagonal entries.
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Q t = -D.d[i] * D.d[j];
            if (!is_rational_square(t)) continue;
            Vec x(n);
            x[i] = rational_sqrt(t) / D.d[i];
            x[j] = 1;
            cert.found = true;
            cert.exact = true;
            cert.vector = D.P * x;
            return cert;
        }
    long p = form.p;
    // d_i = r_i s_i^2 with r_i an integer of valuation 0 or 1.
    std::vector<std::vector<Z>> g(n, std::vector<Z>(n, Z(0)));
    Vec s(n);
    for (int i = 0; i < n; ++i) {
        const Q& di = D.d[i];
        Z den = di.get_den();
        Q whole = di * Q(den) * Q(den);
        long half = floor_div(valuation(whole, p), 2);
        g[i][i] = Q(whole * pow_p(p, -2 * half)).get_num();
        s[i] = pow_p(p, half) / Q(den);
    }
    cert.search = hensel_search(g, p, depth);
    switch (cert.search.status) {
        case HenselResult::Status::found: {
            Vec x(n);
            for (int i = 0; i < n; ++i) x[i] = Q(cert.search.vector[i]) / s[i];
            cert.found = true;
            cert.vector = D.P * x;
            cert.exact = form.value(cert.vector) == 0;
            return cert;
        }
        case HenselResult::Status::exhausted:
            cert.found = false;
            return cert;
        default:
            throw PrecisionError("isotropic search undecided at depth " + std::to_string(depth));
    }
}

IsotropicFlag build_flag(const Mat& J, const Mat& beta, const Vec& v) {
    if (is_zero(v)) throw PreconditionError("flag needs a nonzero vector");
    if (h_form(J, v, beta * v) != 0) throw PreconditionError("vector is not isotropic for h(v, beta v)");
    int n = J.rows;
    IsotropicFlag f;
    f.v1 = v;
    Vec bv = beta * v;
    if (!in_span({v}, bv)) {
        f.v2 = bv;
    } else {
        f.completed = true;
        for (int i = 0; i < n && f.v2.empty(); ++i) {
            Vec e(n);
            e[i] = 1;
            if (h_form(J, v, e) == 0 && !in_span({v}, e)) f.v2 = e;
        }
        if (f.v2.empty()) {
            // No basis vector qualifies: take the h-orthogonal combination of the
            // first two basis vectors independent of v.
            int s1 = -1, s2 = -1;
            for (int i = 0; i < n; ++i) {
                Vec e(n);
                e[i] = 1;
                if (in_span({v}, e)) continue;
                if (s1 < 0) s1 = i;
                else if (s2 < 0) s2 = i;
            }
            Vec e1(n), e2(n);
            e1[s1] = 1;
            e2[s2] = 1;
            f.v2 = h_form(J, v, e2) * e1 - h_form(J, v, e1) * e2;
            if (in_span({v}, f.v2)) throw InvariantViolation("flag completion failed");
        }
    }
    Mat row(1, n);
    Vec jv = J.transpose() * v;  // h(v, w) = (J^T v) . w
    for (int i = 0; i < n; ++i) row(0, i) = jv[i];
    f.v3 = nullspace(row);
    if (h_form(J, f.v1, f.v2) != 0) throw InvariantViolation("V2 is not totally isotropic");
    if (!in_span({f.v1, f.v2}, beta * f.v1)) throw InvariantViolation("beta V1 not contained in V2");
    for (const Vec& w : {f.v1, f.v2})
        if (h_form(J, f.v1, beta * w) != 0) throw InvariantViolation("beta V2 not contained in V3");
    return f;
}

std::string to_string(FlagType t) { return t == FlagType::nondegenerate ? "nondegenerate" : "degenerate"; }

FlagType classify_flag_degeneracy(const Mat& beta, const IsotropicFlag& flag) {
    bool b1 = !in_span({flag.v1}, beta * flag.v1);
    bool b2 = !in_span({flag.v1, flag.v2}, beta * flag.v2);
    return (b1 && b2) ? FlagType::nondegenerate : FlagType::degenerate;
}

Mat adapted_symplectic_basis(const Mat& J, const IsotropicFlag& flag) {
    const Vec& f1 = flag.v1;
    const Vec& f2 = flag.v2;
    auto hrow = [&](const Vec& a) {
        Vec r = J.transpose() * a;
        return r;
    };
    // f4: h(f1, f4) = 1, h(f2, f4) = 0.
    Mat A(2, 4);
    Vec r1 = hrow(f1), r2 = hrow(f2);
    for (int j = 0; j < 4; ++j) {
        A(0, j) = r1[j];
        A(1, j) = r2[j];
    }
    Vec f4 = solve_particular(A, {Q(1), Q(0)});
    // f3: h(f1, f3) = 0, h(f2, f3) = 1, h(f4, f3) = 0.
    Mat B(3, 4);
    Vec r4 = hrow(f4);
    for (int j = 0; j < 4; ++j) {
        B(0, j) = r1[j];
        B(1, j) = r2[j];
        B(2, j) = r4[j];
    }
    Vec f3 = solve_particular(B, {Q(0), Q(1), Q(0)});
    Mat P = Mat::from_columns({f1, f2, f3, f4});
    if (!is_symplectic(P, J)) throw InvariantViolation("adapted basis is not symplectic");
    return P;
}

}  // namespace sp4gen
