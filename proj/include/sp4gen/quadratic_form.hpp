#pragma once

#include "sp4gen/hensel.hpp"
#include "sp4gen/local_field.hpp"
#include "sp4gen/rational.hpp"

#include <optional>
#include <string>

namespace sp4gen {

// Gram matrix of h in the basis (e_{-N}, ..., e_{-1}, e_1, ..., e_N), so h(e_{-i}, e_j) = delta_ij.
Mat symplectic_J(int dim);
Q h_form(const Mat& J, const Vec& v, const Vec& w);
// beta is skew for h iff J beta is symmetric.
bool is_skew(const Mat& beta, const Mat& J);
bool is_symplectic(const Mat& g, const Mat& J);

struct QuadraticForm {
    Mat gram;
    long p = 3;

    int dim() const { return gram.rows; }
    bool degenerate() const { return det(gram) == 0; }
    Q value(const Vec& v) const { return dot(v, gram * v); }
};

// v -> h(v, beta v); the Gram matrix is J beta.
QuadraticForm gram_from_beta(const Mat& J, const Mat& beta, long p);

struct Diagonalization {
    Vec d;
    // Columns are the new basis: P^T G P = diag(d).
    Mat P;
};
Diagonalization diagonalize(const Mat& gram);

struct FormInvariants {
    int dim = 0;
    SquareClass det_class;
    int hasse = 1;
};
FormInvariants invariants(const QuadraticForm& form);
FormInvariants invariants_of_diagonal(const Vec& d, const LocalField& F);

bool is_isotropic(const QuadraticForm& form);

struct IsotropicCertificate {
    bool found = false;
    // Exact isotropic vector when exact, otherwise a Hensel approximation.
    Vec vector;
    bool exact = false;
    long depth = 0;
    HenselResult search;
};
IsotropicCertificate find_isotropic_vector(const QuadraticForm& form, long depth = 6);
bool is_rational_square(const Q& x);

struct IsotropicFlag {
    Vec v1;
    Vec v2;
    // Basis of V3 = V1^perp.
    std::vector<Vec> v3;
    bool completed = false;  // V2 chosen by the completion rule (beta v1 in V1)
};

IsotropicFlag build_flag(const Mat& J, const Mat& beta, const Vec& v);
enum class FlagType { nondegenerate, degenerate };
std::string to_string(FlagType t);
FlagType classify_flag_degeneracy(const Mat& beta, const IsotropicFlag& flag);
// Symplectic basis (f1, f2, f3, f4) in the e_{-2}, e_{-1}, e_1, e_2 slots with
// span(f1) = V1, span(f1, f2) = V2, span(f1, f2, f3) = V3. Columns of the result.
Mat adapted_symplectic_basis(const Mat& J, const IsotropicFlag& flag);

}  // namespace sp4gen
