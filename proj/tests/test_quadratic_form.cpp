#include "doctest.h"

#include "sp4gen/errors.hpp"
#include "sp4gen/quadratic_form.hpp"

using namespace sp4gen;

namespace {

QuadraticForm diagonal(std::vector<long> d, long p) {
    int n = static_cast<int>(d.size());
    Mat G(n, n);
    for (int i = 0; i < n; ++i) G(i, i) = Q(d[i]);
    return {G, p};
}

}  // namespace

TEST_CASE("symplectic form and skew elements") {
    Mat J = symplectic_J(4);
    CHECK(J(0, 3) == 1);
    CHECK(J(3, 0) == -1);
    CHECK(J(1, 2) == 1);
    Mat beta(4, 4);
    beta(0, 1) = 1;
    beta(2, 3) = -1;
    CHECK(is_skew(beta, J));
    beta(2, 3) = 1;
    CHECK_FALSE(is_skew(beta, J));
}

TEST_CASE("zero beta gives the zero form") {
    Mat J = symplectic_J(4);
    QuadraticForm f = gram_from_beta(J, Mat(4, 4), 3);
    CHECK(f.degenerate());
    CHECK_THROWS_AS(invariants(f), PreconditionError);
}

TEST_CASE("diagonalization is a congruence") {
    Mat G(3, 3);
    G(0, 1) = G(1, 0) = 1;
    G(2, 2) = 5;
    G(0, 2) = G(2, 0) = Q(1, 2);
    Diagonalization D = diagonalize(G);
    Mat Pt(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) Pt(i, j) = D.P(j, i);
    Mat R = Pt * G * D.P;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(R(i, j) == (i == j ? D.d[i] : Q(0)));
}

TEST_CASE("form invariants") {
    LocalField F = LocalField::concrete(3);
    FormInvariants a = invariants(diagonal({1, 1, 1, 1}, 3));
    CHECK(a.det_class.is_identity());
    CHECK(a.hasse == 1);
    FormInvariants b = invariants(diagonal({1, -2, -3, 6}, 3));
    CHECK(b.det_class.is_identity());
    CHECK(b.hasse == -hilbert_symbol(Q(-1), Q(-1), F));
    FormInvariants c = invariants(diagonal({1, -1}, 3));
    CHECK(c.det_class == minus_one_class(F));
    CHECK(c.hasse == 1);
}

TEST_CASE("isotropy closed form") {
    CHECK(is_isotropic(diagonal({1, -1}, 3)));
    CHECK_FALSE(is_isotropic(diagonal({1, -2}, 3)));
    CHECK_FALSE(is_isotropic(diagonal({7}, 3)));
    CHECK_FALSE(is_isotropic(diagonal({1, -2, -3, 6}, 3)));
    CHECK(is_isotropic(diagonal({1, 1, 1, 1}, 5)));
    CHECK_THROWS(is_isotropic(diagonal({1, 1, 1, 1, 1}, 3)));
}

TEST_CASE("isotropic vector certificates") {
    IsotropicCertificate c = find_isotropic_vector(diagonal({1, -1}, 3));
    REQUIRE(c.found);
    CHECK(c.exact);
    CHECK(diagonal({1, -1}, 3).value(c.vector) == 0);

    // 1 + 2^2 = 0 mod 5 with unit gradient: Hensel lifts (1, 2, 0, 0).
    IsotropicCertificate d = find_isotropic_vector(diagonal({1, 1, 1, 1}, 5));
    REQUIRE(d.found);
    CHECK(d.vector == Vec{Q(1), Q(2), Q(0), Q(0)});

    IsotropicCertificate e = find_isotropic_vector(diagonal({1, -2, -3, 6}, 3));
    CHECK_FALSE(e.found);
    CHECK(e.search.status == HenselResult::Status::exhausted);
}

TEST_CASE("exactly one anisotropic quaternary class at p = 3 and 5") {
    for (long p : {3L, 5L}) {
        LocalField F = LocalField::concrete(p);
        int anisotropic = 0;
        for (int m = 0; m < 256; ++m) {
            std::vector<long> d;
            for (int i = 0; i < 4; ++i) d.push_back(representative(SquareClass::from_index((m >> (2 * i)) & 3), F).get_num().get_si());
            QuadraticForm f = diagonal(d, p);
            bool iso = is_isotropic(f);
            CHECK(find_isotropic_vector(f).found == iso);
            if (!iso) {
                ++anisotropic;
                FormInvariants inv = invariants(f);
                CHECK(inv.det_class.is_identity());
                CHECK(inv.hasse == -hilbert_symbol(Q(-1), Q(-1), F));
            }
        }
        // 24 orderings of the four distinct classes realize the one isometry class.
        CHECK(anisotropic == 24);
    }
}

TEST_CASE("flag construction on a split plane") {
    Mat J = symplectic_J(4);
    Mat beta(4, 4);  // beta e_{-2} = 0: e_{-2} spans a null line
    beta(1, 2) = 1;
    REQUIRE(is_skew(beta, J));
    IsotropicFlag f = build_flag(J, beta, Vec{Q(1), Q(0), Q(0), Q(0)});
    CHECK(f.v3.size() == 3);
    Mat P = adapted_symplectic_basis(J, f);
    CHECK(is_symplectic(P, J));
}
