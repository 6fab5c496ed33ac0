#include "doctest.h"

#include "sp4gen/errors.hpp"
#include "sp4gen/local_field.hpp"

using namespace sp4gen;

TEST_CASE("square class of a rational") {
    LocalField F5 = LocalField::concrete(5), F3 = LocalField::concrete(3);
    CHECK(square_class(Q(1), F5) == SquareClass::one());
    CHECK(square_class(Q(2), F5) == SquareClass::u());
    CHECK(square_class(Q(3, 4), F3) == SquareClass::pi());
    CHECK(square_class(Q(-3), F3) == SquareClass::upi());
    CHECK_THROWS_AS(square_class(Q(0), F3), PreconditionError);
}

TEST_CASE("square class parsing round trip") {
    for (int i = 0; i < 4; ++i) {
        SquareClass c = SquareClass::from_index(i);
        CHECK(SquareClass::parse(c.str()) == c);
    }
    CHECK_THROWS_AS(SquareClass::parse("x"), SchemaError);
}

TEST_CASE("Hilbert symbol worked values at p = 3") {
    LocalField F = LocalField::concrete(3);
    for (int i = 0; i < 4; ++i) CHECK(hilbert_symbol(SquareClass::one(), SquareClass::from_index(i), F) == 1);
    CHECK(hilbert_symbol(SquareClass::pi(), SquareClass::u(), F) == -1);
    CHECK(hilbert_symbol(SquareClass::pi(), SquareClass::pi(), F) == -1);
}

TEST_CASE("Hilbert symbol against the solubility oracle") {
    for (long p : {3L, 5L, 7L}) {
        LocalField F = LocalField::concrete(p);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                Q a = representative(SquareClass::from_index(i), F), b = representative(SquareClass::from_index(j), F);
                CHECK(hilbert_symbol(a, b, F) == hilbert_solubility_oracle(a, b, p));
            }
    }
}

TEST_CASE("solubility oracle worked values") {
    CHECK(hilbert_solubility_oracle(Q(1), Q(1), 3) == 1);
    CHECK(hilbert_solubility_oracle(Q(2), Q(2), 3) == 1);
    CHECK(hilbert_solubility_oracle(Q(3), Q(2), 3) == -1);
    CHECK_THROWS_AS(hilbert_solubility_oracle(Q(3), Q(2), 3, 1), PrecisionError);
}

TEST_CASE("abstract field symbols need only q mod 4") {
    for (long p : {3L, 5L, 7L, 13L}) {
        LocalField Fc = LocalField::concrete(p), Fa = LocalField::abstract(p);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                CHECK(hilbert_symbol(SquareClass::from_index(i), SquareClass::from_index(j), Fc) ==
                      hilbert_symbol(SquareClass::from_index(i), SquareClass::from_index(j), Fa));
    }
}

TEST_CASE("norm groups of quadratic extensions") {
    LocalField F = LocalField::concrete(3);
    QuadExt unram(F, SquareClass::u()), ram(F, SquareClass::pi());
    for (int i = 0; i < 4; ++i) {
        QuadExt E(F, SquareClass::from_index(i == 0 ? 1 : i));
        CHECK(norm_group_contains(E, SquareClass::one()));
    }
    CHECK_FALSE(norm_group_contains(unram, SquareClass::pi()));
    CHECK(norm_group_contains(ram, SquareClass::upi()));
    CHECK_FALSE(norm_group_contains(ram, SquareClass::u()));
    CHECK_THROWS_AS(QuadExt(F, SquareClass::one()), PreconditionError);
}

TEST_CASE("F^x (E0^x)^2 membership") {
    LocalField F = LocalField::concrete(3);
    QuadExt unram(F, SquareClass::u()), ram(F, SquareClass::pi());
    CHECK(e0_contains_F_times_squares(unram, E0SquareClass::from_index(0)));
    CHECK(e0_contains_F_times_squares(unram, E0SquareClass{true, false}));
    CHECK_FALSE(e0_contains_F_times_squares(unram, E0SquareClass{false, true}));
    CHECK_FALSE(e0_contains_F_times_squares(ram, E0SquareClass{true, false}));
}

// The closed form and the sampling oracle agree; the frozen labels are the oracle's.
TEST_CASE("trace-zero coset: closed form against sampling") {
    Rng rng(7);
    struct Row { long p; SquareClass d; KernelCoset want; };
    for (Row r : {Row{3, SquareClass::u(), KernelCoset::inside_FE0sq}, Row{5, SquareClass::u(), KernelCoset::outside_FE0sq},
                  Row{7, SquareClass::u(), KernelCoset::inside_FE0sq}, Row{3, SquareClass::pi(), KernelCoset::outside_FE0sq},
                  Row{5, SquareClass::pi(), KernelCoset::outside_FE0sq}, Row{5, SquareClass::upi(), KernelCoset::outside_FE0sq}}) {
        QuadExt E(LocalField::concrete(r.p), r.d);
        CHECK(trace_kernel_coset(E) == r.want);
        CHECK(trace_kernel_sampling_oracle(E, 200, rng) == r.want);
    }
}

TEST_CASE("psi_F takes the fractional part of x / p") {
    CHECK(psi_F(Q(0), 3) == 0);
    CHECK(psi_F(Q(3), 3) == 0);
    CHECK(psi_F(Q(1), 3) == Q(1, 3));
    CHECK(psi_F(Q(-1), 3) == Q(2, 3));
    CHECK(psi_F(Q(1, 3), 3) == Q(1, 9));
    CHECK(psi_F(Q(1, 2), 3) == Q(2, 3));  // 1/2 = 2 mod 3
}
