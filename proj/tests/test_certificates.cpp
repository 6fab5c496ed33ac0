#include "doctest.h"

#include "sp4gen/certificates.hpp"

using namespace sp4gen;

TEST_CASE("simple piece certificate with a sharp subgroup level") {
    Rng rng(31);
    long shifted = kInfVal;
    for (long p : {3L, 5L}) {
        for (int i = 0; i < 6; ++i) {
            SimplePieceReport r = simple_piece_certificate(realize_case_I_monomial(p, rng), 10, rng);
            CHECK_MESSAGE(r.ok(), r.detail);
            CHECK(r.min_margin >= 0);
            shifted = std::min(shifted, r.min_margin_shifted);
        }
    }
    // Raising the subgroup level by 2 breaks the bound on some instance.
    CHECK(shifted < 0);
}

TEST_CASE("two piece certificate") {
    Rng rng(32);
    for (long p : {3L, 5L}) {
        for (int i = 0; i < 3; ++i) {
            TwoPieceReport a = two_piece_certificate(realize_case_II(p, false, rng), 10, rng);
            CHECK_MESSAGE(a.ok(), a.detail);
            TwoPieceReport b = two_piece_certificate(realize_case_III(p, true, false, rng), 10, rng);
            CHECK_MESSAGE(b.ok(), b.detail);
        }
    }
}

TEST_CASE("null-piece threshold criterion against direct evaluation") {
    Rng rng(33);
    for (long p : {3L, 5L}) {
        for (int i = 0; i < 4; ++i) {
            NullThresholdReport r = check_null_threshold(realize_case_IV(p, rng), 10, rng);
            CHECK_MESSAGE(r.ok(), r.detail);
            CHECK(r.checks > 0);
            CHECK(r.offset_min == -1);
            CHECK(r.offset_max == -1);
        }
    }
}

TEST_CASE("random parahoric elements stabilize the sequence") {
    Rng rng(34);
    MatrixStratum ms = realize_case_I_monomial(3, rng);
    REQUIRE(ms.lambda.has_value());
    for (int i = 0; i < 20; ++i) {
        Mat g = random_parahoric_element(*ms.lambda, 3, rng);
        CHECK(is_symplectic(g, symplectic_J(4)));
        CHECK(valuation_endo(*ms.lambda, g, 3) >= 0);
        CHECK(valuation_endo(*ms.lambda, symplectic_inverse(g), 3) >= 0);
    }
}
