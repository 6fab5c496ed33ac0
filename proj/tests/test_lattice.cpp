#include "doctest.h"

#include "sp4gen/errors.hpp"
#include "sp4gen/lattice.hpp"
#include "sp4gen/realization.hpp"

using namespace sp4gen;

TEST_CASE("standard lattice is self-dual with d = 1") {
    LatticeSequence L = standard_lattice(4);
    auto d = duality_invariant(L);
    REQUIRE(d.has_value());
    CHECK(*d == 1);
    BasisValuationReport r = check_basis_valuations(L);
    CHECK(r.ok);
    for (long v : r.nu) CHECK(v == 0);
}

TEST_CASE("valuation of basis vectors is max j - e alpha(j)") {
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        LatticeSequence L = random_selfdual(4, 4, 1, rng);
        for (int s = 0; s < 4; ++s) {
            Vec v(4, Q(0));
            v[s] = 1;
            long best = -kInfVal;
            for (long j = -3 * L.e; j <= 3 * L.e; ++j) best = std::max(best, j - L.e * L.a(s, j));
            CHECK(valuation_vector(L, v, 3) == best);
            CHECK(valuation_basis_scan(L, s) == best);
        }
    }
}

TEST_CASE("identity has valuation zero, zero vector the sentinel") {
    LatticeSequence L = standard_lattice(4);
    CHECK(valuation_endo(L, Mat::identity(4), 3) == 0);
    CHECK(valuation_vector(L, Vec(4, Q(0)), 3) == kInfVal);
}

TEST_CASE("duality is an involution on random sequences") {
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        int e = std::vector<int>{1, 2, 4}[i % 3];
        LatticeSequence L = random_selfdual(i % 2 ? 4 : 2, e, i % 5 - 2, rng);
        CHECK(dual_sequence(dual_sequence(L)) == L);
        CHECK(duality_invariant(L).has_value());
        CHECK(check_basis_valuations(L).ok);
    }
}

TEST_CASE("malformed sequences are rejected") {
    LatticeSequence L;
    L.e = 2;
    L.alpha = {{1, 0}, {0, 0}};
    CHECK_THROWS_AS(L.validate(), SchemaError);
}

TEST_CASE("block filtration and valuation identities per chain type") {
    Rng rng(5);
    std::map<ChainType, int> seen;
    for (int i = 0; i < 300; ++i) {
        SkewBlock B = random_skew_block(i % 2 ? 3 : 5, rng);
        NormalizedProfile P = normalize_period4(B.chain, B.type);
        ++seen[B.type];
        CHECK(duality_invariant(P.lambda) == std::optional<long>(1));
        BlockFiltrationReport a = check_block_filtration(B, P, 16, rng);
        CHECK(a.ok);
        CHECK(a.beta_val == expected_beta_valuation(B.type, B.nu_E_beta));
        BlockValuationReport b = check_block_valuation(B, P, random_block_vector(B, rng));
        CHECK(b.lhs == b.rhs);
    }
    CHECK(seen.size() == 3);
}

TEST_CASE("image residues per chain type") {
    CHECK(expected_image_modulus(ChainType::ramified) == 2);
    CHECK(expected_image_residue(ChainType::ramified) == 1);
    CHECK(expected_image_modulus(ChainType::unramified_selfdual) == 4);
    CHECK(expected_image_residue(ChainType::unramified_selfdual) == 2);
    CHECK(expected_image_residue(ChainType::unramified_no_selfdual) == 0);
}

TEST_CASE("epsilon marks a self-dual member") {
    Rng rng(9);
    for (int i = 0; i < 100; ++i) {
        SkewBlock B = random_skew_block(3, rng);
        NormalizedProfile P = normalize_period4(B.chain, B.type);
        CHECK(P.epsilon == (B.type == ChainType::unramified_no_selfdual ? 1 : 0));
    }
}
