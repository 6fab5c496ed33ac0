#include "doctest.h"

#include "sp4gen/errors.hpp"
#include "sp4gen/finite_reductive.hpp"

#include <set>

using namespace sp4gen;

TEST_CASE("C2 root datum") {
    RootDatumC2 R = root_datum_C2();
    CHECK(R.roots.size() == 8);
    CHECK(R.long_roots.size() == 4);
    CHECK(R.weyl.size() == 8);
    CHECK(is_long(R.beta_long));
    CHECK_FALSE(is_long(R.alpha));
    std::map<int, int> by_length;
    for (const auto& w : R.weyl) ++by_length[weyl_length(R, w)];
    CHECK(by_length == std::map<int, int>{{0, 1}, {1, 2}, {2, 2}, {3, 2}, {4, 1}});
}

TEST_CASE("minisotropic elements: two conjugate Coxeter elements and w0") {
    RootDatumC2 R = root_datum_C2();
    WeylElement s1 = reflection(R.alpha), s2 = reflection(R.beta_long);
    WeylElement h = s1 * s2, h2 = s2 * s1;
    std::set<WeylElement> mini;
    for (const auto& w : R.weyl)
        if (is_minisotropic(w)) mini.insert(w);
    CHECK(mini.size() == 3);
    CHECK(mini.count(h));
    CHECK(mini.count(h2));
    CHECK(mini.count(h * h));  // w0 = -1
    CHECK(s1 * h * s1 == h2);
}

TEST_CASE("nondegenerate characters") {
    LocalField F = LocalField::concrete(5);
    CHECK(character_orbit_classify(Q(1), Q(1), F).nondegenerate);
    CHECK_FALSE(character_orbit_classify(Q(0), Q(1), F).nondegenerate);
    CHECK_FALSE(character_orbit_classify(Q(1), Q(0), F).nondegenerate);
    // Over the p-adic field the orbit is the square class of b: four orbits.
    std::set<int> orbits;
    for (int i = 0; i < 4; ++i) {
        Q b = representative(SquareClass::from_index(i), F);
        orbits.insert(character_orbit_classify(Q(3), b, F).orbit);
        CHECK(character_orbit_classify(Q(7), b * 4, F).orbit == character_orbit_classify(Q(1), b, F).orbit);
    }
    CHECK(orbits.size() == 4);
}

TEST_CASE("nondegenerate character orbits over F_q") {
    // (F_q^x)^2 has the two classes of b; residue fields see no valuation.
    for (long q : {5L, 7L, 11L}) CHECK(finite_character_orbit_count(q) == 2);
}

TEST_CASE("family counts") {
    CHECK(family_count(13, 7) == 3);
    CHECK(family_count(7, 3) == 0);
    CHECK(family_count(14, 9) == 20);
    CHECK(family_count(11, 5) == 2);
    CHECK(family_count(14, 3) == 2);
    CHECK(family_count(13, 3) == 0);
    CHECK(family_count(8, 5) == 4);
    CHECK_THROWS(family_count(15, 5));
    CHECK_THROWS(family_count(3, 4));
}

TEST_CASE("family counts against orbit enumeration") {
    for (long q : {3L, 5L, 7L, 9L}) {
        FamilyOracle o = family_orbit_oracle(q);
        long total = 0;
        for (int id = 1; id <= 14; ++id) {
            CHECK_MESSAGE(o.counts.at(id) == family_count(id, q), "family " << id << " q " << q);
            total += o.counts.at(id);
        }
        // Semisimple classes of SO5(F_q): q^2.
        CHECK(total == q * q);
    }
    CHECK(family_orbit_oracle(11, 5) == 2);
    CHECK(family_orbit_oracle(14, 3) == 2);
    CHECK(family_orbit_oracle(13, 3) == 0);
}

TEST_CASE("torus patterns match cuspidality") {
    for (long q : {5L, 7L}) {
        for (const OracleClass& c : family_orbit_oracle(q).classes) {
            TorusPattern t = torus_pattern(c, q);
            CuspidalOutcome o = family(c.family).outcome;
            if (o == CuspidalOutcome::all_regular) {
                CHECK(t.has_minisotropic);
                CHECK_FALSE(t.has_other);
            }
            if (o == CuspidalOutcome::none) CHECK(t.has_other);
        }
    }
}

TEST_CASE("cuspidal census") {
    struct Row { long q, f13, f14, f11, regular, total; };
    for (Row r : {Row{3, 0, 2, 1, 4, 5}, Row{5, 1, 6, 2, 11, 12}, Row{7, 3, 12, 3, 21, 22}, Row{9, 6, 20, 4, 34, 35}}) {
        CuspidalCensus c = cuspidal_census(r.q);
        CHECK(c.class_counts.at(13) == r.f13);
        CHECK(c.class_counts.at(14) == r.f14);
        CHECK(c.class_counts.at(11) == r.f11);
        CHECK(c.contributions.at(11) == 2 * r.f11);
        CHECK(c.theta10 == 1);
        CHECK(c.regular == r.regular);
        CHECK(c.regular == regular_cuspidal_closed_form(r.q));
        CHECK(c.total == r.total);
    }
    json j = cuspidal_census(5).to_json();
    CHECK(j["regular"] == 11);
    CHECK(j["families"]["f11"]["regular_cuspidal"] == 4);
}

TEST_CASE("level-zero truth table") {
    CHECK(level_zero_decide(parahoric_from_json({{"kind", "special_Sp4"}, {"sigma_regular", true}})));
    CHECK_FALSE(level_zero_decide(parahoric_from_json({{"kind", "product_Sp2xSp2"}})));
    CHECK_FALSE(level_zero_decide(
        parahoric_from_json({{"kind", "special_Sp4"}, {"sigma_regular", false}, {"sigma_is_theta10", true}})));
    CHECK_THROWS_AS(parahoric_from_json({{"kind", "special_Sp4"}, {"sigma_regular", true}, {"sigma_is_theta10", true}}),
                    SchemaError);
    CHECK_THROWS_AS(parahoric_from_json({{"kind", "iwahori"}}), SchemaError);
}

TEST_CASE("Bruhat cover on sampled elements") {
    for (long q : {5L, 7L}) {
        BruhatReport r = bruhat_decomposition_check(q, 2000, 1);
        CHECK(r.ok());
        CHECK(r.checked == 2000);
    }
    CHECK_THROWS(bruhat_decomposition_check(5, 0, 0));
}
