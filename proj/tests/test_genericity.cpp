#include "doctest.h"

#include "sp4gen/errors.hpp"
#include "sp4gen/genericity.hpp"

using namespace sp4gen;

namespace {

GenericityVerdict run(const char* text) { return decide(input_from_json(json::parse(text))); }

}  // namespace

TEST_CASE("case IV is never generic") {
    GenericityVerdict v = run(R"({"case":"IV","q":3,"E":{"disc":"u"},"n1":2,"epsilon":0})");
    CHECK_FALSE(v.generic);
    CHECK(v.to_json()["verdict"] == "non_generic");
    CHECK(v.witness["flag_exists"] == true);
}

TEST_CASE("case II follows the norm test") {
    CHECK(run(R"({"case":"II","q":3,"p":3,"E":{"disc":"u"},"det_delta":"u","n":1})").generic);
    GenericityVerdict v = run(R"({"case":"II","q":3,"p":3,"E":{"disc":"u"},"det_delta":"p","n":1})");
    CHECK_FALSE(v.generic);
    CHECK(v.case_id == "II");
}

TEST_CASE("level zero") {
    CHECK(run(R"({"case":"level0","kind":"special_Sp4","sigma_regular":true})").generic);
    CHECK_FALSE(run(R"({"case":"level0","kind":"product_Sp2xSp2"})").generic);
    CHECK_FALSE(run(R"({"case":"level0","kind":"special_Sp4","sigma_is_theta10":true})").generic);
}

TEST_CASE("verdict JSON shape") {
    json j = run(R"({"case":"III","q":5,"E":{"disc":"p"},"det_delta":"1","ratio":"1","n1":2,"n2":2})").to_json();
    for (const char* k : {"verdict", "case", "trace", "witness"}) CHECK(j.contains(k));
    CHECK(j["trace"].is_array());
    CHECK(j["trace"].back()["step"] == "generic");
}

TEST_CASE("input errors") {
    CHECK_THROWS_AS(input_from_json(json::array()), SchemaError);
    CHECK_THROWS_AS(input_from_json(json{{"q", 3}}), SchemaError);
    CHECK_THROWS_AS(input_from_json(json::parse(R"({"case":"II","q":3,"E":{"disc":"u"},"det_delta":"u","n":1,
        "beta":[[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]})")),
                    PreconditionError);
    CHECK_THROWS_AS(input_from_json(json::parse(R"({"case":"II","q":3,"p":3,"E":{"disc":"u"},"det_delta":"u","n":1,
        "beta":[[1,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]})")),
                    SchemaError);
}

TEST_CASE("deterministic verdicts") {
    const char* text = R"({"case":"I","q":3,"E0":{"disc":"u"},"beta_detdelta_E0":"v","n":3})";
    CHECK(run(text).to_json() == run(text).to_json());
}

TEST_CASE("cross-check agrees on small corpora") {
    Rng rng(17);
    for (long p : {3L, 5L}) {
        for (StratumCase c : {StratumCase::I, StratumCase::II, StratumCase::III, StratumCase::IV}) {
            for (const MatrixStratum& ms : build_corpus(p, c, 6, rng)) {
                GenericityVerdict v = decide_with_cross_check(ms, 50, rng);
                REQUIRE(v.cross_check.has_value());
                CHECK((*v.cross_check)["agree"] == true);
                if (c != StratumCase::IV) CHECK(v.witness.contains(v.generic ? "flag" : "anisotropy"));
            }
        }
    }
}

TEST_CASE("mismatched class data fails the cross-check") {
    Rng rng(8);
    MatrixStratum ms = realize_case_II(3, false, rng);
    ms.stratum.det_delta = ms.stratum.det_delta * SquareClass::pi();  // claim the wrong class
    CHECK_THROWS_AS(decide_with_cross_check(ms, 10, rng), InvariantViolation);
}
