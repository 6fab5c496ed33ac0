#include "doctest.h"

#include "sp4gen/errors.hpp"
#include "sp4gen/realization.hpp"
#include "sp4gen/strata.hpp"

using namespace sp4gen;

namespace {

Stratum parse(const char* text) { return stratum_from_json(json::parse(text)); }

Mat transvection(int k, const Q& x) { return Mat::identity(4) + x * root_tk(k); }

}  // namespace

TEST_CASE("case II: det delta outside the norm group") {
    FlagDecision d = decide_flag_existence(parse(R"({"case":"II","q":3,"p":3,"E":{"disc":"u"},"det_delta":"p","n":1})"));
    CHECK_FALSE(d.exists);
    CHECK(decide_flag_existence(parse(R"({"case":"II","q":3,"p":3,"E":{"disc":"u"},"det_delta":"u","n":1})")).exists);
}

TEST_CASE("case III: ratio against det delta times norms") {
    CHECK_FALSE(decide_flag_existence(
                    parse(R"({"case":"III","q":3,"p":3,"E":{"disc":"p"},"det_delta":"u","ratio":"1","n1":2,"n2":1})"))
                    .exists);
    CHECK(decide_flag_existence(
              parse(R"({"case":"III","q":3,"p":3,"E":{"disc":"p"},"det_delta":"u","ratio":"u","n1":2,"n2":1})"))
              .exists);
    // Non-isomorphic pieces always carry a flag.
    CHECK(decide_flag_existence(parse(R"({"case":"III","q":3,"E":{"disc":"p"},"E2":{"disc":"u"},"n1":1,"n2":1})")).exists);
}

TEST_CASE("case IV always has a flag") {
    for (const char* disc : {"u", "p", "up"})
        for (long q : {3L, 5L}) {
            json j = {{"case", "IV"}, {"q", q}, {"E", {{"disc", disc}}}, {"n1", 3}, {"epsilon", 0}};
            CHECK(decide_flag_existence(stratum_from_json(j)).exists);
        }
}

TEST_CASE("character type per case") {
    CHECK(classify_character(parse(R"({"case":"II","q":3,"E":{"disc":"u"},"det_delta":"1","n":1})")) ==
          FlagType::degenerate);
    CHECK(classify_character(parse(R"({"case":"IV","q":3,"E":{"disc":"u"},"n1":1,"epsilon":1})")) == FlagType::degenerate);
    CHECK(classify_character(parse(R"({"case":"III","q":3,"E":{"disc":"p"},"E2":{"disc":"u"},"n1":1,"n2":1})")) ==
          FlagType::nondegenerate);
    CHECK_THROWS_AS(classify_character(parse(R"({"case":"II","q":3,"E":{"disc":"u"},"det_delta":"p","n":1})")),
                    PreconditionError);
}

TEST_CASE("case I decisions follow the residue and ramification data") {
    // q = 3, E0 unramified: the trace-zero line lies in F^x (E0^x)^2.
    auto caseI = [](long q, const char* disc, const char* cls) {
        json j = {{"case", "I"}, {"q", q}, {"E0", {{"disc", disc}}}, {"beta_detdelta_E0", cls}, {"n", 1}};
        return decide_flag_existence(stratum_from_json(j)).exists;
    };
    CHECK(caseI(3, "u", "1"));
    CHECK_FALSE(caseI(3, "u", "v"));
    CHECK_FALSE(caseI(5, "u", "1"));
    CHECK(caseI(5, "u", "v"));
    CHECK(classify_character(parse(R"({"case":"I","q":3,"E0":{"disc":"u"},"beta_detdelta_E0":"1","n":1})")) ==
          FlagType::nondegenerate);
}

TEST_CASE("stratum schema errors") {
    CHECK_THROWS_AS(parse(R"({"case":"V","q":3})"), SchemaError);
    CHECK_THROWS_AS(parse(R"({"case":"II","q":3,"E":{"disc":"u"},"det_delta":"p"})"), SchemaError);
    CHECK_THROWS_AS(parse(R"({"case":"II","q":3,"E":{"disc":"u"},"det_delta":"p","n":0})"), SchemaError);
    CHECK_THROWS_AS(parse(R"({"case":"II","q":3,"E":{"disc":"u"},"det_delta":"p","n":1,"extra":1})"), SchemaError);
}

TEST_CASE("stratum JSON round trip") {
    for (const char* text : {R"({"case":"II","q":3,"p":3,"E":{"disc":"u"},"det_delta":"p","n":1})",
                             R"({"case":"IV","q":5,"E":{"disc":"up"},"n1":2,"epsilon":1})",
                             R"({"case":"III","q":7,"E":{"disc":"p"},"det_delta":"u","ratio":"up","n1":3,"n2":1})"}) {
        Stratum s = parse(text);
        CHECK(stratum_to_json(stratum_from_json(stratum_to_json(s))) == stratum_to_json(s));
    }
}

TEST_CASE("root vectors lie in sp4 and long roots on the anti-diagonal") {
    Mat J = symplectic_J(4);
    const std::vector<Mat> roots = root_vectors();
    REQUIRE(roots.size() == 8);
    for (const Mat& X : roots) CHECK(is_skew(X, J));
    for (int k : {-2, -1, 1, 2}) {
        Mat t = root_tk(k);
        CHECK(is_skew(t, J));
        CHECK(t(label_index(-k), label_index(k)) == 1);
        CHECK(label_index(-k) + label_index(k) == 3);
    }
}

TEST_CASE("psi_beta on root subgroups") {
    long p = 3;
    Mat beta(4, 4);
    beta(2, 1) = Q(2, 9);  // beta e_{-1} = (2/9) e_1, so h(e_{-1}, beta e_{-1}) = 2/9
    REQUIRE(is_skew(beta, symplectic_J(4)));
    CHECK(psi_beta_value(beta, Mat::identity(4), p) == 0);
    PsiBetaThreshold t = root_threshold(beta, Mat::identity(4), 1, p);
    REQUIRE(t.s_max.has_value());
    CHECK(*t.s_max == 2);
    CHECK(psi_beta_value(beta, transvection(1, pow_p(p, 2)), p) != 0);
    CHECK(psi_beta_value(beta, transvection(1, pow_p(p, 3)), p) == 0);
    Q x(5, 3), y(7, 9);
    Q sum = psi_beta_value(beta, transvection(1, x), p) + psi_beta_value(beta, transvection(1, y), p);
    if (sum >= 1) sum -= 1;
    CHECK(psi_beta_value(beta, transvection(1, x) * transvection(1, y), p) == sum);
    Mat bad = Mat::identity(4);
    bad(0, 0) = 2;
    CHECK_THROWS_AS(psi_beta_value(beta, bad, p), PreconditionError);
}

TEST_CASE("threshold against direct evaluation on realizations") {
    Rng rng(21);
    for (long p : {3L, 5L}) {
        for (StratumCase c : {StratumCase::I, StratumCase::II, StratumCase::III, StratumCase::IV}) {
            for (const MatrixStratum& ms : build_corpus(p, c, 4, rng)) {
                Mat g = random_integral_symplectic(4, rng);
                for (int k : {-2, -1, 1, 2}) CHECK(check_root_threshold(ms.beta, g, k, p, 20, rng).ok());
            }
        }
    }
}

TEST_CASE("null block has no threshold") {
    Rng rng(2);
    MatrixStratum ms = realize_case_IV(3, rng);
    for (int k : {-2, 2}) CHECK_FALSE(root_threshold(ms.beta, Mat::identity(4), k, 3).s_max.has_value());
}

TEST_CASE("biquadratic test on degree-4 realizations") {
    Rng rng(4);
    for (long p : {3L, 5L, 7L}) {
        CHECK(biquadratic_test(realize_case_I(p, true, true, rng).beta, p));
        CHECK_FALSE(biquadratic_test(realize_case_I(p, false, true, rng).beta, p));
        CHECK(biquadratic_test(realize_case_I_monomial(p, rng).beta, p));
    }
    CHECK_THROWS_AS(biquadratic_test(realize_case_II(3, true, rng).beta, 3), PreconditionError);
}
