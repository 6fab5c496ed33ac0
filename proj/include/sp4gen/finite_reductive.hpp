#pragma once

#include "sp4gen/local_field.hpp"

#include "json.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace sp4gen {

using json = nlohmann::json;

// ---- C2 root datum ----

// Signed permutation of {1, 2} as an integer 2x2 matrix acting on cocharacter coordinates.
struct WeylElement {
    std::array<std::array<int, 2>, 2> m{};
    std::array<int, 2> apply(const std::array<int, 2>& x) const;
    WeylElement operator*(const WeylElement& o) const;
    bool operator==(const WeylElement& o) const { return m == o.m; }
    bool operator<(const WeylElement& o) const { return m < o.m; }
};

struct RootDatumC2 {
    std::vector<std::array<int, 2>> roots;  // e1 +- e2, +-2 e_i and negatives
    std::vector<std::array<int, 2>> long_roots;
    std::vector<WeylElement> weyl;
    std::array<int, 2> alpha{1, -1};       // short simple root
    std::array<int, 2> beta_long{0, 2};    // long simple root
};

RootDatumC2 root_datum_C2();
bool is_long(const std::array<int, 2>& r);
int weyl_length(const RootDatumC2& R, const WeylElement& w);
WeylElement reflection(const std::array<int, 2>& r);
// No fixed nonzero vector: the two Coxeter elements and w0.
bool is_minisotropic(const WeylElement& w);

// ---- Nondegenerate characters of the upper unipotent group ----

// chi(u) = psi(a u_{12} + b u_{23}) on the simple root coordinates.
struct CharacterOrbit {
    bool nondegenerate = false;
    int orbit = -1;  // index of the square class of b, or -1
};
// Local field F: the torus acts by (a, b) -> (a t1/t2, b t2^2).
CharacterOrbit character_orbit_classify(const Q& a, const Q& b, const LocalField& F);
// Exhaustive orbit count of nondegenerate characters of U(F_q), q prime, under the
// diagonal torus acting by explicit matrix conjugation.
int finite_character_orbit_count(long q);

// ---- Semisimple classes of SO5(F_q) ----

enum class CuspidalOutcome { none, all_regular, two_regular_per_class, unipotent_theta10 };
std::string to_string(CuspidalOutcome c);

struct ClassFamily {
    int id;
    std::string representative;
    std::string condition;
    std::string count_formula;
    std::string centralizer_weyl;  // W°(s)
    int component_index;           // |W(s)/W°(s)|
    CuspidalOutcome outcome;
};

const std::vector<ClassFamily>& family_table();
const ClassFamily& family(int id);

// Closed-form class count in q (odd prime power q >= 3).
long family_count(int id, long q);

// Independent count: F-stable W-orbits in the diagonal torus of SO5, enumerated as
// pairs of exponents in Z/(q^4 - 1) with Frobenius x -> qx, sorted into families by
// the subgroups their eigenvalues generate.
struct OracleClass {
    int family = 0;
    long a = 0, b = 0;  // exponents of lambda, mu in Z/(q^4 - 1)
};
struct FamilyOracle {
    long q = 0;
    std::map<int, long> counts;
    std::vector<OracleClass> classes;
};
FamilyOracle family_orbit_oracle(long q);
long family_orbit_oracle(int id, long q);

// Torus types w for which some W-conjugate of s lies in T0^{wF}.
std::vector<WeylElement> torus_types(const OracleClass& c, long q);
// Minisotropic / split-rank pattern of torus types, matched against the family outcome.
struct TorusPattern {
    bool has_minisotropic = false;
    bool has_other = false;
};
TorusPattern torus_pattern(const OracleClass& c, long q);

struct CuspidalCensus {
    long q = 0;
    std::map<int, long> class_counts;   // families 11, 13, 14
    std::map<int, long> contributions;  // regular cuspidals per family
    long theta10 = 1;
    long regular = 0;
    long total = 0;
    json to_json() const;
};
CuspidalCensus cuspidal_census(long q);
long regular_cuspidal_closed_form(long q);

// ---- Level zero ----

enum class ParahoricKind { special_Sp4, product_Sp2xSp2 };
struct ParahoricType {
    ParahoricKind kind = ParahoricKind::special_Sp4;
    bool sigma_regular = false;
    bool sigma_is_theta10 = false;
};
ParahoricType parahoric_from_json(const json& j);
// true = generic.
bool level_zero_decide(const ParahoricType& pt);

// ---- Bruhat cover over F_q ----

struct BruhatReport {
    long q = 0;
    bool exhaustive = false;
    long checked = 0;
    long failures = 0;
    std::map<int, long> cell_sizes;  // by Weyl length
    bool ok() const { return failures == 0; }
};
// Every g in Sp4(F_q) as b w u: b upper triangular, w a signed permutation matrix,
// u upper unipotent, all symplectic. Exhaustive when samples == 0 (q = 3 only).
BruhatReport bruhat_decomposition_check(long q, long samples, uint64_t seed);

}  // namespace sp4gen
