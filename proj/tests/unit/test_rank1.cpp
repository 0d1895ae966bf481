#include "perspectra/errors.hpp"
#include "perspectra/literals.hpp"
#include "perspectra/rank1.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace perspectra;

TEST_CASE("types") {
    auto t = parse_type("div{11}");
    CHECK(x_divides(t, 121));
    CHECK_FALSE(x_divides(t, 22));
    CHECK(x_divides(parse_type("all"), 6));
    CHECK(parse_type("codiv{2,5}").to_string() == "codiv{2,5}");
    CHECK(parse_type("div{}").is_integers());
    CHECK_THROWS_AS(parse_type("div{4}"), ParseError);
    CHECK_THROWS_AS(x_divides(t, 0), PreconditionError);
}

TEST_CASE("necessary condition and pair verification") {
    CHECK_FALSE(necessary_condition(RationalGroupType::integers()));
    CHECK(necessary_condition(parse_type("div{7}")));
    CHECK(necessary_condition(RationalGroupType::rationals()));
    CHECK(verify_summand_pair(parse_type("div{3}"), 2, 1, 1, 0, 1, 1));
    CHECK_FALSE(verify_summand_pair(RationalGroupType::integers(), 2, 5, 1, 0, 1, 1));
    CHECK_THROWS_AS(verify_summand_pair(parse_type("div{3}"), 2, 1, 1, 0, 0, 0), PreconditionError);
}

TEST_CASE("G + G decisions") {
    CHECK(gplusg_decide(RationalGroupType::rationals()).status == Rank1Status::Perspective);
    auto two = gplusg_decide(parse_type("codiv{2,5}"));
    CHECK(two.status == Rank1Status::Perspective);

    auto z = gplusg_decide(RationalGroupType::integers());
    CHECK(z.status == Rank1Status::NotPerspective);
    REQUIRE(z.certificate);
    CHECK(z.certificate->quad == Quadruple{2, 5, 1, 0});
    CHECK(replay_certificate(RationalGroupType::integers(), *z.certificate));

    auto seven = gplusg_decide(parse_type("div{7}"));
    CHECK(seven.status == Rank1Status::NotPerspective);
    REQUIRE(seven.certificate);
    CHECK(replay_certificate(parse_type("div{7}"), *seven.certificate));
    CHECK_FALSE(exhaustive_witness_search(parse_type("div{7}"), seven.certificate->quad, 200));
}

TEST_CASE("the 11-example") {
    auto t = parse_type("div{11}");
    auto cert = example_11_refute(t);
    CHECK(cert.valid());
    CHECK(cert.modulus == 10);
    CHECK(example_11_refute(t, 0).valid());
    CHECK_THROWS_AS(example_11_refute(parse_type("div{2,11}")), PreconditionError);
    auto v = gplusg_decide(t);
    CHECK(v.status == Rank1Status::NotPerspective);
}

namespace {
bool valid_quadruple(i64 m, i64 n, i64 k, i64 t) {
    if (std::gcd(m, n) != 1) return false;
    if (k == 0 && t == 0) return false;
    if ((k == 0 && t != 1) || (t == 0 && k != 1)) return false;
    return k == 0 || t == 0 || std::gcd(k, t) == 1;
}
} // namespace

TEST_CASE("table witnesses") {
    auto t = parse_type("codiv{2,5}");
    auto w4 = witness_U(t, 3, 7, 2, 5);
    CHECK(w4.s == 5);
    CHECK(w4.l == 2);
    auto w1 = witness_U(t, 3, 7, 9, 4);
    CHECK(w1.s == 0);
    CHECK(w1.l == 1);
    auto w7 = witness_U(t, 2, 5, 5, 2);
    CHECK(w7.s == 1);
    CHECK(w7.l == 1);
    CHECK_THROWS_AS(witness_U(t, 2, 4, 1, 1), PreconditionError);

    std::mt19937_64 rng(4);
    std::uniform_int_distribution<i64> d(0, 60);
    for (const char* ty : {"codiv{2,3}", "codiv{3,7}"}) {
        auto tt = parse_type(ty);
        int tried = 0;
        while (tried < 200) {
            i64 m = d(rng), n = d(rng), k = d(rng), q = d(rng);
            if (!valid_quadruple(m, n, k, q)) continue;
            ++tried;
            auto w = witness_U(tt, m, n, k, q);
            CHECK(verify_summand_pair(tt, m, n, k, q, w.s, w.l));
        }
    }
}
