#include "perspectra/errors.hpp"
#include "perspectra/literals.hpp"
#include "perspectra/ring.hpp"

#include <doctest.h>

using namespace perspectra;

namespace {
std::size_t scanned_idempotents(const FiniteRing& r) {
    std::size_t n = 0;
    for (const auto& x : r.elements())
        if (r.mul(x, x) == x) ++n;
    return n;
}
} // namespace

TEST_CASE("idempotents") {
    auto z6 = FiniteRing::zn(6);
    std::vector<std::string> got;
    for (const auto& e : z6.idempotents()) got.push_back(z6.element_to_string(e));
    CHECK(got == std::vector<std::string>{"0", "1", "3", "4"});

    auto m2 = parse_ring("Mat(2,Zn(2))");
    CHECK(m2.size() == 16);
    CHECK(m2.idempotents().size() == 8);

    for (const char* g : {"End(Z4+Z2)", "End(Z2+Z2+Z2)", "End(Z4+Z2+Z3)", "End(Z8+Z2)"}) {
        auto r = parse_ring(g);
        CHECK_MESSAGE(r.idempotents().size() == scanned_idempotents(r), g);
    }
    auto p = parse_ring("prod[Zn(6);Mat(2,Zn(2))]");
    CHECK(p.idempotents().size() == 4 * 8);
}

TEST_CASE("endomorphism rings") {
    auto g = parse_group("Z2+Z4").group();
    CHECK(end_ring_cardinality(g) == 32);
    auto r = FiniteRing::end_ring(g);
    CHECK(r.size() == 32);

    // Every valid matrix appears exactly once.
    std::size_t valid = 0;
    for (i64 a = 0; a < 4; ++a)
        for (i64 b = 0; b < 4; ++b)
            for (i64 c = 0; c < 2; ++c)
                for (i64 d = 0; d < 2; ++d) valid += Homomorphism(g, g, {a, b, c, d}).is_valid();
    CHECK(valid == 32);
    for (const auto& x : r.elements()) CHECK(r.from_homomorphism(r.to_homomorphism(x)) == x);

    // Composition matches the ring product.
    auto el = r.elements();
    for (std::size_t i = 0; i < el.size(); i += 3)
        for (std::size_t j = 0; j < el.size(); j += 5)
            CHECK(r.to_homomorphism(r.mul(el[i], el[j])) ==
                  compose(r.to_homomorphism(el[i]), r.to_homomorphism(el[j])));

    // Mixed primes: End(Z4 + Z3) = End(Z4) x End(Z3).
    CHECK(parse_ring("End(Z4+Z3)").size() == 12);
    CHECK(parse_ring("End(Z4+Z3)").is_commutative());
    CHECK_THROWS_AS(FiniteRing::end_ring(parse_group("Z2+Z2+Z2+Z2").group(), 4096), CapExceeded);
}

TEST_CASE("units and corners") {
    auto m2 = parse_ring("Mat(2,Zn(2))");
    int units = 0;
    for (const auto& x : m2.elements()) units += m2.is_unit(x);
    CHECK(units == 6);

    auto e = m2.from_homomorphism(Homomorphism(parse_group("Z2+Z2").group(), parse_group("Z2+Z2").group(), {1, 0, 0, 0}));
    auto c = m2.corner(e);
    CHECK(c.size() == 2);
    CHECK(units_of_corner(m2, e, e));
    CHECK_FALSE(units_of_corner(m2, e, m2.zero()));
    auto nil = m2.from_homomorphism(
        Homomorphism(parse_group("Z2+Z2").group(), parse_group("Z2+Z2").group(), {0, 1, 0, 0}));
    CHECK_THROWS_AS(m2.corner(nil), PreconditionError);
}

TEST_CASE("the corner-unit condition on small rings") {
    for (i64 n = 1; n <= 30; ++n) {
        auto r = FiniteRing::zn(n);
        CHECK(check_condition4(r).holds);
        CHECK(check_condition4_bruteforce(r).holds);
        CHECK(check_condition4_bruteforce(r, 4096, true).holds);
    }
    auto m2 = parse_ring("Mat(2,Zn(2))");
    CHECK(check_condition4_bruteforce(m2).holds);
    CHECK(check_condition4(m2).holds);
    CHECK(check_condition4(m2, {.identity_shortcut = false}).holds);
    CHECK_THROWS_AS(check_condition4_bruteforce(m2, 4096, true), PreconditionError);

    CHECK(check_condition4(FiniteRing::product({})).holds);
    CHECK(check_condition4(parse_ring("prod[Zn(2);Zn(3)]")).holds);
    CHECK(check_condition4(parse_ring("prod[Zn(2);Mat(2,Zn(2))]")).holds);
    CHECK(check_condition4_bruteforce(parse_ring("prod[Zn(2);Mat(2,Zn(2))]")).holds);

    for (const char* g : {"End(Z4+Z2)", "End(Z8+Z2)", "End(Z4+Z4)", "End(Z2+Z2+Z2)", "End(Z9+Z3)"}) {
        auto r = parse_ring(g);
        CHECK_MESSAGE(check_condition4(r, {.identity_shortcut = false}).holds ==
                          check_condition4_bruteforce(r, 1 << 16).holds,
                      g);
    }
}

TEST_CASE("the corner-unit condition reports a counterexample when units are withheld") {
    auto m2 = parse_ring("Mat(2,Zn(2))");
    Condition4Options opt;
    opt.identity_shortcut = false;
    opt.unit_override = [](const RElem&, const RElem&) { return false; };
    auto res = check_condition4(m2, opt);
    CHECK_FALSE(res.holds);
    REQUIRE(res.counterexample);
    const auto& [e, r, s] = *res.counterexample;
    CHECK(m2.mul(m2.mul(m2.mul(e, r), s), e) == e);
}

TEST_CASE("ring literals round-trip") {
    for (const char* s : {"Zn(6)", "Mat(2,Zn(2))", "prod[Zn(2);Mat(2,Zn(2))]", "End(Z4+Z2)", "prod[]"})
        CHECK(parse_ring(s).name() == s);
    CHECK_THROWS_AS(parse_ring("Mat(2,Zn(6))"), PreconditionError);
    CHECK_THROWS_AS(parse_ring("Zn(6"), ParseError);
}

TEST_CASE("ER cross-check on small groups") {
    for (const char* g : {"Z2+Z2", "Z8", "Z2+Z4"}) {
        auto x = er_crosscheck(parse_group(g).group());
        CHECK_FALSE(x.skipped);
        CHECK(x.condition4);
        CHECK(x.perspective);
        CHECK(x.agree);
    }
}
