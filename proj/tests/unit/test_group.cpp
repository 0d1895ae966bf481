#include "perspectra/catalog.hpp"
#include "perspectra/element_set.hpp"
#include "perspectra/errors.hpp"
#include "perspectra/group.hpp"
#include "perspectra/lattice.hpp"
#include "perspectra/literals.hpp"

#include <doctest.h>

using namespace perspectra;

namespace {
FiniteAbelianGroup grp(std::vector<i64> o) { return FiniteAbelianGroup::from_orders(o); }
Element el(const FiniteAbelianGroup& g, std::vector<i64> c) { return Element(g, std::move(c)); }
} // namespace

TEST_CASE("groups are stored in canonical form") {
    CHECK(grp({12}).factors() == std::vector<i64>{4, 3});
    CHECK(grp({}).order() == 1);
    auto g = grp({2, 4, 9});
    CHECK(g.factors() == std::vector<i64>{4, 2, 9});
    CHECK(g.order() == 72);
    CHECK_THROWS_AS(FiniteAbelianGroup::from_canonical_factors({6}), PreconditionError);
}

TEST_CASE("element order and p-height") {
    auto g = grp({4, 2});
    CHECK(element_order(el(g, {1, 1})) == 4);
    CHECK(element_order(el(g, {0, 0})) == 1);
    CHECK(element_order(el(g, {2, 1})) == 2);

    auto h = GroupLiteral({2, 4});
    CHECK(p_height(h.to_canonical(std::vector<i64>{0, 2}), 2) == 1);
    CHECK(p_height(h.to_canonical(std::vector<i64>{1, 2}), 2) == 0);
    CHECK_FALSE(p_height(Element::zero(g), 2).has_value());
}

TEST_CASE("homomorphism validity and idempotents") {
    auto z2 = grp({2}), z4 = grp({4});
    CHECK(Homomorphism(z2, z4, {2}).is_valid());
    auto bad = Homomorphism(z2, z4, {1}).first_violation();
    REQUIRE(bad);
    CHECK(bad->row == 0);
    CHECK(bad->col == 0);
    auto g = grp({4, 2});
    CHECK(Homomorphism::identity(g).is_valid());

    auto v = grp({2, 2});
    Homomorphism pr(v, v, {1, 0, 0, 0});
    CHECK(pr.apply(el(v, {1, 1})) == el(v, {1, 0}));
    CHECK(pr.is_idempotent());
    auto w = grp({4, 4});
    CHECK_FALSE(Homomorphism(w, w, {2, 0, 0, 0}).is_idempotent());
}

TEST_CASE("subgroups, sums, intersections and invariants") {
    auto g = grp({4, 2});
    std::vector<Element> gens{el(g, {2, 0}), el(g, {0, 1})};
    auto s = Subgroup::generated(g, gens);
    CHECK(s.order() == 4);
    CHECK(iso_invariants(s).to_string() == IsoInvariants({{2, 1}, {2, 1}}).to_string());
    CHECK(Subgroup::generated(g, std::vector<Element>{}).is_trivial());
    CHECK(Subgroup::generated(g, std::vector<Element>{el(g, {1, 0}), el(g, {0, 1})}).is_whole());

    auto v = grp({2, 2});
    auto x = Subgroup::generated(v, std::vector<Element>{el(v, {1, 0})});
    auto y = Subgroup::generated(v, std::vector<Element>{el(v, {0, 1})});
    auto d = Subgroup::generated(v, std::vector<Element>{el(v, {1, 1})});
    CHECK(subgroup_sum(x, y).is_whole());
    CHECK(subgroup_intersect(x, d).is_trivial());
    CHECK(is_direct_sum(v, x, y));
    CHECK_FALSE(is_direct_sum(v, x, x));

    CHECK(iso_invariants(Subgroup::whole(g)) == IsoInvariants({{2, 2}, {2, 1}}));
    CHECK(iso_invariants(Subgroup::generated(g, std::vector<Element>{el(g, {1, 1})})) == IsoInvariants({{2, 2}}));
    CHECK(iso_invariants(Subgroup::generated(g, std::vector<Element>{el(g, {2, 1})})) == IsoInvariants({{2, 1}}));
}

TEST_CASE("written coordinates map through the canonical form") {
    auto lit = parse_group("Z2+Z4");
    auto a = parse_subgroup(lit, "gens[(1,2)]");
    auto b = parse_subgroup(lit, "gens[(0,1)]");
    CHECK(is_direct_sum(lit.group(), a, b));
    CHECK(format_subgroup(lit, b) == "gens[(0,1)]");

    auto mixed = parse_group("Z6+Z4");
    auto x = parse_element(mixed, "(5,3)");
    CHECK(format_element(mixed, x) == "(5,3)");
    CHECK(element_order(x) == 12);
}

TEST_CASE("Hermite lattices agree with subgroup enumeration") {
    auto g = grp({8, 4, 2});
    ElementIndex idx(g);
    const auto subs = enumerate_subgroups(g);
    for (const auto& s : subs) {
        auto bits = ElementSet::of(idx, s);
        CHECK(bits.count() == s.order());
        for (const auto& t : subs) {
            if (t.order() > 4) continue;
            auto inter = subgroup_intersect(s, t);
            CHECK(inter.order() == [&] {
                int n = 0;
                auto tb = ElementSet::of(idx, t);
                for (int i = 0; i < idx.size(); ++i) n += bits.test(i) && tb.test(i);
                return n;
            }());
        }
    }
}

TEST_CASE("solve_combination finds coefficients or refuses") {
    std::vector<i64> mods{4, 2};
    std::vector<std::vector<i64>> gens{{2, 0}, {0, 1}};
    std::vector<i64> t{2, 1};
    auto c = solve_combination(gens, mods, t);
    REQUIRE(c);
    std::vector<i64> t2{1, 0};
    CHECK_FALSE(solve_combination(gens, mods, t2));
}

TEST_CASE("catalog counts abelian groups by partitions") {
    CHECK(abelian_groups_up_to(1).size() == 1);
    CHECK(abelian_groups_of_order(16).size() == 5);
    CHECK(abelian_groups_of_order(72).size() == 6);
    CHECK(abelian_groups_up_to(16).size() == 25);
    std::size_t n128 = abelian_groups_up_to(128).size();
    CHECK(n128 > 0);
}

TEST_CASE("literals reject malformed input with a position") {
    try {
        parse_group("Z4+Y2");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 3);
    }
    auto lit = parse_group("Z4+Z2+Z9");
    CHECK_THROWS_AS(parse_subgroup(lit, "gens[(1,0)]"), ParseError);
    CHECK_THROWS_AS(parse_element(lit, "(1,0,0"), ParseError);
    CHECK(parse_group(lit.group().to_string()).group() == lit.group());
}
