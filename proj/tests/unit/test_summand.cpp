#include "perspectra/errors.hpp"
#include "perspectra/literals.hpp"
#include "perspectra/summand.hpp"

#include <doctest.h>

using namespace perspectra;

namespace {
struct Ctx {
    GroupLiteral lit;
    explicit Ctx(const char* g) : lit(parse_group(g)) {}
    Subgroup sub(const char* s) const { return parse_subgroup(lit, s); }
    const FiniteAbelianGroup& g() const { return lit.group(); }
};
} // namespace

TEST_CASE("summand test by purity") {
    Ctx z("Z2+Z4");
    CHECK_FALSE(is_summand(z.sub("gens[(0,2)]")));
    auto u = is_summand(z.sub("gens[(1,2)]"));
    REQUIRE(u);
    CHECK(is_direct_sum(z.g(), z.sub("gens[(1,2)]"), *u));
    CHECK(is_summand(Subgroup::whole(z.g()))->is_trivial());
    CHECK_FALSE(common_complement_bruteforce(z.sub("gens[(0,2)]"), z.sub("gens[(0,2)]")));
}

TEST_CASE("summand enumeration") {
    CHECK(enumerate_summands(parse_group("Z2+Z2").group()).size() == 5);
    CHECK(enumerate_summands(parse_group("Z4").group()).size() == 2);
    CHECK(enumerate_summands(FiniteAbelianGroup()).size() == 1);
    CHECK_THROWS_AS(enumerate_summands(parse_group("Z2+Z2+Z2+Z2+Z2+Z2+Z2+Z2+Z2+Z2+Z2").group(), 1024), CapExceeded);
}

TEST_CASE("diagonals of H + K") {
    Ctx z("Z3+Z3");
    auto h = z.sub("gens[(1,0)]"), k = z.sub("gens[(0,1)]");
    std::vector<Element> hg{z.lit.to_canonical(std::vector<i64>{1, 0})};
    auto delta = [&](i64 c) {
        std::vector<Element> img{z.lit.to_canonical(std::vector<i64>{0, c})};
        return extend_by_zero(h, k, hg, img);
    };
    auto d1 = diagonal(h, k, delta(1));
    CHECK(d1 == z.sub("gens[(1,1)]"));
    CHECK(is_direct_sum(z.g(), h, d1));
    CHECK(is_direct_sum(z.g(), k, d1));
    CHECK(diagonal(h, k, delta(2)) == z.sub("gens[(1,2)]"));
    CHECK_THROWS_AS(diagonal(h, k, delta(0)), PreconditionError);

    auto back = diagonal_inverse(h, k, z.sub("gens[(1,1)]"));
    CHECK(back.apply(z.lit.to_canonical(std::vector<i64>{1, 0})) == z.lit.to_canonical(std::vector<i64>{0, 1}));
    CHECK(diagonal_inverse(h, k, z.sub("gens[(1,2)]")).apply(z.lit.to_canonical(std::vector<i64>{1, 0})) ==
          z.lit.to_canonical(std::vector<i64>{0, 2}));
    CHECK_THROWS_AS(diagonal_inverse(h, k, h), PreconditionError);
}

TEST_CASE("restricting a complement to H") {
    Ctx z("Z2+Z2+Z2");
    auto h = z.sub("gens[(1,0,0);(0,1,0)]");
    auto s = z.sub("gens[(1,0,0)]");
    auto l = z.sub("gens[(1,1,0)]");
    auto m = z.sub("gens[(0,1,0);(0,0,1)]");
    auto r = restrict_complement(h, s, l, m);
    CHECK(r == z.sub("gens[(0,1,0)]"));
    CHECK(restrict_complement(Subgroup::whole(z.g()), s, l, m) == m);
}

TEST_CASE("small groups are perspective by exhaustion") {
    for (const char* g : {"Z2+Z2", "Z8+Z2", "Z9", "Z4+Z2+Z2"}) {
        auto rep = is_perspective_bruteforce(parse_group(g).group());
        CHECK_MESSAGE(rep.perspective, g);
    }
}

TEST_CASE("the diagonal correspondence round-trips on Z4 + Z4") {
    Ctx z("Z4+Z4");
    auto h = z.sub("gens[(1,0)]"), k = z.sub("gens[(0,1)]");
    std::vector<Element> hg{z.lit.to_canonical(std::vector<i64>{1, 0})};
    int bijections = 0;
    for (i64 c : {1, 3}) {
        std::vector<Element> img{z.lit.to_canonical(std::vector<i64>{0, c})};
        auto delta = extend_by_zero(h, k, hg, img);
        auto d = diagonal(h, k, delta);
        CHECK(diagonal_inverse(h, k, d) == delta);
        ++bijections;
    }
    CHECK(bijections == 2);
}
