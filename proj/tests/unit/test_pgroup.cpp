#include "perspectra/errors.hpp"
#include "perspectra/fp_subspace.hpp"
#include "perspectra/literals.hpp"
#include "perspectra/pgroup.hpp"
#include "perspectra/summand.hpp"

#include <doctest.h>

#include <random>

using namespace perspectra;

namespace {

bool complements_both(const Subgroup& a, const Subgroup& c, const Subgroup& u) {
    return is_direct_sum(a.group(), a, u) && is_direct_sum(a.group(), c, u);
}

// Random summand with the given cyclic type, as the image of a random automorphism-ish map.
std::pair<Subgroup, Subgroup> random_iso_pair(const FiniteAbelianGroup& g, std::mt19937_64& rng) {
    auto summands = enumerate_summands(g);
    std::uniform_int_distribution<std::size_t> pick(0, summands.size() - 1);
    while (true) {
        const auto& a = summands[pick(rng)].subgroup;
        const auto& c = summands[pick(rng)].subgroup;
        if (iso_invariants(a) == iso_invariants(c)) return {a, c};
    }
}

} // namespace

TEST_CASE("field complements") {
    auto a = make_fp_subspace(2, 2, {{1, 0}});
    auto c = make_fp_subspace(2, 2, {{0, 1}});
    CHECK(fp_common_complement(a, c) == make_fp_subspace(2, 2, {{1, 1}}));
    CHECK(fp_common_complement(a, a) == make_fp_subspace(2, 2, {{0, 1}}));

    std::mt19937_64 rng(3);
    for (int it = 0; it < 50; ++it) {
        std::vector<std::vector<i64>> ra, rc;
        for (int i = 0; i < 2; ++i) {
            ra.push_back({});
            rc.push_back({});
            for (int j = 0; j < 4; ++j) {
                ra.back().push_back(static_cast<i64>(rng() % 3));
                rc.back().push_back(static_cast<i64>(rng() % 3));
            }
        }
        auto x = make_fp_subspace(3, 4, ra), y = make_fp_subspace(3, 4, rc);
        if (x.dim() != y.dim()) continue;
        auto w = fp_common_complement(x, y);
        CHECK(is_direct_complement(x, w));
        CHECK(is_direct_complement(y, w));
    }
}

TEST_CASE("homocyclic lift") {
    auto z = parse_group("Z4+Z4");
    auto a = parse_subgroup(z, "gens[(1,0)]"), c = parse_subgroup(z, "gens[(1,2)]");
    auto u = homocyclic_common_complement(a, c);
    CHECK(u == parse_subgroup(z, "gens[(0,1)]"));
    CHECK(homocyclic_common_complement(a, a) == parse_subgroup(z, "gens[(0,1)]"));

    auto z8 = parse_group("Z8+Z8+Z8").group();
    std::mt19937_64 rng(8);
    for (int it = 0; it < 20; ++it) {
        auto [x, y] = random_iso_pair(z8, rng);
        CHECK(complements_both(x, y, homocyclic_common_complement(x, y)));
    }
    CHECK_THROWS_AS(homocyclic_common_complement(parse_subgroup(parse_group("Z2+Z4"), "gens[(1,0)]"),
                                                 parse_subgroup(parse_group("Z2+Z4"), "gens[(1,0)]")),
                    PreconditionError);
}

TEST_CASE("p-group recursion") {
    auto z = parse_group("Z2+Z4");
    auto a = parse_subgroup(z, "gens[(1,0)]"), c = parse_subgroup(z, "gens[(1,2)]");
    auto r = pgroup_common_complement(a, c);
    CHECK(r.complement == parse_subgroup(z, "gens[(0,1)]"));
    CHECK_FALSE(r.trace.fallback_used);
    CHECK_FALSE(r.trace.steps.empty());
    CHECK(common_complement_bruteforce(a, c).has_value());

    auto v = parse_group("Z2+Z2");
    CHECK(pgroup_common_complement(parse_subgroup(v, "gens[(1,0)]"), parse_subgroup(v, "gens[(0,1)]")).complement ==
          parse_subgroup(v, "gens[(1,1)]"));

    CHECK_THROWS_AS(pgroup_common_complement(a, parse_subgroup(z, "gens[(0,1)]")), PreconditionError);

    auto big = parse_group("Z2+Z4+Z8").group();
    std::mt19937_64 rng(11);
    for (int it = 0; it < 40; ++it) {
        auto [x, y] = random_iso_pair(big, rng);
        auto res = pgroup_common_complement(x, y, {.trace = true, .fallback = false});
        CHECK(complements_both(x, y, res.complement));
        CHECK(common_complement_bruteforce(x, y).has_value());
    }
}

TEST_CASE("primary dispatch") {
    auto z = parse_group("Z2+Z2+Z9");
    auto a = parse_subgroup(z, "gens[(1,0,0)]"), c = parse_subgroup(z, "gens[(1,1,0)]");
    auto r = finite_common_complement(a, c);
    CHECK(complements_both(a, c, r.complement));
    CHECK(r.complement.order() == 18);

    auto cyc = parse_group("Z12").group();
    auto t = Subgroup::trivial(cyc);
    CHECK(finite_common_complement(t, t).complement.is_whole());

    auto m = parse_group("Z4+Z3+Z3").group();
    std::mt19937_64 rng(5);
    for (int it = 0; it < 20; ++it) {
        auto [x, y] = random_iso_pair(m, rng);
        CHECK(complements_both(x, y, finite_common_complement(x, y).complement));
    }
}

TEST_CASE("Ulm-Kaplansky invariants") {
    auto g = parse_group("Z2+Z4+Z4+Z8").group();
    CHECK(ulm_kaplansky(g, 2, 0) == 1);
    CHECK(ulm_kaplansky(g, 2, 1) == 2);
    CHECK(ulm_kaplansky(g, 2, 2) == 1);
    CHECK(ulm_kaplansky(g, 2, 3) == 0);
    CHECK(ulm_kaplansky(g, 3, 1) == 0);
}
