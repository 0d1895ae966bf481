#include "perspectra/pgroup.hpp"

#include "perspectra/lattice.hpp"
#include "perspectra/summand.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace perspectra {

std::string ComplementTrace::to_json() const {
    nlohmann::json j;
    j["fallback_used"] = fallback_used;
    j["anomalies"] = anomalies;
    auto& arr = j["steps"] = nlohmann::json::array();
    for (const auto& s : steps) {
        nlohmann::json e{{"tag", s.tag}, {"order", s.order}, {"group", s.group}};
        if (!s.a.empty()) e["A"] = s.a;
        if (!s.c.empty()) e["C"] = s.c;
        if (!s.note.empty()) e["note"] = s.note;
        arr.push_back(std::move(e));
    }
    return j.dump();
}

namespace {

struct Ctx {
    const ComplementOptions& opt;
    ComplementTrace& trace;

    void log(const char* tag, const Subgroup* a, const Subgroup* c, const FiniteAbelianGroup& g, std::string note = {}) {
        if (!opt.trace) return;
        ComplementStep s;
        s.tag = tag;
        s.order = g.order();
        s.group = g.to_string();
        if (a) s.a = a->to_string();
        if (c) s.c = c->to_string();
        s.note = std::move(note);
        trace.steps.push_back(std::move(s));
    }
    void anomaly(std::string what) { trace.anomalies.push_back(std::move(what)); }
};

FiniteAbelianGroup block_group(const FiniteAbelianGroup& g, std::span<const int> idx) {
    std::vector<i64> f;
    for (int i : idx) f.push_back(g.factor(i));
    return FiniteAbelianGroup::from_canonical_factors(std::move(f));
}

std::vector<i64> take(std::span<const i64> x, std::span<const int> idx) {
    std::vector<i64> out;
    out.reserve(idx.size());
    for (int i : idx) out.push_back(x[i]);
    return out;
}

/// Image of s under the coordinate projection onto idx.
Subgroup project(const Subgroup& s, std::span<const int> idx, const FiniteAbelianGroup& sub) {
    std::vector<std::vector<i64>> rows;
    for (const auto& r : s.generator_rows()) rows.push_back(take(r, idx));
    return Subgroup::from_coordinate_rows(sub, rows);
}

std::vector<i64> embed_row(std::span<const i64> x, std::span<const int> idx, int rank) {
    std::vector<i64> out(static_cast<std::size_t>(rank), 0);
    for (std::size_t k = 0; k < idx.size(); ++k) out[idx[k]] = x[k];
    return out;
}

Subgroup embed(const Subgroup& s, std::span<const int> idx, const FiniteAbelianGroup& g) {
    std::vector<std::vector<i64>> rows;
    for (const auto& r : s.generator_rows()) rows.push_back(embed_row(r, idx, g.rank()));
    return Subgroup::from_coordinate_rows(g, rows);
}

i64 exact_log(i64 x, i64 p) {
    int k = 0;
    while (x % p == 0) {
        x /= p;
        ++k;
    }
    if (x != 1) throw std::logic_error("exact_log: not a power");
    return k;
}

struct Homocyclic {
    Subgroup u;
    std::vector<std::vector<i64>> basis; // independent generators of order p^n
};

/// Basis of a free summand of Z(p^n)^m: generators of order p^n from a cyclic
/// decomposition. Nothing if the subgroup is not free.
std::optional<std::vector<std::vector<i64>>> free_basis(const Subgroup& s) {
    const i64 top = s.group().factor(0);
    std::vector<std::vector<i64>> out;
    for (const auto& cg : cyclic_decomposition(s)) {
        if (cg.order.value() != top) return std::nullopt;
        out.push_back(cg.generator.coords());
    }
    return out;
}

std::optional<Homocyclic> homocyclic_core(const Subgroup& a, const Subgroup& c, Ctx& ctx) {
    const FiniteAbelianGroup& g = a.group();
    const int m = g.rank();
    const i64 p = g.prime_of(0);

    std::vector<std::vector<i64>> arows, crows;
    if (g.exponent_of(0) == 1) {
        // Exponent p: the Hermite rows are already the echelon basis mod p.
        arows = a.generator_rows();
        crows = c.generator_rows();
    } else {
        auto ab = free_basis(a), cb = free_basis(c);
        if (!ab || !cb) {
            ctx.anomaly("homocyclic: input is not a free summand");
            return std::nullopt;
        }
        arows = std::move(*ab);
        crows = std::move(*cb);
    }

    std::vector<std::vector<i64>> wrows;
    if (p == 2 && m <= 32 && !ctx.opt.trace) {
        auto mask = [&](const std::vector<std::vector<i64>>& rows) {
            F2Space f(m);
            for (const auto& r : rows) {
                std::uint64_t v = 0;
                for (int j = 0; j < m; ++j)
                    if (r[j] & 1) v |= std::uint64_t{1} << j;
                f.insert(v);
            }
            return f;
        };
        const F2Space fa = mask(arows), fc = mask(crows);
        if (fa.dim() != static_cast<int>(arows.size()) || fc.dim() != static_cast<int>(crows.size()) ||
            fa.dim() != fc.dim()) {
            ctx.anomaly("homocyclic: reductions mod p are not independent");
            return std::nullopt;
        }
        for (auto v : f2_common_complement(fa, fc).basis()) {
            std::vector<i64> r(static_cast<std::size_t>(m));
            for (int j = 0; j < m; ++j) r[j] = (v >> j) & 1;
            wrows.push_back(std::move(r));
        }
    } else {
        const FpSubspace fa = make_fp_subspace(p, m, arows), fc = make_fp_subspace(p, m, crows);
        if (fa.dim() != static_cast<int>(arows.size()) || fc.dim() != static_cast<int>(crows.size()) ||
            fa.dim() != fc.dim()) {
            ctx.anomaly("homocyclic: reductions mod p are not independent");
            return std::nullopt;
        }
        const FpSubspace w = ctx.opt.trace ? field_common_complement(fa, fc, [&](FieldCase fc_, int dim) {
            ctx.log(field_case_name(fc_), nullptr, nullptr, g, "F_p dimension " + std::to_string(dim));
        })
                                           : fp_common_complement(fa, fc);
        wrows = w.rows();
    }
    Subgroup u = Subgroup::from_coordinate_rows(g, wrows);
    return Homocyclic{std::move(u), std::move(wrows)};
}

std::optional<Subgroup> pgroup_rec(const Subgroup& a, const Subgroup& c, Ctx& ctx) {
    const FiniteAbelianGroup& g = a.group();
    if (a.is_trivial()) return Subgroup::whole(g);
    if (a.is_whole()) return Subgroup::trivial(g);

    if (g.is_homocyclic()) {
        ctx.log("homocyclic lift", &a, &c, g);
        auto h = homocyclic_core(a, c, ctx);
        if (!h) return std::nullopt;
        return std::move(h->u);
    }

    const i64 p = g.prime_of(0);
    const i64 top = g.factor(0);
    int m = 0;
    while (m < g.rank() && g.factor(m) == top) ++m;
    std::vector<int> idx1(m), idx2(g.rank() - m);
    std::iota(idx1.begin(), idx1.end(), 0);
    std::iota(idx2.begin(), idx2.end(), m);
    const FiniteAbelianGroup g1 = block_group(g, idx1), g2 = block_group(g, idx2);

    // Socle of G1 = p^{n-1} G1.
    std::vector<std::vector<i64>> soc_rows;
    for (int i = 0; i < m; ++i) {
        std::vector<i64> r(static_cast<std::size_t>(g.rank()), 0);
        r[i] = top / p;
        soc_rows.push_back(std::move(r));
    }
    const Subgroup soc1 = Subgroup::from_coordinate_rows(g, soc_rows);
    const i64 ta = subgroup_intersect(a, soc1).order();
    const i64 tc = subgroup_intersect(c, soc1).order();
    if (ta != tc) {
        ctx.anomaly("socle dimensions of A and C in G1 differ");
        return std::nullopt;
    }
    const i64 k = exact_log(ta, p);

    if (k == 0) {
        // A, C meet G1 trivially: solve the projections in G2, add G1 back.
        const Subgroup a2 = project(a, idx2, g2), c2 = project(c, idx2, g2);
        ctx.log("quotient by G1", &a, &c, g, "A and C meet the top layer trivially");
        if (a2.order() != a.order() || c2.order() != c.order()) {
            ctx.anomaly("projection to G2 is not injective");
            return std::nullopt;
        }
        if (g2.order() >= g.order()) throw std::logic_error("recursion did not shrink the group");
        auto v2 = pgroup_rec(a2, c2, ctx);
        if (!v2) return std::nullopt;
        return subgroup_sum(embed(*v2, idx2, g), Subgroup::from_coordinate_rows(g, [&] {
                                std::vector<std::vector<i64>> rows;
                                for (int i : idx1) rows.push_back(Element::basis(g, i).coords());
                                return rows;
                            }()));
    }

    ctx.log("socle split", &a, &c, g, "k = " + std::to_string(k));
    // A1, C1: the Z(p^n)^k parts, spanned by top-order cyclic generators.
    auto top_part = [&](const Subgroup& s) {
        std::vector<std::vector<i64>> rows;
        for (const auto& cg : cyclic_decomposition(s))
            if (cg.order.value() == top) rows.push_back(take(cg.generator.coords(), idx1));
        return rows;
    };
    const auto a1 = top_part(a), c1 = top_part(c);
    if (static_cast<i64>(a1.size()) != k || static_cast<i64>(c1.size()) != k) {
        ctx.anomaly("top-order parts do not match the socle dimension");
        return std::nullopt;
    }
    const Subgroup pa1 = Subgroup::from_coordinate_rows(g1, a1), pc1 = Subgroup::from_coordinate_rows(g1, c1);
    if (pa1.order() != ipow(top, static_cast<int>(k)) || pc1.order() != pa1.order()) {
        ctx.anomaly("projection of A1 or C1 into G1 is not injective");
        return std::nullopt;
    }
    ctx.log("homocyclic lift", &pa1, &pc1, g1);
    auto h = homocyclic_core(pa1, pc1, ctx);
    if (!h) return std::nullopt;
    const auto& ub = h->basis;

    // W = U1 ⊕ G2 ≅ Z(p^n)^{m-k} ⊕ G2, with standard coordinates (u, g2).
    std::vector<i64> wf(ub.size(), top);
    wf.insert(wf.end(), g2.factors().begin(), g2.factors().end());
    const FiniteAbelianGroup gw = FiniteAbelianGroup::from_canonical_factors(wf);
    if (gw.order() >= g.order()) throw std::logic_error("recursion did not shrink the group");

    std::vector<std::vector<i64>> w_rows;
    for (const auto& u : ub) w_rows.push_back(embed_row(u, idx1, g.rank()));
    for (int i : idx2) w_rows.push_back(Element::basis(g, i).coords());
    const Subgroup wsub = Subgroup::from_coordinate_rows(g, w_rows);

    std::vector<i64> g1mods(g1.factors());
    auto to_w = [&](const Subgroup& s) -> std::optional<Subgroup> {
        std::vector<std::vector<i64>> rows;
        for (const auto& x : s.generator_rows()) {
            auto coef = solve_combination(ub, g1mods, take(x, idx1));
            if (!coef) return std::nullopt;
            auto rest = take(x, idx2);
            coef->insert(coef->end(), rest.begin(), rest.end());
            rows.push_back(std::move(*coef));
        }
        return Subgroup::from_coordinate_rows(gw, rows);
    };
    const auto a3 = to_w(subgroup_intersect(a, wsub));
    const auto c3 = to_w(subgroup_intersect(c, wsub));
    if (!a3 || !c3) {
        ctx.anomaly("A ∩ W does not lie in the span of the lifted basis");
        return std::nullopt;
    }
    auto vw = pgroup_rec(*a3, *c3, ctx);
    if (!vw) return std::nullopt;

    std::vector<std::vector<i64>> back;
    for (const auto& y : vw->generator_rows()) {
        std::vector<i64> x(static_cast<std::size_t>(g.rank()), 0);
        for (int j = 0; j < m; ++j) {
            i128 acc = 0;
            for (std::size_t i = 0; i < ub.size(); ++i) acc += static_cast<i128>(y[i]) * ub[i][j];
            x[j] = mod128(acc, top);
        }
        for (std::size_t t = 0; t < idx2.size(); ++t) x[idx2[t]] = y[ub.size() + t];
        back.push_back(std::move(x));
    }
    return Subgroup::from_coordinate_rows(g, back);
}

void validate(const Subgroup& a, const Subgroup& c, const ComplementOptions& opt) {
    if (!(a.group() == c.group())) throw PreconditionError("A and C live in different groups");
    if (a.order() != c.order()) throw PreconditionError("A and C are not isomorphic");
    if (opt.validate_inputs) {
        if (!(iso_invariants(a) == iso_invariants(c))) throw PreconditionError("A and C are not isomorphic");
        if (!is_pure(a)) throw PreconditionError("A is not a summand: no complement exists");
        if (!is_pure(c)) throw PreconditionError("C is not a summand: no complement exists");
    }
}

/// Elementary abelian 2-groups are F_2-spaces: the Hermite basis is the
/// echelon basis, so the whole computation stays on bitmasks and the
/// splittings are verified by rank. Coordinate i is bit m-1-i, which makes
/// the leading bit the leftmost coordinate.
std::optional<Subgroup> elementary2_complement(const Subgroup& a, const Subgroup& c) {
    const FiniteAbelianGroup& g = a.group();
    const int m = g.rank();
    auto mask = [&](const Subgroup& s) {
        F2Space f(m);
        const auto& b = s.basis();
        for (int i = 0; i < m; ++i) {
            if (b[static_cast<std::size_t>(i) * m + i] != 1) continue;
            std::uint64_t v = 0;
            for (int j = i; j < m; ++j)
                if (b[static_cast<std::size_t>(i) * m + j] & 1) v |= std::uint64_t{1} << (m - 1 - j);
            f.insert(v);
        }
        return f;
    };
    const F2Space fa = mask(a), fc = mask(c);
    if (fa.dim() != fc.dim()) return std::nullopt;
    const F2Space w = f2_common_complement(fa, fc);
    if (fa.dim() + w.dim() != m || f2_sum(fa, w).dim() != m || f2_sum(fc, w).dim() != m) return std::nullopt;
    std::vector<i64> basis(static_cast<std::size_t>(m) * m, 0);
    std::vector<bool> pivot(static_cast<std::size_t>(m), false);
    for (auto v : w.basis()) {
        const int i = m - 1 - (63 - std::countl_zero(v));
        pivot[i] = true;
        for (int j = i; j < m; ++j) basis[static_cast<std::size_t>(i) * m + j] = (v >> (m - 1 - j)) & 1;
    }
    for (int i = 0; i < m; ++i)
        if (!pivot[i]) basis[static_cast<std::size_t>(i) * m + i] = 2;
    return Subgroup::from_canonical_basis(g, std::move(basis), i64{1} << w.dim());
}

bool splits_both(const Subgroup& a, const Subgroup& c, const Subgroup& u) {
    const FiniteAbelianGroup& g = a.group();
    return is_direct_sum(g, a, u) && is_direct_sum(g, c, u);
}

ComplementResult finish(const Subgroup& a, const Subgroup& c, std::optional<Subgroup> u, Ctx& ctx) {
    if (u && splits_both(a, c, *u)) return {std::move(*u), std::move(ctx.trace)};
    ctx.anomaly(u ? "constructive complement failed verification" : "constructive path gave no complement");
    if (!ctx.opt.fallback) throw Error("constructive common complement failed and fallback is disabled");
    auto bf = common_complement_bruteforce(a, c, std::max<i64>(default_caps().subgroup_enum, a.group().order()));
    if (!bf) throw Error("no common complement exists for " + a.to_string() + " and " + c.to_string());
    ctx.trace.fallback_used = true;
    ctx.log("fallback", &a, &c, a.group());
    return {std::move(*bf), std::move(ctx.trace)};
}

} // namespace

FpSubspace reduce_mod_p(const Subgroup& s) {
    const FiniteAbelianGroup& g = s.group();
    if (!g.is_homocyclic() || g.is_trivial()) throw PreconditionError("reduce_mod_p: group is not homocyclic");
    auto b = free_basis(s);
    if (!b) throw PreconditionError("reduce_mod_p: subgroup is not free over Z/p^n");
    return make_fp_subspace(g.prime_of(0), g.rank(), std::move(*b));
}

Subgroup homocyclic_common_complement(const Subgroup& a, const Subgroup& c) {
    const FiniteAbelianGroup& g = a.group();
    if (!g.is_homocyclic()) throw PreconditionError("homocyclic_common_complement: group is not homocyclic");
    ComplementOptions opt;
    opt.trace = false;
    validate(a, c, opt);
    if (a.is_trivial()) return Subgroup::whole(g);
    ComplementTrace trace;
    Ctx ctx{opt, trace};
    auto h = homocyclic_core(a, c, ctx);
    if (!h || !splits_both(a, c, h->u)) throw std::logic_error("homocyclic lift failed verification");
    return h->u;
}

ComplementResult pgroup_common_complement(const Subgroup& a, const Subgroup& c, const ComplementOptions& opt) {
    if (!a.group().is_p_group()) throw PreconditionError("pgroup_common_complement: group is not a p-group");
    validate(a, c, opt);
    ComplementTrace trace;
    Ctx ctx{opt, trace};
    if (!opt.trace && a.group().rank() <= 32 && a.group().exponent() == 2) {
        if (auto u = elementary2_complement(a, c)) return {std::move(*u), std::move(trace)};
    }
    return finish(a, c, pgroup_rec(a, c, ctx), ctx);
}

ComplementResult finite_common_complement(const Subgroup& a, const Subgroup& c, const ComplementOptions& opt) {
    validate(a, c, opt);
    const FiniteAbelianGroup& g = a.group();
    ComplementTrace trace;
    Ctx ctx{opt, trace};
    if (!opt.trace && g.rank() <= 32 && g.exponent() == 2) {
        if (auto u = elementary2_complement(a, c)) return {std::move(*u), std::move(trace)};
    }
    if (g.is_p_group()) return finish(a, c, pgroup_rec(a, c, ctx), ctx);

    // Primary components are fully invariant: A = ⊕_p (A ∩ G_p) = ⊕_p π_p(A).
    std::optional<Subgroup> u = Subgroup::trivial(g);
    for (i64 p : g.primes()) {
        std::vector<int> idx;
        for (int i = 0; i < g.rank(); ++i)
            if (g.prime_of(i) == p) idx.push_back(i);
        const FiniteAbelianGroup gp = block_group(g, idx);
        const Subgroup ap = project(a, idx, gp), cp = project(c, idx, gp);
        ctx.log("primary dispatch", &ap, &cp, gp, "p = " + std::to_string(p));
        auto up = pgroup_rec(ap, cp, ctx);
        if (!up) {
            u.reset();
            break;
        }
        u = subgroup_sum(*u, embed(*up, idx, g));
    }
    return finish(a, c, std::move(u), ctx);
}

int ulm_kaplansky(const FiniteAbelianGroup& g, i64 p, int n) {
    if (!is_prime(p)) throw PreconditionError("ulm_kaplansky: p must be prime");
    if (n < 0) throw PreconditionError("ulm_kaplansky: n must be >= 0");
    const Subgroup whole = Subgroup::whole(g);
    auto layer = [&](int k) {
        i64 pk = 1;
        for (int i = 0; i < k; ++i) {
            pk *= p;
            if (pk > g.order()) return i64{1}; // p^k G has trivial p-part
        }
        return socle(multiply(whole, pk), p).order();
    };
    return static_cast<int>(exact_log(layer(n) / layer(n + 1), p));
}

} // namespace perspectra
