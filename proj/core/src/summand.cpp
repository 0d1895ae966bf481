#include "perspectra/summand.hpp"

#include "perspectra/errors.hpp"
#include "perspectra/pgroup.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>

namespace perspectra {

bool is_pure(const Subgroup& s) {
    const FiniteAbelianGroup& g = s.group();
    const Subgroup whole = Subgroup::whole(g);
    for (i64 p : g.primes()) {
        int top = 0;
        for (int i = 0; i < g.rank(); ++i)
            if (g.prime_of(i) == p) top = std::max(top, g.exponent_of(i));
        i64 pj = 1;
        for (int j = 1; j < top; ++j) {
            pj *= p;
            if (subgroup_intersect(s, multiply(whole, pj)).order() != multiply(s, pj).order()) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Catalog

SubgroupCatalog::SubgroupCatalog(FiniteAbelianGroup g, i64 cap)
    : g_(g), idx_(g, std::max(cap, g.order())), subs_(enumerate_subgroups(g, cap)) {
    bits_.reserve(subs_.size());
    for (std::size_t i = 0; i < subs_.size(); ++i) {
        bits_.push_back(ElementSet::of(idx_, subs_[i]));
        by_order_[subs_[i].order()].push_back(static_cast<int>(i));
        by_basis_.emplace(subs_[i].basis(), static_cast<int>(i));
    }
}

std::size_t SubgroupCatalog::BasisHash::operator()(const std::vector<i64>& b) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (i64 x : b) h = (h ^ static_cast<std::uint64_t>(x)) * 0x100000001b3ULL;
    return static_cast<std::size_t>(h);
}

const std::vector<int>& SubgroupCatalog::of_order(i64 n) const {
    static const std::vector<int> none;
    auto it = by_order_.find(n);
    return it == by_order_.end() ? none : it->second;
}

int SubgroupCatalog::find(const Subgroup& s) const {
    if (!(s.group() == g_)) return -1;
    auto it = by_basis_.find(s.basis());
    return it == by_basis_.end() ? -1 : it->second;
}

std::optional<int> SubgroupCatalog::common_complement(const ElementSet& a, const ElementSet& c, i64 order_a,
                                                      std::int64_t* scanned) const {
    std::int64_t n = 0;
    std::optional<int> hit;
    for (int i : of_order(g_.order() / order_a)) {
        ++n;
        if (bits_[i].meets_trivially(a) && bits_[i].meets_trivially(c)) {
            hit = i;
            break;
        }
    }
    if (scanned) *scanned += n;
    return hit;
}

std::int64_t SubgroupCatalog::count_common_complements(const ElementSet& a, const ElementSet& c,
                                                       i64 order_a) const {
    std::int64_t n = 0;
    for (int i : of_order(g_.order() / order_a))
        if (bits_[i].meets_trivially(a) && bits_[i].meets_trivially(c)) ++n;
    return n;
}

// ---------------------------------------------------------------------------
// Summands

std::optional<Subgroup> is_summand(const Subgroup& s) {
    const FiniteAbelianGroup& g = s.group();
    if (s.is_trivial()) return Subgroup::whole(g);
    if (s.is_whole()) return Subgroup::trivial(g);
    if (!is_pure(s)) return std::nullopt;
    ComplementOptions opt;
    opt.trace = false;
    opt.fallback = false;
    opt.validate_inputs = false;
    try {
        Subgroup t = finite_common_complement(s, s, opt).complement;
        if (is_direct_sum(g, s, t)) return t;
    } catch (const Error&) {
    }
    return common_complement_bruteforce(s, s);
}

std::vector<SummandWitness> enumerate_summands(const SubgroupCatalog& cat) {
    std::vector<SummandWitness> out;
    const auto& subs = cat.subgroups();
    for (std::size_t i = 0; i < subs.size(); ++i) {
        // Summands are pure, so impure subgroups need no search.
        if (!is_pure(subs[i])) continue;
        if (auto j = cat.common_complement(cat.bits(static_cast<int>(i)), cat.bits(static_cast<int>(i)), subs[i].order()))
            out.push_back({subs[i], subs[*j]});
    }
    return out;
}

std::vector<SummandWitness> enumerate_summands(const FiniteAbelianGroup& g, i64 cap) {
    return enumerate_summands(SubgroupCatalog(g, cap));
}

// ---------------------------------------------------------------------------
// Diagonals

namespace {

Element combine(const FiniteAbelianGroup& g, std::span<const Element> gens, std::span<const i64> coef, std::size_t count) {
    Element x = Element::zero(g);
    for (std::size_t i = 0; i < count; ++i) x = x + gens[i].scaled(coef[i]);
    return x;
}

std::vector<Element> concat(std::vector<Element> a, const std::vector<Element>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

} // namespace

Subgroup diagonal(const Subgroup& h, const Subgroup& k, const Homomorphism& delta) {
    const FiniteAbelianGroup& g = h.group();
    if (!(k.group() == g) || !(delta.source() == g) || !(delta.target() == g))
        throw PreconditionError("diagonal: H, K and delta must live on the same group");
    if (!is_direct_sum(g, h, k)) throw PreconditionError("diagonal: G is not H ⊕ K");
    if (!delta.is_valid()) throw PreconditionError("diagonal: delta is not well defined");
    const Subgroup img = delta.image_of(h);
    if (img.order() < h.order()) throw PreconditionError("diagonal: delta is not injective on H (kernel nonzero)");
    if (!(img == k)) throw PreconditionError("diagonal: delta(H) != K (image proper)");
    std::vector<Element> gens;
    for (const auto& x : h.generators()) gens.push_back(x + delta.apply(x));
    Subgroup d = Subgroup::generated(g, gens);
    if (!is_direct_sum(g, h, d) || !is_direct_sum(g, k, d)) throw std::logic_error("diagonal: postcondition failed");
    return d;
}

Homomorphism extend_by_zero(const Subgroup& h, const Subgroup& k, std::span<const Element> h_gens,
                            std::span<const Element> images) {
    const FiniteAbelianGroup& g = h.group();
    if (h_gens.size() != images.size()) throw PreconditionError("extend_by_zero: one image per generator");
    if (!is_direct_sum(g, h, k)) throw PreconditionError("extend_by_zero: G is not H ⊕ K");
    const std::vector<Element> hk = concat(std::vector<Element>(h_gens.begin(), h_gens.end()), k.generators());
    std::vector<Element> cols;
    for (int j = 0; j < g.rank(); ++j) {
        auto c = solve_in_span(hk, Element::basis(g, j));
        if (!c) throw std::logic_error("extend_by_zero: H and K do not span G");
        cols.push_back(combine(g, images, *c, images.size()));
    }
    Homomorphism f = g.is_trivial() ? Homomorphism::zero(g, g) : Homomorphism::from_images(g, cols);
    if (!f.is_valid()) throw PreconditionError("extend_by_zero: images do not define a homomorphism");
    for (std::size_t i = 0; i < h_gens.size(); ++i)
        if (!(f.apply(h_gens[i]) == images[i]))
            throw PreconditionError("extend_by_zero: images do not define a homomorphism on H");
    return f;
}

Homomorphism diagonal_inverse(const Subgroup& h, const Subgroup& k, const Subgroup& d) {
    const FiniteAbelianGroup& g = h.group();
    if (!is_direct_sum(g, h, k)) throw PreconditionError("diagonal_inverse: G is not H ⊕ K");
    if (!is_direct_sum(g, d, h)) throw PreconditionError("diagonal_inverse: D is not a complement of H");
    if (!is_direct_sum(g, d, k)) throw PreconditionError("diagonal_inverse: D is not a complement of K");
    // For x in H write x = d + k' (G = D ⊕ K); then delta(x) = -k'.
    const std::vector<Element> hg = h.generators();
    const std::vector<Element> kg = k.generators();
    const std::vector<Element> dk = concat(d.generators(), kg);
    const std::size_t nd = dk.size() - kg.size();
    std::vector<Element> images;
    for (const auto& x : hg) {
        auto c = solve_in_span(dk, x);
        if (!c) throw std::logic_error("diagonal_inverse: D and K do not span G");
        Element kpart = Element::zero(g);
        for (std::size_t i = 0; i < kg.size(); ++i) kpart = kpart + kg[i].scaled((*c)[nd + i]);
        images.push_back(-kpart);
    }
    return extend_by_zero(h, k, hg, images);
}

// ---------------------------------------------------------------------------
// Oracle

std::optional<Subgroup> common_complement_bruteforce(const Subgroup& a, const Subgroup& c, i64 cap) {
    if (!(a.group() == c.group())) throw PreconditionError("common complement: ambient groups differ");
    if (!(iso_invariants(a) == iso_invariants(c)))
        throw PreconditionError("common complement: A and C are not isomorphic");
    const SubgroupCatalog cat(a.group(), cap);
    const auto& idx = cat.index();
    auto hit = cat.common_complement(ElementSet::of(idx, a), ElementSet::of(idx, c), a.order());
    if (!hit) return std::nullopt;
    return cat.subgroups()[*hit];
}

bool is_internal_direct_sum(const Subgroup& h, std::span<const Subgroup> parts) {
    i64 prod = 1;
    Subgroup sum = Subgroup::trivial(h.group());
    for (const auto& s : parts) {
        if (!h.contains(s)) return false;
        prod = checked_mul(prod, s.order());
        if (prod > h.order()) return false;
        sum = subgroup_sum(sum, s);
    }
    return prod == h.order() && sum == h;
}

Subgroup restrict_complement(const Subgroup& h, const Subgroup& s, const Subgroup& l, const Subgroup& m) {
    const FiniteAbelianGroup& g = h.group();
    if (!is_summand(h)) throw PreconditionError("restrict_complement: H is not a summand of G");
    if (!h.contains(s)) throw PreconditionError("restrict_complement: S is not contained in H");
    if (!h.contains(l)) throw PreconditionError("restrict_complement: L is not contained in H");
    if (!is_direct_sum(g, s, m)) throw PreconditionError("restrict_complement: G != S ⊕ M");
    if (!is_direct_sum(g, l, m)) throw PreconditionError("restrict_complement: G != L ⊕ M");
    Subgroup mh = subgroup_intersect(m, h);
    const Subgroup sp[] = {s, mh}, lp[] = {l, mh};
    if (!is_internal_direct_sum(h, sp) || !is_internal_direct_sum(h, lp))
        throw std::logic_error("restrict_complement: modular law violated");
    return mh;
}

PerspectivityReport is_perspective_bruteforce(const SubgroupCatalog& cat, const std::vector<SummandWitness>& summands) {
    const auto t0 = std::chrono::steady_clock::now();
    PerspectivityReport rep;
    rep.group = cat.group().to_string();
    rep.summands = static_cast<std::int64_t>(summands.size());

    std::map<std::vector<PrimePower>, std::vector<int>> classes;
    for (const auto& w : summands) classes[iso_invariants(w.subgroup).parts()].push_back(cat.find(w.subgroup));
    for (const auto& [inv, members] : classes) {
        for (std::size_t i = 0; i < members.size() && rep.perspective; ++i)
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                ++rep.pairs_checked;
                const auto& sa = cat.subgroups()[members[i]];
                if (!cat.common_complement(cat.bits(members[i]), cat.bits(members[j]), sa.order(),
                                           &rep.candidates_scanned)) {
                    rep.perspective = false;
                    rep.counterexample.emplace(sa, cat.subgroups()[members[j]]);
                    break;
                }
            }
        if (!rep.perspective) break;
    }
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

PerspectivityReport is_perspective_bruteforce(const FiniteAbelianGroup& g, i64 cap) {
    if (g.order() > cap) throw CapExceeded("perspectivity sweep of order " + std::to_string(g.order()), cap);
    const auto t0 = std::chrono::steady_clock::now();
    const SubgroupCatalog cat(g, std::max(cap, default_caps().subgroup_enum));
    auto rep = is_perspective_bruteforce(cat, enumerate_summands(cat));
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

std::string PerspectivityReport::to_json() const {
    nlohmann::json j{{"group", group},
                     {"status", perspective ? "perspective" : "counterexample"},
                     {"summands", summands},
                     {"pairs_checked", pairs_checked},
                     {"candidates_scanned", candidates_scanned},
                     {"elapsed_ms", elapsed_ms}};
    if (counterexample)
        j["counterexample"] = {{"A", counterexample->first.to_string()}, {"C", counterexample->second.to_string()}};
    return j.dump();
}

} // namespace perspectra
