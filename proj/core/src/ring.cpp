#include "perspectra/ring.hpp"

#include "perspectra/errors.hpp"
#include "perspectra/lattice.hpp"
#include "perspectra/summand.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <limits>
#include <random>
#include <unordered_map>
#include <unordered_set>

namespace perspectra {

enum class RingKind { Zn, End, Product, Corner };

struct FiniteRing::Impl {
    RingKind kind = RingKind::Zn;
    std::string name;
    std::vector<i64> mods;
    std::vector<RElem> gens;   ///< Hermite rows of the carrier
    std::vector<i64> orders;   ///< gens[j] ranges over [0, orders[j])
    std::vector<i64> carrier;  ///< full Hermite basis (n×n)
    i64 size = 1;
    RElem one;

    std::optional<FiniteAbelianGroup> group;
    std::vector<int> ei, ej; ///< End(G): coordinate -> matrix entry
    std::vector<i64> scale;  ///< entry = coordinate · scale
    bool matrix_literal = false;

    std::vector<std::shared_ptr<const Impl>> factors;
    std::vector<int> offsets;

    std::shared_ptr<const Impl> parent;
};

struct RingAccess {
    static const FiniteRing::Impl& impl(const FiniteRing& r) { return *r.d_; }
    static std::shared_ptr<const FiniteRing::Impl> ptr(const FiniteRing& r) { return r.d_; }
    static FiniteRing make(std::shared_ptr<const FiniteRing::Impl> d) { return FiniteRing(std::move(d)); }
};

namespace {

using Impl = FiniteRing::Impl;

i64 mulmod(i64 a, i64 b, i64 m) { return static_cast<i64>((static_cast<i128>(a) * b) % m); }

void mul_raw(const Impl& d, const i64* a, const i64* b, i64* out) {
    switch (d.kind) {
    case RingKind::Zn:
        out[0] = mulmod(a[0], b[0], d.mods[0]);
        return;
    case RingKind::End: {
        const auto& f = d.group->factors();
        const int r = static_cast<int>(f.size());
        thread_local std::vector<i64> ma, mb;
        ma.assign(static_cast<std::size_t>(r) * r, 0);
        mb.assign(static_cast<std::size_t>(r) * r, 0);
        for (std::size_t c = 0; c < d.mods.size(); ++c) {
            ma[d.ei[c] * r + d.ej[c]] = a[c] * d.scale[c];
            mb[d.ei[c] * r + d.ej[c]] = b[c] * d.scale[c];
        }
        for (std::size_t c = 0; c < d.mods.size(); ++c) {
            const int i = d.ei[c], j = d.ej[c];
            i128 s = 0;
            for (int k = 0; k < r; ++k) s += static_cast<i128>(ma[i * r + k]) * mb[k * r + j];
            out[c] = static_cast<i64>(s % f[i]) / d.scale[c];
        }
        return;
    }
    case RingKind::Product:
        for (std::size_t i = 0; i < d.factors.size(); ++i) {
            const int o = d.offsets[i];
            mul_raw(*d.factors[i], a + o, b + o, out + o);
        }
        return;
    case RingKind::Corner:
        mul_raw(*d.parent, a, b, out);
        return;
    }
}

RElem mul_of(const Impl& d, const RElem& a, const RElem& b) {
    RElem out(d.mods.size(), 0);
    if (!out.empty()) mul_raw(d, a.data(), b.data(), out.data());
    return out;
}

RElem add_of(const std::vector<i64>& mods, const RElem& a, const RElem& b) {
    RElem out(mods.size());
    for (std::size_t i = 0; i < mods.size(); ++i) out[i] = (a[i] + b[i]) % mods[i];
    return out;
}

// An additive subgroup of the ambient group, in Hermite form.
struct Span {
    std::vector<i64> mods;
    std::vector<i64> basis;
    std::vector<RElem> rows;
    std::vector<i64> orders;
    i64 size = 1;
};

Span make_span(const std::vector<i64>& mods, const std::vector<RElem>& gens) {
    ModLattice lat(mods);
    for (const auto& g : gens) lat.insert(g);
    lat.normalize();
    Span s;
    s.mods = mods;
    s.basis = lat.data();
    for (int i = 0; i < lat.dim(); ++i) {
        if (lat.pivot(i) == mods[i]) continue;
        s.rows.emplace_back(lat.row(i).begin(), lat.row(i).end());
        s.orders.push_back(mods[i] / lat.pivot(i));
        s.size = checked_mul(s.size, s.orders.back());
    }
    return s;
}

Span span_from_basis(const std::vector<i64>& mods, std::vector<i64> basis) {
    ModLattice lat(mods, std::move(basis));
    lat.normalize();
    Span s;
    s.mods = mods;
    s.basis = lat.data();
    for (int i = 0; i < lat.dim(); ++i) {
        if (lat.pivot(i) == mods[i]) continue;
        s.rows.emplace_back(lat.row(i).begin(), lat.row(i).end());
        s.orders.push_back(mods[i] / lat.pivot(i));
        s.size = checked_mul(s.size, s.orders.back());
    }
    return s;
}

// Visits every element once; fn returns false to stop early.
template <class Fn>
bool for_each_element(const Span& s, Fn&& fn) {
    const std::size_t n = s.mods.size(), k = s.rows.size();
    RElem cur(n, 0);
    std::vector<i64> c(k, 0);
    while (true) {
        if (!fn(static_cast<const RElem&>(cur))) return false;
        std::size_t j = k;
        while (true) {
            if (j == 0) return true;
            --j;
            for (std::size_t i = 0; i < n; ++i) cur[i] = (cur[i] + s.rows[j][i]) % s.mods[i];
            if (++c[j] < s.orders[j]) break;
            // wrapped: subtract orders[j]·rows[j]
            for (std::size_t i = 0; i < n; ++i)
                cur[i] = mod(cur[i] - mulmod(s.orders[j] % s.mods[i], s.rows[j][i], s.mods[i]), s.mods[i]);
            c[j] = 0;
        }
    }
}

RElem combine(const std::vector<i64>& mods, const std::vector<RElem>& gens, const std::vector<i64>& coef) {
    RElem out(mods.size(), 0);
    for (std::size_t j = 0; j < gens.size(); ++j)
        for (std::size_t i = 0; i < mods.size(); ++i)
            out[i] = (out[i] + mulmod(mod(coef[j], mods[i]), gens[j][i], mods[i])) % mods[i];
    return out;
}

RElem random_element(const Span& s, std::mt19937_64& rng) {
    std::vector<i64> coef(s.rows.size());
    for (std::size_t j = 0; j < coef.size(); ++j)
        coef[j] = std::uniform_int_distribution<i64>(0, s.orders[j] - 1)(rng);
    return combine(s.mods, s.rows, coef);
}

// y in the span with x·y = target, if any.
std::optional<RElem> right_solve(const Impl& d, const RElem& x, const std::vector<RElem>& span_rows,
                                 const RElem& target) {
    std::vector<std::vector<i64>> imgs;
    imgs.reserve(span_rows.size());
    for (const auto& g : span_rows) imgs.push_back(mul_of(d, x, g));
    auto c = solve_combination(imgs, d.mods, target);
    if (!c) return std::nullopt;
    return combine(d.mods, span_rows, *c);
}

std::shared_ptr<Impl> finish(std::shared_ptr<Impl> d, const std::vector<RElem>& additive_gens) {
    Span s = make_span(d->mods, additive_gens);
    d->gens = std::move(s.rows);
    d->orders = std::move(s.orders);
    d->carrier = std::move(s.basis);
    d->size = s.size;
    return d;
}

std::vector<RElem> unit_vectors(std::size_t n) {
    std::vector<RElem> out(n, RElem(n, 0));
    for (std::size_t i = 0; i < n; ++i) out[i][i] = 1;
    return out;
}

std::string join_matrix(const std::vector<i64>& m, int r) {
    std::string s = "[";
    for (int i = 0; i < r; ++i) {
        if (i) s += ',';
        s += '[';
        for (int j = 0; j < r; ++j) {
            if (j) s += ',';
            s += std::to_string(m[i * r + j]);
        }
        s += ']';
    }
    return s + "]";
}

std::vector<i64> end_matrix(const Impl& d, const RElem& x) {
    const int r = d.group->rank();
    std::vector<i64> m(static_cast<std::size_t>(r) * r, 0);
    for (std::size_t c = 0; c < d.mods.size(); ++c) m[d.ei[c] * r + d.ej[c]] = x[c] * d.scale[c];
    return m;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

// ---------------------------------------------------------------------------
// Construction

FiniteRing FiniteRing::zn(i64 n) {
    if (n < 1) throw PreconditionError("Zn needs n >= 1, got " + std::to_string(n));
    auto d = std::make_shared<Impl>();
    d->kind = RingKind::Zn;
    d->name = "Zn(" + std::to_string(n) + ")";
    if (n == 1) return FiniteRing(finish(d, {}));
    d->mods = {n};
    d->one = {1};
    return FiniteRing(finish(d, unit_vectors(1)));
}

i64 end_ring_cardinality(const FiniteAbelianGroup& g) {
    i64 n = 1;
    for (i64 a : g.factors())
        for (i64 b : g.factors()) n = checked_mul(n, gcd(a, b));
    return n;
}

FiniteRing FiniteRing::end_ring(const FiniteAbelianGroup& g, i64 cap) {
    const i64 card = end_ring_cardinality(g);
    if (card > cap) throw CapExceeded("|End(" + g.to_string() + ")| = " + std::to_string(card), cap);
    auto d = std::make_shared<Impl>();
    d->kind = RingKind::End;
    d->name = "End(" + g.to_string() + ")";
    d->group = g;
    const int r = g.rank();
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            const i64 m = gcd(g.factor(i), g.factor(j));
            if (m == 1) continue; // different primes: the primary blocks stay separate
            d->mods.push_back(m);
            d->ei.push_back(i);
            d->ej.push_back(j);
            d->scale.push_back(g.factor(i) / m);
        }
    d->one.assign(d->mods.size(), 0);
    for (std::size_t c = 0; c < d->mods.size(); ++c)
        if (d->ei[c] == d->ej[c]) d->one[c] = 1;
    auto ring = finish(d, unit_vectors(d->mods.size()));
    if (ring->size != card) throw Error("End ring cardinality mismatch for " + g.to_string());
    return FiniteRing(ring);
}

FiniteRing FiniteRing::matrix(int k, i64 q) {
    if (k < 1) throw PreconditionError("matrix size must be >= 1");
    auto pf = factorize(q);
    if (q < 2 || pf.size() != 1) throw PreconditionError("Mat needs a prime-power modulus, got " + std::to_string(q));
    std::vector<i64> f(static_cast<std::size_t>(k), q);
    FiniteRing e = end_ring(FiniteAbelianGroup::from_canonical_factors(f), std::numeric_limits<i64>::max());
    auto d = std::make_shared<Impl>(*e.d_);
    d->name = "Mat(" + std::to_string(k) + ",Zn(" + std::to_string(q) + "))";
    d->matrix_literal = true;
    return FiniteRing(d);
}

FiniteRing FiniteRing::product(std::vector<FiniteRing> factors) {
    auto d = std::make_shared<Impl>();
    d->kind = RingKind::Product;
    d->name = "prod[";
    std::vector<RElem> gens;
    int off = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const Impl& f = *factors[i].d_;
        if (i) d->name += ';';
        d->name += f.name;
        d->factors.push_back(factors[i].d_);
        d->offsets.push_back(off);
        for (i64 m : f.mods) d->mods.push_back(m);
        for (i64 v : f.one) d->one.push_back(v);
        off += static_cast<int>(f.mods.size());
    }
    d->name += ']';
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const Impl& f = *factors[i].d_;
        for (const auto& g : f.gens) {
            RElem v(d->mods.size(), 0);
            std::copy(g.begin(), g.end(), v.begin() + d->offsets[i]);
            gens.push_back(std::move(v));
        }
    }
    return FiniteRing(finish(d, gens));
}

FiniteRing FiniteRing::corner(const RElem& e) const {
    if (!contains(e) || mul(e, e) != e) throw PreconditionError("corner needs an idempotent of " + name());
    auto d = std::make_shared<Impl>();
    d->kind = RingKind::Corner;
    d->name = "corner(" + name() + "," + element_to_string(e) + ")";
    d->mods = d_->mods;
    d->one = e;
    d->parent = d_;
    std::vector<RElem> gens;
    for (const auto& g : d_->gens) gens.push_back(mul(mul(e, g), e));
    return FiniteRing(finish(d, gens));
}

// ---------------------------------------------------------------------------
// Arithmetic

const std::string& FiniteRing::name() const { return d_->name; }
const std::vector<i64>& FiniteRing::mods() const { return d_->mods; }
i64 FiniteRing::size() const { return d_->size; }
std::vector<RElem> FiniteRing::additive_generators() const { return d_->gens; }
RElem FiniteRing::zero() const { return RElem(d_->mods.size(), 0); }
RElem FiniteRing::one() const { return d_->one; }
RElem FiniteRing::add(const RElem& a, const RElem& b) const { return add_of(d_->mods, a, b); }

RElem FiniteRing::sub(const RElem& a, const RElem& b) const {
    RElem out(d_->mods.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = mod(a[i] - b[i], d_->mods[i]);
    return out;
}

RElem FiniteRing::mul(const RElem& a, const RElem& b) const { return mul_of(*d_, a, b); }

bool FiniteRing::contains(const RElem& x) const {
    if (x.size() != d_->mods.size()) return false;
    ModLattice lat(d_->mods, d_->carrier);
    RElem v = x;
    return lat.reduce(v);
}

bool FiniteRing::is_commutative() const {
    for (const auto& a : d_->gens)
        for (const auto& b : d_->gens)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

std::vector<RElem> FiniteRing::elements(i64 cap) const {
    if (d_->size > cap) throw CapExceeded("|" + name() + "| = " + std::to_string(d_->size), cap);
    Span s{d_->mods, d_->carrier, d_->gens, d_->orders, d_->size};
    std::vector<RElem> out;
    out.reserve(static_cast<std::size_t>(d_->size));
    for_each_element(s, [&](const RElem& x) {
        out.push_back(x);
        return true;
    });
    return out;
}

std::uint64_t FiniteRing::ambient_size() const {
    i128 acc = 1;
    for (i64 m : d_->mods) {
        acc *= m;
        if (acc > (i128{1} << 62)) throw OverflowError("ring ambient too large");
    }
    return static_cast<std::uint64_t>(acc);
}

std::uint64_t FiniteRing::encode(const RElem& x) const {
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < x.size(); ++i) code = code * static_cast<std::uint64_t>(d_->mods[i]) + x[i];
    return code;
}

RElem FiniteRing::decode(std::uint64_t code) const {
    RElem x(d_->mods.size());
    for (std::size_t i = x.size(); i-- > 0;) {
        x[i] = static_cast<i64>(code % static_cast<std::uint64_t>(d_->mods[i]));
        code /= static_cast<std::uint64_t>(d_->mods[i]);
    }
    return x;
}

std::optional<RElem> FiniteRing::inverse(const RElem& x) const { return right_solve(*d_, x, d_->gens, d_->one); }

bool units_of_corner(const FiniteRing& r, const RElem& e, const RElem& x) {
    if (r.mul(r.mul(e, x), e) != x) return false;
    return r.corner(e).is_unit(x);
}

const std::optional<FiniteAbelianGroup>& FiniteRing::endomorphism_group() const { return d_->group; }

RElem FiniteRing::from_homomorphism(const Homomorphism& h) const {
    if (d_->kind != RingKind::End && !(d_->kind == RingKind::Corner && d_->parent->kind == RingKind::End))
        throw PreconditionError(name() + " is not an endomorphism ring");
    const Impl& e = d_->kind == RingKind::End ? *d_ : *d_->parent;
    if (!(h.source() == *e.group) || !(h.target() == *e.group))
        throw PreconditionError("homomorphism is not an endomorphism of " + e.group->to_string());
    if (!h.is_valid()) throw PreconditionError("homomorphism is not well defined");
    RElem x(e.mods.size());
    for (std::size_t c = 0; c < x.size(); ++c) {
        const i64 v = mod(h.entry(e.ei[c], e.ej[c]), e.group->factor(e.ei[c]));
        if (v % e.scale[c] != 0) throw Error("endomorphism entry not divisible by its scale");
        x[c] = v / e.scale[c];
    }
    return x;
}

Homomorphism FiniteRing::to_homomorphism(const RElem& x) const {
    const Impl* e = d_.get();
    if (e->kind == RingKind::Corner) e = e->parent.get();
    if (e->kind != RingKind::End) throw PreconditionError(name() + " is not an endomorphism ring");
    return Homomorphism(*e->group, *e->group, end_matrix(*e, x));
}

namespace {

std::string element_string(const Impl& d, const RElem& x) {
    switch (d.kind) {
    case RingKind::Zn:
        return x.empty() ? "0" : std::to_string(x[0]);
    case RingKind::End:
        return join_matrix(end_matrix(d, x), d.group->rank());
    case RingKind::Product: {
        std::string s = "(";
        for (std::size_t i = 0; i < d.factors.size(); ++i) {
            if (i) s += ';';
            const auto& f = *d.factors[i];
            RElem part(x.begin() + d.offsets[i], x.begin() + d.offsets[i] + static_cast<long>(f.mods.size()));
            s += element_string(f, part);
        }
        return s + ")";
    }
    case RingKind::Corner:
        return element_string(*d.parent, x);
    }
    return {};
}

} // namespace

std::string FiniteRing::element_to_string(const RElem& x) const { return element_string(*d_, x); }

// ---------------------------------------------------------------------------
// Idempotents

namespace {

std::vector<RElem> scan_idempotents(const FiniteRing& r, i64 cap) {
    std::vector<RElem> out;
    for (const auto& x : r.elements(cap))
        if (r.mul(x, x) == x) out.push_back(x);
    return out;
}

// Projections onto H along K for all decompositions G = H ⊕ K.
std::vector<RElem> end_idempotents(const FiniteRing& ring, const FiniteAbelianGroup& g) {
    if (g.is_trivial()) return {ring.zero()};
    SubgroupCatalog cat(g, std::max<i64>(g.order(), default_caps().subgroup_enum));
    std::vector<RElem> out;
    const int r = g.rank();
    for (std::size_t hi = 0; hi < cat.subgroups().size(); ++hi) {
        const Subgroup& h = cat.subgroups()[hi];
        if (g.order() % h.order() != 0) continue;
        const auto hg = h.generators();
        for (int ki : cat.of_order(g.order() / h.order())) {
            if (!cat.bits(static_cast<int>(hi)).meets_trivially(cat.bits(ki))) continue;
            const auto kg = cat.subgroups()[ki].generators();
            std::vector<Element> all = hg;
            all.insert(all.end(), kg.begin(), kg.end());
            std::vector<Element> images;
            for (int j = 0; j < r; ++j) {
                auto c = solve_in_span(all, Element::basis(g, j));
                if (!c) throw Error("decomposition does not span the group");
                Element x = Element::zero(g);
                for (std::size_t t = 0; t < hg.size(); ++t) x = x + hg[t].scaled((*c)[t]);
                images.push_back(x);
            }
            out.push_back(ring.from_homomorphism(Homomorphism::from_images(g, images)));
        }
    }
    return out;
}

} // namespace

std::vector<RElem> FiniteRing::idempotents(i64 cap) const {
    switch (d_->kind) {
    case RingKind::Zn:
        return scan_idempotents(*this, cap);
    case RingKind::End: {
        auto out = end_idempotents(*this, *d_->group);
        if (static_cast<i64>(out.size()) > cap) throw CapExceeded("idempotents of " + name(), cap);
        return out;
    }
    case RingKind::Product: {
        std::vector<RElem> acc{RElem{}};
        for (const auto& f : d_->factors) {
            auto part = RingAccess::make(f).idempotents(cap);
            if (static_cast<i64>(acc.size()) * static_cast<i64>(part.size()) > cap)
                throw CapExceeded("idempotents of " + name(), cap);
            std::vector<RElem> next;
            for (const auto& a : acc)
                for (const auto& b : part) {
                    RElem v = a;
                    v.insert(v.end(), b.begin(), b.end());
                    next.push_back(std::move(v));
                }
            acc = std::move(next);
        }
        return acc;
    }
    case RingKind::Corner: {
        FiniteRing parent = RingAccess::make(d_->parent);
        std::vector<RElem> out;
        for (const auto& f : parent.idempotents(cap))
            if (mul(d_->one, f) == f && mul(f, d_->one) == f) out.push_back(f);
        return out;
    }
    }
    return {};
}

// ---------------------------------------------------------------------------
// The corner-unit condition

std::string Condition4Result::to_json(const FiniteRing& r) const {
    nlohmann::json j;
    j["ring"] = ring;
    j["size"] = r.size();
    j["holds"] = holds;
    j["idempotents"] = idempotents;
    j["idempotent_classes"] = idempotent_classes;
    j["orbit_representatives"] = orbit_representatives;
    j["hypothesis_cases"] = hypothesis_cases;
    if (counterexample) {
        j["counterexample"] = {{"e", r.element_to_string((*counterexample)[0])},
                               {"r", r.element_to_string((*counterexample)[1])},
                               {"s", r.element_to_string((*counterexample)[2])}};
    } else {
        j["counterexample"] = nullptr;
    }
    return j.dump();
}

namespace {

class VisitedSet {
public:
    explicit VisitedSet(std::uint64_t ambient) {
        if (ambient <= (std::uint64_t{1} << 30)) bits_.assign((ambient + 63) / 64, 0);
    }
    // True if newly inserted.
    bool insert(std::uint64_t code) {
        if (bits_.empty()) return set_.insert(code).second;
        std::uint64_t& w = bits_[code >> 6];
        const std::uint64_t m = std::uint64_t{1} << (code & 63);
        if (w & m) return false;
        w |= m;
        return true;
    }

private:
    std::vector<std::uint64_t> bits_;
    std::unordered_set<std::uint64_t> set_;
};

struct UnitGen {
    RElem g, inv;
};

std::vector<UnitGen> sample_units(const Impl& d, const Span& span, const RElem& one, int want,
                                  std::mt19937_64& rng) {
    std::vector<UnitGen> out;
    for (int tries = 0; tries < 64 * want && static_cast<int>(out.size()) < want; ++tries) {
        RElem x = random_element(span, rng);
        if (x == one) continue;
        auto y = right_solve(d, x, span.rows, one);
        if (y) out.push_back({x, *y});
    }
    return out;
}

} // namespace

Condition4Result check_condition4(const FiniteRing& ring, const Condition4Options& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    const Impl& d = RingAccess::impl(ring);
    Condition4Result res;
    res.ring = ring.name();
    const std::uint64_t ambient = ring.ambient_size();
    if (ambient > opt.max_ambient)
        throw CapExceeded("ambient of " + ring.name() + " = " + std::to_string(ambient),
                          static_cast<long long>(opt.max_ambient));

    std::mt19937_64 rng(0x5eed);
    const Span whole{d.mods, d.carrier, d.gens, d.orders, d.size};
    const auto units = sample_units(d, whole, d.one, 6, rng);

    const auto idem = ring.idempotents(opt.idempotent_cap);
    res.idempotents = static_cast<std::int64_t>(idem.size());

    // One idempotent per conjugacy class under the sampled units.
    std::unordered_set<std::uint64_t> seen;
    std::vector<RElem> reps;
    for (const auto& e : idem) {
        if (!seen.insert(ring.encode(e)).second) continue;
        reps.push_back(e);
        std::vector<RElem> stack{e};
        while (!stack.empty()) {
            RElem f = std::move(stack.back());
            stack.pop_back();
            for (const auto& u : units) {
                RElem c = mul_of(d, mul_of(d, u.g, f), u.inv);
                if (seen.insert(ring.encode(c)).second) stack.push_back(std::move(c));
            }
        }
    }
    res.idempotent_classes = static_cast<std::int64_t>(reps.size());

    const int n = ring.dim();
    for (const auto& e : reps) {
        if (opt.identity_shortcut && e == d.one) continue;

        std::vector<RElem> left, right, mid;
        for (const auto& g : d.gens) {
            left.push_back(mul_of(d, e, g));
            right.push_back(mul_of(d, g, e));
            mid.push_back(mul_of(d, left.back(), e));
        }
        const Span eR = make_span(d.mods, left);
        const Span Re = make_span(d.mods, right);
        const Span eRe = make_span(d.mods, mid);

        auto corner_unit = [&](const RElem& x) {
            if (opt.unit_override) return opt.unit_override(e, x);
            return right_solve(d, x, eRe.rows, e).has_value();
        };
        const auto vunits = sample_units(d, eRe, e, 4, rng);

        VisitedSet visited(ambient);
        std::optional<std::array<RElem, 3>> bad;
        for_each_element(eR, [&](const RElem& a) {
            if (!visited.insert(ring.encode(a))) return true;
            ++res.orbit_representatives;
            std::vector<RElem> stack{a};
            while (!stack.empty()) {
                RElem x = std::move(stack.back());
                stack.pop_back();
                for (const auto& v : vunits) {
                    RElem y = mul_of(d, v.g, x);
                    if (visited.insert(ring.encode(y))) stack.push_back(std::move(y));
                }
            }

            auto u0 = right_solve(d, a, Re.rows, e);
            if (!u0) return true;
            ++res.hypothesis_cases;

            // {u in Re : a·u = 0} from the lattice of pairs (a·u | u).
            std::vector<i64> mods2 = d.mods;
            mods2.insert(mods2.end(), d.mods.begin(), d.mods.end());
            ModLattice pairs(mods2);
            for (const auto& g : Re.rows) {
                RElem row = mul_of(d, a, g);
                row.insert(row.end(), g.begin(), g.end());
                pairs.insert(row);
            }
            pairs.normalize();
            const Span ker = span_from_basis(d.mods, pairs.trailing_block(n));

            bool found = false;
            for_each_element(ker, [&](const RElem& k) {
                if (corner_unit(mul_of(d, e, add_of(d.mods, *u0, k)))) {
                    found = true;
                    return false;
                }
                return true;
            });
            if (!found) {
                bad = std::array<RElem, 3>{e, a, *u0};
                return false;
            }
            return true;
        });
        if (bad) {
            res.holds = false;
            res.counterexample = std::move(bad);
            break;
        }
    }
    res.elapsed_ms = ms_since(t0);
    return res;
}

Condition4Result check_condition4_bruteforce(const FiniteRing& ring, i64 cap, bool commutative_shortcut) {
    const auto t0 = std::chrono::steady_clock::now();
    if (commutative_shortcut && !ring.is_commutative())
        throw PreconditionError("commutative shortcut needs a commutative ring; " + ring.name() + " is not");
    Condition4Result res;
    res.ring = ring.name();
    const auto elems = ring.elements(cap);
    const std::size_t sz = elems.size();
    std::unordered_map<std::uint64_t, std::size_t> index;
    for (std::size_t i = 0; i < sz; ++i) index.emplace(ring.encode(elems[i]), i);

    const bool table = sz <= 1024;
    std::vector<std::uint32_t> mt;
    if (table) {
        mt.resize(sz * sz);
        for (std::size_t i = 0; i < sz; ++i)
            for (std::size_t j = 0; j < sz; ++j)
                mt[i * sz + j] = static_cast<std::uint32_t>(index.at(ring.encode(ring.mul(elems[i], elems[j]))));
    }
    auto mul = [&](std::size_t i, std::size_t j) -> std::size_t {
        if (table) return mt[i * sz + j];
        return index.at(ring.encode(ring.mul(elems[i], elems[j])));
    };

    for (std::size_t e = 0; e < sz; ++e) {
        if (mul(e, e) != e) continue;
        ++res.idempotents;
        // corner units: x = exe with xy = e for some y = eye
        std::vector<char> in_corner(sz, 0), unit(sz, 0);
        for (std::size_t x = 0; x < sz; ++x) in_corner[x] = mul(mul(e, x), e) == x;
        for (std::size_t x = 0; x < sz; ++x) {
            if (!in_corner[x]) continue;
            for (std::size_t y = 0; y < sz && !unit[x]; ++y)
                if (in_corner[y] && mul(x, y) == e && mul(y, x) == e) unit[x] = 1;
        }
        std::vector<char> settled(sz, 0); // per a = er: conclusion already confirmed
        for (std::size_t r = 0; r < sz; ++r) {
            const std::size_t er = mul(e, r);
            for (std::size_t s = 0; s < sz; ++s) {
                if (mul(mul(er, s), e) != e) continue;
                ++res.hypothesis_cases;
                if (commutative_shortcut) {
                    if (!unit[mul(mul(e, s), e)]) {
                        res.holds = false;
                        res.counterexample = std::array<RElem, 3>{elems[e], elems[r], elems[s]};
                        res.elapsed_ms = ms_since(t0);
                        return res;
                    }
                    continue;
                }
                if (settled[er]) continue;
                bool ok = false;
                for (std::size_t t = 0; t < sz && !ok; ++t)
                    ok = mul(mul(er, t), e) == e && unit[mul(mul(e, t), e)];
                if (!ok) {
                    res.holds = false;
                    res.counterexample = std::array<RElem, 3>{elems[e], elems[r], elems[s]};
                    res.elapsed_ms = ms_since(t0);
                    return res;
                }
                settled[er] = 1;
            }
        }
    }
    res.idempotent_classes = res.idempotents;
    res.elapsed_ms = ms_since(t0);
    return res;
}

ERCrossCheck er_crosscheck(const FiniteAbelianGroup& g, i64 ring_cap, i64 sweep_cap) {
    const auto t0 = std::chrono::steady_clock::now();
    ERCrossCheck out;
    out.group = g.to_string();
    try {
        const FiniteRing r = FiniteRing::end_ring(g, ring_cap);
        out.condition4 = check_condition4(r).holds;
        out.perspective = is_perspective_bruteforce(g, sweep_cap).perspective;
        out.agree = out.condition4 == out.perspective;
    } catch (const CapExceeded& ex) {
        out.skipped = true;
        out.reason = ex.what();
    }
    out.elapsed_ms = ms_since(t0);
    return out;
}

} // namespace perspectra
