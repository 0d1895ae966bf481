#include "perspectra/group.hpp"

#include "perspectra/errors.hpp"
#include "perspectra/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace perspectra {

Subgroup subgroup_from_lattice(const FiniteAbelianGroup& g, ModLattice& lat);

// ---------------------------------------------------------------------------
// FiniteAbelianGroup

std::shared_ptr<const FiniteAbelianGroup::Data> FiniteAbelianGroup::build(std::vector<i64> factors) {
    auto d = std::make_shared<Data>();
    d->factors = std::move(factors);
    for (i64 f : d->factors) {
        if (f < 2) throw PreconditionError("group factor must be a prime power >= 2");
        const auto pf = factorize(f);
        if (pf.size() != 1) throw PreconditionError("group factor " + std::to_string(f) + " is not a prime power");
        d->primes.push_back(pf[0].p);
        d->exponents.push_back(pf[0].e);
        d->order = checked_mul(d->order, f);
        if (d->order > kMaxGroupOrder) throw OverflowError("group order exceeds 2^31");
    }
    return d;
}

FiniteAbelianGroup::FiniteAbelianGroup() {
    static const auto trivial = build({});
    d_ = trivial;
}

FiniteAbelianGroup FiniteAbelianGroup::from_orders(std::span<const i64> orders) {
    std::vector<PrimePower> parts;
    for (i64 n : orders) {
        if (n <= 1) throw PreconditionError("cyclic order must be >= 2, got " + std::to_string(n));
        for (const auto& pp : factorize(n)) parts.push_back(pp);
    }
    std::sort(parts.begin(), parts.end(), [](const PrimePower& a, const PrimePower& b) {
        return a.p != b.p ? a.p < b.p : a.e > b.e;
    });
    std::vector<i64> f;
    f.reserve(parts.size());
    for (const auto& pp : parts) f.push_back(pp.value());
    return FiniteAbelianGroup(build(std::move(f)));
}

FiniteAbelianGroup FiniteAbelianGroup::from_canonical_factors(std::vector<i64> factors) {
    auto d = build(std::move(factors));
    for (std::size_t i = 1; i < d->factors.size(); ++i) {
        const bool ok = d->primes[i - 1] < d->primes[i] ||
                        (d->primes[i - 1] == d->primes[i] && d->exponents[i - 1] >= d->exponents[i]);
        if (!ok) throw PreconditionError("factors are not in canonical order");
    }
    return FiniteAbelianGroup(std::move(d));
}

std::vector<i64> FiniteAbelianGroup::primes() const {
    std::vector<i64> out;
    for (i64 p : d_->primes)
        if (out.empty() || out.back() != p) out.push_back(p);
    return out;
}

bool FiniteAbelianGroup::is_p_group() const { return primes().size() <= 1; }

bool FiniteAbelianGroup::is_homocyclic() const {
    const auto& f = d_->factors;
    return std::all_of(f.begin(), f.end(), [&](i64 x) { return x == f.front(); });
}

i64 FiniteAbelianGroup::exponent() const {
    i64 e = 1;
    for (i64 f : d_->factors) e = lcm(e, f);
    return e;
}

std::string FiniteAbelianGroup::to_string() const {
    if (is_trivial()) return "Z1";
    std::string s;
    for (std::size_t i = 0; i < d_->factors.size(); ++i) {
        if (i) s += '+';
        s += 'Z' + std::to_string(d_->factors[i]);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Element

Element::Element(FiniteAbelianGroup group, std::vector<i64> coords)
    : group_(std::move(group)), coords_(std::move(coords)) {
    if (static_cast<int>(coords_.size()) != group_.rank())
        throw PreconditionError("element has " + std::to_string(coords_.size()) + " coordinates, group rank is " +
                                std::to_string(group_.rank()));
    for (int i = 0; i < group_.rank(); ++i) coords_[i] = mod(coords_[i], group_.factor(i));
}

Element Element::zero(const FiniteAbelianGroup& group) {
    return Element(group, std::vector<i64>(static_cast<std::size_t>(group.rank()), 0));
}

Element Element::basis(const FiniteAbelianGroup& group, int i) {
    std::vector<i64> c(static_cast<std::size_t>(group.rank()), 0);
    c.at(i) = 1;
    return Element(group, std::move(c));
}

bool Element::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](i64 c) { return c == 0; });
}

Element Element::operator+(const Element& o) const {
    if (!(group_ == o.group_)) throw PreconditionError("elements of different groups");
    std::vector<i64> c(coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coords_[i] + o.coords_[i];
    return Element(group_, std::move(c));
}

Element Element::operator-(const Element& o) const { return *this + (-o); }

Element Element::operator-() const {
    std::vector<i64> c(coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = -coords_[i];
    return Element(group_, std::move(c));
}

Element Element::scaled(i64 n) const {
    std::vector<i64> c(coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod128(static_cast<i128>(coords_[i]) * n, group_.factor(static_cast<int>(i)));
    return Element(group_, std::move(c));
}

std::string Element::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(coords_[i]);
    }
    return s + ")";
}

i64 element_order(const Element& x) {
    i64 o = 1;
    for (int i = 0; i < x.group().rank(); ++i) {
        const i64 d = x.group().factor(i);
        o = lcm(o, d / gcd(d, x[i]));
    }
    return o;
}

std::optional<int> p_height(const Element& x, i64 p) {
    if (!is_prime(p)) throw PreconditionError("p_height: p must be prime");
    // Coordinates at other primes are always divisible by p; at prime p the
    // height of c in Z(p^e) is v_p(c) for c != 0.
    std::optional<int> h;
    for (int i = 0; i < x.group().rank(); ++i) {
        if (x.group().prime_of(i) != p || x[i] == 0) continue;
        const int v = valuation(x[i], p);
        h = h ? std::min(*h, v) : v;
    }
    return h;
}

// ---------------------------------------------------------------------------
// Homomorphism

Homomorphism::Homomorphism(FiniteAbelianGroup source, FiniteAbelianGroup target, std::vector<i64> matrix)
    : source_(std::move(source)), target_(std::move(target)), m_(std::move(matrix)) {
    if (m_.size() != static_cast<std::size_t>(source_.rank()) * target_.rank())
        throw PreconditionError("homomorphism matrix must be " + std::to_string(target_.rank()) + "x" +
                                std::to_string(source_.rank()));
    for (int i = 0; i < target_.rank(); ++i)
        for (int j = 0; j < source_.rank(); ++j) {
            auto& e = m_[static_cast<std::size_t>(i) * source_.rank() + j];
            e = mod(e, target_.factor(i));
        }
}

Homomorphism Homomorphism::identity(const FiniteAbelianGroup& g) {
    std::vector<i64> m(static_cast<std::size_t>(g.rank()) * g.rank(), 0);
    for (int i = 0; i < g.rank(); ++i) m[static_cast<std::size_t>(i) * g.rank() + i] = 1;
    return Homomorphism(g, g, std::move(m));
}

Homomorphism Homomorphism::zero(const FiniteAbelianGroup& source, const FiniteAbelianGroup& target) {
    return Homomorphism(source, target, std::vector<i64>(static_cast<std::size_t>(source.rank()) * target.rank(), 0));
}

Homomorphism Homomorphism::from_images(const FiniteAbelianGroup& source, std::span<const Element> images) {
    if (static_cast<int>(images.size()) != source.rank())
        throw PreconditionError("from_images: need one image per source generator");
    if (images.empty()) throw PreconditionError("from_images: target group unknown for trivial source");
    const FiniteAbelianGroup& target = images.front().group();
    std::vector<i64> m(static_cast<std::size_t>(source.rank()) * target.rank());
    for (int j = 0; j < source.rank(); ++j) {
        if (!(images[j].group() == target)) throw PreconditionError("from_images: images in different groups");
        for (int i = 0; i < target.rank(); ++i) m[static_cast<std::size_t>(i) * source.rank() + j] = images[j][i];
    }
    return Homomorphism(source, target, std::move(m));
}

std::optional<Homomorphism::Violation> Homomorphism::first_violation() const {
    for (int i = 0; i < target_.rank(); ++i)
        for (int j = 0; j < source_.rank(); ++j)
            if ((static_cast<i128>(entry(i, j)) * source_.factor(j)) % target_.factor(i) != 0) return Violation{i, j};
    return std::nullopt;
}

void Homomorphism::require_valid() const {
    if (auto v = first_violation())
        throw PreconditionError("homomorphism not well defined at entry (" + std::to_string(v->row) + "," +
                                std::to_string(v->col) + ")");
}

Element Homomorphism::apply(const Element& x) const {
    require_valid();
    if (!(x.group() == source_)) throw PreconditionError("apply: element not in source group");
    std::vector<i64> y(static_cast<std::size_t>(target_.rank()));
    for (int i = 0; i < target_.rank(); ++i) {
        i128 acc = 0;
        for (int j = 0; j < source_.rank(); ++j) acc += static_cast<i128>(entry(i, j)) * x[j];
        y[i] = mod128(acc, target_.factor(i));
    }
    return Element(target_, std::move(y));
}

Homomorphism compose(const Homomorphism& g, const Homomorphism& h) {
    if (!(h.target() == g.source())) throw PreconditionError("compose: target(h) != source(g)");
    if (!g.is_valid() || !h.is_valid()) throw PreconditionError("compose: operand not well defined");
    const int rows = g.target().rank(), mid = g.source().rank(), cols = h.source().rank();
    std::vector<i64> m(static_cast<std::size_t>(rows) * cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            i128 acc = 0;
            for (int k = 0; k < mid; ++k) acc += static_cast<i128>(g.entry(i, k)) * h.entry(k, j);
            m[static_cast<std::size_t>(i) * cols + j] = mod128(acc, g.target().factor(i));
        }
    return Homomorphism(h.source(), g.target(), std::move(m));
}

bool Homomorphism::is_idempotent() const {
    if (!(source_ == target_)) return false;
    return compose(*this, *this) == *this;
}

Subgroup Homomorphism::image() const { return image_of(Subgroup::whole(source_)); }

Subgroup Homomorphism::image_of(const Subgroup& s) const {
    require_valid();
    std::vector<Element> imgs;
    for (const auto& x : s.generators()) imgs.push_back(apply(x));
    return subgroup_from_generators(target_, imgs);
}

Subgroup Homomorphism::kernel() const {
    require_valid();
    const int t = target_.rank(), s = source_.rank();
    // (M c | c) over mods (d_tgt | d_src); the block with zero image is the kernel.
    std::vector<i64> mods(target_.factors());
    mods.insert(mods.end(), source_.factors().begin(), source_.factors().end());
    ModLattice lat(mods);
    std::vector<i64> row(static_cast<std::size_t>(t + s));
    for (int j = 0; j < s; ++j) {
        std::fill(row.begin(), row.end(), 0);
        for (int i = 0; i < t; ++i) row[i] = entry(i, j);
        row[t + j] = 1;
        lat.insert(row);
    }
    lat.normalize();
    ModLattice k(source_.factors());
    const auto block = lat.trailing_block(t);
    for (int i = 0; i < s; ++i) k.insert(std::span<const i64>(block.data() + static_cast<std::size_t>(i) * s, s));
    return subgroup_from_lattice(source_, k);
}

// ---------------------------------------------------------------------------
// Subgroup

Subgroup subgroup_from_lattice(const FiniteAbelianGroup& g, ModLattice& lat) {
    lat.normalize();
    i64 order = 1;
    for (int i = 0; i < g.rank(); ++i) order *= g.factor(i) / lat.pivot(i);
    return Subgroup(g, lat.data(), order);
}

Subgroup Subgroup::trivial(const FiniteAbelianGroup& g) {
    ModLattice lat(g.factors());
    return subgroup_from_lattice(g, lat);
}

Subgroup Subgroup::whole(const FiniteAbelianGroup& g) {
    std::vector<i64> id(static_cast<std::size_t>(g.rank()) * g.rank(), 0);
    for (int i = 0; i < g.rank(); ++i) id[static_cast<std::size_t>(i) * g.rank() + i] = 1;
    return Subgroup(g, std::move(id), g.order());
}

Subgroup Subgroup::generated(const FiniteAbelianGroup& g, std::span<const Element> gens) {
    ModLattice lat(g.factors());
    for (const auto& x : gens) {
        if (!(x.group() == g)) throw PreconditionError("generator not in ambient group");
        lat.insert(x.coords());
    }
    return subgroup_from_lattice(g, lat);
}

Subgroup Subgroup::from_coordinate_rows(const FiniteAbelianGroup& g, std::span<const std::vector<i64>> rows) {
    ModLattice lat(g.factors());
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != g.rank()) throw PreconditionError("coordinate row length mismatch");
        lat.insert(r);
    }
    return subgroup_from_lattice(g, lat);
}

std::vector<std::vector<i64>> Subgroup::generator_rows() const {
    const int r = group_.rank();
    std::vector<std::vector<i64>> out;
    for (int i = 0; i < r; ++i) {
        const i64* row = basis_.data() + static_cast<std::size_t>(i) * r;
        if (row[i] == group_.factor(i)) continue; // the relation row d_i e_i, i.e. zero
        out.emplace_back(row, row + r);
    }
    return out;
}

std::vector<Element> Subgroup::generators() const {
    std::vector<Element> out;
    for (auto& r : generator_rows()) out.emplace_back(group_, std::move(r));
    return out;
}

bool Subgroup::contains_coords(std::span<const i64> x) const {
    const int r = group_.rank();
    if (static_cast<int>(x.size()) != r) throw PreconditionError("contains: coordinate length mismatch");
    i64 buf[64];
    std::vector<i64> heap;
    i64* v = buf;
    if (r > 64) {
        heap.resize(r);
        v = heap.data();
    }
    for (int j = 0; j < r; ++j) v[j] = mod(x[j], group_.factor(j));
    for (int i = 0; i < r; ++i) {
        if (v[i] == 0) continue;
        const i64* hi = basis_.data() + static_cast<std::size_t>(i) * r;
        if (v[i] % hi[i] != 0) return false;
        const i64 q = v[i] / hi[i];
        for (int j = i + 1; j < r; ++j) v[j] = mod128(static_cast<i128>(v[j]) - static_cast<i128>(q) * hi[j], group_.factor(j));
    }
    return true;
}

bool Subgroup::contains(const Element& x) const {
    if (!(x.group() == group_)) throw PreconditionError("contains: element of a different group");
    return contains_coords(x.coords());
}

bool Subgroup::contains(const Subgroup& other) const {
    if (!(other.group_ == group_)) throw PreconditionError("contains: subgroups of different groups");
    if (order_ % other.order_ != 0) return false;
    for (const auto& row : other.generator_rows())
        if (!contains_coords(row)) return false;
    return true;
}

std::string Subgroup::to_string() const {
    std::string s = "gens[";
    bool first = true;
    for (const auto& g : generators()) {
        if (!first) s += ';';
        first = false;
        s += g.to_string();
    }
    return s + "]";
}

Subgroup subgroup_from_generators(const FiniteAbelianGroup& g, std::span<const Element> gens) {
    return Subgroup::generated(g, gens);
}

static void require_same(const Subgroup& s, const Subgroup& t, const char* op) {
    if (!(s.group() == t.group())) throw PreconditionError(std::string(op) + ": ambient groups differ");
}

Subgroup subgroup_sum(const Subgroup& s, const Subgroup& t) {
    require_same(s, t, "subgroup_sum");
    if (s.contains(t)) return s;
    if (t.contains(s)) return t;
    auto rows = s.generator_rows();
    auto more = t.generator_rows();
    rows.insert(rows.end(), more.begin(), more.end());
    return Subgroup::from_coordinate_rows(s.group(), rows);
}

Subgroup subgroup_join(const Subgroup& s, std::span<const i64> x) {
    ModLattice lat(s.group().factors(), s.basis());
    lat.insert(x);
    return subgroup_from_lattice(s.group(), lat);
}

Subgroup subgroup_intersect(const Subgroup& s, const Subgroup& t) {
    require_same(s, t, "subgroup_intersect");
    if (s.contains(t)) return t;
    if (t.contains(s)) return s;
    const FiniteAbelianGroup& g = s.group();
    const int r = g.rank();
    // Rows (x | x) for x in L_S and (y | 0) for y in L_T: vectors with zero
    // leading block have trailing block in L_S ∩ L_T.
    std::vector<i64> mods(g.factors());
    mods.insert(mods.end(), g.factors().begin(), g.factors().end());
    ModLattice lat(mods);
    std::vector<i64> row(static_cast<std::size_t>(2 * r));
    for (const auto& x : s.generator_rows()) {
        std::copy(x.begin(), x.end(), row.begin());
        std::copy(x.begin(), x.end(), row.begin() + r);
        lat.insert(row);
    }
    for (const auto& y : t.generator_rows()) {
        std::copy(y.begin(), y.end(), row.begin());
        std::fill(row.begin() + r, row.end(), 0);
        lat.insert(row);
    }
    lat.normalize();
    const auto block = lat.trailing_block(r);
    ModLattice res(g.factors());
    for (int i = 0; i < r; ++i) res.insert(std::span<const i64>(block.data() + static_cast<std::size_t>(i) * r, r));
    return subgroup_from_lattice(g, res);
}

bool subgroup_contains(const Subgroup& s, const Element& x) { return s.contains(x); }

// ---------------------------------------------------------------------------
// Invariants and cyclic decomposition

IsoInvariants::IsoInvariants(std::vector<PrimePower> parts) : parts_(std::move(parts)) {
    std::sort(parts_.begin(), parts_.end(), [](const PrimePower& a, const PrimePower& b) {
        return a.p != b.p ? a.p < b.p : a.e > b.e;
    });
}

i64 IsoInvariants::order() const {
    i64 o = 1;
    for (const auto& pp : parts_) o = checked_mul(o, pp.value());
    return o;
}

int IsoInvariants::multiplicity(i64 p, int e) const {
    return static_cast<int>(std::count(parts_.begin(), parts_.end(), PrimePower{p, e}));
}

std::string IsoInvariants::to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += ',';
        s += '(' + std::to_string(parts_[i].p) + ',' + std::to_string(parts_[i].e) + ')';
    }
    return s + "}";
}

std::vector<CyclicGenerator> cyclic_decomposition(const Subgroup& s) {
    const FiniteAbelianGroup& g = s.group();
    const int r = g.rank();
    const i64 n = s.order();
    std::vector<CyclicGenerator> out;
    if (n == 1) return out;

    // Generators h_1..h_k of s and their relation lattice R = {c : sum c_i h_i = 0},
    // read off as the trailing block of (h_i | e_i) over mods (d | ord h_i).
    auto gens = s.generator_rows();
    const int k = static_cast<int>(gens.size());
    std::vector<i64> mods(g.factors());
    for (const auto& h : gens) mods.push_back(element_order(Element(g, h)));
    ModLattice lat(mods);
    std::vector<i64> row(static_cast<std::size_t>(r + k));
    for (int j = 0; j < k; ++j) {
        std::fill(row.begin(), row.end(), 0);
        std::copy(gens[j].begin(), gens[j].end(), row.begin());
        row[r + j] = 1;
        lat.insert(row);
    }
    lat.normalize();
    std::vector<i64> a = lat.trailing_block(r); // k x k, R contains n Z^k
    auto A = [&](int i, int j) -> i64& { return a[static_cast<std::size_t>(i) * k + j]; };
    for (auto& x : a) x = mod(x, n);

    // Smith form over Z/n. Column operations A <- A V are mirrored on the
    // generators as B <- V^{-1} B so that the relations A·B = 0 persist.
    auto& b = gens;
    auto combine_rows = [&](int t, int i) {
        const i64 x0 = A(t, t), y0 = A(i, t);
        auto [gg, x, y] = egcd(x0, y0);
        if (y0 % x0 == 0) {
            gg = x0;
            x = 1;
            y = 0;
        }
        const i64 u = x0 / gg, v = y0 / gg;
        for (int j = 0; j < k; ++j) {
            const i128 at = A(t, j), ai = A(i, j);
            A(t, j) = mod128(x * at + y * ai, n);
            A(i, j) = mod128(-v * at + u * ai, n);
        }
    };
    auto combine_cols = [&](int t, int j) {
        const i64 x0 = A(t, t), y0 = A(t, j);
        auto [gg, x, y] = egcd(x0, y0);
        if (y0 % x0 == 0) {
            gg = x0;
            x = 1;
            y = 0;
        }
        const i64 u = x0 / gg, v = y0 / gg;
        for (int i = 0; i < k; ++i) {
            const i128 at = A(i, t), aj = A(i, j);
            A(i, t) = mod128(x * at + y * aj, n);
            A(i, j) = mod128(-v * at + u * aj, n);
        }
        // V^{-1} = [[u, v], [-y, x]] acting on generator rows t, j.
        for (int c = 0; c < r; ++c) {
            const i64 dc = g.factor(c);
            const i128 bt = b[t][c], bj = b[j][c];
            b[t][c] = mod128(u * bt + v * bj, dc);
            b[j][c] = mod128(-y * bt + x * bj, dc);
        }
    };
    for (int t = 0; t < k; ++t) {
        // Bring some nonzero entry of the trailing submatrix to (t, t).
        int pi = -1, pj = -1;
        for (int i = t; i < k && pi < 0; ++i)
            for (int j = t; j < k; ++j)
                if (A(i, j) != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi < 0) break;
        if (pi != t)
            for (int j = 0; j < k; ++j) std::swap(A(t, j), A(pi, j));
        if (pj != t) {
            for (int i = 0; i < k; ++i) std::swap(A(i, t), A(i, pj));
            std::swap(b[t], b[pj]);
        }
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (int i = t + 1; i < k; ++i)
                if (A(i, t) != 0) combine_rows(t, i);
            for (int j = t + 1; j < k; ++j)
                if (A(t, j) != 0) {
                    combine_cols(t, j);
                    dirty = true;
                }
            if (dirty) {
                dirty = false;
                for (int i = t + 1; i < k; ++i)
                    if (A(i, t) != 0) dirty = true;
            }
        }
    }

    i64 total = 1;
    for (int t = 0; t < k; ++t) {
        const i64 ord = gcd(A(t, t), n); // gcd(0, n) = n
        if (ord == 1) continue;
        Element gen(g, b[t]);
        if (element_order(gen) != ord) throw std::logic_error("cyclic_decomposition: order mismatch");
        for (const auto& pp : factorize(ord)) {
            const i64 q = pp.value();
            out.push_back({gen.scaled(ord / q), pp});
            total *= q;
        }
    }
    if (total != n) throw std::logic_error("cyclic_decomposition: orders do not multiply to |S|");
    std::sort(out.begin(), out.end(), [](const CyclicGenerator& x, const CyclicGenerator& y) {
        return x.order.p != y.order.p ? x.order.p < y.order.p : x.order.e > y.order.e;
    });
    return out;
}

IsoInvariants iso_invariants(const Subgroup& s) {
    std::vector<PrimePower> parts;
    for (const auto& c : cyclic_decomposition(s)) parts.push_back(c.order);
    return IsoInvariants(std::move(parts));
}

IsoInvariants iso_invariants(const FiniteAbelianGroup& g) {
    std::vector<PrimePower> parts;
    for (int i = 0; i < g.rank(); ++i) parts.push_back({g.prime_of(i), g.exponent_of(i)});
    return IsoInvariants(std::move(parts));
}

Subgroup socle(const Subgroup& s, i64 p) {
    if (!is_prime(p)) throw PreconditionError("socle: p must be prime");
    const FiniteAbelianGroup& g = s.group();
    std::vector<Element> gp;
    for (int i = 0; i < g.rank(); ++i)
        if (g.prime_of(i) == p) gp.push_back(Element::basis(g, i).scaled(g.factor(i) / p));
    return subgroup_intersect(s, Subgroup::generated(g, gp));
}

Subgroup multiply(const Subgroup& s, i64 n) {
    if (n < 1) throw PreconditionError("multiply: n must be >= 1");
    std::vector<Element> gens;
    for (const auto& x : s.generators()) gens.push_back(x.scaled(n));
    return Subgroup::generated(s.group(), gens);
}

bool is_direct_sum(const FiniteAbelianGroup& g, std::span<const Subgroup> parts) {
    i64 prod = 1;
    Subgroup sum = Subgroup::trivial(g);
    for (const auto& s : parts) {
        if (!(s.group() == g)) throw PreconditionError("is_direct_sum: part not in the ambient group");
        prod = checked_mul(prod, s.order());
        if (prod > g.order()) return false;
        sum = subgroup_sum(sum, s);
    }
    return prod == g.order() && sum.is_whole();
}

bool is_direct_sum(const FiniteAbelianGroup& g, const Subgroup& a, const Subgroup& b) {
    const Subgroup parts[] = {a, b};
    return is_direct_sum(g, parts);
}

std::optional<std::vector<i64>> solve_in_span(std::span<const Element> gens, const Element& x) {
    std::vector<std::vector<i64>> rows;
    for (const auto& e : gens) {
        if (!(e.group() == x.group())) throw PreconditionError("solve_in_span: group mismatch");
        rows.push_back(e.coords());
    }
    return solve_combination(rows, x.group().factors(), x.coords());
}

Subgroup coordinate_subgroup(const FiniteAbelianGroup& g, std::span<const int> coords) {
    std::vector<Element> gens;
    for (int i : coords) gens.push_back(Element::basis(g, i));
    return Subgroup::generated(g, gens);
}

Subgroup primary_component(const FiniteAbelianGroup& g, i64 p) {
    std::vector<int> idx;
    for (int i = 0; i < g.rank(); ++i)
        if (g.prime_of(i) == p) idx.push_back(i);
    return coordinate_subgroup(g, idx);
}

} // namespace perspectra
