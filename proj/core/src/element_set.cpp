#include "perspectra/element_set.hpp"

#include "perspectra/errors.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

namespace perspectra {

namespace {

struct BasisHash {
    std::size_t operator()(const std::vector<i64>& v) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (i64 x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
        return h;
    }
};

} // namespace

ElementIndex::ElementIndex(FiniteAbelianGroup g, i64 cap) : g_(std::move(g)) {
    if (g_.order() > cap) throw CapExceeded("element enumeration of order " + std::to_string(g_.order()), cap);
    const int r = g_.rank();
    stride_.resize(r);
    int s = 1;
    for (int i = 0; i < r; ++i) {
        stride_[i] = s;
        s *= static_cast<int>(g_.factor(i));
    }
    digits_.resize(static_cast<std::size_t>(size()) * r);
    for (int x = 0; x < size(); ++x)
        for (int i = 0; i < r; ++i)
            digits_[static_cast<std::size_t>(x) * r + i] = static_cast<std::uint16_t>((x / stride_[i]) % g_.factor(i));
}

int ElementIndex::encode(std::span<const i64> coords) const {
    int x = 0;
    for (int i = 0; i < g_.rank(); ++i) x += static_cast<int>(mod(coords[i], g_.factor(i))) * stride_[i];
    return x;
}

std::vector<i64> ElementIndex::decode(int idx) const {
    const int r = g_.rank();
    std::vector<i64> c(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) c[i] = digits_[static_cast<std::size_t>(idx) * r + i];
    return c;
}

int ElementIndex::add(int a, int b) const {
    const int r = g_.rank();
    const std::uint16_t* da = digits_.data() + static_cast<std::size_t>(a) * r;
    const std::uint16_t* db = digits_.data() + static_cast<std::size_t>(b) * r;
    int x = 0;
    for (int i = 0; i < r; ++i) {
        int s = da[i] + db[i];
        if (s >= g_.factor(i)) s -= static_cast<int>(g_.factor(i));
        x += s * stride_[i];
    }
    return x;
}

int ElementIndex::neg(int a) const {
    const int r = g_.rank();
    const std::uint16_t* da = digits_.data() + static_cast<std::size_t>(a) * r;
    int x = 0;
    for (int i = 0; i < r; ++i)
        if (da[i]) x += (static_cast<int>(g_.factor(i)) - da[i]) * stride_[i];
    return x;
}

ElementSet ElementSet::of(const ElementIndex& idx, const Subgroup& s) {
    // Hermite rows give unique coordinates: sum c_j h_j with 0 <= c_j < d_j / h_jj.
    const FiniteAbelianGroup& g = s.group();
    const int r = g.rank();
    std::vector<int> elems{0};
    elems.reserve(static_cast<std::size_t>(s.order()));
    for (int j = 0; j < r; ++j) {
        const i64 piv = s.basis()[static_cast<std::size_t>(j) * r + j];
        const i64 mult = g.factor(j) / piv;
        if (mult == 1) continue;
        const int h = idx.encode(std::span<const i64>(s.basis().data() + static_cast<std::size_t>(j) * r, r));
        const std::size_t base = elems.size();
        for (i64 c = 1; c < mult; ++c)
            for (std::size_t k = 0; k < base; ++k)
                elems.push_back(idx.add(elems[(c - 1) * base + k], h));
    }
    ElementSet out(idx.size());
    for (int e : elems) out.set(e);
    return out;
}

int ElementSet::count() const {
    int c = 0;
    for (auto w : w_) c += std::popcount(w);
    return c;
}

bool ElementSet::meets_trivially(const ElementSet& o) const {
    if (((w_[0] & o.w_[0]) & ~std::uint64_t{1}) != 0) return false;
    for (std::size_t i = 1; i < w_.size(); ++i)
        if (w_[i] & o.w_[i]) return false;
    return true;
}

bool ElementSet::subset_of(const ElementSet& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
        if (w_[i] & ~o.w_[i]) return false;
    return true;
}

std::vector<int> ElementSet::members() const {
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
        if (test(i)) out.push_back(i);
    return out;
}

ElementSet ElementSet::operator&(const ElementSet& o) const {
    ElementSet r = *this;
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] &= o.w_[i];
    return r;
}

ElementSet ElementSet::operator|(const ElementSet& o) const {
    ElementSet r = *this;
    for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] |= o.w_[i];
    return r;
}

ElementSet closure(const ElementIndex& idx, std::span<const int> gens) {
    ElementSet s(idx.size());
    std::vector<int> elems{0};
    s.set(0);
    for (int g : gens) {
        if (s.test(g)) continue;
        // Add multiples of g to every coset representative until closed.
        const std::size_t base = elems.size();
        int step = g;
        while (!s.test(step)) {
            for (std::size_t k = 0; k < base; ++k) {
                const int e = idx.add(elems[k], step);
                s.set(e);
                elems.push_back(e);
            }
            step = idx.add(step, g);
        }
    }
    return s;
}

std::vector<Subgroup> enumerate_subgroups(const FiniteAbelianGroup& g, i64 cap) {
    if (g.order() > cap) throw CapExceeded("subgroup enumeration of order " + std::to_string(g.order()), cap);
    const ElementIndex idx(g, std::max(cap, g.order()));
    const Subgroup triv = Subgroup::trivial(g);

    // One generator per cyclic subgroup.
    std::vector<std::vector<i64>> cyc;
    {
        std::unordered_set<std::vector<i64>, BasisHash> seen;
        for (int x = 1; x < idx.size(); ++x) {
            auto c = idx.decode(x);
            Subgroup s = subgroup_join(triv, c);
            if (seen.insert(s.basis()).second) cyc.push_back(std::move(c));
        }
    }

    std::vector<Subgroup> all{triv};
    std::unordered_set<std::vector<i64>, BasisHash> seen{triv.basis()};
    for (std::size_t head = 0; head < all.size(); ++head) {
        for (const auto& c : cyc) {
            if (all[head].contains_coords(c)) continue;
            Subgroup t = subgroup_join(all[head], c);
            if (seen.insert(t.basis()).second) all.push_back(std::move(t));
        }
    }
    std::sort(all.begin(), all.end());
    return all;
}

Subgroup intersect_by_enumeration(const Subgroup& s, const Subgroup& t, i64 cap) {
    if (!(s.group() == t.group())) throw PreconditionError("intersect_by_enumeration: ambient groups differ");
    const ElementIndex idx(s.group(), cap);
    const ElementSet both = ElementSet::of(idx, s) & ElementSet::of(idx, t);
    std::vector<Element> gens;
    for (int x : both.members()) gens.emplace_back(s.group(), idx.decode(x));
    return Subgroup::generated(s.group(), gens);
}

} // namespace perspectra
