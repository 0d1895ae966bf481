#include "perspectra/fp_subspace.hpp"

#include <array>
#include <bit>

namespace perspectra {

FpSubspace make_fp_subspace(i64 p, int m, std::vector<std::vector<i64>> rows) {
    if (!is_prime(p)) throw PreconditionError("F_p subspace: p must be prime");
    for (auto& r : rows)
        for (auto& x : r) x = mod(x, p);
    return FpSubspace(FpField{p}, m, std::move(rows));
}

// ---------------------------------------------------------------------------
// F_2 bitmask spaces

std::uint64_t F2Space::reduce(std::uint64_t v) const {
    // The basis is fully reduced, so one pass over the pivots hit by v suffices.
    for (std::uint64_t t = v & piv_; t; t &= t - 1) v ^= basis_[std::countr_zero(t)];
    return v;
}

bool F2Space::insert(std::uint64_t v) {
    v = reduce(v);
    if (!v) return false;
    const int b = 63 - std::countl_zero(v);
    for (std::uint64_t t = piv_; t; t &= t - 1) {
        const int j = std::countr_zero(t);
        if ((basis_[j] >> b) & 1) basis_[j] ^= v;
    }
    basis_[b] = v;
    piv_ |= std::uint64_t{1} << b;
    ++dim_;
    return true;
}

F2Basis F2Space::basis() const {
    F2Basis out;
    for (std::uint64_t t = piv_; t; t &= ~(std::uint64_t{1} << (63 - std::countl_zero(t))))
        out.v[out.n++] = basis_[63 - std::countl_zero(t)];
    return out;
}

F2Space f2_sum(const F2Space& a, const F2Space& b) {
    F2Space s = a;
    for (auto v : b.basis()) s.insert(v);
    return s;
}

F2Space f2_intersect(const F2Space& a, const F2Space& b) {
    // Kernel of A -> V/B: images reduced modulo B are eliminated against each
    // other, carrying the preimage along; a zero image gives a vector of A ∩ B.
    const int m = a.ambient_dim();
    std::array<std::uint64_t, 32> img{}, pre{};
    std::array<int, 32> lead{};
    int n = 0;
    F2Space out(m);
    for (auto v : a.basis()) {
        std::uint64_t r = b.reduce(v), x = v;
        for (int i = 0; i < n; ++i)
            if ((r >> lead[i]) & 1) {
                r ^= img[i];
                x ^= pre[i];
            }
        if (!r) {
            out.insert(x);
            continue;
        }
        const int l = 63 - std::countl_zero(r);
        for (int i = 0; i < n; ++i)
            if ((img[i] >> l) & 1) {
                img[i] ^= r;
                pre[i] ^= x;
            }
        img[n] = r;
        pre[n] = x;
        lead[n++] = l;
    }
    return out;
}

namespace {

F2Space f2_complement_in(const F2Space& x, const F2Space& v) {
    F2Space acc = x, added(x.ambient_dim());
    for (auto r : v.basis()) {
        if (acc.dim() == v.dim()) break;
        if (acc.insert(r)) added.insert(r);
    }
    return added;
}

F2Space f2_cc_in(const F2Space& a, const F2Space& c, const F2Space& v) {
    if (a == c) return f2_complement_in(a, v);
    const F2Space s = f2_sum(a, c);
    if (s.dim() < v.dim()) return f2_sum(f2_cc_in(a, c, s), f2_complement_in(s, v));
    // dim(A + C) = dim A + dim C exactly when A ∩ C = 0.
    if (s.dim() < a.dim() + c.dim()) {
        const F2Space k = f2_intersect(a, c);
        const F2Space l = f2_complement_in(k, v);
        return f2_cc_in(f2_intersect(a, l), f2_intersect(c, l), l);
    }
    const auto ab = a.basis(), cb = c.basis();
    F2Space w(a.ambient_dim());
    for (std::size_t i = 0; i < ab.size(); ++i) w.insert(ab[i] ^ cb[i]);
    return w;
}

} // namespace

F2Space f2_common_complement(const F2Space& a, const F2Space& c) {
    if (a.ambient_dim() != c.ambient_dim() || a.ambient_dim() > 32)
        throw PreconditionError("F2 common complement: bad ambient dimension");
    if (a.dim() != c.dim()) throw PreconditionError("F2 common complement: dimensions differ");
    F2Space v(a.ambient_dim());
    for (int i = 0; i < a.ambient_dim(); ++i) v.insert(std::uint64_t{1} << i);
    return f2_cc_in(a, c, v);
}

FpSubspace fp_common_complement(const FpSubspace& a, const FpSubspace& c) {
    if (a.field().p == 2 && a.ambient_dim() <= 32 && a.ambient_dim() == c.ambient_dim()) {
        const int m = a.ambient_dim();
        auto to_mask = [&](const FpSubspace& s) {
            F2Space f(m);
            for (const auto& r : s.rows()) {
                std::uint64_t v = 0;
                for (int j = 0; j < m; ++j)
                    if (r[j]) v |= std::uint64_t{1} << j;
                f.insert(v);
            }
            return f;
        };
        const F2Space w = f2_common_complement(to_mask(a), to_mask(c));
        std::vector<std::vector<i64>> rows;
        for (auto v : w.basis()) {
            std::vector<i64> r(static_cast<std::size_t>(m));
            for (int j = 0; j < m; ++j) r[j] = (v >> j) & 1;
            rows.push_back(std::move(r));
        }
        return FpSubspace(a.field(), m, std::move(rows));
    }
    return field_common_complement(a, c);
}

} // namespace perspectra
