#include "perspectra/lattice.hpp"

#include "perspectra/errors.hpp"

#include <algorithm>

namespace perspectra {

ModLattice::ModLattice(std::vector<i64> mods)
    : n_(static_cast<int>(mods.size())), mods_(std::move(mods)),
      h_(static_cast<std::size_t>(n_) * n_, 0) {
    for (int i = 0; i < n_; ++i) {
        if (mods_[i] <= 0) throw PreconditionError("ModLattice: moduli must be positive");
        h_[static_cast<std::size_t>(i) * n_ + i] = mods_[i];
    }
}

ModLattice::ModLattice(std::vector<i64> mods, std::vector<i64> basis)
    : n_(static_cast<int>(mods.size())), mods_(std::move(mods)), h_(std::move(basis)) {
    if (h_.size() != static_cast<std::size_t>(n_) * n_) throw PreconditionError("ModLattice: basis size mismatch");
}

void ModLattice::insert(std::span<const i64> v_in) {
    if (static_cast<int>(v_in.size()) != n_) throw PreconditionError("ModLattice::insert: length mismatch");
    // Small fixed buffer for the common case; ranks are tiny.
    i64 buf[64];
    std::vector<i64> heap;
    i64* v = buf;
    if (n_ > 64) {
        heap.resize(n_);
        v = heap.data();
    }
    for (int j = 0; j < n_; ++j) v[j] = mod(v_in[j], mods_[j]);

    for (int i = 0; i < n_; ++i) {
        if (v[i] == 0) continue;
        i64* hi = h_.data() + static_cast<std::size_t>(i) * n_;
        const i64 a = hi[i];
        const i64 b = v[i];
        if (b % a == 0) {
            const i64 q = b / a;
            v[i] = 0;
            for (int j = i + 1; j < n_; ++j)
                v[j] = mod128(static_cast<i128>(v[j]) - static_cast<i128>(q) * hi[j], mods_[j]);
            continue;
        }
        const auto [g, x, y] = egcd(a, b);
        const i64 bg = b / g, ag = a / g;
        hi[i] = g;
        v[i] = 0;
        for (int j = i + 1; j < n_; ++j) {
            const i128 hj = hi[j], vj = v[j];
            hi[j] = mod128(static_cast<i128>(x) * hj + static_cast<i128>(y) * vj, mods_[j]);
            v[j] = mod128(static_cast<i128>(bg) * hj - static_cast<i128>(ag) * vj, mods_[j]);
        }
    }
}

void ModLattice::normalize() {
    for (int j = 0; j < n_; ++j) {
        const i64* hj = h_.data() + static_cast<std::size_t>(j) * n_;
        const i64 pj = hj[j];
        for (int i = 0; i < j; ++i) {
            i64* hi = h_.data() + static_cast<std::size_t>(i) * n_;
            const i64 q = hi[j] / pj; // hi[j] >= 0
            if (q == 0) continue;
            hi[j] -= q * pj;
            for (int k = j + 1; k < n_; ++k)
                hi[k] = mod128(static_cast<i128>(hi[k]) - static_cast<i128>(q) * hj[k], mods_[k]);
        }
    }
}

i64 ModLattice::index_over_relations() const {
    i64 r = 1;
    for (int i = 0; i < n_; ++i) r = checked_mul(r, mods_[i] / pivot(i));
    return r;
}

bool ModLattice::reduce(std::span<i64> v) const {
    for (int j = 0; j < n_; ++j) v[j] = mod(v[j], mods_[j]);
    for (int i = 0; i < n_; ++i) {
        if (v[i] == 0) continue;
        const i64* hi = h_.data() + static_cast<std::size_t>(i) * n_;
        if (v[i] % hi[i] != 0) return false;
        const i64 q = v[i] / hi[i];
        v[i] = 0;
        for (int j = i + 1; j < n_; ++j)
            v[j] = mod128(static_cast<i128>(v[j]) - static_cast<i128>(q) * hi[j], mods_[j]);
    }
    return true;
}

std::vector<i64> ModLattice::trailing_block(int first) const {
    const int m = n_ - first;
    std::vector<i64> out(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            out[static_cast<std::size_t>(i) * m + j] = h_[static_cast<std::size_t>(first + i) * n_ + first + j];
    return out;
}

std::optional<std::vector<i64>> solve_combination(std::span<const std::vector<i64>> gens,
                                                  std::span<const i64> mods,
                                                  std::span<const i64> target) {
    const int n = static_cast<int>(mods.size());
    const int k = static_cast<int>(gens.size());
    // Lattice of (sum c_j g_j, c) in Z^{n+k}; coefficient column j is reduced
    // modulo the additive order of g_j, which keeps the relation lattice inside.
    std::vector<i64> all_mods(mods.begin(), mods.end());
    for (const auto& g : gens) {
        i64 ord = 1;
        for (int i = 0; i < n; ++i) {
            const i64 gi = mod(g[i], mods[i]);
            ord = lcm(ord, mods[i] / gcd(mods[i], gi));
        }
        all_mods.push_back(ord);
    }
    ModLattice lat(all_mods);
    std::vector<i64> row(static_cast<std::size_t>(n + k), 0);
    for (int j = 0; j < k; ++j) {
        std::fill(row.begin(), row.end(), 0);
        for (int i = 0; i < n; ++i) row[i] = gens[j][i];
        row[n + j] = 1;
        lat.insert(row);
    }
    std::fill(row.begin(), row.end(), 0);
    for (int i = 0; i < n; ++i) row[i] = target[i];
    // Reduce only the first n coordinates; whatever remains in the tail is -c.
    for (int j = 0; j < n + k; ++j) row[j] = mod(row[j], all_mods[j]);
    for (int i = 0; i < n; ++i) {
        if (row[i] == 0) continue;
        const auto r = lat.row(i);
        if (row[i] % r[i] != 0) return std::nullopt;
        const i64 q = row[i] / r[i];
        row[i] = 0;
        for (int j = i + 1; j < n + k; ++j)
            row[j] = mod128(static_cast<i128>(row[j]) - static_cast<i128>(q) * r[j], all_mods[j]);
    }
    std::vector<i64> coeffs(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) coeffs[j] = mod(-row[n + j], all_mods[n + j]);
    return coeffs;
}

} // namespace perspectra
