#include "perspectra/torsionfree.hpp"

#include "perspectra/pgroup.hpp"

#include <random>
#include <stdexcept>

namespace perspectra {

namespace {

using Rows = QMatrix;

mpq_class pow_p(i64 p, int e) {
    mpz_class z;
    mpz_ui_pow_ui(z.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e < 0 ? -e : e));
    return e < 0 ? mpq_class(1, z) : mpq_class(z);
}

i64 reduce_mod_p(const mpq_class& q, i64 p) {
    const mpz_class pz = static_cast<long>(p);
    mpz_class n = q.get_num() % pz, d = q.get_den() % pz;
    const i64 nn = mod(n.get_si(), p), dd = mod(d.get_si(), p);
    return static_cast<i64>((static_cast<i128>(nn) * inv_mod(dd, p)) % p);
}

Rows concat(Rows a, const Rows& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

int qrank(const Rows& rows, int m) {
    if (rows.empty()) return 0;
    return make_q_subspace(m, rows).dim();
}

Rows hull(i64 p, int m, const Rows& gens) {
    Rows w;
    for (const auto& g : gens)
        for (const auto& x : g)
            if (sgn(x) != 0) {
                w.push_back(g);
                break;
            }
    Rows out;
    while (!w.empty()) {
        for (auto& row : w) {
            int v = INT_MAX;
            for (const auto& x : row) v = std::min(v, padic_valuation(x, p));
            if (v != 0) {
                const mpq_class s = pow_p(p, -v);
                for (auto& x : row) x *= s;
            }
        }
        QVector piv = std::move(w.front());
        w.erase(w.begin());
        int j = 0;
        while (padic_valuation(piv[j], p) != 0) ++j;
        const mpq_class iv = 1 / piv[j];
        for (auto& x : piv) x *= iv;
        Rows rest;
        for (auto& row : w) {
            if (sgn(row[j]) != 0) {
                const mpq_class f = row[j];
                for (int k = 0; k < m; ++k) row[k] -= f * piv[k];
            }
            bool zero = true;
            for (const auto& x : row) zero = zero && sgn(x) == 0;
            if (!zero) rest.push_back(std::move(row));
        }
        w = std::move(rest);
        out.push_back(std::move(piv));
    }
    return out;
}

Rows intersect(i64 p, int m, const Rows& a, const Rows& b) {
    if (a.empty() || b.empty()) return {};
    const auto s = subspace_intersect(make_q_subspace(m, a), make_q_subspace(m, b));
    return hull(p, m, s.rows());
}

/// Coordinates of each row of x in the basis v (rows), or throws.
Rows coords(const Rows& v, const Rows& x) {
    Rows out;
    for (const auto& r : x) {
        auto t = q_solve(v, r);
        if (!t) throw std::logic_error("localized: vector outside the ambient submodule");
        out.push_back(std::move(*t));
    }
    return out;
}

/// Rows of v completing the pure x ≤ v to a basis of v.
Rows complement_in(i64 p, const Rows& x, const Rows& v) {
    const int n = static_cast<int>(v.size());
    std::vector<std::vector<i64>> red;
    for (const auto& r : coords(v, x)) {
        std::vector<i64> e(n);
        for (int j = 0; j < n; ++j) e[j] = reduce_mod_p(r[j], p);
        red.push_back(std::move(e));
    }
    FpSubspace acc = make_fp_subspace(p, n, red);
    Rows out;
    for (int j = 0; j < n && acc.dim() < n; ++j) {
        std::vector<i64> e(n, 0);
        e[j] = 1;
        if (acc.contains(e)) continue;
        red.push_back(std::move(e));
        acc = make_fp_subspace(p, n, red);
        out.push_back(v[j]);
    }
    if (acc.dim() != n) throw std::logic_error("localized: submodule is not pure in its ambient");
    return out;
}

/// v = x ⊕ y, decided on coordinates.
bool splits(i64 p, const Rows& v, const Rows& x, const Rows& y) {
    if (x.size() + y.size() != v.size()) return false;
    if (v.empty()) return true;
    for (const auto& r : concat(x, y))
        if (!q_solve(v, r)) return false;
    const mpq_class d = determinant(coords(v, concat(x, y)));
    return sgn(d) != 0 && padic_valuation(d, p) == 0;
}

bool same_span(int m, const Rows& a, const Rows& c) {
    return a.size() == c.size() && qrank(concat(a, c), m) == static_cast<int>(a.size());
}

QVector add_rows(const QVector& x, const QVector& y, const mpq_class& s = 1) {
    QVector z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + s * y[i];
    return z;
}

QVector combine(const QVector& coeff_row, const Rows& basis, std::size_t m) {
    QVector z(m);
    for (std::size_t j = 0; j < basis.size(); ++j)
        if (sgn(coeff_row[j]) != 0)
            for (std::size_t k = 0; k < m; ++k) z[k] += coeff_row[j] * basis[j][k];
    return z;
}

struct Solver {
    i64 p;
    int m;
    std::vector<std::string>& trace;

    // V = A ⊕ B = C ⊕ K; returns U with V = A ⊕ U = C ⊕ U.
    Rows run(const Rows& a, const Rows& b, const Rows& c, const Rows& k, const Rows& v) {
        const Rows u = step(a, b, c, k, v);
        if (!splits(p, v, a, u) || !splits(p, v, c, u))
            throw std::logic_error("localized complement failed verification at rank " + std::to_string(v.size()));
        return u;
    }

    Rows step(const Rows& a, const Rows& b, const Rows& c, const Rows& k, const Rows& v) {
        if (a.size() != c.size()) throw std::logic_error("localized: rank mismatch in recursion");
        if (a.empty()) return v;
        if (same_span(m, a, c)) {
            trace.push_back("A=C");
            return b;
        }
        if (Rows a1 = intersect(p, m, a, c); !a1.empty()) {
            trace.push_back("A∩C split");
            const Rows a2 = complement_in(p, a1, a);
            const Rows v2 = concat(a2, b);
            const Rows c2 = intersect(p, m, v2, c);
            return run(a2, b, c2, complement_in(p, c2, v2), v2);
        }
        if (Rows f = intersect(p, m, b, k); !f.empty()) {
            trace.push_back("B∩K absorb");
            const Rows u = run(concat(a, f), complement_in(p, f, b), concat(c, f), complement_in(p, f, k), v);
            return concat(f, u);
        }
        if (Rows ak = intersect(p, m, a, k); !ak.empty()) {
            trace.push_back("A∩K peel");
            return peel(a, c, k, ak, v);
        }
        if (Rows cb = intersect(p, m, c, b); !cb.empty()) {
            trace.push_back("C∩B peel");
            return peel(c, a, b, cb, v);
        }
        return aligned(a, b, c, v);
    }

    // A ∩ K = ak ≠ 0 with A ∩ C = B ∩ K = 0.
    Rows peel(const Rows& a, const Rows& c, const Rows& k, const Rows& ak, const Rows& v) {
        (void)v;
        const Rows k2 = complement_in(p, ak, k);
        const Rows ck2 = concat(c, k2);
        const Rows a2 = intersect(p, m, a, ck2);
        Rows proj;
        for (const auto& t : coords(ck2, a2)) {
            const QVector head(t.begin(), t.begin() + static_cast<long>(c.size()));
            proj.push_back(combine(head, c, m));
        }
        const Rows c2 = hull(p, m, proj);
        const Rows v2 = concat(c2, k2);
        const Rows u2 = run(a2, complement_in(p, a2, v2), c2, k2, v2);
        const Rows c1 = complement_in(p, c2, c);
        if (c1.size() != ak.size()) throw std::logic_error("localized: peel rank mismatch");
        Rows h;
        for (std::size_t i = 0; i < ak.size(); ++i) h.push_back(add_rows(ak[i], c1[i]));
        return concat(h, u2);
    }

    Rows aligned(const Rows& a, const Rows& b, const Rows& c, const Rows& v) {
        if (2 * a.size() != v.size() || b.size() != a.size())
            throw std::logic_error("localized: aligned case needs rank A = rank B = rank V / 2");
        const AlignedBases al = align_bases(p, a, b, c);
        Rows h, l, rest;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (padic_valuation(al.s[i], p) > 0) h.push_back(add_rows(al.a[i], al.b[i]));
            else if (padic_valuation(al.r[i], p) > 0) l.push_back(add_rows(al.a[i], al.b[i]));
            else rest.push_back(add_rows(al.a[i], al.c[i]));
        }
        std::string tag = "aligned";
        if (h.empty()) tag += " l=0";
        if (l.empty()) tag += " r=0";
        if (rest.empty()) tag += " l+r=m";
        trace.push_back(tag);
        max_base = std::max(max_base, static_cast<int>(v.size()));
        return concat(concat(h, l), rest);
    }

    int max_base = 0;
};

} // namespace

std::string LocalizedModule::to_string() const {
    return "Qp(" + std::to_string(p) + ")^" + std::to_string(rank);
}

std::string LocalizedSubmodule::to_string() const {
    std::string s = "rows[";
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (i) s += ';';
        s += q_vector_string(basis[i]);
    }
    return s + "]";
}

bool in_localization(const mpq_class& q, i64 p) { return mpz_divisible_ui_p(q.get_den_mpz_t(), p) == 0; }

LocalizedSubmodule make_localized(const LocalizedModule& m, QMatrix rows) {
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != m.rank) throw PreconditionError("localized: row length differs from the rank");
        for (const auto& x : r)
            if (!in_localization(x, m.p))
                throw PreconditionError("localized: entry " + x.get_str() + " has a denominator divisible by p");
    }
    return {m, std::move(rows)};
}

LocalizedSubmodule pure_hull(const LocalizedModule& m, const QMatrix& gens) {
    return make_localized(m, hull(m.p, m.rank, gens));
}

bool is_pure_basis(const LocalizedModule& m, const QMatrix& rows) {
    std::vector<std::vector<i64>> red;
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != m.rank) return false;
        std::vector<i64> e;
        for (const auto& x : r) {
            if (!in_localization(x, m.p)) return false;
            e.push_back(reduce_mod_p(x, m.p));
        }
        red.push_back(std::move(e));
    }
    return make_fp_subspace(m.p, m.rank, red).dim() == static_cast<int>(rows.size());
}

bool localized_direct_sum(const LocalizedSubmodule& a, const LocalizedSubmodule& u) {
    const int m = a.module.rank;
    if (a.rank() + u.rank() != m) return false;
    const mpq_class d = determinant(concat(a.basis, u.basis));
    return sgn(d) != 0 && padic_valuation(d, a.module.p) == 0;
}

AlignedBases align_bases(i64 p, const QMatrix& a, const QMatrix& b, const QMatrix& c) {
    const std::size_t n = a.size();
    const std::size_t m = a.empty() ? 0 : a[0].size();
    const Rows ab = concat(a, b);
    // c_i = Σ X_ij a_j + Σ Y_ij b_j.
    QMatrix x(n, QVector(n)), y(n, QVector(n));
    for (std::size_t i = 0; i < n; ++i) {
        auto t = q_solve(ab, c[i]);
        if (!t) throw std::logic_error("align_bases: C is not inside A ⊕ B");
        for (std::size_t j = 0; j < n; ++j) {
            x[i][j] = (*t)[j];
            y[i][j] = (*t)[n + j];
        }
    }
    // phi = X^{-1} Y, so the rows of [I | phi] lie in Q·C.
    QMatrix phi(n, QVector(n));
    for (std::size_t j = 0; j < n; ++j) {
        // Column j of phi solves X·z = Y[:, j]; with row vectors, z·X^T.
        QMatrix xt(n, QVector(n));
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t s = 0; s < n; ++s) xt[r][s] = x[s][r];
        QVector col(n);
        for (std::size_t r = 0; r < n; ++r) col[r] = y[r][j];
        auto z = q_solve(xt, col);
        if (!z) throw std::logic_error("align_bases: C ∩ B is nonzero");
        for (std::size_t r = 0; r < n; ++r) phi[r][j] = (*z)[r];
    }
    // Smith form over Z_(p): L·phi·Rt = D with L, Rt invertible over Z_(p).
    QMatrix d = phi, lm(n, QVector(n)), rt(n, QVector(n));
    for (std::size_t i = 0; i < n; ++i) lm[i][i] = rt[i][i] = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t bi = k, bj = k;
        int best = INT_MAX;
        for (std::size_t i = k; i < n; ++i)
            for (std::size_t j = k; j < n; ++j) {
                const int v = padic_valuation(d[i][j], p);
                if (v < best) best = v, bi = i, bj = j;
            }
        if (best == INT_MAX) throw std::logic_error("align_bases: C ∩ A is nonzero");
        std::swap(d[k], d[bi]);
        std::swap(lm[k], lm[bi]);
        for (std::size_t i = 0; i < n; ++i) {
            std::swap(d[i][k], d[i][bj]);
            std::swap(rt[i][k], rt[i][bj]);
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            if (sgn(d[i][k]) == 0) continue;
            const mpq_class f = d[i][k] / d[k][k];
            for (std::size_t j = 0; j < n; ++j) {
                d[i][j] -= f * d[k][j];
                lm[i][j] -= f * lm[k][j];
            }
        }
        for (std::size_t j = k + 1; j < n; ++j) {
            if (sgn(d[k][j]) == 0) continue;
            const mpq_class f = d[k][j] / d[k][k];
            for (std::size_t i = 0; i < n; ++i) {
                d[i][j] -= f * d[i][k];
                rt[i][j] -= f * rt[i][k];
            }
        }
    }
    // a'_i = Σ L_ij a_j, b'_i = Σ (Rt^{-1})_ij b_j; then L X^{-1} c = a' + D b'.
    QMatrix rt_inv(n, QVector(n));
    for (std::size_t i = 0; i < n; ++i) {
        QVector e(n);
        e[i] = 1;
        auto z = q_solve(rt, e); // z · Rt = e_i
        rt_inv[i] = *z;
    }
    AlignedBases out;
    for (std::size_t i = 0; i < n; ++i) {
        out.a.push_back(combine(lm[i], a, m));
        out.b.push_back(combine(rt_inv[i], b, m));
    }
    for (std::size_t i = 0; i < n; ++i) {
        const mpq_class& dii = d[i][i];
        if (padic_valuation(dii, p) >= 0) {
            out.r.push_back(1);
            out.s.push_back(dii);
        } else {
            out.r.push_back(1 / dii);
            out.s.push_back(1);
        }
        out.c.push_back(add_rows(QVector(out.a[i].size()), out.a[i], out.r[i]));
        out.c[i] = add_rows(out.c[i], out.b[i], out.s[i]);
    }
    return out;
}

namespace {

Rows standard_basis(int m) {
    Rows v;
    for (int i = 0; i < m; ++i) {
        QVector e(m);
        e[i] = 1;
        v.push_back(std::move(e));
    }
    return v;
}

void check_pair(const LocalizedSubmodule& a, const LocalizedSubmodule& c) {
    const LocalizedModule& mod = a.module;
    if (mod.p != c.module.p || mod.rank != c.module.rank) throw PreconditionError("localized: modules differ");
    if (a.rank() != c.rank()) throw PreconditionError("localized: ranks differ");
    if (!is_pure_basis(mod, a.basis) || !is_pure_basis(mod, c.basis))
        throw PreconditionError("localized: inputs must be pure with independent bases");
}

LocalizedResult solve(const LocalizedSubmodule& a, const Rows& b, const LocalizedSubmodule& c, const Rows& k) {
    const LocalizedModule& mod = a.module;
    LocalizedResult res{{mod, {}}, {}};
    Solver s{mod.p, mod.rank, res.trace};
    res.complement.basis = s.run(a.basis, b, c.basis, k, standard_basis(mod.rank));
    if (!localized_direct_sum(a, res.complement) || !localized_direct_sum(c, res.complement))
        throw std::logic_error("localized complement failed the determinant check");
    return res;
}

} // namespace

LocalizedResult localized_common_complement(const LocalizedSubmodule& a, const LocalizedSubmodule& c) {
    check_pair(a, c);
    const i64 p = a.module.p;
    const Rows v = standard_basis(a.module.rank);
    return solve(a, complement_in(p, a.basis, v), c, complement_in(p, c.basis, v));
}

LocalizedResult localized_common_complement(const LocalizedSubmodule& a, const LocalizedSubmodule& b,
                                            const LocalizedSubmodule& c, const LocalizedSubmodule& k) {
    check_pair(a, c);
    if (!localized_direct_sum(a, b) || !localized_direct_sum(c, k))
        throw PreconditionError("localized: given complements do not split the module");
    return solve(a, b.basis, c, k.basis);
}

namespace {

FiniteAbelianGroup free_module_mod(i64 p, int n, int rank) {
    if (n < 1) throw PreconditionError("p-adic precision must be at least 1");
    return FiniteAbelianGroup::from_orders(std::vector<i64>(rank, ipow(p, n)));
}

Subgroup padic_complement_subgroup(i64 p, int n, int rank, const std::vector<std::vector<i64>>& a,
                                   const std::vector<std::vector<i64>>& c) {
    const auto g = free_module_mod(p, n, rank);
    return homocyclic_common_complement(Subgroup::from_coordinate_rows(g, a), Subgroup::from_coordinate_rows(g, c));
}

} // namespace

std::vector<std::vector<i64>> padic_common_complement(i64 p, int n, int rank, const std::vector<std::vector<i64>>& a,
                                                      const std::vector<std::vector<i64>>& c) {
    return padic_complement_subgroup(p, n, rank, a, c).generator_rows();
}

bool padic_precision_stable(i64 p, int n, int rank, const std::vector<std::vector<i64>>& a,
                            const std::vector<std::vector<i64>>& c) {
    const Subgroup u = padic_complement_subgroup(p, n, rank, a, c);
    const auto fine = padic_common_complement(p, n + 1, rank, a, c);
    return Subgroup::from_coordinate_rows(u.group(), fine) == u;
}

std::vector<LocalizedSubmodule> product_dispatch(const std::vector<LocalizedInstance>& components) {
    std::vector<LocalizedSubmodule> out;
    for (std::size_t i = 0; i < components.size(); ++i) {
        try {
            out.push_back(localized_common_complement(components[i].a, components[i].c).complement);
        } catch (const std::exception& e) {
            throw Error("component " + std::to_string(i) + ": " + e.what());
        }
    }
    return out;
}

Rank2Report rank2_reduction_check(i64 p, int rank, int pairs, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dist(-3, 3);
    const LocalizedModule mod{p, rank};
    auto random_line = [&] {
        for (;;) {
            QVector r(rank);
            for (auto& x : r) x = dist(rng);
            auto h = hull(p, rank, {r});
            if (!h.empty()) return make_localized(mod, h);
        }
    };
    Rank2Report rep;
    for (int t = 0; t < pairs; ++t) {
        const auto a = random_line(), c = random_line();
        ++rep.pairs;
        const Rows v = standard_basis(rank);
        std::vector<std::string> trace;
        Solver s{p, rank, trace};
        try {
            const Rows u = s.run(a.basis, complement_in(p, a.basis, v), c.basis, complement_in(p, c.basis, v), v);
            if (localized_direct_sum(a, {mod, u}) && localized_direct_sum(c, {mod, u})) ++rep.successes;
        } catch (const std::logic_error&) {
        }
        for (const auto& tag : trace) ++rep.case_counts[tag.substr(0, tag.find(' '))];
        rep.max_base_rank = std::max(rep.max_base_rank, s.max_base);
    }
    return rep;
}

} // namespace perspectra
