#pragma once

// Subspaces of F^m over an exact field F, in reduced row echelon form, and
// the common-complement recursion for two subspaces of equal dimension.
//
// A field type provides: using T; zero(), one(), add, sub, mul, inv, neg,
// is_zero. Two instantiations exist: FpField (integers mod a prime) and
// QField (GMP rationals).

#include "perspectra/arith.hpp"
#include "perspectra/errors.hpp"

#include <string>
#include <utility>
#include <vector>

namespace perspectra {

struct FpField {
    i64 p;
    using T = i64;
    T zero() const { return 0; }
    T one() const { return 1; }
    T add(T a, T b) const { return (a + b) % p; }
    T sub(T a, T b) const { return mod(a - b, p); }
    T mul(T a, T b) const { return static_cast<T>((static_cast<i128>(a) * b) % p); }
    T neg(T a) const { return a ? p - a : 0; }
    T inv(T a) const { return inv_mod(a, p); }
    T from_int(i64 v) const { return mod(v, p); }
    bool is_zero(T a) const { return a == 0; }
    bool operator==(const FpField&) const = default;
};

/// Step tags reported by common_complement through its optional log.
enum class FieldCase { Equal, Restrict, SplitIntersection, Diagonal };

inline const char* field_case_name(FieldCase c) {
    switch (c) {
    case FieldCase::Equal: return "A=C";
    case FieldCase::Restrict: return "A+C!=D";
    case FieldCase::SplitIntersection: return "socle split";
    case FieldCase::Diagonal: return "A∩C=0 diagonal";
    }
    return "?";
}

template <class F>
class Subspace {
public:
    using T = typename F::T;
    using Row = std::vector<T>;

    Subspace(F f, int m) : f_(std::move(f)), m_(m) {}
    /// Span of the given rows (any length-m vectors).
    Subspace(F f, int m, std::vector<Row> rows) : f_(std::move(f)), m_(m), rows_(std::move(rows)) {
        for (const auto& r : rows_)
            if (static_cast<int>(r.size()) != m_) throw PreconditionError("subspace row length mismatch");
        reduce();
    }
    static Subspace whole(F f, int m) {
        std::vector<Row> rows;
        for (int i = 0; i < m; ++i) {
            Row r(m, f.zero());
            r[i] = f.one();
            rows.push_back(std::move(r));
        }
        return Subspace(std::move(f), m, std::move(rows));
    }

    const F& field() const { return f_; }
    int ambient_dim() const { return m_; }
    int dim() const { return static_cast<int>(rows_.size()); }
    const std::vector<Row>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return piv_; }

    bool contains(Row v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const T c = v[piv_[i]];
            if (f_.is_zero(c)) continue;
            for (int j = 0; j < m_; ++j) v[j] = f_.sub(v[j], f_.mul(c, rows_[i][j]));
        }
        for (const auto& x : v)
            if (!f_.is_zero(x)) return false;
        return true;
    }
    bool contains(const Subspace& o) const {
        for (const auto& r : o.rows_)
            if (!contains(r)) return false;
        return true;
    }

    friend bool operator==(const Subspace& a, const Subspace& b) { return a.m_ == b.m_ && a.rows_ == b.rows_; }

    std::string to_string() const {
        std::string s = "span{";
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (i) s += ';';
            s += '(';
            for (int j = 0; j < m_; ++j) {
                if (j) s += ',';
                s += element_string(rows_[i][j]);
            }
            s += ')';
        }
        return s + "}";
    }

private:
    static std::string element_string(const T& x) {
        if constexpr (requires { x.get_str(); }) return x.get_str();
        else return std::to_string(x);
    }

    void reduce() {
        piv_.clear();
        std::vector<Row>& a = rows_;
        std::size_t rank = 0;
        for (int col = 0; col < m_ && rank < a.size(); ++col) {
            std::size_t sel = rank;
            while (sel < a.size() && f_.is_zero(a[sel][col])) ++sel;
            if (sel == a.size()) continue;
            std::swap(a[rank], a[sel]);
            const T iv = f_.inv(a[rank][col]);
            for (int j = 0; j < m_; ++j) a[rank][j] = f_.mul(a[rank][j], iv);
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (i == rank || f_.is_zero(a[i][col])) continue;
                const T c = a[i][col];
                for (int j = 0; j < m_; ++j) a[i][j] = f_.sub(a[i][j], f_.mul(c, a[rank][j]));
            }
            piv_.push_back(col);
            ++rank;
        }
        a.resize(rank);
    }

    F f_;
    int m_;
    std::vector<Row> rows_;
    std::vector<int> piv_;
};

template <class F>
Subspace<F> subspace_sum(const Subspace<F>& a, const Subspace<F>& b) {
    auto rows = a.rows();
    rows.insert(rows.end(), b.rows().begin(), b.rows().end());
    return Subspace<F>(a.field(), a.ambient_dim(), std::move(rows));
}

/// Zassenhaus: rows (a | a) and (b | 0); rows with zero left half span a ∩ b.
template <class F>
Subspace<F> subspace_intersect(const Subspace<F>& a, const Subspace<F>& b) {
    const F& f = a.field();
    const int m = a.ambient_dim();
    std::vector<typename Subspace<F>::Row> rows;
    for (const auto& r : a.rows()) {
        auto x = r;
        x.insert(x.end(), r.begin(), r.end());
        rows.push_back(std::move(x));
    }
    for (const auto& r : b.rows()) {
        auto x = r;
        x.resize(2 * m, f.zero());
        rows.push_back(std::move(x));
    }
    Subspace<F> z(f, 2 * m, std::move(rows));
    std::vector<typename Subspace<F>::Row> out;
    for (std::size_t i = 0; i < z.rows().size(); ++i)
        if (z.pivots()[i] >= m) out.emplace_back(z.rows()[i].begin() + m, z.rows()[i].end());
    return Subspace<F>(f, m, std::move(out));
}

/// A complement of x inside v (x ≤ v), spanned by rows of v's echelon basis.
template <class F>
Subspace<F> complement_in(const Subspace<F>& x, const Subspace<F>& v) {
    Subspace<F> acc = x;
    std::vector<typename Subspace<F>::Row> added;
    for (const auto& r : v.rows()) {
        if (acc.dim() == v.dim()) break;
        if (acc.contains(r)) continue;
        added.push_back(r);
        acc = subspace_sum(acc, Subspace<F>(x.field(), x.ambient_dim(), {r}));
    }
    return Subspace<F>(x.field(), x.ambient_dim(), std::move(added));
}

namespace detail {

template <class F, class Log>
Subspace<F> common_complement_in(const Subspace<F>& a, const Subspace<F>& c, const Subspace<F>& v, Log& log) {
    if (a == c) {
        log(FieldCase::Equal, v.dim());
        return complement_in(a, v);
    }
    const Subspace<F> s = subspace_sum(a, c);
    if (s.dim() < v.dim()) {
        log(FieldCase::Restrict, v.dim());
        const Subspace<F> w = common_complement_in(a, c, s, log);
        return subspace_sum(w, complement_in(s, v));
    }
    const Subspace<F> k = subspace_intersect(a, c);
    if (k.dim() > 0) {
        log(FieldCase::SplitIntersection, v.dim());
        const Subspace<F> l = complement_in(k, v);
        return common_complement_in(subspace_intersect(a, l), subspace_intersect(c, l), l, log);
    }
    log(FieldCase::Diagonal, v.dim());
    const F& f = a.field();
    std::vector<typename Subspace<F>::Row> rows;
    for (int i = 0; i < a.dim(); ++i) {
        typename Subspace<F>::Row r(a.ambient_dim());
        for (int j = 0; j < a.ambient_dim(); ++j) r[j] = f.add(a.rows()[i][j], c.rows()[i][j]);
        rows.push_back(std::move(r));
    }
    return Subspace<F>(f, a.ambient_dim(), std::move(rows));
}

} // namespace detail

/// W with F^m = A ⊕ W = C ⊕ W. log(FieldCase, dim of the current ambient)
/// is invoked once per recursion step.
template <class F, class Log>
Subspace<F> field_common_complement(const Subspace<F>& a, const Subspace<F>& c, Log&& log) {
    if (a.ambient_dim() != c.ambient_dim()) throw PreconditionError("common complement: ambient dimensions differ");
    if (a.dim() != c.dim())
        throw PreconditionError("common complement: dimensions differ (" + std::to_string(a.dim()) + " vs " +
                                std::to_string(c.dim()) + ")");
    const auto v = Subspace<F>::whole(a.field(), a.ambient_dim());
    return detail::common_complement_in(a, c, v, log);
}

template <class F>
Subspace<F> field_common_complement(const Subspace<F>& a, const Subspace<F>& c) {
    return field_common_complement(a, c, [](FieldCase, int) {});
}

/// F^m = a ⊕ b.
template <class F>
bool is_direct_complement(const Subspace<F>& a, const Subspace<F>& b) {
    return a.dim() + b.dim() == a.ambient_dim() && subspace_sum(a, b).dim() == a.ambient_dim();
}

} // namespace perspectra
