#include "perspectra/rational.hpp"

#include <optional>

namespace perspectra {

RationalSubspace make_q_subspace(int dim, QMatrix rows) { return RationalSubspace(QField{}, dim, std::move(rows)); }

RationalSubspace q_common_complement(int dim, const RationalSubspace& a, const RationalSubspace& c,
                                     std::vector<std::string>* trace) {
    if (a.ambient_dim() != dim || c.ambient_dim() != dim)
        throw PreconditionError("rational complement: ambient dimension mismatch");
    return field_common_complement(a, c, [&](FieldCase k, int) {
        if (trace) trace->push_back(field_case_name(k));
    });
}

int padic_valuation(const mpq_class& q, i64 p) {
    if (sgn(q) == 0) return INT_MAX;
    const mpz_class pz = static_cast<long>(p);
    mpz_class t;
    const auto vn = mpz_remove(t.get_mpz_t(), q.get_num_mpz_t(), pz.get_mpz_t());
    const auto vd = mpz_remove(t.get_mpz_t(), q.get_den_mpz_t(), pz.get_mpz_t());
    return static_cast<int>(vn) - static_cast<int>(vd);
}

mpq_class determinant(QMatrix m) {
    const std::size_t n = m.size();
    mpq_class det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = col;
        while (sel < n && sgn(m[sel][col]) == 0) ++sel;
        if (sel == n) return 0;
        if (sel != col) {
            std::swap(m[sel], m[col]);
            det = -det;
        }
        det *= m[col][col];
        for (std::size_t i = col + 1; i < n; ++i) {
            if (sgn(m[i][col]) == 0) continue;
            const mpq_class f = m[i][col] / m[col][col];
            for (std::size_t j = col; j < n; ++j) m[i][j] -= f * m[col][j];
        }
    }
    return det;
}

int q_rank(const QMatrix& m) {
    if (m.empty()) return 0;
    return make_q_subspace(static_cast<int>(m[0].size()), m).dim();
}

std::optional<QVector> q_solve(const QMatrix& basis, const QVector& x) {
    // Columns of the system are the basis rows; augmented column is x.
    const std::size_t r = basis.size(), n = x.size();
    QMatrix a(n, QVector(r + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < r; ++j) a[i][j] = basis[j][i];
        a[i][r] = x[i];
    }
    std::vector<std::size_t> piv;
    std::size_t row = 0;
    for (std::size_t col = 0; col < r && row < n; ++col) {
        std::size_t sel = row;
        while (sel < n && sgn(a[sel][col]) == 0) ++sel;
        if (sel == n) continue;
        std::swap(a[sel], a[row]);
        const mpq_class iv = 1 / a[row][col];
        for (auto& e : a[row]) e *= iv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == row || sgn(a[i][col]) == 0) continue;
            const mpq_class f = a[i][col];
            for (std::size_t j = col; j <= r; ++j) a[i][j] -= f * a[row][j];
        }
        piv.push_back(col);
        ++row;
    }
    for (std::size_t i = row; i < n; ++i)
        if (sgn(a[i][r]) != 0) return std::nullopt;
    QVector t(r);
    for (std::size_t i = 0; i < piv.size(); ++i) t[piv[i]] = a[i][r];
    return t;
}

std::string q_vector_string(const QVector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += v[i].get_str();
    }
    return s + ")";
}

} // namespace perspectra
