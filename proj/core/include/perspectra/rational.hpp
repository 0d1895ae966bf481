#pragma once

// Exact rational linear algebra on top of GMP.

#include "perspectra/linear.hpp"

#include <gmpxx.h>

#include <climits>
#include <optional>
#include <string>
#include <vector>

namespace perspectra {

struct QField {
    using T = mpq_class;
    T zero() const { return 0; }
    T one() const { return 1; }
    T add(const T& a, const T& b) const { return a + b; }
    T sub(const T& a, const T& b) const { return a - b; }
    T mul(const T& a, const T& b) const { return a * b; }
    T neg(const T& a) const { return -a; }
    T inv(const T& a) const { return 1 / a; }
    T from_int(i64 v) const { return mpq_class(static_cast<long>(v)); }
    bool is_zero(const T& a) const { return sgn(a) == 0; }
    bool operator==(const QField&) const = default;
};

using QVector = std::vector<mpq_class>;
using QMatrix = std::vector<QVector>;
using RationalSubspace = Subspace<QField>;

RationalSubspace make_q_subspace(int dim, QMatrix rows);

/// H with Q^dim = A ⊕ H = C ⊕ H. The optional trace receives one case name
/// per recursion step.
RationalSubspace q_common_complement(int dim, const RationalSubspace& a, const RationalSubspace& c,
                                     std::vector<std::string>* trace = nullptr);

/// p-adic valuation; INT_MAX for zero.
int padic_valuation(const mpq_class& q, i64 p);
/// Determinant of a square matrix (empty matrix: 1).
mpq_class determinant(QMatrix m);
/// Rank over Q.
int q_rank(const QMatrix& m);
/// t with t·basis = x (basis rows independent), or empty when x is outside
/// the span.
std::optional<QVector> q_solve(const QMatrix& basis, const QVector& x);

std::string q_vector_string(const QVector& v);

} // namespace perspectra
