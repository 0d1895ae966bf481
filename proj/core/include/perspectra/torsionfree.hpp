#pragma once

// Common complements in torsion-free settings of finite rank.
//
// R = Z_(p) denotes the rationals whose denominator is prime to p. A
// LocalizedModule is R^m; its submodules are given by R-bases (rows of
// exact rationals). Pure submodules of R^m are exactly its summands, and a
// family of rows is an R-basis of R^m iff its determinant is a unit of R.

#include "perspectra/group.hpp"
#include "perspectra/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace perspectra {

struct LocalizedModule {
    i64 p = 2;
    int rank = 0;

    std::string to_string() const; ///< "Qp(5)^3"
};

/// An R-submodule of R^m by a basis (rank = rows). Coordinates always have
/// p-free denominators.
struct LocalizedSubmodule {
    LocalizedModule module;
    QMatrix basis;

    int rank() const { return static_cast<int>(basis.size()); }
    std::string to_string() const;
};

/// Checks denominators and the ambient length; throws PreconditionError.
LocalizedSubmodule make_localized(const LocalizedModule& m, QMatrix rows);

bool in_localization(const mpq_class& q, i64 p);

/// Smallest pure submodule containing gens: (Q·gens) ∩ R^m. The basis has a
/// unit pivot in a distinct column per row, cleared in the other rows.
LocalizedSubmodule pure_hull(const LocalizedModule& m, const QMatrix& gens);

/// Gens span a pure submodule of rank = number of rows.
bool is_pure_basis(const LocalizedModule& m, const QMatrix& rows);

/// A ⊕ U = R^m, decided by the p-valuation of det [A; U].
bool localized_direct_sum(const LocalizedSubmodule& a, const LocalizedSubmodule& u);

struct LocalizedResult {
    LocalizedSubmodule complement;
    std::vector<std::string> trace; ///< proof case per recursion step
};

/// U with R^m = A ⊕ U = C ⊕ U for pure A, C of equal rank, built by the case
/// ladder: split A ∩ C, absorb B ∩ K, peel A ∩ K (or C ∩ B) through a pure
/// hull, and finally the aligned-basis construction when all four
/// intersections vanish.
LocalizedResult localized_common_complement(const LocalizedSubmodule& a, const LocalizedSubmodule& c);
/// Same, starting from given complements: R^m = A ⊕ B = C ⊕ K.
LocalizedResult localized_common_complement(const LocalizedSubmodule& a, const LocalizedSubmodule& b,
                                            const LocalizedSubmodule& c, const LocalizedSubmodule& k);

/// Aligned bases for the last case: given G = A ⊕ B (square, rank 2m) and
/// C with C ∩ A = C ∩ B = 0, returns rows a_i, b_i, c_i with
/// c_i = r_i a_i + s_i b_i. Exposed for testing.
struct AlignedBases {
    QMatrix a, b, c;
    std::vector<mpq_class> r, s;
};
AlignedBases align_bases(i64 p, const QMatrix& a, const QMatrix& b, const QMatrix& c);

/// Common complement in the free Z/p^N-module of the given rank; rows are
/// integer vectors. Result rows are reduced into [0, p^N).
std::vector<std::vector<i64>> padic_common_complement(i64 p, int n, int rank, const std::vector<std::vector<i64>>& a,
                                                      const std::vector<std::vector<i64>>& c);

/// The complement at precision N and the one at N+1 reduced mod p^N
/// generate the same subgroup.
bool padic_precision_stable(i64 p, int n, int rank, const std::vector<std::vector<i64>>& a,
                            const std::vector<std::vector<i64>>& c);

struct LocalizedInstance {
    LocalizedSubmodule a, c;
};

/// Solves every component independently; a failing component is reported
/// by index in the thrown Error.
std::vector<LocalizedSubmodule> product_dispatch(const std::vector<LocalizedInstance>& components);

struct Rank2Report {
    int pairs = 0;
    int successes = 0;
    int max_base_rank = 0; ///< largest ambient rank at which the aligned case fired
    std::map<std::string, int> case_counts;
};

/// Random rank-1 pure pairs in R^rank: checks that the recursion solves each
/// and that its base case never exceeds rank 2.
Rank2Report rank2_reduction_check(i64 p, int rank, int pairs, std::uint64_t seed);

} // namespace perspectra
