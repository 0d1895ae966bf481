#pragma once

// Rank-1 torsion-free groups G, reduced to the set of primes p with pG = G,
// and the perspectivity of G ⊕ G.
//
// Write G ⊕ G = Ra ⊕ Rb. Rank-1 summands are A = R(ma + nb), C = R(ka + tb);
// U = R(sa + lb) with gcd(s, l) = 1 complements both iff (ml − sn)G = G and
// (kl − st)G = G.

#include "perspectra/arith.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace perspectra {

class RationalGroupType {
public:
    /// π∞ = primes (finite set).
    static RationalGroupType divisible_by(std::set<i64> primes);
    /// π∞ = all primes except the given ones.
    static RationalGroupType divisible_except(std::set<i64> primes);
    static RationalGroupType integers() { return divisible_by({}); }
    static RationalGroupType rationals() { return divisible_except({}); }

    bool divisible_by_prime(i64 p) const { return cofinite_ != (primes_.count(p) > 0); }
    bool cofinite() const { return cofinite_; }
    /// The finite description: π∞ itself, or its complement when cofinite.
    const std::set<i64>& listed() const { return primes_; }
    /// π∞ = ∅.
    bool is_integers() const { return !cofinite_ && primes_.empty(); }

    std::string to_string() const; ///< "div{11}", "codiv{2,5}", "div{}", "all"
    friend bool operator==(const RationalGroupType&, const RationalGroupType&) = default;

private:
    RationalGroupType(bool cofinite, std::set<i64> primes) : cofinite_(cofinite), primes_(std::move(primes)) {}
    bool cofinite_;
    std::set<i64> primes_;
};

/// xG = G: every prime factor of |x| is in π∞. x = 0 is rejected.
bool x_divides(const RationalGroupType& type, i64 x);

/// False means definitely not perspective (π∞ = ∅); true is inconclusive.
bool necessary_condition(const RationalGroupType& type);

/// U = R(sa + lb) complements R(ma + nb) and R(ka + tb).
bool verify_summand_pair(const RationalGroupType& type, i64 m, i64 n, i64 k, i64 t, i64 s, i64 l);

struct Quadruple {
    i64 m = 0, n = 0, k = 0, t = 0;
    std::string to_string() const;
    friend bool operator==(const Quadruple&, const Quadruple&) = default;
};

/// Exact refutation: no integers (s, l) at all satisfy both divisibility
/// conditions, because the values ml − sn, kl − st range over a finite
/// residue set modulo the modulus.
struct ResidueCertificate {
    Quadruple quad;
    i64 modulus = 0;
    std::string argument;
};

/// Residue refutation for a quadruple over a type with finite π∞, or
/// nothing when the residues admit a solution.
std::optional<ResidueCertificate> residue_refutation(const RationalGroupType& type, const Quadruple& q);
/// Re-derives the certificate's claim from scratch.
bool replay_certificate(const RationalGroupType& type, const ResidueCertificate& cert);

/// First (s, l) in the box |s|, |l| ≤ bound (coprime) meeting both
/// conditions, scanning |s| and |l| in increasing order.
std::optional<std::pair<i64, i64>> exhaustive_witness_search(const RationalGroupType& type, const Quadruple& q,
                                                             i64 bound);

struct Rank1Bounds {
    i64 param_bound = 50;
    i64 witness_bound = 5000;
    int exponent_bound = 12;
};

enum class Rank1Status { Perspective, NotPerspective, Unknown };
const char* rank1_status_name(Rank1Status s);

struct GPlusGVerdict {
    Rank1Status status = Rank1Status::Unknown;
    std::string type;
    std::string strategy; ///< how the verdict was reached
    std::optional<ResidueCertificate> certificate;
    std::int64_t quadruples_checked = 0;
    Rank1Bounds bounds;
    std::vector<std::string> details;

    std::string to_json() const;
};

GPlusGVerdict gplusg_decide(const RationalGroupType& type, const Rank1Bounds& bounds = {});

/// The 11-example: π∞ = {11}. Shows by last digits (mod 10) that
/// 5l − 2s = ±11^a with s = ±11^b is impossible in the two branches b = 0 and
/// a = 0, and double-checks all exponents a, b ≤ exponent_bound numerically.
struct Example11Certificate {
    Quadruple quad{5, 2, 0, 1};
    i64 modulus = 10;
    struct Branch {
        std::string equation;
        std::set<i64> lhs_digits, rhs_digits;
        bool disjoint = false;
    };
    std::vector<Branch> branches;
    int exponents_checked = 0;
    bool numeric_ok = false;

    bool valid() const;
    std::string to_json() const;
};
Example11Certificate example_11_refute(const RationalGroupType& type, int exponent_bound = 12);

/// (s, l) for the table of the final proposition (at most two primes p, q
/// with pG ≠ G). column is the table column of (m, n, k, t) (0 when an entry
/// is zero); rule names the construction used.
struct Rank1Witness {
    i64 s = 0, l = 1;
    int column = 0;
    std::string rule;
};
Rank1Witness witness_U(const RationalGroupType& type, i64 m, i64 n, i64 k, i64 t);

/// Table column (1..12) of a sign pattern of m, n, k, t, or 0 when the
/// pattern is not a column of the table.
int table_column(bool m, bool n, bool k, bool t);

} // namespace perspectra
