#pragma once

// Finite rings and the corner-unit condition:
//
//   if erse = e for an idempotent e and r, s in R, then erte = e for some t
//   with ete a unit of the corner ring eRe.
//
// A ring is stored as an additive subgroup (its carrier) of Z/m_1 × ... × Z/m_n
// with a bilinear multiplication, so corners, one-sided ideals and kernels
// of multiplication maps are all lattices handled by ModLattice.

#include "perspectra/caps.hpp"
#include "perspectra/group.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace perspectra {

using RElem = std::vector<i64>;

class FiniteRing {
public:
    static FiniteRing zn(i64 n);
    /// k×k matrices over Z/q, q a prime power (the endomorphisms of Z(q)^k).
    static FiniteRing matrix(int k, i64 q);
    /// Componentwise product; the empty product is the zero ring.
    static FiniteRing product(std::vector<FiniteRing> factors);
    /// End(G) under composition. Refuses when ∏ gcd(d_i, d_j) exceeds cap.
    static FiniteRing end_ring(const FiniteAbelianGroup& g, i64 cap = default_caps().ring);

    /// eRe with identity e (e must be an idempotent of this ring).
    FiniteRing corner(const RElem& e) const;

    const std::string& name() const;
    /// Coordinate moduli of the ambient Z/m_1 × ... × Z/m_n.
    const std::vector<i64>& mods() const;
    int dim() const { return static_cast<int>(mods().size()); }
    i64 size() const;
    /// Additive generators of the carrier (Hermite rows).
    std::vector<RElem> additive_generators() const;

    RElem zero() const;
    RElem one() const;
    RElem add(const RElem& a, const RElem& b) const;
    RElem sub(const RElem& a, const RElem& b) const;
    RElem mul(const RElem& a, const RElem& b) const;
    bool contains(const RElem& x) const;
    bool is_commutative() const;

    /// All elements (canonical enumeration order); throws CapExceeded.
    std::vector<RElem> elements(i64 cap = default_caps().ring) const;
    /// Mixed-radix code of an ambient vector.
    std::uint64_t encode(const RElem& x) const;
    RElem decode(std::uint64_t code) const;
    std::uint64_t ambient_size() const;

    /// All x with x² = x. End(G) rings list the projections of the
    /// decompositions G = H ⊕ K; other rings scan or combine factors.
    std::vector<RElem> idempotents(i64 cap = default_caps().ring) const;

    /// x is a unit: some y in the carrier has xy = 1 (finite, so also yx = 1).
    std::optional<RElem> inverse(const RElem& x) const;
    bool is_unit(const RElem& x) const { return inverse(x).has_value(); }

    /// For End(G): the group; empty otherwise.
    const std::optional<FiniteAbelianGroup>& endomorphism_group() const;
    /// Ring element of End(G) from a homomorphism, and back.
    RElem from_homomorphism(const Homomorphism& h) const;
    Homomorphism to_homomorphism(const RElem& x) const;

    std::string element_to_string(const RElem& x) const;

    struct Impl;
    friend struct RingAccess;

private:
    explicit FiniteRing(std::shared_ptr<const Impl> d) : d_(std::move(d)) {}
    std::shared_ptr<const Impl> d_;
};

/// x in eRe is a unit of the corner: xy = yx = e for some y in eRe.
bool units_of_corner(const FiniteRing& r, const RElem& e, const RElem& x);

struct Condition4Options {
    std::uint64_t max_ambient = std::uint64_t{1} << 27; ///< largest ambient for the structured check
    i64 idempotent_cap = std::int64_t{1} << 22;
    /// e = 1: rs = 1 forces s to be a unit (finite ring), so t = s. When false
    /// the identity is treated like every other idempotent.
    bool identity_shortcut = true;
    /// Replaces the corner-unit test (for exercising the failure branch).
    std::function<bool(const RElem& e, const RElem& x)> unit_override;
};

struct Condition4Result {
    bool holds = true;
    std::optional<std::array<RElem, 3>> counterexample; ///< (e, r, s)
    std::string ring;
    std::int64_t idempotents = 0;
    std::int64_t idempotent_classes = 0;
    std::int64_t orbit_representatives = 0;
    std::int64_t hypothesis_cases = 0;
    double elapsed_ms = 0;

    std::string to_json(const FiniteRing& r) const;
};

/// Exact check. Reformulated with a = er ∈ eR, b = se ∈ Re and u = te ∈ Re:
/// whenever e ∈ a·Re, some u ∈ Re has au = e and eu ∈ U(eRe). This is
/// invariant under conjugation of e by units and under a ↦ va for units v
/// of eRe, so one idempotent per conjugacy class and one a per orbit is
/// examined; for each, the solutions of au = e form a coset of a kernel
/// that is searched completely.
Condition4Result check_condition4(const FiniteRing& r, const Condition4Options& opt = {});

/// Literal quantifier loop over e, r, s, t (small rings). With
/// commutative_shortcut, t = s is tried first and must succeed.
Condition4Result check_condition4_bruteforce(const FiniteRing& r, i64 cap = default_caps().ring,
                                             bool commutative_shortcut = false);

/// ∏ gcd(d_i, d_j).
i64 end_ring_cardinality(const FiniteAbelianGroup& g);

struct ERCrossCheck {
    bool agree = false;
    bool skipped = false;
    bool condition4 = false;
    bool perspective = false;
    std::string group;
    std::string reason;
    double elapsed_ms = 0;
};

/// check_condition4(End(G)) against is_perspective_bruteforce(G). Cap
/// refusals are reported as skipped.
ERCrossCheck er_crosscheck(const FiniteAbelianGroup& g, i64 ring_cap = std::int64_t{1} << 26,
                           i64 sweep_cap = default_caps().sweep);

} // namespace perspectra
