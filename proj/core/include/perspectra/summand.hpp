#pragma once

// Direct summands, diagonals and the exhaustive common-complement oracle.

#include "perspectra/caps.hpp"
#include "perspectra/element_set.hpp"
#include "perspectra/group.hpp"

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace perspectra {

struct SummandWitness {
    Subgroup subgroup;
    Subgroup complement;
};

/// S ∩ nG = nS for every n; necessary for S to be a summand and, G being
/// finite, also sufficient.
bool is_pure(const Subgroup& s);

/// Some complement T with G = S ⊕ T, or nothing. Impure subgroups are
/// rejected at once; pure ones get the constructive complement (verified)
/// and, should that ever fail, an exhaustive search.
std::optional<Subgroup> is_summand(const Subgroup& s);

/// All subgroups of a group with their element bitsets, grouped by order.
/// Shared by the exhaustive searches below.
class SubgroupCatalog {
public:
    explicit SubgroupCatalog(FiniteAbelianGroup g, i64 cap = default_caps().subgroup_enum);

    const FiniteAbelianGroup& group() const { return g_; }
    const ElementIndex& index() const { return idx_; }
    const std::vector<Subgroup>& subgroups() const { return subs_; }
    const ElementSet& bits(int i) const { return bits_[i]; }
    /// Indices (canonical order) of the subgroups of order n.
    const std::vector<int>& of_order(i64 n) const;
    int find(const Subgroup& s) const;

    /// First subgroup U (canonical order) of order |G|/|a| with
    /// a ∩ U = c ∩ U = 0; scanned counts the candidates examined.
    std::optional<int> common_complement(const ElementSet& a, const ElementSet& c, i64 order_a,
                                         std::int64_t* scanned = nullptr) const;
    /// Number of common complements (exhaustive count).
    std::int64_t count_common_complements(const ElementSet& a, const ElementSet& c, i64 order_a) const;

private:
    FiniteAbelianGroup g_;
    ElementIndex idx_;
    std::vector<Subgroup> subs_;
    std::vector<ElementSet> bits_;
    std::map<i64, std::vector<int>> by_order_;
    struct BasisHash {
        std::size_t operator()(const std::vector<i64>& b) const noexcept;
    };
    std::unordered_map<std::vector<i64>, int, BasisHash> by_basis_;
};

/// Every summand once, in canonical order, each with the first complement in
/// canonical order. Throws CapExceeded above the subgroup enumeration cap.
std::vector<SummandWitness> enumerate_summands(const FiniteAbelianGroup& g, i64 cap = default_caps().subgroup_enum);
std::vector<SummandWitness> enumerate_summands(const SubgroupCatalog& cat);

/// D = {x + delta(x) : x in H} for G = H ⊕ K and delta|_H : H -> K bijective.
Subgroup diagonal(const Subgroup& h, const Subgroup& k, const Homomorphism& delta);

/// The endomorphism delta ∘ pi_H (pi_H the projection along K) whose
/// diagonal is D. Rejects D that is not a diagonal for (H, K).
Homomorphism diagonal_inverse(const Subgroup& h, const Subgroup& k, const Subgroup& d);

/// Endomorphism of G agreeing with the map h_gens[i] -> images[i] on H and
/// vanishing on K, where G = H ⊕ K. The assignment must define a
/// homomorphism on H.
Homomorphism extend_by_zero(const Subgroup& h, const Subgroup& k, std::span<const Element> h_gens,
                            std::span<const Element> images);

/// First U in canonical order with G = A ⊕ U = C ⊕ U; nothing means no common
/// complement exists. Rejects non-isomorphic inputs.
std::optional<Subgroup> common_complement_bruteforce(const Subgroup& a, const Subgroup& c,
                                                     i64 cap = default_caps().subgroup_enum);

/// M ∩ H for G = S ⊕ M = L ⊕ M with S, L ≤ H and H a summand; asserts
/// H = S ⊕ (M ∩ H) = L ⊕ (M ∩ H).
Subgroup restrict_complement(const Subgroup& h, const Subgroup& s, const Subgroup& l, const Subgroup& m);

/// H = parts[0] ⊕ ... inside the subgroup H (not necessarily all of G).
bool is_internal_direct_sum(const Subgroup& h, std::span<const Subgroup> parts);

struct PerspectivityReport {
    std::string group;
    bool perspective = true;
    std::optional<std::pair<Subgroup, Subgroup>> counterexample;
    std::int64_t summands = 0;
    std::int64_t pairs_checked = 0;
    std::int64_t candidates_scanned = 0;
    double elapsed_ms = 0;

    std::string to_json() const;
};

PerspectivityReport is_perspective_bruteforce(const FiniteAbelianGroup& g, i64 cap = default_caps().sweep);
PerspectivityReport is_perspective_bruteforce(const SubgroupCatalog& cat, const std::vector<SummandWitness>& summands);

} // namespace perspectra
