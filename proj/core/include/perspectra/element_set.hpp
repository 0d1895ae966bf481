#pragma once

// Explicit element sets for small groups. This is the enumeration layer the
// exact algorithms are tested against: subgroups become bitsets over an
// indexing of G, and direct-sum checks become bit operations.

#include "perspectra/caps.hpp"
#include "perspectra/group.hpp"

#include <cstdint>
#include <vector>

namespace perspectra {

/// Mixed-radix indexing of the elements of a group of order <= cap.
class ElementIndex {
public:
    explicit ElementIndex(FiniteAbelianGroup g, i64 cap = default_caps().intersect_enum);

    const FiniteAbelianGroup& group() const { return g_; }
    int size() const { return static_cast<int>(g_.order()); }
    int encode(std::span<const i64> coords) const;
    std::vector<i64> decode(int idx) const;
    int add(int a, int b) const;
    int neg(int a) const;

private:
    FiniteAbelianGroup g_;
    std::vector<int> stride_;
    std::vector<std::uint16_t> digits_; // size() x rank
};

class ElementSet {
public:
    explicit ElementSet(int universe = 0) : n_(universe), w_((universe + 63) / 64, 0) {}
    static ElementSet of(const ElementIndex& idx, const Subgroup& s);

    int universe() const { return n_; }
    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(int i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    int count() const;
    /// True iff the only common element is 0 (index 0).
    bool meets_trivially(const ElementSet& o) const;
    bool subset_of(const ElementSet& o) const;
    std::vector<int> members() const;

    ElementSet operator&(const ElementSet& o) const;
    ElementSet operator|(const ElementSet& o) const;
    friend bool operator==(const ElementSet&, const ElementSet&) = default;

private:
    int n_;
    std::vector<std::uint64_t> w_;
};

/// Subgroup generated by elements given as indices, by orbit closure.
ElementSet closure(const ElementIndex& idx, std::span<const int> gens);

/// Every subgroup of g exactly once, in canonical order. Throws CapExceeded
/// when |g| exceeds the subgroup enumeration cap.
std::vector<Subgroup> enumerate_subgroups(const FiniteAbelianGroup& g, i64 cap = default_caps().subgroup_enum);

/// Intersection by explicit enumeration; the oracle for subgroup_intersect.
Subgroup intersect_by_enumeration(const Subgroup& s, const Subgroup& t, i64 cap = default_caps().intersect_enum);

} // namespace perspectra
