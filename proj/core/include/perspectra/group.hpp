#pragma once

// Finite abelian groups Z(d_1) ⊕ ... ⊕ Z(d_r) with prime-power d_i, their
// elements, homomorphisms and subgroups.
//
// A subgroup S corresponds to the lattice L_S = {x ∈ Z^r : x mod d ∈ S},
// which contains the relation lattice diag(d)·Z^r. Its row-style Hermite
// normal form is the canonical basis: two generating sets span the same
// subgroup iff their bases coincide.

#include "perspectra/arith.hpp"

#include <compare>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace perspectra {

class ModLattice;

/// Ambient group order cap (orders are machine words).
inline constexpr i64 kMaxGroupOrder = i64{1} << 31;

class FiniteAbelianGroup {
public:
    /// The trivial group.
    FiniteAbelianGroup();

    /// make_group: splits every order into prime powers and canonicalizes.
    static FiniteAbelianGroup from_orders(std::span<const i64> orders);

    /// Factors must already be prime powers in canonical order
    /// (prime ascending, exponent descending).
    static FiniteAbelianGroup from_canonical_factors(std::vector<i64> factors);

    int rank() const { return static_cast<int>(d_->factors.size()); }
    i64 order() const { return d_->order; }
    i64 factor(int i) const { return d_->factors[i]; }
    const std::vector<i64>& factors() const { return d_->factors; }
    i64 prime_of(int i) const { return d_->primes[i]; }
    int exponent_of(int i) const { return d_->exponents[i]; }

    /// Distinct primes dividing the order, ascending.
    std::vector<i64> primes() const;
    bool is_trivial() const { return rank() == 0; }
    bool is_p_group() const;
    /// Direct sum of copies of a single Z(p^n) (trivial group included).
    bool is_homocyclic() const;
    /// Largest element order.
    i64 exponent() const;

    std::string to_string() const;

    friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
        return a.d_ == b.d_ || a.d_->factors == b.d_->factors;
    }

private:
    struct Data {
        std::vector<i64> factors;
        std::vector<i64> primes;
        std::vector<int> exponents;
        i64 order = 1;
    };
    explicit FiniteAbelianGroup(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    static std::shared_ptr<const Data> build(std::vector<i64> factors);

    std::shared_ptr<const Data> d_;
};

class Element {
public:
    /// Coordinates are reduced modulo the factor orders.
    Element(FiniteAbelianGroup group, std::vector<i64> coords);
    static Element zero(const FiniteAbelianGroup& group);
    /// The i-th standard generator.
    static Element basis(const FiniteAbelianGroup& group, int i);

    const FiniteAbelianGroup& group() const { return group_; }
    const std::vector<i64>& coords() const { return coords_; }
    i64 operator[](int i) const { return coords_[i]; }
    bool is_zero() const;

    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator-() const;
    Element scaled(i64 n) const;

    friend bool operator==(const Element& a, const Element& b) {
        return a.group_ == b.group_ && a.coords_ == b.coords_;
    }

    std::string to_string() const;

private:
    FiniteAbelianGroup group_;
    std::vector<i64> coords_;
};

i64 element_order(const Element& x);

/// Largest k with x ∈ p^k·G; nullopt means infinite height, which happens
/// exactly when the p-primary part of x is zero.
std::optional<int> p_height(const Element& x, i64 p);

class Subgroup;

class Homomorphism {
public:
    /// matrix is row-major with target.rank() rows and source.rank() columns:
    /// column j is the image of the j-th source generator. Entries are reduced
    /// modulo the target orders. Throws PreconditionError on a size mismatch.
    /// Well-definedness is not checked here; see first_violation().
    Homomorphism(FiniteAbelianGroup source, FiniteAbelianGroup target, std::vector<i64> matrix);

    static Homomorphism identity(const FiniteAbelianGroup& g);
    static Homomorphism zero(const FiniteAbelianGroup& source, const FiniteAbelianGroup& target);
    /// The homomorphism sending the source generator j to images[j].
    static Homomorphism from_images(const FiniteAbelianGroup& source, std::span<const Element> images);

    const FiniteAbelianGroup& source() const { return source_; }
    const FiniteAbelianGroup& target() const { return target_; }
    i64 entry(int i, int j) const { return m_[static_cast<std::size_t>(i) * source_.rank() + j]; }
    const std::vector<i64>& matrix() const { return m_; }

    struct Violation {
        int row;
        int col;
    };
    /// hom_validate: the first entry breaking d_tgt_i | M[i][j]·d_src_j.
    std::optional<Violation> first_violation() const;
    bool is_valid() const { return !first_violation().has_value(); }

    /// Throws PreconditionError for an invalid matrix.
    Element apply(const Element& x) const;
    bool is_idempotent() const;

    Subgroup image() const;
    Subgroup image_of(const Subgroup& s) const;
    Subgroup kernel() const;

    friend bool operator==(const Homomorphism& a, const Homomorphism& b) {
        return a.source_ == b.source_ && a.target_ == b.target_ && a.m_ == b.m_;
    }

private:
    void require_valid() const;

    FiniteAbelianGroup source_;
    FiniteAbelianGroup target_;
    std::vector<i64> m_;
};

/// g ∘ h. Requires target(h) == source(g); both must be valid.
Homomorphism compose(const Homomorphism& g, const Homomorphism& h);

class Subgroup {
public:
    static Subgroup trivial(const FiniteAbelianGroup& g);
    static Subgroup whole(const FiniteAbelianGroup& g);
    static Subgroup generated(const FiniteAbelianGroup& g, std::span<const Element> gens);
    static Subgroup from_coordinate_rows(const FiniteAbelianGroup& g, std::span<const std::vector<i64>> rows);
    /// Wraps a basis that is already in canonical Hermite form (not checked).
    static Subgroup from_canonical_basis(const FiniteAbelianGroup& g, std::vector<i64> basis, i64 order) {
        return Subgroup(g, std::move(basis), order);
    }

    const FiniteAbelianGroup& group() const { return group_; }
    i64 order() const { return order_; }
    /// Canonical basis: r×r upper-triangular Hermite form, row-major.
    const std::vector<i64>& basis() const { return basis_; }
    /// Nonzero basis rows read as group elements; they generate the subgroup.
    std::vector<Element> generators() const;
    std::vector<std::vector<i64>> generator_rows() const;

    bool contains(const Element& x) const;
    bool contains_coords(std::span<const i64> x) const;
    bool contains(const Subgroup& other) const;
    bool is_trivial() const { return order_ == 1; }
    bool is_whole() const { return order_ == group_.order(); }

    friend bool operator==(const Subgroup& a, const Subgroup& b) {
        return a.basis_ == b.basis_ && a.group_ == b.group_;
    }
    /// Canonical order: lexicographic on the basis matrix.
    friend std::strong_ordering operator<=>(const Subgroup& a, const Subgroup& b) {
        return a.basis_ <=> b.basis_;
    }

    std::string to_string() const;

private:
    Subgroup(FiniteAbelianGroup g, std::vector<i64> basis, i64 order)
        : group_(std::move(g)), basis_(std::move(basis)), order_(order) {}
    friend Subgroup subgroup_from_lattice(const FiniteAbelianGroup&, ModLattice&);

    FiniteAbelianGroup group_;
    std::vector<i64> basis_;
    i64 order_;
};

Subgroup subgroup_from_generators(const FiniteAbelianGroup& g, std::span<const Element> gens);
Subgroup subgroup_sum(const Subgroup& s, const Subgroup& t);
/// s + <x>, with x given by coordinates.
Subgroup subgroup_join(const Subgroup& s, std::span<const i64> x);
Subgroup subgroup_intersect(const Subgroup& s, const Subgroup& t);
bool subgroup_contains(const Subgroup& s, const Element& x);

/// Cyclic decomposition type: sorted multiset of prime powers.
class IsoInvariants {
public:
    IsoInvariants() = default;
    explicit IsoInvariants(std::vector<PrimePower> parts);

    const std::vector<PrimePower>& parts() const { return parts_; }
    i64 order() const;
    /// Number of cyclic parts Z(p^e) with the given p and e.
    int multiplicity(i64 p, int e) const;
    std::string to_string() const;

    friend bool operator==(const IsoInvariants&, const IsoInvariants&) = default;

private:
    std::vector<PrimePower> parts_;
};

struct CyclicGenerator {
    Element generator;
    PrimePower order;
};

/// Independent generators of prime-power order whose cyclic subgroups sum
/// directly to s (computed through a Smith normal form of the relation
/// matrix of s).
std::vector<CyclicGenerator> cyclic_decomposition(const Subgroup& s);
IsoInvariants iso_invariants(const Subgroup& s);
IsoInvariants iso_invariants(const FiniteAbelianGroup& g);

/// {x ∈ s : p·x = 0}.
Subgroup socle(const Subgroup& s, i64 p);
/// n·s.
Subgroup multiply(const Subgroup& s, i64 n);

bool is_direct_sum(const FiniteAbelianGroup& g, std::span<const Subgroup> parts);
bool is_direct_sum(const FiniteAbelianGroup& g, const Subgroup& a, const Subgroup& b);

/// Coefficients c with sum c_j·gens[j] == x, if x lies in their span.
std::optional<std::vector<i64>> solve_in_span(std::span<const Element> gens, const Element& x);

/// The p-primary component of g as a subgroup (coordinates with prime p).
Subgroup primary_component(const FiniteAbelianGroup& g, i64 p);
/// Subgroup spanned by the listed standard generators.
Subgroup coordinate_subgroup(const FiniteAbelianGroup& g, std::span<const int> coords);

} // namespace perspectra
