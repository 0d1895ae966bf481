#pragma once

// Integer lattices L with diag(mods)·Z^n ⊆ L ⊆ Z^n, kept in row-style
// Hermite normal form. Because every such lattice contains mods[j]·e_j,
// entries in column j may always be reduced modulo mods[j]; this keeps
// every intermediate value below the largest modulus.

#include "perspectra/arith.hpp"

#include <optional>
#include <span>
#include <vector>

namespace perspectra {

class ModLattice {
public:
    /// The lattice diag(mods)·Z^n. Every modulus must be positive.
    explicit ModLattice(std::vector<i64> mods);
    /// Starts from an existing upper-triangular basis (n×n, row-major) whose
    /// rows generate a lattice containing diag(mods)·Z^n.
    ModLattice(std::vector<i64> mods, std::vector<i64> basis);

    int dim() const { return n_; }
    const std::vector<i64>& mods() const { return mods_; }

    /// Adds a generator. Leaves the basis upper triangular but not reduced.
    void insert(std::span<const i64> v);

    /// Reduces entries above each pivot into [0, pivot). After this call the
    /// basis is the unique Hermite normal form of the lattice.
    void normalize();

    i64 pivot(int i) const { return h_[static_cast<std::size_t>(i) * n_ + i]; }
    std::span<const i64> row(int i) const {
        return {h_.data() + static_cast<std::size_t>(i) * n_, static_cast<std::size_t>(n_)};
    }
    const std::vector<i64>& data() const { return h_; }

    /// Index of diag(mods)·Z^n in the lattice, i.e. prod mods[i] / pivot(i).
    i64 index_over_relations() const;

    /// Reduces v against the basis in place (entries of v taken mod mods).
    /// Returns true iff v lies in the lattice (then v ends up all zero).
    bool reduce(std::span<i64> v) const;

    /// Rows [first, first + count) restricted to columns [first, first + count).
    /// Used to read off sublattices that live in a trailing coordinate block.
    std::vector<i64> trailing_block(int first) const;

private:
    int n_;
    std::vector<i64> mods_;
    std::vector<i64> h_;
};

/// Coefficients c with sum_j c_j * gens[j] == target (mod mods), if any.
/// gens are vectors of length mods.size().
std::optional<std::vector<i64>> solve_combination(std::span<const std::vector<i64>> gens,
                                                  std::span<const i64> mods,
                                                  std::span<const i64> target);

} // namespace perspectra
