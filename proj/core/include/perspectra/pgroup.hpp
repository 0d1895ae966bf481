#pragma once

// Constructive common complements in finite abelian groups.
//
// For summands A ≅ C of G the functions below return U with
// G = A ⊕ U = C ⊕ U. The p-group recursion peels off the top homocyclic
// layer G1 = Z(p^n)^m of G = G1 ⊕ G2:
//
//   * If A meets the socle of G1 in a k-dimensional space (k > 0), the
//     Z(p^n)^k parts A1, C1 of A and C project isomorphically into G1, where
//     the homocyclic solver finds a common complement U1 of the projections.
//     Then G = A1 ⊕ W = C1 ⊕ W with W = U1 ⊕ G2, and the problem recurses on
//     A ∩ W, C ∩ W inside the smaller group W.
//   * If k = 0, A and C meet G1 trivially; their projections to G2 are solved
//     there and G1 is added back.
//
// Homocyclic groups reduce to F_p linear algebra: a square matrix over
// Z/p^n is invertible iff it is invertible mod p, so a complement found for
// the reductions mod p lifts verbatim.

#include "perspectra/fp_subspace.hpp"
#include "perspectra/group.hpp"

#include <string>
#include <vector>

namespace perspectra {

struct ComplementStep {
    std::string tag;   ///< proof case applied at this step
    i64 order = 0;     ///< order of the ambient group at this step
    std::string group; ///< ambient group literal
    std::string a, c;  ///< inputs at this step (subgroup literals; may be empty)
    std::string note;
};

struct ComplementTrace {
    std::vector<ComplementStep> steps;
    bool fallback_used = false;
    std::vector<std::string> anomalies;

    std::string to_json() const;
};

struct ComplementOptions {
    bool trace = true;          ///< record the proof-case trace
    bool fallback = true;       ///< on verification failure, use the exhaustive search
    bool validate_inputs = true; ///< check summand-ness and isomorphism first
};

struct ComplementResult {
    Subgroup complement;
    ComplementTrace trace;
};

/// Reduction of a free Z/p^n-submodule basis modulo p.
FpSubspace reduce_mod_p(const Subgroup& s);

/// G = Z(p^n)^m homocyclic; A ≅ C summands. Asserts both splittings.
Subgroup homocyclic_common_complement(const Subgroup& a, const Subgroup& c);

/// G a finite p-group.
ComplementResult pgroup_common_complement(const Subgroup& a, const Subgroup& c, const ComplementOptions& opt = {});

/// Any finite abelian G: dispatches over primary components.
ComplementResult finite_common_complement(const Subgroup& a, const Subgroup& c, const ComplementOptions& opt = {});

/// f_n(G) = dim_{F_p} (p^n G)[p] / (p^{n+1} G)[p].
int ulm_kaplansky(const FiniteAbelianGroup& g, i64 p, int n);

} // namespace perspectra
