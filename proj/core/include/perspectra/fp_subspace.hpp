#pragma once

#include "perspectra/linear.hpp"

#include <array>
#include <cstdint>

namespace perspectra {

/// Subspace of F_p^m in reduced echelon form.
using FpSubspace = Subspace<FpField>;

FpSubspace make_fp_subspace(i64 p, int m, std::vector<std::vector<i64>> rows);

/// W with F_p^m = A ⊕ W = C ⊕ W. Over F_2 with m <= 32 this runs on
/// bitmasks; otherwise on the generic echelon code.
FpSubspace fp_common_complement(const FpSubspace& a, const FpSubspace& c);

/// Same, also reporting each recursion case.
template <class Log>
FpSubspace fp_common_complement_logged(const FpSubspace& a, const FpSubspace& c, Log&& log) {
    return field_common_complement(a, c, log);
}

/// Fixed-capacity list of basis masks.
struct F2Basis {
    std::array<std::uint64_t, 32> v{};
    int n = 0;
    const std::uint64_t* begin() const { return v.data(); }
    const std::uint64_t* end() const { return v.data() + n; }
    std::size_t size() const { return static_cast<std::size_t>(n); }
    std::uint64_t operator[](std::size_t i) const { return v[i]; }
};

/// Subspace of F_2^m (m <= 32) with bit j standing for coordinate j. The
/// basis is kept fully reduced, indexed by leading (highest) bit.
class F2Space {
public:
    explicit F2Space(int m = 0) : m_(m) { basis_.fill(0); }
    int ambient_dim() const { return m_; }
    int dim() const { return dim_; }
    /// Returns false when v was already in the span.
    bool insert(std::uint64_t v);
    bool contains(std::uint64_t v) const { return reduce(v) == 0; }
    std::uint64_t reduce(std::uint64_t v) const;
    /// Basis vectors, highest leading bit first.
    F2Basis basis() const;
    friend bool operator==(const F2Space& a, const F2Space& b) { return a.m_ == b.m_ && a.basis_ == b.basis_; }

private:
    int m_;
    int dim_ = 0;
    std::uint64_t piv_ = 0; // set of leading bits
    std::array<std::uint64_t, 32> basis_;
};

F2Space f2_sum(const F2Space& a, const F2Space& b);
F2Space f2_intersect(const F2Space& a, const F2Space& b);
F2Space f2_common_complement(const F2Space& a, const F2Space& c);

} // namespace perspectra
