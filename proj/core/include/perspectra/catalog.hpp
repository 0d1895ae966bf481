#pragma once

#include "perspectra/group.hpp"

#include <vector>

namespace perspectra {

/// Every abelian group of order n up to isomorphism, one per choice of a
/// partition of each prime exponent, in canonical order.
std::vector<FiniteAbelianGroup> abelian_groups_of_order(i64 n);

/// Orders 1..max_order, ascending; the trivial group comes first.
std::vector<FiniteAbelianGroup> abelian_groups_up_to(i64 max_order);

} // namespace perspectra
