#include "perspectra/catalog.hpp"

#include "perspectra/errors.hpp"

namespace perspectra {

namespace {

void partitions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int k = std::min(n, max_part); k >= 1; --k) {
        cur.push_back(k);
        partitions(n - k, k, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<FiniteAbelianGroup> abelian_groups_of_order(i64 n) {
    if (n < 1) throw PreconditionError("group order must be positive");
    std::vector<std::vector<i64>> acc{{}};
    for (const auto& pp : factorize(n)) {
        std::vector<std::vector<int>> parts;
        std::vector<int> cur;
        partitions(pp.e, pp.e, cur, parts);
        std::vector<std::vector<i64>> next;
        for (const auto& a : acc)
            for (const auto& part : parts) {
                auto f = a;
                for (int e : part) f.push_back(ipow(pp.p, e));
                next.push_back(std::move(f));
            }
        acc = std::move(next);
    }
    std::vector<FiniteAbelianGroup> out;
    out.reserve(acc.size());
    for (auto& f : acc) out.push_back(FiniteAbelianGroup::from_canonical_factors(std::move(f)));
    return out;
}

std::vector<FiniteAbelianGroup> abelian_groups_up_to(i64 max_order) {
    std::vector<FiniteAbelianGroup> out;
    for (i64 n = 1; n <= max_order; ++n)
        for (auto& g : abelian_groups_of_order(n)) out.push_back(std::move(g));
    return out;
}

} // namespace perspectra
