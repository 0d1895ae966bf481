#pragma once

// Text forms used by the CLI and the tests.
//
//   group     Z4+Z2+Z9          (factors in the order written; Z6 is split by CRT)
//   element   (1,0,3)           (coordinates in the written factor order)
//   subgroup  gens[(1,0,0);(0,1,0)]
//   rows      [(1,0);(1/2,1)]   (an optional rows/span prefix is accepted)
//   module    Q^4  Qp(5)^3  Zp(3,N=4)^2
//   type      div{11}  codiv{2,5}  div{}  all
//   ring      Zn(6)  Mat(2,Zn(2))  prod[Zn(2);Mat(2,Zn(2))]  End(Z4+Z2)
//
// Malformed input raises ParseError carrying the offending position.

#include "perspectra/group.hpp"
#include "perspectra/rank1.hpp"
#include "perspectra/rational.hpp"
#include "perspectra/ring.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace perspectra {

/// A group as written, with its canonical form. Written coordinates map to
/// canonical ones by reduction modulo each prime-power part.
class GroupLiteral {
public:
    explicit GroupLiteral(std::vector<i64> orders);

    const FiniteAbelianGroup& group() const { return group_; }
    const std::vector<i64>& orders() const { return orders_; }

    Element to_canonical(std::span<const i64> written) const;
    std::vector<i64> to_written(const Element& x) const;

    std::string to_string() const;

private:
    std::vector<i64> orders_;
    FiniteAbelianGroup group_;
    struct Part {
        int written;   ///< written factor index
        int canonical; ///< canonical coordinate
        i64 modulus;
    };
    std::vector<Part> parts_;
};

GroupLiteral parse_group(std::string_view text);
Element parse_element(const GroupLiteral& g, std::string_view text);
Subgroup parse_subgroup(const GroupLiteral& g, std::string_view text);
std::string format_element(const GroupLiteral& g, const Element& x);
std::string format_subgroup(const GroupLiteral& g, const Subgroup& s);

QMatrix parse_rows(std::string_view text);
std::string format_rows(const QMatrix& rows);

struct ModuleLiteral {
    enum class Kind { Rational, Localized, Padic };
    Kind kind = Kind::Rational;
    int rank = 0;
    i64 p = 0;     ///< Localized and Padic
    int precision = 0; ///< Padic: N

    std::string to_string() const;
    friend bool operator==(const ModuleLiteral&, const ModuleLiteral&) = default;
};
ModuleLiteral parse_module(std::string_view text);

RationalGroupType parse_type(std::string_view text);
/// "2,5" -> {2, 5}; every entry must be prime.
std::vector<i64> parse_prime_list(std::string_view text);

FiniteRing parse_ring(std::string_view text);

} // namespace perspectra
