#include "perspectra/rank1.hpp"

#include "perspectra/errors.hpp"

#include <json.hpp>

#include <array>
#include <cstdlib>
#include <map>
#include <stdexcept>

namespace perspectra {

RationalGroupType RationalGroupType::divisible_by(std::set<i64> primes) {
    for (i64 p : primes)
        if (!is_prime(p)) throw PreconditionError("type: " + std::to_string(p) + " is not prime");
    return {false, std::move(primes)};
}

RationalGroupType RationalGroupType::divisible_except(std::set<i64> primes) {
    for (i64 p : primes)
        if (!is_prime(p)) throw PreconditionError("type: " + std::to_string(p) + " is not prime");
    return {true, std::move(primes)};
}

std::string RationalGroupType::to_string() const {
    if (cofinite_ && primes_.empty()) return "all";
    std::string s = cofinite_ ? "codiv{" : "div{";
    bool first = true;
    for (i64 p : primes_) {
        if (!first) s += ',';
        first = false;
        s += std::to_string(p);
    }
    return s + "}";
}

bool x_divides(const RationalGroupType& type, i64 x) {
    if (x == 0) throw PreconditionError("x_divides: x must be nonzero");
    if (type.cofinite()) {
        for (i64 p : type.listed())
            if (x % p == 0) return false;
        return true;
    }
    i64 r = x < 0 ? -x : x;
    for (i64 p : type.listed())
        while (r % p == 0) r /= p;
    return r == 1;
}

bool necessary_condition(const RationalGroupType& type) { return !type.is_integers(); }

namespace {

bool divides_nonzero(const RationalGroupType& type, i128 x) {
    if (x == 0) return false;
    if (x > INT64_MAX || x < -INT64_MAX) throw OverflowError("rank-1 arithmetic overflow");
    return x_divides(type, static_cast<i64>(x));
}

bool conditions_hold(const RationalGroupType& type, const Quadruple& q, i64 s, i64 l) {
    return gcd(s, l) == 1 && divides_nonzero(type, static_cast<i128>(q.m) * l - static_cast<i128>(s) * q.n) &&
           divides_nonzero(type, static_cast<i128>(q.k) * l - static_cast<i128>(s) * q.t);
}

/// Residues mod d of ±(products of primes in π∞); d ≥ 1.
std::vector<char> unit_residues(const RationalGroupType& type, i64 d) {
    std::vector<char> in(static_cast<std::size_t>(d), 0);
    std::vector<i64> todo{mod(1, d), mod(-1, d)};
    for (i64 r : todo) in[r] = 1;
    while (!todo.empty()) {
        const i64 r = todo.back();
        todo.pop_back();
        for (i64 p : type.listed()) {
            const i64 x = static_cast<i64>((static_cast<i128>(r) * p) % d);
            if (!in[x]) {
                in[x] = 1;
                todo.push_back(x);
            }
        }
    }
    return in;
}

i64 delta(const Quadruple& q) {
    return static_cast<i64>(static_cast<i128>(q.n) * q.k - static_cast<i128>(q.m) * q.t);
}

std::string sign_list(const std::set<i64>& s) {
    std::string out = "{";
    bool first = true;
    for (i64 x : s) {
        if (!first) out += ',';
        first = false;
        out += std::to_string(x);
    }
    return out + "}";
}

} // namespace

bool verify_summand_pair(const RationalGroupType& type, i64 m, i64 n, i64 k, i64 t, i64 s, i64 l) {
    if (s == 0 && l == 0) throw PreconditionError("verify_summand_pair: (s,l) is zero");
    if (m == 0 && n == 0) throw PreconditionError("verify_summand_pair: (m,n) is zero");
    if (k == 0 && t == 0) throw PreconditionError("verify_summand_pair: (k,t) is zero");
    if (gcd(s, l) != 1) throw PreconditionError("verify_summand_pair: s and l must be coprime");
    return conditions_hold(type, {m, n, k, t}, s, l);
}

std::string Quadruple::to_string() const {
    return "(" + std::to_string(m) + "," + std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(t) +
           ")";
}

// With Δ = nk − mt ≠ 0 the two conditions ml − sn = u1, kl − st = u2 have the
// unique solution l = (n u2 − t u1)/Δ, s = (m u2 − k u1)/Δ, so integrality
// depends only on u1, u2 mod Δ. Since αm + βn = 1, u2 ≡ (αk + βt)u1 there.
std::optional<ResidueCertificate> residue_refutation(const RationalGroupType& type, const Quadruple& q) {
    if (type.cofinite()) return std::nullopt;
    if (gcd(q.m, q.n) != 1) return std::nullopt;
    const i64 d = delta(q);
    if (d == 0) return std::nullopt;
    const i64 ad = d < 0 ? -d : d;
    if (ad == 1) return std::nullopt;
    const auto in = unit_residues(type, ad);
    const Bezout bz = egcd(q.m, q.n);
    const i64 f = mod(static_cast<i64>((static_cast<i128>(bz.x) * q.k + static_cast<i128>(bz.y) * q.t) % ad), ad);
    for (i64 r1 = 0; r1 < ad; ++r1) {
        if (!in[r1]) continue;
        const i64 r2 = static_cast<i64>((static_cast<i128>(r1) * f) % ad);
        if (!in[r2]) continue;
        if (mod128(static_cast<i128>(q.n) * r2 - static_cast<i128>(q.t) * r1, ad) == 0 &&
            mod128(static_cast<i128>(q.m) * r2 - static_cast<i128>(q.k) * r1, ad) == 0)
            return std::nullopt;
    }
    ResidueCertificate c;
    c.quad = q;
    c.modulus = ad;
    c.argument = "ml-sn and kl-st must be ±(products of " + sign_list(type.listed()) +
                 "); no such residues mod " + std::to_string(ad) + " make s and l integral";
    return c;
}

bool replay_certificate(const RationalGroupType& type, const ResidueCertificate& cert) {
    if (type.cofinite() || cert.modulus <= 1) return false;
    const i64 d = delta(cert.quad);
    if (d == 0 || cert.modulus % d != 0) return false;
    // Brute force over all residue pairs modulo the stated modulus.
    const auto in = unit_residues(type, cert.modulus);
    const Quadruple& q = cert.quad;
    for (i64 r1 = 0; r1 < cert.modulus; ++r1) {
        if (!in[r1]) continue;
        for (i64 r2 = 0; r2 < cert.modulus; ++r2) {
            if (!in[r2]) continue;
            if (mod128(static_cast<i128>(q.n) * r2 - static_cast<i128>(q.t) * r1, d < 0 ? -d : d) == 0 &&
                mod128(static_cast<i128>(q.m) * r2 - static_cast<i128>(q.k) * r1, d < 0 ? -d : d) == 0)
                return false;
        }
    }
    return true;
}

std::optional<std::pair<i64, i64>> exhaustive_witness_search(const RationalGroupType& type, const Quadruple& q,
                                                             i64 bound) {
    for (i64 h = 0; h <= bound; ++h) {
        for (i64 s = -h; s <= h; ++s) {
            const bool edge = s == -h || s == h;
            for (i64 l = -h; l <= h; l += edge ? 1 : 2 * h) {
                if (conditions_hold(type, q, s, l)) return std::pair{s, l};
                if (h == 0) break;
            }
        }
    }
    return std::nullopt;
}

const char* rank1_status_name(Rank1Status s) {
    switch (s) {
    case Rank1Status::Perspective: return "Perspective";
    case Rank1Status::NotPerspective: return "NotPerspective";
    case Rank1Status::Unknown: return "Unknown";
    }
    return "?";
}

std::string GPlusGVerdict::to_json() const {
    nlohmann::json j{{"status", rank1_status_name(status)},
                     {"type", type},
                     {"strategy", strategy},
                     {"quadruples_checked", quadruples_checked},
                     {"bounds",
                      {{"param", bounds.param_bound},
                       {"witness", bounds.witness_bound},
                       {"exponent", bounds.exponent_bound}}},
                     {"details", details}};
    if (certificate) {
        const auto& q = certificate->quad;
        j["certificate"] = {{"m", q.m},
                            {"n", q.n},
                            {"k", q.k},
                            {"t", q.t},
                            {"modulus", certificate->modulus},
                            {"argument", certificate->argument}};
    }
    return j.dump();
}

bool Example11Certificate::valid() const {
    if (!numeric_ok || branches.size() != 2) return false;
    for (const auto& b : branches)
        if (!b.disjoint) return false;
    return true;
}

std::string Example11Certificate::to_json() const {
    nlohmann::json br = nlohmann::json::array();
    for (const auto& b : branches)
        br.push_back({{"equation", b.equation},
                      {"lhs_last_digits", b.lhs_digits},
                      {"rhs_last_digits", b.rhs_digits},
                      {"disjoint", b.disjoint}});
    return nlohmann::json{{"quadruple", {quad.m, quad.n, quad.k, quad.t}},
                          {"modulus", modulus},
                          {"branches", br},
                          {"exponents_checked", exponents_checked},
                          {"numeric_ok", numeric_ok},
                          {"valid", valid()}}
        .dump();
}

Example11Certificate example_11_refute(const RationalGroupType& type, int exponent_bound) {
    if (type.cofinite() || type.listed() != std::set<i64>{11})
        throw PreconditionError("11-example needs exactly the primes {11} acting divisibly (2G != G, 5G != G)");
    Example11Certificate c;
    auto digits = [](auto&& f) {
        std::set<i64> out;
        for (i64 x = 0; x < 10; ++x) f(x, out);
        return out;
    };
    // Powers of 11 end in 1, so ±11^a ends in 1 or 9.
    const std::set<i64> unit{1, 9};
    // b = 0: 5l ± 2 = ±11^a.
    Example11Certificate::Branch b0{"5l±2=±11^a", digits([](i64 l, std::set<i64>& o) {
                                        o.insert(mod(5 * l + 2, 10));
                                        o.insert(mod(5 * l - 2, 10));
                                    }),
                                    unit, false};
    // a = 0: 5l ± 1 = ±2·11^b.
    Example11Certificate::Branch b1{"5l±1=±2*11^b", digits([](i64 l, std::set<i64>& o) {
                                        o.insert(mod(5 * l + 1, 10));
                                        o.insert(mod(5 * l - 1, 10));
                                    }),
                                    {2, 8}, false};
    for (auto* b : {&b0, &b1}) {
        b->disjoint = true;
        for (i64 x : b->lhs_digits) b->disjoint = b->disjoint && !b->rhs_digits.count(x);
    }
    c.branches = {b0, b1};
    // Numeric double-check: 5l − 2s = ±11^a with s = ±11^b has no integer l.
    c.numeric_ok = true;
    for (int a = 0; a <= exponent_bound; ++a)
        for (int b = 0; b <= exponent_bound; ++b) {
            const i64 ua = ipow(11, a), ub = ipow(11, b);
            for (i64 sa : {1, -1})
                for (i64 sb : {1, -1}) {
                    ++c.exponents_checked;
                    if (mod(sa * ua + 2 * sb * ub, 5) == 0) c.numeric_ok = false;
                }
        }
    return c;
}

int table_column(bool m, bool n, bool k, bool t) {
    static const std::array<std::array<bool, 4>, 12> cols{{{1, 1, 1, 1},
                                                           {1, 1, 1, 0},
                                                           {1, 1, 0, 1},
                                                           {1, 1, 0, 0},
                                                           {1, 0, 1, 1},
                                                           {0, 1, 1, 1},
                                                           {0, 0, 0, 0},
                                                           {0, 0, 0, 1},
                                                           {0, 0, 1, 1},
                                                           {1, 0, 1, 0},
                                                           {0, 1, 1, 0},
                                                           {0, 1, 0, 1}}};
    for (std::size_t i = 0; i < cols.size(); ++i)
        if (cols[i] == std::array<bool, 4>{m, n, k, t}) return static_cast<int>(i) + 1;
    return 0;
}

namespace {

struct TableHit {
    i64 s, l;
    std::string rule;
};

bool dv(i64 p, i64 x) { return x % p == 0; }

/// Witnesses written out in the table's proof, for primes labelled (p, q).
std::optional<TableHit> explicit_column(int col, const Quadruple& x, i64 p, i64 q) {
    const i64 m = x.m, n = x.n, k = x.k, t = x.t;
    switch (col) {
    case 1:
    case 2:
    case 10: return TableHit{0, 1, "U=Rb"};
    case 4:
        if (dv(p, k) && dv(q, t) && !dv(q, k) && !dv(p, t)) return TableHit{q, p, "U=R(qa+pb)"};
        break;
    case 7:
        if (dv(p, m) && dv(p, t) && dv(q, n) && dv(q, k)) return TableHit{1, 1, "U=R(a+b)"};
        if (dv(p, m) && dv(p, k) && dv(q, n) && dv(q, t)) return TableHit{q, p, "U=R(qa+pb)"};
        break;
    case 8:
        if (dv(p, m) && dv(p, k) && dv(q, n)) {
            if (!dv(q, k)) return TableHit{q, 1, "U=R(qa+b)"};
            return TableHit{1, 1, "U=R(a+b)"};
        }
        break;
    case 11:
        if (dv(q, m) && dv(q, t) && !dv(p, m) && !dv(p, t)) return TableHit{p, 1, "U=R(pa+b)"};
        if (dv(p, m) && dv(q, m) && dv(p, t) && dv(q, t)) return TableHit{1, 1, "U=R(a+b)"};
        if (!dv(p, m) && dv(q, m) && !dv(q, t) && dv(p, t)) return TableHit{p, q, "U=R(pa+qb)"};
        break;
    default: break;
    }
    return std::nullopt;
}

Quadruple transform(const Quadruple& x, int how) {
    Quadruple y = x;
    if (how & 1) y = {y.k, y.t, y.m, y.n}; // exchange A and C
    if (how & 2) y = {y.n, y.m, y.t, y.k}; // exchange a and b
    return y;
}

void check_pair_conditions(i64 m, i64 n, i64 k, i64 t) {
    if (m < 0 || n < 0 || k < 0 || t < 0) throw PreconditionError("witness_U: entries must be non-negative");
    if (gcd(m, n) != 1) throw PreconditionError("witness_U: m and n must be coprime");
    if (k == 0 && t == 0) throw PreconditionError("witness_U: (i) fails, k = t = 0");
    if ((k == 0 && t != 1) || (t == 0 && k != 1)) throw PreconditionError("witness_U: (ii) fails");
    if (k != 0 && t != 0 && gcd(k, t) != 1) throw PreconditionError("witness_U: (iii) fails, k and t not coprime");
}

} // namespace

Rank1Witness witness_U(const RationalGroupType& type, i64 m, i64 n, i64 k, i64 t) {
    if (!type.cofinite() || type.listed().size() > 2)
        throw PreconditionError("witness_U: type must be divisible by all primes but at most two");
    check_pair_conditions(m, n, k, t);
    const Quadruple x{m, n, k, t};
    Rank1Witness w;
    const auto& np = type.listed();
    if (m && n && k && t) {
        w.column = table_column(x_divides(type, m), x_divides(type, n), x_divides(type, k), x_divides(type, t));
        if (np.size() == 2) {
            const i64 p = *np.begin(), q = *np.rbegin();
            for (int how = 0; how < 4; ++how) {
                const Quadruple y = transform(x, how);
                const int col =
                    table_column(x_divides(type, y.m), x_divides(type, y.n), x_divides(type, y.k), x_divides(type, y.t));
                for (auto [pp, qq] : {std::pair{p, q}, std::pair{q, p}}) {
                    auto hit = explicit_column(col, y, pp, qq);
                    if (!hit) continue;
                    i64 s = hit->s, l = hit->l;
                    if (how & 2) std::swap(s, l);
                    if (!conditions_hold(type, x, s, l)) continue;
                    w.s = s;
                    w.l = l;
                    w.rule = hit->rule + (how ? " via column " + std::to_string(col) : "");
                    return w;
                }
            }
        }
    }
    // Outside the written-out subcases: each non-divisible prime p leaves a
    // nonzero residue pair (s, l) mod p avoiding both linear forms, so a
    // CRT-compatible coprime pair exists; take the smallest.
    i64 bound = 1;
    for (i64 p : np) bound *= p;
    auto found = exhaustive_witness_search(type, x, 4 * bound + 4);
    if (!found) throw std::logic_error("witness_U: completion search failed for " + x.to_string());
    w.s = found->first;
    w.l = found->second;
    if (w.s < 0 || (w.s == 0 && w.l < 0)) w.s = -w.s, w.l = -w.l;
    w.rule = "CRT completion";
    return w;
}

namespace {

/// Valid (k, t) for the case families: (1,0), (0,1) or coprime positives.
template <class F>
bool for_each_kt(i64 bound, F&& f) {
    for (i64 k = 0; k <= bound; ++k)
        for (i64 t = 0; t <= bound; ++t) {
            if (k == 0 && t != 1) continue;
            if (t == 0 && k != 1) continue;
            if (k && t && gcd(k, t) != 1) continue;
            if (f(k, t)) return true;
        }
    return false;
}

} // namespace

GPlusGVerdict gplusg_decide(const RationalGroupType& type, const Rank1Bounds& bounds) {
    if (bounds.param_bound < 1 || bounds.witness_bound < 1 || bounds.exponent_bound < 0)
        throw PreconditionError("gplusg_decide: bounds must be positive");
    GPlusGVerdict v;
    v.type = type.to_string();
    v.bounds = bounds;

    if (type.cofinite() && type.listed().size() <= 2) {
        v.status = Rank1Status::Perspective;
        v.strategy = type.listed().empty() ? "every nonzero x has xG=G; any U=R(sa+lb) avoiding two lines"
                                           : "witness table for at most two non-divisible primes";
        // Spot-check the strategy on small quadruples.
        std::int64_t checked = 0;
        const i64 lim = std::min<i64>(bounds.param_bound, 8);
        for (i64 m = 1; m <= lim; ++m)
            for (i64 n = 1; n <= lim; ++n) {
                if (gcd(m, n) != 1) continue;
                for_each_kt(lim, [&](i64 k, i64 t) {
                    const auto w = witness_U(type, m, n, k, t);
                    if (!verify_summand_pair(type, m, n, k, t, w.s, w.l))
                        throw std::logic_error("witness strategy failed on " + Quadruple{m, n, k, t}.to_string());
                    ++checked;
                    return false;
                });
            }
        v.quadruples_checked = checked;
        v.details.push_back("witness_U verified on " + std::to_string(checked) + " quadruples with entries <= " +
                            std::to_string(lim));
        return v;
    }

    if (type.is_integers()) {
        // Family (m, n, 1, 0): l = ±1 is forced, then n | ±m ± 1 is needed.
        for (i64 m = 2; m <= bounds.param_bound; ++m)
            for (i64 n = 1; n <= bounds.param_bound; ++n) {
                if (gcd(m, n) != 1) continue;
                ++v.quadruples_checked;
                if ((m + 1) % n == 0 || (m - 1) % n == 0) continue;
                const Quadruple q{m, n, 1, 0};
                auto cert = residue_refutation(type, q);
                if (!cert) throw std::logic_error("integers: residue refutation disagrees on " + q.to_string());
                cert->argument = "kl-st=l forces l=±1, and n=" + std::to_string(n) + " divides none of ±" +
                                 std::to_string(m) + "±1";
                v.status = Rank1Status::NotPerspective;
                v.strategy = "no prime acts divisibly";
                v.certificate = std::move(cert);
                return v;
            }
        v.strategy = "no certificate within param_bound";
        return v;
    }

    if (!type.cofinite() && type.listed() == std::set<i64>{11}) {
        const auto ex = example_11_refute(type, bounds.exponent_bound);
        if (ex.valid()) {
            v.status = Rank1Status::NotPerspective;
            v.strategy = "last-digit argument for 5l-2s=±11^a, s=±11^b";
            v.certificate =
                ResidueCertificate{ex.quad, ex.modulus, "last digits: 5l±2 vs ±11^a and 5l±1 vs ±2*11^b never agree"};
            v.quadruples_checked = 1;
            v.details.push_back(ex.to_json());
            return v;
        }
    }

    if (type.cofinite()) {
        v.strategy = "residue refutation needs finitely many divisible primes; undecided";
        v.details.push_back("more than two primes act non-divisibly");
        return v;
    }

    // Case families 1)-4) in lexicographic order; first refuted quadruple wins.
    const i64 b = bounds.param_bound;
    std::optional<ResidueCertificate> best;
    auto consider = [&](const Quadruple& q) {
        ++v.quadruples_checked;
        if (auto c = residue_refutation(type, q)) {
            best = std::move(c);
            return true;
        }
        return false;
    };
    for (i64 m = 1; m <= b && !best; ++m)
        for (i64 n = 1; n <= b && !best; ++n) {
            if (gcd(m, n) != 1) continue;
            const bool dm = x_divides(type, m), dn = x_divides(type, n);
            for_each_kt(b, [&](i64 k, i64 t) {
                const bool c1 = !dm && k == 1 && t == 0;
                const bool c2 = !dn && k == 0 && t == 1;
                const bool c3 = !dm && t != 0 && !x_divides(type, t);
                const bool c4 = !dm && !dn;
                return (c1 || c2 || c3 || c4) && consider({m, n, k, t});
            });
        }
    if (best) {
        v.status = Rank1Status::NotPerspective;
        v.strategy = "residue refutation of a case family quadruple";
        v.certificate = std::move(best);
    } else {
        v.strategy = "no refutation within param_bound";
    }
    return v;
}

} // namespace perspectra
