#include "perspectra/literals.hpp"

#include "perspectra/errors.hpp"

#include <cctype>

namespace perspectra {

namespace {

class Cursor {
public:
    explicit Cursor(std::string_view s) : s_(s) {}

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    bool accept(std::string_view word) {
        skip_ws();
        if (s_.substr(pos_, word.size()) != word) return false;
        pos_ += word.size();
        return true;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    void expect(std::string_view word) {
        if (!accept(word)) fail("expected '" + std::string(word) + "'");
    }
    void finish() {
        if (!at_end()) fail("unexpected trailing input");
    }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    i64 integer() {
        skip_ws();
        const std::size_t start = pos_;
        bool neg = false;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = s_[pos_++] == '-';
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            pos_ = start;
            fail("expected an integer");
        }
        i64 v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            if (v > (std::numeric_limits<i64>::max() - 9) / 10) {
                pos_ = start;
                fail("integer out of range");
            }
            v = v * 10 + (s_[pos_++] - '0');
        }
        return neg ? -v : v;
    }

    i64 positive() {
        const std::size_t start = (skip_ws(), pos_);
        const i64 v = integer();
        if (v <= 0) {
            pos_ = start;
            fail("expected a positive integer");
        }
        return v;
    }

    mpq_class rational() {
        skip_ws();
        const std::size_t start = pos_;
        std::size_t end = pos_;
        if (end < s_.size() && (s_[end] == '-' || s_[end] == '+')) ++end;
        while (end < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[end])) || s_[end] == '/')) ++end;
        std::string tok(s_.substr(start, end - start));
        if (!tok.empty() && tok[0] == '+') tok.erase(0, 1);
        mpq_class q;
        if (tok.empty() || tok.back() == '/' || tok.front() == '/' || q.set_str(tok, 10) != 0) fail("expected a rational");
        if (q.get_den() == 0) fail("zero denominator");
        q.canonicalize();
        pos_ = end;
        return q;
    }

    std::size_t pos() const { return pos_; }

private:
    std::string_view s_;
    std::size_t pos_ = 0;
};

std::vector<i64> int_tuple(Cursor& c) {
    std::vector<i64> v;
    c.expect('(');
    if (c.accept(')')) return v;
    do v.push_back(c.integer());
    while (c.accept(','));
    c.expect(')');
    return v;
}

QVector rational_tuple(Cursor& c) {
    QVector v;
    c.expect('(');
    if (c.accept(')')) return v;
    do v.push_back(c.rational());
    while (c.accept(','));
    c.expect(')');
    return v;
}

std::vector<i64> group_orders(Cursor& c) {
    std::vector<i64> orders;
    do {
        c.expect('Z');
        orders.push_back(c.positive());
    } while (c.accept('+'));
    return orders;
}

FiniteRing ring_expr(Cursor& c) {
    if (c.accept("Zn(")) {
        const i64 n = c.positive();
        c.expect(')');
        return FiniteRing::zn(n);
    }
    if (c.accept("Mat(")) {
        const std::size_t at = c.pos();
        const i64 k = c.positive();
        c.expect(',');
        c.expect("Zn(");
        const i64 q = c.positive();
        c.expect(')');
        c.expect(')');
        if (k > 8) throw ParseError("matrix size too large", at);
        return FiniteRing::matrix(static_cast<int>(k), q);
    }
    if (c.accept("prod[")) {
        std::vector<FiniteRing> f;
        if (!c.accept(']')) {
            do f.push_back(ring_expr(c));
            while (c.accept(';'));
            c.expect(']');
        }
        return FiniteRing::product(std::move(f));
    }
    if (c.accept("End(")) {
        const GroupLiteral g(group_orders(c));
        c.expect(')');
        return FiniteRing::end_ring(g.group());
    }
    c.fail("expected a ring (Zn, Mat, prod or End)");
}

} // namespace

// ---------------------------------------------------------------------------

GroupLiteral::GroupLiteral(std::vector<i64> orders) : orders_(std::move(orders)) {
    struct Raw {
        int written;
        PrimePower pp;
    };
    std::vector<Raw> raw;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        if (orders_[i] < 1) throw PreconditionError("cyclic factor must have positive order");
        for (const auto& pp : factorize(orders_[i])) raw.push_back({static_cast<int>(i), pp});
    }
    std::stable_sort(raw.begin(), raw.end(), [](const Raw& a, const Raw& b) {
        return a.pp.p != b.pp.p ? a.pp.p < b.pp.p : a.pp.e > b.pp.e;
    });
    std::vector<i64> f;
    for (std::size_t k = 0; k < raw.size(); ++k) {
        f.push_back(raw[k].pp.value());
        parts_.push_back({raw[k].written, static_cast<int>(k), raw[k].pp.value()});
    }
    group_ = FiniteAbelianGroup::from_canonical_factors(std::move(f));
}

Element GroupLiteral::to_canonical(std::span<const i64> written) const {
    if (written.size() != orders_.size())
        throw PreconditionError("element has " + std::to_string(written.size()) + " coordinates, expected " +
                                std::to_string(orders_.size()));
    std::vector<i64> c(parts_.size());
    for (const auto& p : parts_) c[p.canonical] = mod(written[p.written], p.modulus);
    return Element(group_, std::move(c));
}

std::vector<i64> GroupLiteral::to_written(const Element& x) const {
    // Chinese remainder per written factor.
    std::vector<i64> out(orders_.size(), 0), modulus(orders_.size(), 1);
    for (const auto& p : parts_) {
        const i64 m = modulus[p.written];
        const i64 r = out[p.written];
        const auto b = egcd(m, p.modulus);
        // t ≡ r (mod m), t ≡ x (mod q)
        const i64 k = mod128(static_cast<i128>(x[p.canonical] - r) * b.x, p.modulus);
        out[p.written] = mod128(static_cast<i128>(r) + static_cast<i128>(k) * m, m * p.modulus);
        modulus[p.written] = m * p.modulus;
    }
    return out;
}

std::string GroupLiteral::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
        if (i) s += '+';
        s += 'Z' + std::to_string(orders_[i]);
    }
    return s;
}

GroupLiteral parse_group(std::string_view text) {
    Cursor c(text);
    auto orders = group_orders(c);
    c.finish();
    return GroupLiteral(std::move(orders));
}

Element parse_element(const GroupLiteral& g, std::string_view text) {
    Cursor c(text);
    const std::size_t at = c.pos();
    auto v = int_tuple(c);
    c.finish();
    if (v.size() != g.orders().size()) throw ParseError("element length does not match the group", at);
    return g.to_canonical(v);
}

Subgroup parse_subgroup(const GroupLiteral& g, std::string_view text) {
    Cursor c(text);
    c.expect("gens[");
    std::vector<Element> gens;
    if (!c.accept(']')) {
        do {
            const std::size_t at = (c.skip_ws(), c.pos());
            auto v = int_tuple(c);
            if (v.size() != g.orders().size()) throw ParseError("generator length does not match the group", at);
            gens.push_back(g.to_canonical(v));
        } while (c.accept(';'));
        c.expect(']');
    }
    c.finish();
    return Subgroup::generated(g.group(), gens);
}

std::string format_element(const GroupLiteral& g, const Element& x) {
    const auto v = g.to_written(x);
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s + ")";
}

std::string format_subgroup(const GroupLiteral& g, const Subgroup& sub) {
    std::string s = "gens[";
    bool first = true;
    for (const auto& x : sub.generators()) {
        if (!first) s += ';';
        first = false;
        s += format_element(g, x);
    }
    return s + "]";
}

QMatrix parse_rows(std::string_view text) {
    Cursor c(text);
    if (!c.accept("rows")) c.accept("span");
    QMatrix rows;
    c.expect('[');
    if (!c.accept(']')) {
        do {
            const std::size_t at = (c.skip_ws(), c.pos());
            rows.push_back(rational_tuple(c));
            if (rows.back().size() != rows.front().size()) throw ParseError("rows have different lengths", at);
        } while (c.accept(';'));
        c.expect(']');
    }
    c.finish();
    return rows;
}

std::string format_rows(const QMatrix& rows) {
    std::string s = "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i) s += ';';
        s += q_vector_string(rows[i]);
    }
    return s + "]";
}

std::string ModuleLiteral::to_string() const {
    switch (kind) {
    case Kind::Rational:
        return "Q^" + std::to_string(rank);
    case Kind::Localized:
        return "Qp(" + std::to_string(p) + ")^" + std::to_string(rank);
    case Kind::Padic:
        return "Zp(" + std::to_string(p) + ",N=" + std::to_string(precision) + ")^" + std::to_string(rank);
    }
    return {};
}

ModuleLiteral parse_module(std::string_view text) {
    Cursor c(text);
    ModuleLiteral m;
    auto prime = [&] {
        const std::size_t at = (c.skip_ws(), c.pos());
        const i64 p = c.positive();
        if (!is_prime(p)) throw ParseError(std::to_string(p) + " is not prime", at);
        return p;
    };
    if (c.accept("Qp(")) {
        m.kind = ModuleLiteral::Kind::Localized;
        m.p = prime();
        c.expect(')');
    } else if (c.accept("Zp(")) {
        m.kind = ModuleLiteral::Kind::Padic;
        m.p = prime();
        c.expect(',');
        c.expect("N=");
        m.precision = static_cast<int>(c.positive());
        c.expect(')');
    } else if (c.accept('Q')) {
        m.kind = ModuleLiteral::Kind::Rational;
    } else {
        c.fail("expected a module (Q, Qp or Zp)");
    }
    c.expect('^');
    const std::size_t at = (c.skip_ws(), c.pos());
    const i64 r = c.positive();
    if (r > 64) throw ParseError("rank too large", at);
    m.rank = static_cast<int>(r);
    c.finish();
    return m;
}

std::vector<i64> parse_prime_list(std::string_view text) {
    Cursor c(text);
    std::vector<i64> out;
    if (c.at_end()) return out;
    do {
        const std::size_t at = (c.skip_ws(), c.pos());
        const i64 p = c.positive();
        if (!is_prime(p)) throw ParseError(std::to_string(p) + " is not prime", at);
        out.push_back(p);
    } while (c.accept(','));
    c.finish();
    return out;
}

RationalGroupType parse_type(std::string_view text) {
    Cursor c(text);
    if (c.accept("all")) {
        c.finish();
        return RationalGroupType::rationals();
    }
    bool co = false;
    if (c.accept("codiv{")) co = true;
    else c.expect("div{");
    std::set<i64> primes;
    if (!c.accept('}')) {
        do {
            const std::size_t at = (c.skip_ws(), c.pos());
            const i64 p = c.positive();
            if (!is_prime(p)) throw ParseError(std::to_string(p) + " is not prime", at);
            primes.insert(p);
        } while (c.accept(','));
        c.expect('}');
    }
    c.finish();
    return co ? RationalGroupType::divisible_except(std::move(primes))
              : RationalGroupType::divisible_by(std::move(primes));
}

FiniteRing parse_ring(std::string_view text) {
    Cursor c(text);
    FiniteRing r = ring_expr(c);
    c.finish();
    return r;
}

} // namespace perspectra
