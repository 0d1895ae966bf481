#include "cli.hpp"

#include "perspectra/catalog.hpp"
#include "perspectra/errors.hpp"
#include "perspectra/literals.hpp"
#include "perspectra/pgroup.hpp"
#include "perspectra/summand.hpp"
#include "perspectra/torsionfree.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace perspectra::cli {

using nlohmann::json;

namespace {

struct Flags {
    bool json = false;
    bool trace = false;
    bool no_fallback = false;
    std::uint64_t seed = 0;
    std::string bounds;
    std::string out;
};

// One record per result; appended to --out as a JSON line.
class Recorder {
public:
    Recorder(const Flags& f, std::vector<std::string> command) : f_(f), command_(std::move(command)) {
        if (!f.out.empty()) {
            file_.open(f.out, std::ios::app);
            if (!file_) throw PreconditionError("cannot open results file " + f.out);
        }
    }
    void write(const json& inputs, const json& result, double elapsed_ms) {
        if (!file_.is_open()) return;
        json rec{{"command", command_}, {"inputs", inputs},          {"result", result},
                 {"elapsed_ms", elapsed_ms}, {"version", kVersion}, {"seed", f_.seed}};
        file_ << rec.dump() << '\n';
        file_.flush();
    }

private:
    const Flags& f_;
    std::vector<std::string> command_;
    std::ofstream file_;
};

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

Rank1Bounds parse_bounds(const std::string& text) {
    Rank1Bounds b;
    if (text.empty()) return b;
    std::vector<i64> v;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find(',', pos), text.size());
        const std::string tok = text.substr(pos, end - pos);
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 9)
            throw ParseError("expected --bounds m,w,e with positive integers", pos);
        v.push_back(std::stoll(tok));
        pos = end + 1;
    }
    if (v.size() != 3) throw ParseError("expected three bounds", 0);
    b.param_bound = v[0];
    b.witness_bound = v[1];
    b.exponent_bound = static_cast<int>(v[2]);
    return b;
}

json trace_json(const ComplementTrace& t) { return json::parse(t.to_json()); }

// group complement ----------------------------------------------------------

json group_complement(const Flags& f, const std::string& gtext, const std::string& atext, const std::string& ctext,
                      std::ostream& human) {
    const GroupLiteral g = parse_group(gtext);
    const Subgroup a = parse_subgroup(g, atext);
    const Subgroup c = parse_subgroup(g, ctext);
    if (!is_summand(a)) throw PreconditionError("no complement exists: A is not a summand");
    if (!is_summand(c)) throw PreconditionError("no complement exists: C is not a summand");
    if (!(iso_invariants(a) == iso_invariants(c)))
        throw PreconditionError("no common complement exists: A and C are not isomorphic");

    ComplementOptions opt;
    opt.trace = f.trace;
    opt.fallback = !f.no_fallback;
    const auto res = finite_common_complement(a, c, opt);
    const bool ok = is_direct_sum(g.group(), a, res.complement) && is_direct_sum(g.group(), c, res.complement);
    if (!ok) throw Error("complement failed verification");

    json j{{"group", g.to_string()},
           {"A", format_subgroup(g, a)},
           {"C", format_subgroup(g, c)},
           {"U", format_subgroup(g, res.complement)},
           {"verified", ok},
           {"fallback_used", res.trace.fallback_used}};
    if (f.trace) j["trace"] = trace_json(res.trace);
    human << "U = " << format_subgroup(g, res.complement) << '\n';
    if (f.trace)
        for (const auto& s : res.trace.steps) human << "  " << s.tag << " [" << s.group << "]\n";
    return j;
}

// verify --------------------------------------------------------------------

json verify_group(const FiniteAbelianGroup& g, const Flags& f) {
    SubgroupCatalog cat(g, std::max<i64>(g.order(), default_caps().subgroup_enum));
    const auto summands = enumerate_summands(cat);
    const auto report = is_perspective_bruteforce(cat, summands);

    std::vector<IsoInvariants> inv;
    for (const auto& s : summands) inv.push_back(iso_invariants(s.subgroup));
    ComplementOptions opt;
    opt.trace = false;
    opt.fallback = !f.no_fallback;
    std::int64_t pairs = 0, ok = 0, fallbacks = 0;
    std::vector<std::string> anomalies;
    for (std::size_t i = 0; i < summands.size(); ++i)
        for (std::size_t j = i; j < summands.size(); ++j) {
            if (!(inv[i] == inv[j])) continue;
            ++pairs;
            const auto& a = summands[i].subgroup;
            const auto& c = summands[j].subgroup;
            try {
                const auto r = finite_common_complement(a, c, opt);
                if (r.trace.fallback_used) {
                    ++fallbacks;
                    anomalies.push_back("fallback: " + a.to_string() + " / " + c.to_string());
                }
                if (is_direct_sum(g, a, r.complement) && is_direct_sum(g, c, r.complement)) ++ok;
                else anomalies.push_back("unverified: " + a.to_string() + " / " + c.to_string());
            } catch (const Error& e) {
                anomalies.push_back(std::string("failed: ") + e.what());
            }
        }
    if (anomalies.size() > 20) anomalies.resize(20);
    return json{{"group", g.to_string()},
                {"order", g.order()},
                {"perspective", report.perspective},
                {"summands", report.summands},
                {"pairs", pairs},
                {"constructive_verified", ok},
                {"fallbacks", fallbacks},
                {"anomalies", anomalies}};
}

json verify(const Flags& f, i64 max_order, Recorder& rec, std::ostream& human) {
    const auto caps = default_caps();
    if (max_order < 1) throw PreconditionError("--max-order must be at least 1");
    if (max_order > caps.sweep) throw CapExceeded("--max-order " + std::to_string(max_order), caps.sweep);
    const auto groups = abelian_groups_up_to(max_order);

    // Workers take groups in order; results are written in canonical order.
    std::vector<std::optional<json>> results(groups.size());
    std::vector<double> elapsed(groups.size(), 0);
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::condition_variable cv;
    std::exception_ptr failure;
    const unsigned nthreads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), 8));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nthreads; ++t)
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = next++;
                if (i >= groups.size()) return;
                const auto t0 = std::chrono::steady_clock::now();
                std::optional<json> r;
                try {
                    r = verify_group(groups[i], f);
                } catch (...) {
                    std::lock_guard lk(mu);
                    if (!failure) failure = std::current_exception();
                    r = json{{"group", groups[i].to_string()}, {"error", true}};
                }
                std::lock_guard lk(mu);
                results[i] = std::move(r);
                elapsed[i] = ms_since(t0);
                cv.notify_all();
            }
        });

    std::int64_t perspective = 0, pairs = 0, verified = 0, fallbacks = 0, anomalies = 0;
    for (std::size_t i = 0; i < groups.size(); ++i) {
        json r;
        {
            std::unique_lock lk(mu);
            cv.wait(lk, [&] { return results[i].has_value(); });
            r = *results[i];
        }
        rec.write(json{{"group", groups[i].to_string()}}, r, elapsed[i]);
        if (r.contains("error")) continue;
        perspective += r["perspective"].get<bool>();
        pairs += r["pairs"].get<std::int64_t>();
        verified += r["constructive_verified"].get<std::int64_t>();
        fallbacks += r["fallbacks"].get<std::int64_t>();
        anomalies += static_cast<std::int64_t>(r["anomalies"].size());
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    json summary{{"max_order", max_order},
                 {"groups", groups.size()},
                 {"perspective", perspective},
                 {"pairs", pairs},
                 {"constructive_verified", verified},
                 {"fallbacks", fallbacks},
                 {"anomalies", anomalies}};
    human << groups.size() << " groups checked, " << perspective << " perspective; " << verified << "/" << pairs
          << " pairs verified constructively; " << anomalies << " anomalies\n";
    return summary;
}

// rank1 ---------------------------------------------------------------------

json rank1_check(const Flags& f, const std::string& ttext, const std::string& not_div, std::ostream& human) {
    const RationalGroupType type = parse_type(ttext);
    for (i64 p : parse_prime_list(not_div))
        if (type.divisible_by_prime(p))
            throw PreconditionError(std::to_string(p) + "G = G for " + type.to_string() + ", contradicting --not-div");
    const auto v = gplusg_decide(type, parse_bounds(f.bounds));
    human << type.to_string() << ": " << rank1_status_name(v.status) << " (" << v.strategy << ")\n";
    if (v.certificate)
        human << "  certificate " << v.certificate->quad.to_string() << " mod " << v.certificate->modulus << '\n';
    return json::parse(v.to_json());
}

// ring ----------------------------------------------------------------------

json ring_check(const std::string& rtext, bool brute, std::ostream& human) {
    const FiniteRing r = parse_ring(rtext);
    const auto res = check_condition4(r);
    json j = json::parse(res.to_json(r));
    j["perspective"] = res.holds;
    if (brute) {
        const auto b = check_condition4_bruteforce(r);
        j["bruteforce"] = b.holds;
        if (b.holds != res.holds) throw Error("structured and brute-force checks disagree on " + r.name());
    }
    human << r.name() << " (|R| = " << r.size() << "): corner-unit condition " << (res.holds ? "holds" : "fails") << '\n';
    return j;
}

// vector spaces and modules ---------------------------------------------------

QMatrix stack(const QMatrix& a, const QMatrix& b) {
    QMatrix s = a;
    s.insert(s.end(), b.begin(), b.end());
    return s;
}

json vecspace_complement(const Flags& f, int dim, const std::string& atext, const std::string& ctext,
                         std::ostream& human) {
    const QMatrix ar = parse_rows(atext), cr = parse_rows(ctext);
    for (const auto* m : {&ar, &cr})
        if (!m->empty() && static_cast<int>(m->front().size()) != dim)
            throw PreconditionError("rows must have length " + std::to_string(dim));
    const auto a = make_q_subspace(dim, ar), c = make_q_subspace(dim, cr);
    if (a.dim() != c.dim()) throw PreconditionError("A and C must have equal dimension");
    std::vector<std::string> trace;
    const auto h = q_common_complement(dim, a, c, f.trace ? &trace : nullptr);
    const bool ok = q_rank(stack(a.rows(), h.rows())) == dim && q_rank(stack(c.rows(), h.rows())) == dim &&
                    a.dim() + h.dim() == dim;
    if (!ok) throw Error("complement failed verification");
    json j{{"module", "Q^" + std::to_string(dim)}, {"H", "span" + format_rows(h.rows())}, {"verified", ok}};
    if (f.trace) j["trace"] = trace;
    human << "H = span" << format_rows(h.rows()) << '\n';
    return j;
}

std::vector<std::vector<i64>> integer_rows(const QMatrix& m) {
    std::vector<std::vector<i64>> out;
    for (const auto& r : m) {
        std::vector<i64> v;
        for (const auto& q : r) {
            if (q.get_den() != 1 || !q.get_num().fits_slong_p()) throw PreconditionError("p-adic rows must be integers");
            v.push_back(q.get_num().get_si());
        }
        out.push_back(std::move(v));
    }
    return out;
}

json localized_complement(const Flags& f, const std::string& mtext, const std::string& atext,
                          const std::string& ctext, std::ostream& human) {
    const ModuleLiteral m = parse_module(mtext);
    if (m.kind == ModuleLiteral::Kind::Rational) return vecspace_complement(f, m.rank, atext, ctext, human);
    const QMatrix ar = parse_rows(atext), cr = parse_rows(ctext);
    if (m.kind == ModuleLiteral::Kind::Padic) {
        const auto u = padic_common_complement(m.p, m.precision, m.rank, integer_rows(ar), integer_rows(cr));
        QMatrix uq;
        for (const auto& r : u) {
            QVector v;
            for (i64 x : r) v.emplace_back(static_cast<long>(x));
            uq.push_back(std::move(v));
        }
        const bool stable = padic_precision_stable(m.p, m.precision, m.rank, integer_rows(ar), integer_rows(cr));
        human << "U = " << format_rows(uq) << (stable ? " (stable at N+1)" : "") << '\n';
        return json{{"module", m.to_string()}, {"U", format_rows(uq)}, {"stable", stable}};
    }
    const LocalizedModule lm{m.p, m.rank};
    const auto a = make_localized(lm, ar), c = make_localized(lm, cr);
    const auto res = localized_common_complement(a, c);
    const bool ok = localized_direct_sum(a, res.complement) && localized_direct_sum(c, res.complement);
    if (!ok) throw Error("complement failed verification");
    json j{{"module", m.to_string()}, {"U", format_rows(res.complement.basis)}, {"verified", ok}};
    if (f.trace) j["trace"] = res.trace;
    human << "U = " << format_rows(res.complement.basis) << '\n';
    if (f.trace)
        for (const auto& s : res.trace) human << "  " << s << '\n';
    return j;
}

} // namespace

Outcome run(const std::vector<std::string>& args) {
    Outcome oc;
    std::ostringstream out, err;
    Flags f;

    CLI::App app{"Common complements and perspectivity checks"};
    app.require_subcommand(1);
    app.add_flag("--json", f.json, "Print results as JSON");
    app.add_flag("--trace", f.trace, "Include the proof-case trace");
    app.add_flag("--no-fallback", f.no_fallback, "Fail instead of using the exhaustive search");
    app.add_option("--seed", f.seed, "Seed recorded with every result");
    app.add_option("--bounds", f.bounds, "Rank-1 search bounds m,w,e");
    app.add_option("--out", f.out, "Append JSON-lines records to this file");

    std::string s1, s2, s3, s4;
    int dim = 0;
    i64 max_order = 16;
    bool brute = false;

    auto* group = app.add_subcommand("group", "Finite abelian groups");
    group->require_subcommand(1);
    auto* gcomp = group->add_subcommand("complement", "Common complement of two summands");
    gcomp->add_option("group", s1)->required();
    gcomp->add_option("A", s2)->required();
    gcomp->add_option("C", s3)->required();

    auto* ver = app.add_subcommand("verify", "Sweep all abelian groups up to an order");
    ver->add_option("--max-order", max_order, "Largest group order");

    auto* rank1 = app.add_subcommand("rank1", "Rank-1 torsion-free groups");
    rank1->require_subcommand(1);
    auto* rcheck = rank1->add_subcommand("check", "Is G + G perspective?");
    rcheck->add_option("type", s1)->required();
    rcheck->add_option("--not-div", s4, "Primes p with pG != G (checked against the type)");

    auto* ring = app.add_subcommand("ring", "Finite rings");
    ring->require_subcommand(1);
    auto* ringc = ring->add_subcommand("check", "Corner-unit condition for a finite ring");
    ringc->add_option("ring", s1)->required();
    ringc->add_flag("--brute", brute, "Cross-check with the literal quantifier loop");

    auto* vec = app.add_subcommand("vecspace", "Rational vector spaces");
    vec->require_subcommand(1);
    auto* vcomp = vec->add_subcommand("complement", "Common complement of two subspaces");
    vcomp->add_option("dim", dim)->required()->check(CLI::Range(1, 64));
    vcomp->add_option("A", s2)->required();
    vcomp->add_option("C", s3)->required();

    auto* loc = app.add_subcommand("localized", "Localized and p-adic modules");
    loc->require_subcommand(1);
    auto* lcomp = loc->add_subcommand("complement", "Common complement of two pure submodules");
    lcomp->add_option("module", s1)->required();
    lcomp->add_option("A", s2)->required();
    lcomp->add_option("C", s3)->required();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        oc.out = app.help();
        return oc;
    } catch (const CLI::ParseError& e) {
        oc.exit_code = 1;
        oc.err = std::string("error: ") + e.what() + '\n';
        return oc;
    }

    try {
        Recorder rec(f, args);
        std::ostringstream human;
        json result, inputs;
        const auto t0 = std::chrono::steady_clock::now();
        bool recorded = false;
        if (*gcomp) {
            inputs = {{"group", s1}, {"A", s2}, {"C", s3}};
            result = group_complement(f, s1, s2, s3, human);
        } else if (*ver) {
            inputs = {{"max_order", max_order}};
            result = verify(f, max_order, rec, human);
            recorded = true;
        } else if (*rcheck) {
            inputs = {{"type", s1}, {"not_div", s4}};
            result = rank1_check(f, s1, s4, human);
        } else if (*ringc) {
            inputs = {{"ring", s1}};
            result = ring_check(s1, brute, human);
        } else if (*vcomp) {
            inputs = {{"dim", dim}, {"A", s2}, {"C", s3}};
            result = vecspace_complement(f, dim, s2, s3, human);
        } else if (*lcomp) {
            inputs = {{"module", s1}, {"A", s2}, {"C", s3}};
            result = localized_complement(f, s1, s2, s3, human);
        }
        if (!recorded) rec.write(inputs, result, ms_since(t0));
        out << (f.json ? result.dump() + "\n" : human.str());
    } catch (const ParseError& e) {
        oc.exit_code = 1;
        err << "parse error: " << e.what() << '\n';
    } catch (const CapExceeded& e) {
        oc.exit_code = 3;
        err << "cap exceeded: " << e.what() << '\n';
    } catch (const PreconditionError& e) {
        oc.exit_code = 2;
        err << "rejected: " << e.what() << '\n';
    } catch (const std::exception& e) {
        oc.exit_code = 4;
        err << "internal error: " << e.what() << '\n';
    }
    oc.out = out.str();
    oc.err = err.str();
    return oc;
}

} // namespace perspectra::cli
