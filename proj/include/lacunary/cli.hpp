#pragma once

#include <algorithm>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lacunary/automaton.hpp"
#include "lacunary/contfrac.hpp"
#include "lacunary/oeis.hpp"
#include "lacunary/poly_json.hpp"
#include "lacunary/qseries.hpp"
#include "lacunary/stern.hpp"
#include "lacunary/verify.hpp"

#ifndef LACUNARY_DEFAULT_FIXTURES
#define LACUNARY_DEFAULT_FIXTURES "fixtures"
#endif

namespace lacunary::cli {

enum ExitCode { kOk = 0, kVerificationFailed = 1, kUsage = 2 };

struct Globals {
    bool json = false;
    std::uint64_t seed = 1;
    std::string level = "quick";
};

namespace detail {

using nlohmann::json;

template <typename T>
std::string text(const T& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

inline std::string stop_name(CfStop s) {
    switch (s) {
        case CfStop::QuotientBound: return "quotient-bound";
        case CfStop::ExactRemainder: return "exact-remainder";
        default: return "precision";
    }
}

inline void print_json(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

// ------------------------------------------------------------------------ cf

struct CfArgs {
    std::string lambda = "mersenne";
    std::string eps = "period:0";
    std::size_t n = 0;
    Exponent precision = 0;
};

inline int cf_expand_cmd(const CfArgs& a, const Globals& g, std::ostream& out) {
    const LambdaSpec lam = LambdaSpec::parse(a.lambda);
    const EpsilonSpec eps = EpsilonSpec::parse(a.eps);
    ContinuedFraction cf;
    if (a.precision > 0) {
        cf = cf_expand(build_F(lam, eps, a.precision), a.n);
    } else {
        // Smallest power-of-two precision that certifies the requested quotients.
        Exponent N = std::max<Exponent>(2 * lam.at(0), 16);
        while (true) {
            cf = cf_expand(build_F(lam, eps, N), a.n);
            if (cf.certified_count() >= a.n || cf.stop == CfStop::ExactRemainder) break;
            if (N >= (Exponent{1} << 20)) break;
            N *= 2;
        }
    }
    const Convergents conv = convergents(cf);
    if (g.json) {
        json q = json::array();
        for (std::size_t i = 0; i < cf.quotients.size(); ++i) {
            q.push_back({{"index", i},
                         {"certified", static_cast<bool>(cf.certified[i])},
                         {"A", to_json(cf.quotients[i])},
                         {"P", to_json(conv.P[i])},
                         {"Q", to_json(conv.Q[i])}});
        }
        print_json(out, {{"lambda", lam.to_string()},
                         {"eps", eps.to_string()},
                         {"precision", cf.precision},
                         {"stop", stop_name(cf.stop)},
                         {"certified_count", cf.certified_count()},
                         {"integral", cf.integral()},
                         {"quotients", q}});
        return kOk;
    }
    out << "lambda " << lam.to_string() << "  eps " << eps.to_string() << "  precision " << cf.precision << "  stop "
        << stop_name(cf.stop) << "\n";
    for (std::size_t i = 0; i < cf.quotients.size(); ++i) {
        out << "A_" << i << " = " << cf.quotients[i] << (cf.certified[i] ? "" : "  (uncertified)") << "\n";
        out << "  P_" << i << " = " << conv.P[i] << "\n";
        out << "  Q_" << i << " = " << conv.Q[i] << "\n";
    }
    out << "certified " << cf.certified_count() << " of " << cf.quotients.size() << "\n";
    return kOk;
}

// ------------------------------------------------------------------- qseries

struct QArgs {
    std::string omega;
    std::string lambda = "mersenne";
    std::string eps = "period:0";
    std::optional<std::uint64_t> upto;
    bool mod2 = false;
};

inline int qseries_cmd(const QArgs& a, const Globals& g, std::ostream& out) {
    const QSeriesHandle h{Dyadic::parse(a.omega), LambdaSpec::parse(a.lambda), EpsilonSpec::parse(a.eps)};
    std::uint64_t K;
    if (a.upto) {
        K = *a.upto;
    } else if (h.omega.is_finite()) {
        K = h.integer_cutoff().value_or(0);
    } else {
        throw CLI::ValidationError("--upto", "required when omega is not an integer");
    }
    const auto terms = q_omega_window(h, K);
    if (g.json) {
        json t = json::array();
        for (const auto& x : terms) {
            t.push_back({{"k", x.k}, {"exponent", x.exponent}, {"coefficient", a.mod2 ? 1 : x.coefficient}});
        }
        print_json(out, {{"omega", h.omega.to_string()},
                         {"lambda", h.lambda.to_string()},
                         {"eps", h.eps.to_string()},
                         {"upto", K},
                         {"mod2", a.mod2},
                         {"terms", t}});
        return kOk;
    }
    out << "{";
    for (std::size_t i = 0; i < terms.size(); ++i) {
        out << (i ? ", " : "") << terms[i].exponent << ":" << (a.mod2 ? 1 : terms[i].coefficient);
    }
    out << "}\n";
    return kOk;
}

struct PellArgs {
    std::string omega;
    std::string lambda = "mersenne";
    Exponent trunc = 128;
};

inline int pell_cmd(const PellArgs& a, const Globals& g, std::ostream& out) {
    const Dyadic w = Dyadic::parse(a.omega);
    const LambdaSpec lam = LambdaSpec::parse(a.lambda);
    const bool ok = pell_check_mod2(w, a.trunc, lam);
    if (g.json) {
        print_json(out, {{"omega", w.to_string()}, {"lambda", lam.to_string()}, {"truncation", a.trunc}, {"holds", ok}});
    } else {
        out << "Q_w^2 - Q_{w+1} Q_{w-1} = 1 mod (2, X^" << a.trunc << ") for " << w.to_string() << ": "
            << (ok ? "holds" : "FAILS") << "\n";
    }
    return ok ? kOk : kVerificationFailed;
}

struct ANumberArgs {
    std::string omega = "rat:1/3";
    std::string eps = "period:0";
    unsigned long g = 10;
    std::uint64_t terms = 60;
    unsigned digits = 0;
};

inline int anumber_cmd(const ANumberArgs& a, const Globals& g, std::ostream& out) {
    const Dyadic w = Dyadic::parse(a.omega);
    const EpsilonSpec eps = EpsilonSpec::parse(a.eps);
    const ANumber v = a_number(eps, w, a.g, a.terms);
    const unsigned digits = a.digits ? a.digits : static_cast<unsigned>(a.terms);
    if (g.json) {
        print_json(out, {{"omega", w.to_string()},
                         {"eps", eps.to_string()},
                         {"g", a.g},
                         {"terms", a.terms},
                         {"partial_sum", v.partial_sum.get_str()},
                         {"error_bound", v.error_bound.get_str()},
                         {"decimal", v.decimal(digits)}});
    } else {
        out << "A(" << eps.to_string() << ", " << w.to_string() << ", " << a.g << ") ~ " << v.decimal(digits)
            << "  (partial sum to k = " << a.terms << ", error <= " << v.error_bound.get_str() << ")\n";
    }
    return kOk;
}

// --------------------------------------------------------------------- stern

struct SternArgs {
    std::int64_t from = 0;
    std::int64_t to = 0;
};

inline int stern_table_cmd(const std::string& name, const std::function<Integer(std::int64_t)>& f, bool negative_ok,
                           const SternArgs& a, const Globals& g, std::ostream& out) {
    if (a.to < a.from) throw CLI::ValidationError("--to", "must be at least --from");
    if (!negative_ok && a.from < 0) throw CLI::ValidationError("--from", name + " is defined for n >= 0 only");
    if (g.json) {
        json rows = json::array();
        for (std::int64_t n = a.from; n <= a.to; ++n) rows.push_back({{"n", n}, {"value", f(n).get_str()}});
        print_json(out, {{"sequence", name}, {"values", rows}});
        return kOk;
    }
    out << "n," << name << "\n";
    for (std::int64_t n = a.from; n <= a.to; ++n) out << n << "," << f(n).get_str() << "\n";
    return kOk;
}

struct OeisArgs {
    std::string id;
    std::string bfile;
    std::string fixtures = LACUNARY_DEFAULT_FIXTURES;
    std::int64_t max_n = INT64_MAX;
};

inline int oeis_cmd(const OeisArgs& a, const Globals& g, std::ostream& out) {
    std::vector<const OeisRelation*> rels;
    if (a.id.empty()) {
        if (!a.bfile.empty()) throw CLI::ValidationError("--bfile", "needs --id");
        for (const auto& r : oeis_registry()) rels.push_back(&r);
    } else {
        rels.push_back(&find_oeis(a.id));
    }
    bool all_ok = true;
    json reports = json::array();
    for (const auto* r : rels) {
        const std::string path = a.bfile.empty() ? a.fixtures + "/b" + r->id.substr(1) + ".txt" : a.bfile;
        const OeisReport rep = oeis_check(*r, load_bfile(path), a.max_n);
        all_ok = all_ok && rep.ok();
        if (g.json) {
            json j = {{"id", r->id}, {"relation", r->relation}, {"compared", rep.compared}, {"ok", rep.ok()}};
            if (rep.first_mismatch) {
                j["first_mismatch"] = *rep.first_mismatch;
                j["expected"] = rep.expected.get_str();
                j["got"] = rep.got.get_str();
            }
            reports.push_back(j);
        } else {
            out << (rep.ok() ? "PASS " : "FAIL ") << r->id << "  " << r->relation << "  compared " << rep.compared;
            if (rep.first_mismatch) {
                out << "  first mismatch at index " << *rep.first_mismatch << ": expected " << rep.expected.get_str()
                    << ", got " << rep.got.get_str();
            }
            out << "\n";
        }
    }
    if (g.json) print_json(out, reports);
    return all_ok ? kOk : kVerificationFailed;
}

// ----------------------------------------------------------------- automaton

struct AutomatonArgs {
    std::string omega;
    std::string tag = "f";
    std::string eps = "period:0";
    std::string format = "text";
    bool minimal = false;
    std::uint64_t upto = 65536;
    std::size_t deg = 4;
    std::size_t height = 64;
    std::size_t trunc = 4096;
};

inline Dfao automaton_for(const AutomatonArgs& a, std::string& name) {
    const Dyadic w = Dyadic::parse(a.omega);
    Dfao d = a.tag == "signed" ? signed_dfao(w, EpsilonSpec::parse(a.eps)) : build_dfao(w, parse_tag(a.tag));
    if (a.minimal) d = minimize(d);
    name = a.tag + "_" + w.to_string();
    return d;
}

inline int automaton_build_cmd(const AutomatonArgs& a, const Globals& g, std::ostream& out) {
    std::string name;
    const Dfao d = automaton_for(a, name);
    const std::string format = g.json && a.format == "text" ? "json" : a.format;
    if (format == "dot") {
        out << export_dot(d, name);
    } else if (format == "json") {
        out << export_json(d) << "\n";
    } else {
        out << d.size() << " states, initial " << d.initial << ", digits read least significant first\n";
        for (std::size_t s = 0; s < d.size(); ++s) {
            out << s << "  " << d.labels[s] << "  output " << d.output[s] << "  0 -> " << d.delta[s][0] << "  1 -> "
                << d.delta[s][1] << "\n";
        }
    }
    return kOk;
}

inline int automaton_verify_cmd(const AutomatonArgs& a, const Globals& g, std::ostream& out) {
    const Dyadic w = Dyadic::parse(a.omega);
    const std::size_t orbit_size = orbit(w).size();
    json rows = json::array();
    bool all_ok = true;
    auto report = [&](const std::string& tag, const Dfao& d, std::optional<std::uint64_t> bad) {
        const bool bound_ok = tag == "signed" || d.size() <= 3 * orbit_size + 1;
        const bool ok = !bad && bound_ok;
        all_ok = all_ok && ok;
        if (g.json) {
            json j = {{"tag", tag}, {"states", d.size()}, {"upto", a.upto}, {"ok", ok}};
            if (bad) j["first_mismatch"] = *bad;
            rows.push_back(j);
        } else {
            out << (ok ? "PASS " : "FAIL ") << tag << "  states " << d.size();
            if (tag != "signed") out << " (bound " << 3 * orbit_size + 1 << ")";
            out << "  k < " << a.upto;
            if (bad) out << "  first mismatch at k = " << *bad;
            out << "\n";
        }
    };
    for (Tag t : {Tag::f, Tag::g, Tag::h}) {
        const Dfao d = build_dfao(w, t);
        std::optional<std::uint64_t> bad;
        for (std::uint64_t k = 0; k < a.upto && !bad; ++k) {
            if (d.evaluate(k) != fgh(w, k, t)) bad = k;
        }
        report(std::string(1, tag_char(t)), d, bad);
    }
    const EpsilonSpec eps = EpsilonSpec::parse(a.eps);
    const Dfao s = signed_dfao(w, eps);
    const auto coeffs = q_omega_coefficients({w, LambdaSpec::mersenne(), eps}, a.upto);
    std::optional<std::uint64_t> bad;
    for (std::uint64_t k = 0; k < a.upto && !bad; ++k) {
        if (s.evaluate(k) != coeffs[k]) bad = k;
    }
    report("signed", s, bad);
    if (g.json) print_json(out, {{"omega", w.to_string()}, {"orbit", orbit_size}, {"results", rows}});
    return all_ok ? kOk : kVerificationFailed;
}

inline int automaton_algrel_cmd(const AutomatonArgs& a, const Globals& g, std::ostream& out) {
    const Dyadic w = Dyadic::parse(a.omega);
    const auto s = q_mod2_prefix(w, a.trunc);
    const auto r = find_algebraic_relation(s, a.deg, a.height, a.trunc);
    const bool verified = r && verify_relation(s, *r);
    if (g.json) {
        json j = {{"omega", w.to_string()}, {"deg", a.deg}, {"height", a.height}, {"truncation", a.trunc},
                  {"found", r.has_value()}, {"verified", verified}};
        if (r) {
            json c = json::array();
            for (const auto& p : r->c) c.push_back(to_json(p));
            j["coefficients"] = c;
            j["polynomial_input"] = r->polynomial_input;
        }
        print_json(out, j);
        return r && !verified ? kVerificationFailed : kOk;
    }
    if (!r) {
        out << "no relation sum_{i<=" << a.deg << "} c_i S^(2^i) = 0 with deg c_i <= " << a.height
            << " found, verified to O(X^" << a.trunc << ")\n";
        return kOk;
    }
    out << "relation of degree " << r->degree() << " and height " << r->height() << (verified ? ", verified" : ", NOT verified")
        << " to O(X^" << a.trunc << ")" << (r->polynomial_input ? " (input is a polynomial to this order)" : "") << "\n";
    for (std::size_t i = 0; i < r->c.size(); ++i) out << "  c_" << i << " = " << r->c[i] << "\n";
    return verified ? kOk : kVerificationFailed;
}

// -------------------------------------------------------------------- verify

struct VerifyArgs {
    std::string module;
    std::string fixtures = LACUNARY_DEFAULT_FIXTURES;
    bool list = false;
};

inline int verify_cmd(const VerifyArgs& a, const Globals& g, std::ostream& out) {
    if (a.list) {
        std::size_t shown = 0;
        for (const auto& c : verify::all_checks()) {
            if (!a.module.empty() && c.module != a.module) continue;
            out << c.module << "/" << c.name << "\n";
            ++shown;
        }
        if (!shown) throw CLI::ValidationError("--module", "no checks in module '" + a.module + "'");
        return kOk;
    }
    verify::Config cfg;
    cfg.level = g.level == "full" ? verify::Level::Full : verify::Level::Quick;
    cfg.seed = g.seed;
    cfg.fixtures_dir = a.fixtures;
    const auto results = verify::run(cfg, a.module);
    if (results.empty()) throw CLI::ValidationError("--module", "no checks in module '" + a.module + "'");
    std::size_t failed = 0;
    json rows = json::array();
    for (const auto& r : results) {
        if (!r.passed) ++failed;
        if (g.json) {
            rows.push_back({{"module", r.module}, {"check", r.name}, {"passed", r.passed}, {"skipped", r.skipped},
                            {"detail", r.detail}});
        } else {
            out << std::left << std::setw(5) << (r.skipped ? "SKIP" : (r.passed ? "PASS" : "FAIL")) << std::setw(12)
                << r.module << std::setw(30) << r.name;
            if (!r.detail.empty()) out << r.detail;
            out << "\n";
        }
    }
    if (g.json) {
        print_json(out, {{"level", g.level}, {"seed", g.seed}, {"checks", rows}, {"failed", failed}});
    } else {
        out << results.size() - failed << "/" << results.size() << " checks passed\n";
    }
    return failed ? kVerificationFailed : kOk;
}

}  // namespace detail

/// Runs one command line (without the program name). Output goes to `out`,
/// diagnostics to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace detail;
    CLI::App app{"Continued fractions, Stern sequences and automata for lacunary series", "lacunary"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_flag("--json", g.json, "JSON output");
    app.add_option("--seed", g.seed, "seed for randomized checks");
    app.add_option("--level", g.level, "verification level")->check(CLI::IsMember({"quick", "full"}));

    std::function<int()> action;

    // cf
    CfArgs cf;
    auto* cf_cmd = app.add_subcommand("cf", "continued fraction of F(X) = sum (-1)^eps_n X^-lambda_n");
    cf_cmd->require_subcommand(1);
    auto* cf_exp = cf_cmd->add_subcommand("expand", "partial quotients and convergents");
    cf_exp->add_option("--lambda", cf.lambda, "mersenne | list:a,b,...");
    cf_exp->add_option("--eps", cf.eps, "period:... | pre:...+period:...");
    cf_exp->add_option("--n", cf.n, "number of partial quotients")->required()->check(CLI::PositiveNumber);
    cf_exp->add_option("--precision", cf.precision, "coefficients of F known down to X^-N")->check(CLI::PositiveNumber);
    cf_exp->callback([&] { action = [&] { return cf_expand_cmd(cf, g, out); }; });

    // qseries
    QArgs q;
    auto* q_cmd = app.add_subcommand("qseries", "coefficients of Q_omega");
    q_cmd->add_option("--omega", q.omega, "int:N | rat:A/B | bits:pre=..;period=.. | stream:NAME");
    q_cmd->add_option("--lambda", q.lambda);
    q_cmd->add_option("--eps", q.eps);
    q_cmd->add_option("--upto", q.upto, "largest k of the window");
    q_cmd->add_flag("--mod2", q.mod2, "reduce coefficients mod 2");
    q_cmd->callback([&] {
        if (!action) {
            if (q.omega.empty()) throw CLI::RequiredError("--omega");
            action = [&] { return qseries_cmd(q, g, out); };
        }
    });
    PellArgs pell;
    auto* pell_cmd_ = q_cmd->add_subcommand("pell", "Q_w^2 - Q_{w+1} Q_{w-1} = 1 mod 2");
    pell_cmd_->add_option("--omega", pell.omega)->required();
    pell_cmd_->add_option("--lambda", pell.lambda);
    pell_cmd_->add_option("--trunc", pell.trunc, "truncation order")->check(CLI::PositiveNumber);
    pell_cmd_->callback([&] { action = [&] { return pell_cmd(pell, g, out); }; });
    ANumberArgs an;
    auto* an_cmd = q_cmd->add_subcommand("anumber", "partial sums of A(eps, omega, g)");
    an_cmd->add_option("--omega", an.omega);
    an_cmd->add_option("--eps", an.eps);
    an_cmd->add_option("--g", an.g, "base")->check(CLI::Range(2ul, 1000000ul));
    an_cmd->add_option("--terms", an.terms, "largest k")->check(CLI::NonNegativeNumber);
    an_cmd->add_option("--digits", an.digits, "decimal digits (default: --terms)");
    an_cmd->callback([&] { action = [&] { return anumber_cmd(an, g, out); }; });

    // stern
    SternArgs st;
    auto* st_cmd = app.add_subcommand("stern", "Stern and related sequences");
    st_cmd->require_subcommand(1);
    struct Seq {
        const char* name;
        const char* help;
        std::function<Integer(std::int64_t)> f;
        bool negative_ok;
    };
    const std::vector<Seq> seqs = {
        {"u", "u_n, n in Z", stern_u, true},
        {"gamma", "gamma_n by recursion", gamma_rec, false},
        {"alpha", "alpha_n by recursion", alpha_rec, false},
        {"beta", "beta_n by recursion", beta_rec, false},
        {"carlitz", "u_n as a sum of binomials mod 2", stern_carlitz, false},
    };
    for (const auto& s : seqs) {
        auto* sub = st_cmd->add_subcommand(s.name, s.help);
        sub->add_option("--from", st.from);
        sub->add_option("--to", st.to)->required();
        sub->callback([&, s] { action = [&, s] { return stern_table_cmd(s.name, s.f, s.negative_ok, st, g, out); }; });
    }
    OeisArgs oe;
    auto add_oeis_options = [&](CLI::App* sub) {
        sub->add_option("--id", oe.id, "A-number; all registered ids if omitted");
        sub->add_option("--bfile", oe.bfile, "b-file path");
        sub->add_option("--fixtures", oe.fixtures, "directory of bundled b-files");
        sub->add_option("--max-n", oe.max_n, "compare indices below this bound")->check(CLI::PositiveNumber);
        sub->callback([&] { action = [&] { return oeis_cmd(oe, g, out); }; });
    };
    add_oeis_options(st_cmd->add_subcommand("oeis-check", "compare against an OEIS b-file"));

    // automaton
    AutomatonArgs au;
    auto* au_cmd = app.add_subcommand("automaton", "DFAOs for rational omega");
    au_cmd->require_subcommand(1);
    auto* au_build = au_cmd->add_subcommand("build", "construct and export");
    au_build->add_option("--omega", au.omega)->required();
    au_build->add_option("--tag", au.tag)->check(CLI::IsMember({"f", "g", "h", "signed"}));
    au_build->add_option("--eps", au.eps, "sign pattern for --tag signed");
    au_build->add_option("--export", au.format)->check(CLI::IsMember({"text", "dot", "json"}));
    au_build->add_flag("--minimize", au.minimal);
    au_build->callback([&] { action = [&] { return automaton_build_cmd(au, g, out); }; });
    auto* au_verify = au_cmd->add_subcommand("verify", "compare with direct binomial evaluation");
    au_verify->add_option("--omega", au.omega)->required();
    au_verify->add_option("--eps", au.eps);
    au_verify->add_option("--upto", au.upto)->check(CLI::PositiveNumber);
    au_verify->callback([&] { action = [&] { return automaton_verify_cmd(au, g, out); }; });
    auto* au_alg = au_cmd->add_subcommand("algrel", "search an algebraic relation for Q_omega mod 2");
    au_alg->add_option("--omega", au.omega)->required();
    au_alg->add_option("--deg", au.deg)->check(CLI::PositiveNumber);
    au_alg->add_option("--height", au.height)->check(CLI::PositiveNumber);
    au_alg->add_option("--trunc", au.trunc)->check(CLI::PositiveNumber);
    au_alg->callback([&] { action = [&] { return automaton_algrel_cmd(au, g, out); }; });

    // verify
    VerifyArgs va;
    auto* v_cmd = app.add_subcommand("verify", "run the identity checks");
    v_cmd->require_subcommand(1);
    auto* v_all = v_cmd->add_subcommand("all", "every check, or those of one module");
    v_all->add_option("--module", va.module);
    v_all->add_option("--fixtures", va.fixtures);
    v_all->add_flag("--list", va.list, "list check names only");
    v_all->callback([&] { action = [&] { return verify_cmd(va, g, out); }; });

    // oeis-check
    add_oeis_options(app.add_subcommand("oeis-check", "compare against bundled OEIS b-files"));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
        return action ? action() : kUsage;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

}  // namespace lacunary::cli
