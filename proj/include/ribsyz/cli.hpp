#pragma once

// Command-line front end.  Exit codes: 0 success / verified / semistable,
// 1 verification failed / unstable, 2 invalid input.

#include "ribsyz/io.hpp"
#include "ribsyz/koszul.hpp"
#include "ribsyz/stability.hpp"
#include "ribsyz/syzbases.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace ribsyz::cli {

enum ExitCode : int { ok = 0, failed = 1, invalid_input = 2 };

struct Options {
    int genus = 7;
    int p = 1;
    int q = 2;
    int power = 2;
    int from = 5;
    int to = 13;
    std::string family;
    std::string file;
    std::string format;
    std::string out;
    std::string certificate;
    bool no_oracle = false;
    bool no_default_seeds = false;
};

namespace detail {

inline std::string state_text(const TState& s)
{
    std::string out = "(";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? ", " : "") + std::to_string(s[i]);
    return out + ")";
}

inline Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("'" + path + "' is not valid JSON: " + e.what());
    }
}

/// The family named by --family, or read from --file.
inline CosyzygyFamily load_family(const Options& o)
{
    if (!o.file.empty()) {
        CosyzygyFamily fam = family_from_json(read_json_file(o.file));
        return fam;
    }
    if (o.family.empty()) throw std::invalid_argument("give --family or --file");
    const FamilyTag tag = parse_family_tag(o.family);
    if (tag == FamilyTag::custom) throw std::invalid_argument("a custom family must come from --file");
    if (o.p != 1) throw std::invalid_argument("the named families are first-order (p = 1)");
    return named_family(Genus(o.genus), tag);
}

inline int cmd_dims(const Options& o, const std::string& fmt, std::ostream& os)
{
    if (o.power < 1) throw std::invalid_argument("--power must be >= 1");
    const Genus gen(o.genus);
    const int top = 2 * gen.k() * o.power;
    int total = 0;
    Json rows = Json::array();
    if (fmt == "csv") os << "d,dim\n";
    if (fmt == "text") os << "H^0(w^" << o.power << ") for g = " << gen.g() << "\nd dim\n";
    for (int d = 0; d <= top; ++d) {
        const int n = weight_space_dim(gen, o.power, d);
        total += n;
        if (fmt == "json") rows.push_back({{"d", d}, {"dim", n}});
        else if (fmt == "csv") os << d << ',' << n << '\n';
        else os << d << ' ' << n << '\n';
    }
    if (fmt == "json") os << Json{{"genus", gen.g()}, {"power", o.power}, {"dims", rows}, {"total", total}}.dump(2) << '\n';
    if (fmt == "text") os << "total " << total << '\n';
    return ok;
}

inline int cmd_koszul(const Options& o, const std::string& fmt, std::ostream& os)
{
    if (o.q < 0) throw std::invalid_argument("--q must be >= 0");
    const Genus gen(o.genus);
    const auto rows = differential_dims(gen, {o.p, o.q});
    const bool have_k = o.q >= 1;
    const std::size_t kdim = have_k ? koszul_cohomology_dim(gen, {o.p, o.q}) : 0;
    if (fmt == "csv") {
        write_dims_csv(os, rows);
    } else if (fmt == "json") {
        Json degrees = Json::array();
        for (const auto& r : rows) {
            degrees.push_back({{"d", r.d}, {"domain", r.domain}, {"rank", r.rank}, {"ker", r.ker}, {"coker", r.coker}});
        }
        Json j{{"genus", gen.g()}, {"p", o.p}, {"q", o.q}, {"degrees", degrees}};
        j["koszul_dim"] = have_k ? Json(kdim) : Json(nullptr);
        os << j.dump(2) << '\n';
    } else {
        os << "f_{" << o.p << ',' << o.q << "} for g = " << gen.g() << "\nd domain rank ker coker\n";
        for (const auto& r : rows) {
            os << r.d << ' ' << r.domain << ' ' << r.rank << ' ' << r.ker << ' ' << r.coker << '\n';
        }
        if (have_k) os << "dim K_{" << o.p << ',' << o.q << "} = " << kdim << '\n';
    }
    return ok;
}

inline int cmd_family(const Options& o, const std::string& fmt, std::ostream& os)
{
    const CosyzygyFamily fam = load_family(o);
    if (fmt == "json") {
        os << to_json(fam).dump(2) << '\n';
    } else if (fmt == "csv") {
        os << "source,indices\n";
        for (std::size_t i = 0; i < fam.members.size(); ++i) {
            os << fam.sources[i];
            for (int x : fam.members[i].key()) os << ',' << x;
            os << '\n';
        }
    } else {
        os << to_string(fam.tag) << " family, g = " << fam.genus.g() << ", " << fam.members.size() << " members\n";
        for (std::size_t i = 0; i < fam.members.size(); ++i) {
            os << fam.sources[i] << ' ' << to_string(fam.members[i]) << '\n';
        }
    }
    return ok;
}

inline int cmd_verify(const Options& o, const std::string& fmt, std::ostream& os)
{
    const CosyzygyFamily fam = load_family(o);
    const VerificationReport r = verify_monomial_basis(fam.genus, fam);
    if (fmt == "json") {
        os << to_json(r).dump(2) << '\n';
    } else if (fmt == "csv") {
        os << "d,members,kernel_dim,rank\n";
        for (const auto& d : r.degrees) os << d.d << ',' << d.members << ',' << d.kernel_dim << ',' << d.rank << '\n';
    } else {
        os << "verdict: " << (r.verdict ? "monomial basis" : "not a monomial basis") << '\n'
           << "members: " << r.total << ", dim CoSyz_" << fam.p << " = " << r.expected << '\n';
        for (const auto& d : r.degrees) {
            if (!d.ok()) {
                os << "degree " << d.d << ": " << d.members << " members, kernel " << d.kernel_dim << ", rank "
                   << d.rank << '\n';
            }
        }
        for (const auto& c : r.duplicates) os << "duplicate: " << to_string(c) << '\n';
    }
    return r.verdict ? ok : failed;
}

inline int cmd_state(const Options& o, const std::string& fmt, std::ostream& os)
{
    const CosyzygyFamily fam = load_family(o);
    const TState s = t_state(fam);
    const bool named = fam.tag != FamilyTag::custom;
    const TState cf = named ? closed_form_state(fam.genus, fam.tag) : TState{};
    const bool match = !named || s == cf;
    if (fmt == "json") {
        Json j{{"genus", fam.genus.g()}, {"family", to_string(fam.tag)}, {"state", to_json(s)}};
        j["closed_form"] = named ? to_json(cf) : Json(nullptr);
        j["matches"] = match;
        os << j.dump(2) << '\n';
    } else if (fmt == "csv") {
        os << "i,n\n";
        for (std::size_t i = 0; i < s.size(); ++i) os << i << ',' << s[i] << '\n';
    } else {
        os << "w_T(" << to_string(fam.tag) << ") = " << state_text(s) << '\n';
        if (named) os << "closed form " << state_text(cf) << (match ? " (match)" : " (MISMATCH)") << '\n';
    }
    return match ? ok : failed;
}

inline int cmd_semistable(const Options& o, const std::string& fmt, std::ostream& os)
{
    const Genus gen(o.genus);
    std::vector<CosyzygyFamily> seeds;
    if (!o.no_default_seeds) seeds = default_seeds(gen, o.p);
    if (!o.file.empty()) seeds.push_back(family_from_json(read_json_file(o.file)));
    StabilityOptions opts;
    opts.use_oracle = !o.no_oracle;
    opts.validate_seeds = !o.no_oracle;
    const StabilityOutcome res = torus_semistability(gen, o.p, seeds, opts);
    const Json j = outcome_json(gen, o.p, res);
    if (!o.certificate.empty()) {
        std::ofstream f(o.certificate);
        if (!f) throw std::invalid_argument("cannot write '" + o.certificate + "'");
        f << j.dump(2) << '\n';
    }
    if (fmt == "json") {
        os << j.dump(2) << '\n';
    } else {
        os << "g = " << gen.g() << ", p = " << o.p << ": " << (res.semistable() ? "semistable" : "unstable")
           << " after " << res.iterations << " iteration(s)\n";
        if (res.semistable()) {
            const auto& c = std::get<SemiStable>(res.result).certificate;
            os << "barycenter entry " << to_string(c.target.at(0)) << '\n';
            for (std::size_t i = 0; i < c.states.size(); ++i) {
                os << to_string(c.lambdas[i]) << " * " << state_text(c.states[i]) << '\n';
            }
        } else {
            const auto& u = std::get<Unstable>(res.result);
            os << "chi = (";
            for (std::size_t i = 0; i < u.chi.size(); ++i) os << (i ? ", " : "") << to_string(u.chi[i]);
            os << "), min <chi, state> = " << to_string(u.value) << '\n';
        }
    }
    return res.semistable() ? ok : failed;
}

inline int cmd_barycenter_lemma(const Options& o, const std::string& fmt, std::ostream& os)
{
    const Genus gen(o.genus);
    const Certificate c = verify_barycenter_lemma(gen);
    if (fmt == "json") {
        os << certificate_json(gen, 1, c).dump(2) << '\n';
    } else {
        static const char* names[] = {"plus", "minus", "star"};
        os << "barycenter entry " << to_string(c.target.at(0)) << '\n';
        for (std::size_t i = 0; i < c.states.size(); ++i) {
            os << names[i] << ' ' << to_string(c.lambdas[i]) << ' ' << state_text(c.states[i]) << '\n';
        }
    }
    return ok;
}

struct Claim {
    int g;
    int p;
    std::string name;
    bool pass;
    std::string note;
};

inline std::vector<Claim> reproduce_claims(const Genus& gen, int p)
{
    std::vector<Claim> out;
    const int g = gen.g();
    auto attempt = [&](const std::string& name, auto&& body) {
        try {
            std::string note;
            const bool pass = body(note);
            out.push_back({g, p, name, pass, note});
        } catch (const std::exception& e) {
            out.push_back({g, p, name, false, e.what()});
        }
    };
    const std::string kname = "K_{" + std::to_string(p) + ",2} = 0";
    attempt(kname, [&](std::string& note) {
        const std::size_t n = koszul_cohomology_dim(gen, {p, 2});
        note = "dim " + std::to_string(n);
        return n == 0;
    });
    if (p == 1) {
        for (FamilyTag tag : {FamilyTag::plus, FamilyTag::minus, FamilyTag::star}) {
            const CosyzygyFamily fam = named_family(gen, tag);
            attempt(to_string(tag) + " is a monomial basis", [&](std::string& note) {
                const VerificationReport r = verify_monomial_basis(gen, fam);
                if (!r.verdict) {
                    note = "failing degrees";
                    for (int d : r.failing_degrees()) note += " " + std::to_string(d);
                }
                return r.verdict;
            });
            attempt(to_string(tag) + " state formula", [&](std::string&) {
                return t_state(fam) == closed_form_state(gen, tag);
            });
        }
        attempt("barycenter lemma certificate", [&](std::string&) {
            verify_barycenter_lemma(gen);
            return true;
        });
    }
    attempt("torus semistable", [&](std::string& note) {
        const StabilityOutcome res = torus_semistability(gen, p);
        note = std::to_string(res.iterations) + " iteration(s)";
        return res.semistable();
    });
    return out;
}

inline int cmd_reproduce(const Options& o, const std::string& fmt, std::ostream& os)
{
    if (o.from > o.to) throw std::invalid_argument("--from must not exceed --to");
    static_cast<void>(Genus(o.from));
    static_cast<void>(Genus(o.to));
    std::vector<Claim> claims;
    for (int g = o.from; g <= o.to; g += 2) {
        auto c = reproduce_claims(Genus(g), o.p);
        claims.insert(claims.end(), c.begin(), c.end());
    }
    const auto passed = std::count_if(claims.begin(), claims.end(), [](const Claim& c) { return c.pass; });
    if (fmt == "json") {
        Json arr = Json::array();
        for (const auto& c : claims) {
            arr.push_back({{"genus", c.g}, {"p", c.p}, {"claim", c.name}, {"pass", c.pass}, {"note", c.note}});
        }
        os << Json{{"claims", arr}, {"passed", passed}, {"total", claims.size()}}.dump(2) << '\n';
    } else if (fmt == "csv") {
        os << "g,p,claim,pass\n";
        for (const auto& c : claims) os << c.g << ',' << c.p << ",\"" << c.name << "\"," << (c.pass ? 1 : 0) << '\n';
    } else {
        for (const auto& c : claims) {
            os << (c.pass ? "PASS " : "FAIL ") << "g=" << c.g << " p=" << c.p << "  " << c.name;
            if (!c.note.empty()) os << "  (" << c.note << ')';
            os << '\n';
        }
        os << passed << '/' << claims.size() << " claims passed\n";
    }
    return passed == static_cast<long>(claims.size()) ? ok : failed;
}

} // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact syzygy and torus-stability computations for the balanced canonical ribbon", "ribsyz"};
    app.require_subcommand(1);
    Options o;

    const std::vector<std::string> formats{"text", "json", "csv"};
    auto common = [&](CLI::App* sub, const char* default_format) {
        sub->add_option("--genus,-g", o.genus, "odd genus g >= 5")->capture_default_str();
        sub->add_option("--format", o.format, "text, json or csv")
            ->check(CLI::IsMember(formats))
            ->default_str(default_format);
        sub->add_option("--out,-o", o.out, "write the report here instead of standard output");
    };
    auto order = [&](CLI::App* sub) {
        sub->add_option("--p", o.p, "syzygy order, 1..3")->check(CLI::Range(1, 3))->capture_default_str();
    };
    auto family = [&](CLI::App* sub) {
        sub->add_option("--family", o.family, "plus, minus or star");
        sub->add_option("--file", o.file, "family JSON file");
    };

    std::vector<std::pair<CLI::App*, std::string>> subs;
    auto add = [&](const char* name, const char* help, const char* fmt) {
        CLI::App* s = app.add_subcommand(name, help);
        common(s, fmt);
        subs.emplace_back(s, fmt);
        return s;
    };

    CLI::App* dims = add("dims", "weight-space dimensions of H^0(w^m)", "text");
    dims->add_option("--power,-m", o.power, "power m of the dualizing sheaf")->capture_default_str();

    CLI::App* koszul = add("koszul", "per-degree ranks of f_{p,q} and dim K_{p,q}", "text");
    order(koszul);
    koszul->add_option("--q", o.q, "power q")->capture_default_str();

    CLI::App* fam = add("family", "list a cosyzygy family", "json");
    family(fam);
    order(fam);

    CLI::App* verify = add("verify", "check that a family is a monomial basis of cosyzygies", "json");
    family(verify);
    order(verify);

    CLI::App* state = add("state", "T-state of a family", "text");
    family(state);
    order(state);

    CLI::App* semi = add("semistable", "decide torus semi-stability of the p-th syzygy point", "json");
    order(semi);
    semi->add_option("--certificate", o.certificate, "also write the outcome JSON here");
    semi->add_option("--file", o.file, "extra seed family (JSON)");
    semi->add_flag("--no-default-seeds", o.no_default_seeds, "start only from --file (or one greedy basis)");
    semi->add_flag("--no-oracle", o.no_oracle, "only test the hull of the seeds themselves");

    add("barycenter-lemma", "explicit convex combination of the three family states", "json");

    CLI::App* repro = add("reproduce", "run the full battery of checks over a genus range", "text");
    order(repro);
    repro->add_option("--from", o.from, "smallest genus")->capture_default_str();
    repro->add_option("--to", o.to, "largest genus")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "ribsyz: " << e.what() << '\n';
        return invalid_input;
    }

    for (const auto& [sub, default_format] : subs) {
        if (!sub->parsed()) continue;
        const std::string fmt = o.format.empty() ? default_format : o.format;
        const std::string name = sub->get_name();
        try {
            std::ostringstream report;
            int code = ok;
            if (name == "dims") code = detail::cmd_dims(o, fmt, report);
            else if (name == "koszul") code = detail::cmd_koszul(o, fmt, report);
            else if (name == "family") code = detail::cmd_family(o, fmt, report);
            else if (name == "verify") code = detail::cmd_verify(o, fmt, report);
            else if (name == "state") code = detail::cmd_state(o, fmt, report);
            else if (name == "semistable") code = detail::cmd_semistable(o, fmt, report);
            else if (name == "barycenter-lemma") code = detail::cmd_barycenter_lemma(o, fmt, report);
            else code = detail::cmd_reproduce(o, fmt, report);

            if (o.out.empty()) {
                out << report.str();
            } else {
                std::ofstream f(o.out);
                if (!f) {
                    err << "ribsyz: cannot write '" << o.out << "'\n";
                    return invalid_input;
                }
                f << report.str();
            }
            return code;
        } catch (const std::invalid_argument& e) {
            err << "ribsyz " << name << ": " << e.what() << '\n';
            return invalid_input;
        } catch (const std::out_of_range& e) {
            err << "ribsyz " << name << ": " << e.what() << '\n';
            return invalid_input;
        } catch (const std::domain_error& e) {
            err << "ribsyz " << name << ": " << e.what() << '\n';
            return invalid_input;
        } catch (const std::exception& e) {
            err << "ribsyz " << name << ": " << e.what() << '\n';
            return failed;
        }
    }
    err << "ribsyz: no subcommand\n";
    return invalid_input;
}

} // namespace ribsyz::cli
