#pragma once

// JSON and CSV encodings of families, reports, certificates and dimension
// tables.  Rationals are written as "p/q" strings in lowest terms.

#include "ribsyz/koszul.hpp"
#include "ribsyz/rational.hpp"
#include "ribsyz/stability.hpp"
#include "ribsyz/syzbases.hpp"

#include <json.hpp>

#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ribsyz {

using Json = nlohmann::ordered_json;

inline Json to_json(const Cosyzygy& c)
{
    Json a = Json::array();
    for (int i : c.wedge) a.push_back(i);
    a.push_back(c.factor);
    return a;
}

inline Json to_json(const CosyzygyFamily& fam)
{
    Json members = Json::array();
    for (const auto& c : fam.members) members.push_back(to_json(c));
    return Json{{"genus", fam.genus.g()}, {"p", fam.p}, {"family", to_string(fam.tag)}, {"cosyzygies", members}};
}

/// Reads a family document.  Wedge indices may come in any order; each entry
/// is [a_0, ..., a_p, c].  Throws std::invalid_argument on malformed input.
inline CosyzygyFamily family_from_json(const Json& j)
{
    try {
        const Genus gen(j.at("genus").get<int>());
        const int p = j.contains("p") ? j.at("p").get<int>() : 1;
        if (p < 1) throw std::invalid_argument("family order p must be >= 1");
        const FamilyTag tag = j.contains("family") ? parse_family_tag(j.at("family").get<std::string>())
                                                   : FamilyTag::custom;
        CosyzygyFamily fam{gen, p, tag, {}, {}};
        for (const auto& entry : j.at("cosyzygies")) {
            auto v = entry.get<std::vector<int>>();
            if (static_cast<int>(v.size()) != p + 2) {
                throw std::invalid_argument("cosyzygy entries must have p + 2 indices");
            }
            const int c = v.back();
            v.pop_back();
            Cosyzygy cz = Cosyzygy::make(std::move(v), c);
            check_cosyzygy(gen, cz);
            fam.members.push_back(std::move(cz));
            fam.sources.emplace_back("file");
        }
        return fam;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed family JSON: ") + e.what());
    } catch (const std::out_of_range& e) {
        throw std::invalid_argument(e.what());
    }
}

inline Json to_json(const VerificationReport& r)
{
    Json degrees = Json::array();
    for (const auto& d : r.degrees) {
        degrees.push_back({{"d", d.d}, {"members", d.members}, {"kernel_dim", d.kernel_dim}, {"rank", d.rank}});
    }
    Json dups = Json::array();
    for (const auto& c : r.duplicates) dups.push_back(to_json(c));
    return Json{{"verdict", r.verdict},
                {"total", r.total},
                {"expected", r.expected},
                {"degrees", degrees},
                {"duplicates", dups}};
}

inline Json to_json(const TState& s)
{
    Json a = Json::array();
    for (long long x : s) a.push_back(x);
    return a;
}

inline Json to_json(const WeightVector& chi)
{
    Json a = Json::array();
    for (const auto& x : chi) a.push_back(to_string(x));
    return a;
}

inline Json certificate_json(const Genus& gen, int p, const Certificate& cert)
{
    Json states = Json::array();
    for (const auto& s : cert.states) states.push_back(to_json(s));
    Json lambdas = Json::array();
    for (const auto& l : cert.lambdas) lambdas.push_back(to_string(l));
    return Json{{"genus", gen.g()},
                {"p", p},
                {"outcome", "semistable"},
                {"states", states},
                {"lambdas", lambdas},
                {"barycenter_entry", to_string(cert.target.at(0))}};
}

inline Json instability_json(const Genus& gen, int p, const Unstable& u)
{
    return Json{{"genus", gen.g()},
                {"p", p},
                {"outcome", "unstable"},
                {"chi", to_json(u.chi)},
                {"min_state", to_json(u.min_state)},
                {"value", to_string(u.value)}};
}

inline Json outcome_json(const Genus& gen, int p, const StabilityOutcome& o)
{
    Json j = o.semistable() ? certificate_json(gen, p, std::get<SemiStable>(o.result).certificate)
                            : instability_json(gen, p, std::get<Unstable>(o.result));
    j["iterations"] = o.iterations;
    return j;
}

inline void write_dims_csv(std::ostream& os, const std::vector<DifferentialDims>& rows)
{
    os << "g,p,q,d,domain,rank,ker,coker\n";
    for (const auto& r : rows) {
        os << r.g << ',' << r.p << ',' << r.q << ',' << r.d << ',' << r.domain << ',' << r.rank << ',' << r.ker
           << ',' << r.coker << '\n';
    }
}

} // namespace ribsyz
