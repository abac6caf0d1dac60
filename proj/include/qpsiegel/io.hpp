#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qpsiegel/curve.hpp"
#include "qpsiegel/divisor_series.hpp"
#include "qpsiegel/flags.hpp"
#include "qpsiegel/oracle_bundle.hpp"
#include "qpsiegel/oracle_parabolic.hpp"
#include "qpsiegel/rational.hpp"
#include "qpsiegel/siegel.hpp"

namespace qps {

using Json = nlohmann::ordered_json;

// Every numeric value crosses the wire as an exact rational string: "n" for
// integers, "n/d" otherwise.

inline Rat rat_from_json(const Json& j, const std::string& what) {
    if (j.is_string())
        return parse_rat(j.get<std::string>());
    if (j.is_number_integer())
        return Rat(j.get<long long>());
    fail("ParseError", what + " must be an integer or a rational string");
}

inline Json rat_to_json(const Rat& x) { return Json(rat_str(x)); }

inline P1Point parse_p1_point(const std::string& text, int q) {
    if (text == "inf" || text == "infinity" || text == "oo")
        return p1_infinity();
    try {
        const int value = std::stoi(text);
        require(0 <= value && value < q, "ParseError",
                "marked point '" + text + "' is not a residue mod " + std::to_string(q));
        return p1_affine(value);
    } catch (const std::invalid_argument&) {
        fail("ParseError", "marked point '" + text + "' is neither a residue nor 'inf'");
    } catch (const std::out_of_range&) {
        fail("ParseError", "marked point '" + text + "' is out of range");
    }
}

struct CurveInput {
    CurveData curve;
    std::vector<P1Point> marked_points; // empty unless the file listed them
};

// Curve JSON: {"q":, "genus":, "weil_numerator": ["1","0","2"]} or
// {"q":, "genus":, "point_counts": [3]}, with exactly one of the two, plus
// either {"marked_count": s} or {"marked_points": ["0","1","inf"]}.
inline CurveInput curve_from_json(const Json& j) {
    require(j.is_object(), "ParseError", "curve input must be a JSON object");
    require(j.contains("q") && j["q"].is_number_integer(), "ParseError",
            "curve input needs an integer field 'q'");
    require(j.contains("genus") && j["genus"].is_number_integer(), "ParseError",
            "curve input needs an integer field 'genus'");
    const long q = j["q"].get<long>();
    const int genus = j["genus"].get<int>();

    const bool has_numerator = j.contains("weil_numerator");
    const bool has_counts = j.contains("point_counts");
    require(has_numerator != has_counts, "ParseError",
            "curve input needs exactly one of 'weil_numerator' and 'point_counts'");

    CurveInput input;
    int marked_count = 0;
    if (j.contains("marked_points")) {
        require(!j.contains("marked_count"), "ParseError",
                "give 'marked_count' or 'marked_points', not both");
        require(j["marked_points"].is_array(), "ParseError", "'marked_points' must be an array");
        for (const Json& pt : j["marked_points"])
            input.marked_points.push_back(
                parse_p1_point(pt.get<std::string>(), static_cast<int>(q)));
        validate_marked_points(input.marked_points, static_cast<int>(q));
        marked_count = static_cast<int>(input.marked_points.size());
    } else if (j.contains("marked_count")) {
        require(j["marked_count"].is_number_integer(), "ParseError",
                "'marked_count' must be an integer");
        marked_count = j["marked_count"].get<int>();
    }

    if (has_numerator) {
        require(j["weil_numerator"].is_array(), "ParseError",
                "'weil_numerator' must be an array of rational strings");
        std::vector<Rat> coeffs;
        for (const Json& c : j["weil_numerator"])
            coeffs.push_back(rat_from_json(c, "weil numerator coefficient"));
        input.curve = make_curve(q, genus, Polynomial(std::move(coeffs)), marked_count);
    } else {
        require(j["point_counts"].is_array(), "ParseError",
                "'point_counts' must be an array of integers");
        std::vector<Int> counts;
        for (const Json& c : j["point_counts"]) {
            const Rat n = rat_from_json(c, "point count");
            counts.push_back(to_integer(n));
        }
        input.curve = make_curve_from_counts(q, genus, counts, marked_count);
    }
    return input;
}

// Parabolic JSON: {"rank": 2, "flags": [[1,1],[1,1]]}; outer index = marked
// point, inner lists the successive-quotient dimensions.
inline QuasiParabolicData parabolic_from_json(const Json& j) {
    require(j.is_object(), "ParseError", "parabolic input must be a JSON object");
    require(j.contains("rank") && j["rank"].is_number_integer(), "ParseError",
            "parabolic input needs an integer field 'rank'");
    require(j.contains("flags") && j["flags"].is_array(), "ParseError",
            "parabolic input needs an array field 'flags'");
    QuasiParabolicData data;
    data.rank = j["rank"].get<int>();
    for (const Json& flag : j["flags"]) {
        require(flag.is_array(), "ParseError", "each flag type must be an array of integers");
        FlagType type;
        for (const Json& part : flag) {
            require(part.is_number_integer(), "ParseError", "flag parts must be integers");
            type.parts.push_back(part.get<int>());
        }
        data.flag_types.push_back(std::move(type));
    }
    return data;
}

inline Json mass_report_to_json(const MassReport& report) {
    Json factors;
    factors["flag_factor"] = rat_to_json(report.flag_factor);
    factors["power_factor"] = rat_to_json(report.power_factor);
    factors["unit_factor"] = rat_to_json(report.unit_factor);
    Json zetas = Json::array();
    for (const Rat& z : report.zeta_factors)
        zetas.push_back(rat_to_json(z));
    factors["zeta_factors"] = zetas;
    Json out;
    out["value"] = rat_to_json(report.value);
    out["factors"] = factors;
    return out;
}

inline Json divisor_table_to_json(const DivisorCountTable& table, const Rat& limit) {
    Json out;
    out["rank"] = table.rank;
    Json counts = Json::array();
    for (const Int& b : table.counts)
        counts.push_back(b.str());
    out["counts"] = counts;
    out["limit"] = rat_str(limit);
    return out;
}

inline Json census_row_to_json(const CensusRow& row) {
    Json out;
    out["bundle"] = row.bundle.twists;
    out["aut_order"] = row.aut_order.str();
    out["kernel_order"] = row.kernel_order.str();
    Json orbits = Json::array();
    for (std::size_t i = 0; i < row.flag_orbits.size(); ++i) {
        Json orbit;
        orbit["size"] = row.flag_orbits[i].first;
        orbit["stabilizer_order"] = row.flag_orbits[i].second.str();
        orbit["parab_aut_order"] = row.parab_aut_orders[i].str();
        orbits.push_back(orbit);
    }
    out["flag_orbits"] = orbits;
    return out;
}

} // namespace qps
