#pragma once

#include <charconv>
#include <cfenv>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lvic/gaussian.hpp"
#include "lvic/ldic.hpp"

namespace lvic {

inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

struct DocumentError : std::runtime_error {
    explicit DocumentError(const std::string& what) : std::runtime_error(what) {}
};

namespace doc_detail {

// Shortest round-tripping decimal for a double.
inline std::string double_to_string(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

/// Fixed six decimal places, ties to even.
inline std::string six_places(double v) {
    std::fesetround(FE_TONEAREST);
    double scaled = std::nearbyint(v * 1e6);
    long long n = static_cast<long long>(scaled);
    bool neg = n < 0;
    if (neg) n = -n;
    std::string digits = std::to_string(n);
    if (digits.size() < 7) digits.insert(0, 7 - digits.size(), '0');
    std::string out = digits.substr(0, digits.size() - 6) + "." + digits.substr(digits.size() - 6);
    return neg ? "-" + out : out;
}

inline std::string constraint_string(const Rational& ca, const Rational& cb, const Rational& bound) {
    return rational_to_string(ca) + "*r_a + " + rational_to_string(cb) + "*r_b <= " +
           rational_to_string(bound);
}

inline std::string constraint_string(double ca, double cb, double bound) {
    return double_to_string(ca) + "*r_a + " + double_to_string(cb) + "*r_b <= " +
           double_to_string(bound);
}

struct ParsedConstraint {
    Rational ca, cb, bound;
};

// Coordinate strings are "p/q" rationals in deterministic documents and
// decimals in gaussian ones.
inline double coord_value(const std::string& s) {
    if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
        s.find('E') != std::string::npos)
        return std::stod(s);
    return rat_double(parse_rational(s));
}

inline ParsedConstraint parse_constraint(const std::string& text, bool numeric_mode) {
    auto rel = text.find(" <= ");
    if (rel == std::string::npos) throw DocumentError("constraint without <= : " + text);
    auto term = [&](const std::string& chunk, const std::string& var) {
        auto star = chunk.find("*" + var);
        if (star == std::string::npos || star + 1 + var.size() != chunk.size())
            throw DocumentError("bad term '" + chunk + "' for " + var);
        std::string coef = chunk.substr(0, star);
        return numeric_mode ? rat_from_double(std::stod(coef)) : parse_rational(coef);
    };
    std::string lhs = text.substr(0, rel);
    auto plus = lhs.find(" + ");
    if (plus == std::string::npos) throw DocumentError("constraint needs two terms: " + text);
    std::string rhs = text.substr(rel + 4);
    return {term(lhs.substr(0, plus), "r_a"), term(lhs.substr(plus + 3), "r_b"),
            numeric_mode ? rat_from_double(std::stod(rhs)) : parse_rational(rhs)};
}

}  // namespace doc_detail

/// JSON region document: constraints and vertices per piece, exact rationals
/// in deterministic mode, decimals in gaussian mode.
inline Json region_document(int view, const std::vector<std::string>& gains,
                            const std::string& mode, const RateRegion& region,
                            const Json& paper_mode_flags) {
    Json doc;
    doc["view"] = view;
    doc["gains"] = gains;
    doc["pieces"] = Json::array();
    for (const auto& piece : region.pieces) {
        Json p;
        p["constraints"] = Json::array();
        for (const auto& raw : piece.constraints) {
            LinearConstraint c = raw.normalized();
            p["constraints"].push_back(
                doc_detail::constraint_string(c.coefficient("r_a"), c.coefficient("r_b"), c.bound));
            if (c.sense == Sense::EQ)
                p["constraints"].push_back(doc_detail::constraint_string(
                    -c.coefficient("r_a"), -c.coefficient("r_b"), -c.bound));
        }
        p["vertices"] = Json::array();
        for (const auto& v : vertices(piece))
            p["vertices"].push_back({rational_to_string(v[0]), rational_to_string(v[1])});
        doc["pieces"].push_back(std::move(p));
    }
    doc["metadata"] = {{"tool_version", kToolVersion}, {"mode", mode},
                       {"paper_mode_flags", paper_mode_flags}};
    return doc;
}

/// Gaussian variant: float constraints, explicit vertex list.
inline Json region_document_numeric(int view, const std::vector<double>& mag2,
                                    const NumericRegion& region,
                                    const std::vector<std::vector<std::pair<double, double>>>& verts,
                                    const Json& paper_mode_flags) {
    Json doc;
    doc["view"] = view;
    doc["gains"] = mag2;
    doc["pieces"] = Json::array();
    for (std::size_t i = 0; i < region.pieces.size(); ++i) {
        Json p;
        p["constraints"] = Json::array();
        for (const auto& c : region.pieces[i].constraints) {
            double ca = c.coefficients.count("r_a") ? c.coefficients.at("r_a") : 0.0;
            double cb = c.coefficients.count("r_b") ? c.coefficients.at("r_b") : 0.0;
            p["constraints"].push_back(doc_detail::constraint_string(ca, cb, c.bound));
        }
        p["vertices"] = Json::array();
        for (const auto& [x, y] : verts[i])
            p["vertices"].push_back(
                {doc_detail::double_to_string(x), doc_detail::double_to_string(y)});
        doc["pieces"].push_back(std::move(p));
    }
    doc["metadata"] = {{"tool_version", kToolVersion}, {"mode", "gaussian"},
                       {"paper_mode_flags", paper_mode_flags}};
    return doc;
}

/// Load and re-check a region document: every listed vertex must satisfy
/// every listed constraint of its piece (exact in deterministic mode, 1e-9
/// in gaussian mode).
inline Json parse_region_document(const std::string& text) {
    Json doc = Json::parse(text);
    bool numeric = doc.at("metadata").at("mode").get<std::string>() == "gaussian";
    Rational tol = numeric ? rat_from_double(1e-9) : Rational(0);
    for (const auto& piece : doc.at("pieces")) {
        std::vector<doc_detail::ParsedConstraint> rows;
        for (const auto& c : piece.at("constraints"))
            rows.push_back(doc_detail::parse_constraint(c.get<std::string>(), numeric));
        for (const auto& v : piece.at("vertices")) {
            Rational x = numeric ? rat_from_double(std::stod(v.at(0).get<std::string>()))
                                 : parse_rational(v.at(0).get<std::string>());
            Rational y = numeric ? rat_from_double(std::stod(v.at(1).get<std::string>()))
                                 : parse_rational(v.at(1).get<std::string>());
            for (const auto& row : rows)
                if (row.ca * x + row.cb * y > row.bound + tol)
                    throw DocumentError("vertex violates a listed constraint");
        }
    }
    return doc;
}

inline std::string document_to_string(const Json& doc) { return doc.dump(2) + "\n"; }

/// CSV: vertex rows per piece, pieces separated by a blank line.
inline std::string region_csv(const Json& doc) {
    std::ostringstream os;
    os << "r_a,r_b\n";
    bool first = true;
    for (const auto& piece : doc.at("pieces")) {
        if (!first) os << "\n";
        first = false;
        for (const auto& v : piece.at("vertices"))
            os << v.at(0).get<std::string>() << "," << v.at(1).get<std::string>() << "\n";
    }
    return os.str();
}

/// SVG plot: fixed 640x480 canvas, each piece drawn as a polygon, the TDM
/// boundary overlaid as a dashed segment.
inline std::string region_svg(const Json& doc, double cap_a, double cap_b) {
    constexpr double W = 640, H = 480, ML = 60, MB = 50, MT = 20, MR = 20;
    double axis = 1;
    for (const auto& piece : doc.at("pieces"))
        for (const auto& v : piece.at("vertices")) {
            axis = std::max(axis, doc_detail::coord_value(v.at(0).get<std::string>()));
            axis = std::max(axis, doc_detail::coord_value(v.at(1).get<std::string>()));
        }
    axis = std::max(axis, std::max(cap_a, cap_b)) + 1;
    auto px = [&](double x) { return ML + x / axis * (W - ML - MR); };
    auto py = [&](double y) { return H - MB - y / axis * (H - MB - MT); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 640 480\">\n";
    os << "  <rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "  <line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n",
                  px(0), py(0), px(axis), py(0));
    os << buf;
    std::snprintf(buf, sizeof buf,
                  "  <line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\"/>\n",
                  px(0), py(0), px(0), py(axis));
    os << buf;
    os << "  <text x=\"" << W - MR - 20 << "\" y=\"" << H - MB + 30 << "\" font-size=\"14\">r_a</text>\n";
    os << "  <text x=\"" << ML - 40 << "\" y=\"" << MT + 10 << "\" font-size=\"14\">r_b</text>\n";
    for (const auto& piece : doc.at("pieces")) {
        std::vector<RationalVector> pts;
        for (const auto& v : piece.at("vertices"))
            pts.push_back({rat_from_double(doc_detail::coord_value(v.at(0).get<std::string>())),
                           rat_from_double(doc_detail::coord_value(v.at(1).get<std::string>()))});
        auto hull = detail::hull2d(pts);
        if (hull.empty()) continue;
        os << "  <polygon points=\"";
        for (const auto& v : hull) {
            std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(rat_double(v[0])), py(rat_double(v[1])));
            os << buf;
        }
        os << "\" fill=\"#4477aa\" fill-opacity=\"0.35\" stroke=\"#224466\"/>\n";
    }
    std::snprintf(buf, sizeof buf,
                  "  <line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#cc3311\" "
                  "stroke-dasharray=\"6,4\"/>\n",
                  px(cap_a), py(0), px(0), py(cap_b));
    os << buf;
    os << "</svg>\n";
    return os.str();
}

/// One per-view gap row, delta printed to six decimal places (ties to even).
inline Json gap_row(const GapReport& report, const std::vector<std::string>& gains) {
    if (report.delta_bits < std::log2(6.0) - 1e-9)
        throw DocumentError("gap below the log2(6) floor");
    Json row;
    row["view"] = report.view.id;
    row["gains"] = gains;
    row["delta_bits"] = doc_detail::six_places(report.delta_bits);
    Json terms;
    for (const auto& [name, value] : report.formula_terms)
        terms[name] = rational_to_string(value);
    row["formula_terms"] = terms;
    return row;
}

inline Json gap_table(const std::vector<Json>& rows) {
    Json doc;
    doc["rows"] = rows;
    doc["metadata"] = {{"tool_version", kToolVersion}};
    return doc;
}

}  // namespace lvic
