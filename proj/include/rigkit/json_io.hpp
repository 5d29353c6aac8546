#pragma once

#include <limits>

#include <json.hpp>

#include "rigkit/stats.hpp"

namespace rigkit {

// All machine output uses ordered JSON so that identical configurations
// produce byte-identical files.
using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& q) {
    BigInt num = rational_num(q), den = rational_den(q);
    Json j;
    if (num >= std::numeric_limits<std::int64_t>::min() &&
        num <= std::numeric_limits<std::int64_t>::max())
        j["num"] = num.convert_to<std::int64_t>();
    else
        j["num"] = num.str();
    if (den <= std::numeric_limits<std::int64_t>::max())
        j["den"] = den.convert_to<std::int64_t>();
    else
        j["den"] = den.str();
    return j;
}

// Covers serialize as sorted arrays of 1-indexed vertex ids.
inline Json to_json(const CliqueCover& cover) {
    Json out = Json::array();
    for (VertexMask c : cover.cliques) {
        Json clique = Json::array();
        for (int v = 0; v < kMaxPatternVertices; ++v)
            if ((c >> v) & 1u) clique.push_back(v + 1);
        out.push_back(clique);
    }
    return out;
}

inline Json subset_to_json(VertexMask s) {
    Json out = Json::array();
    for (int v = 0; v < kMaxPatternVertices; ++v)
        if ((s >> v) & 1u) out.push_back(v + 1);
    return out;
}

inline const char* verdict_name(BalanceVerdict v) {
    switch (v) {
        case BalanceVerdict::StrictlyBalanced: return "strictly-alpha-balanced";
        case BalanceVerdict::Unbalanced: return "alpha-unbalanced";
        default: return "neither";
    }
}

inline Json to_json(const ThresholdReport& report, double c) {
    Json j;
    j["pattern"] = {{"vertices", report.h}, {"edges", report.e}, {"aut", report.aut}};
    j["alpha"] = to_json(report.alpha);
    j["eta0"] = to_json(report.eta0);
    j["lambda0"] = lambda0_from_report(report, c);
    j["c"] = c;
    j["strictly_alpha_balanced"] = report.strictly_alpha_balanced;
    if (report.cover_family_size)
        j["cover_family_size"] = *report.cover_family_size;
    else
        j["cover_family_size"] = nullptr;
    Json c0 = Json::array();
    for (const auto& verdict : report.c0) {
        Json v;
        v["cover"] = to_json(verdict.cover);
        v["sum_sizes"] = verdict.sum_sizes;
        v["eta1"] = to_json(verdict.eta1);
        v["eta2_at_v"] = to_json(verdict.eta2_at_v);
        v["verdict"] = verdict_name(verdict.verdict);
        if (verdict.witness) v["witness_s"] = subset_to_json(*verdict.witness);
        v["boundary_fired"] = verdict.boundary_fired;
        Json table = Json::array();
        for (const auto& [s, value] : verdict.eta2_table)
            table.push_back({{"s", subset_to_json(s)}, {"eta2", to_json(value)}});
        v["eta2_table"] = table;
        c0.push_back(v);
    }
    j["c0"] = c0;
    if (report.all_covers) {
        Json table = Json::array();
        for (const auto& [cover, value] : *report.all_covers)
            table.push_back({{"cover", to_json(cover)}, {"eta1", to_json(value)}});
        j["all_covers"] = table;
    }
    j["regime"] = {{"mp2_vanishes", report.regime.mp2_vanishes},
                   {"asymptotically_edgeless", report.regime.asymptotically_edgeless},
                   {"asymptotically_complete", report.regime.asymptotically_complete}};
    if (report.kappa)
        j["kappa"] = to_json(*report.kappa);
    else
        j["kappa"] = nullptr;
    j["kappa_note"] = "minimum over proper subsets with at least one edge";
    j["er_strictly_balanced"] = report.er_strictly_balanced;
    return j;
}

inline Json to_json(const TvResult& tv) {
    return Json{{"value", tv.value}, {"truncation", tv.truncation}};
}

inline Json to_json(const BootstrapCI& ci) {
    return Json{{"level", ci.level}, {"lower", ci.lower}, {"upper", ci.upper}};
}

inline Json to_json(const DistributionSummary& s, bool include_pmf) {
    Json j;
    j["n"] = s.n;
    j["replicates"] = s.replicates;
    j["m"] = s.m_real;
    j["p"] = s.p;
    j["lambda0"] = s.lambda0;
    j["tv"] = to_json(s.tv);
    j["tv_bias_scale"] = s.tv_bias_scale;
    j["ci"] = to_json(s.ci);
    j["mean"] = s.mean;
    j["variance"] = s.variance;
    j["y0_mean"] = s.y0_mean;
    j["y1_mean"] = s.y1_mean;
    j["y1_positive"] = s.y1_positive;
    if (include_pmf) j["pmf"] = s.pmf;
    return j;
}

}  // namespace rigkit
