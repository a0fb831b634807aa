#include "sdfsim/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sdfsim {

namespace {

FusedEstimate mean_of(const std::vector<NodeReport>& reports, bool los_only, FusionRule rule) {
    FusedEstimate out;
    out.rule_used = rule;
    Vec3 acc;
    int n = 0;
    for (const auto& r : reports) {
        if (!r.estimate) continue;
        if (los_only && r.classified_condition != ClassifiedCondition::LosUsable) continue;
        acc += r.estimate->position_world;
        out.contributing_ids.push_back(r.uav_id);
        out.t = r.t;
        ++n;
    }
    if (n == 0) throw std::invalid_argument("fusion: no estimates available");
    out.position_world = acc * (1.0 / static_cast<double>(n));
    return out;
}

}  // namespace

const char* fusion_rule_name(FusionRule r) {
    switch (r) {
        case FusionRule::Arithmetic: return "arithmetic";
        case FusionRule::Weighted: return "weighted";
        case FusionRule::WeightedFallbackArithmetic: return "weighted-fallback-arithmetic";
    }
    return "?";
}

void classify_conditions(std::vector<NodeReport>& reports, double los_threshold_db) {
    if (reports.empty()) throw std::invalid_argument("classify_conditions: empty input");
    double max_power = -std::numeric_limits<double>::infinity();
    for (const auto& r : reports) max_power = std::max(max_power, r.power_dbm);
    if (!std::isfinite(max_power))
        throw std::invalid_argument("classify_conditions: no finite power");
    for (auto& r : reports) {
        r.classified_condition = r.power_dbm >= max_power - los_threshold_db
                                     ? ClassifiedCondition::LosUsable
                                     : ClassifiedCondition::Nlos;
    }
}

FusedEstimate fuse_arithmetic(const std::vector<NodeReport>& reports) {
    return mean_of(reports, false, FusionRule::Arithmetic);
}

FusedEstimate fuse_weighted(const std::vector<NodeReport>& reports) {
    bool any_usable_estimate = false;
    for (const auto& r : reports) {
        if (r.estimate && r.classified_condition == ClassifiedCondition::LosUsable)
            any_usable_estimate = true;
    }
    if (!any_usable_estimate)
        return mean_of(reports, false, FusionRule::WeightedFallbackArithmetic);
    return mean_of(reports, true, FusionRule::Weighted);
}

}  // namespace sdfsim
