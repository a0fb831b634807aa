#pragma once

#include <optional>
#include <vector>

#include "sdfsim/sdf_core.hpp"

namespace sdfsim {

enum class ClassifiedCondition { LosUsable, Nlos };

enum class FusionRule { Arithmetic, Weighted, WeightedFallbackArithmetic };

const char* fusion_rule_name(FusionRule r);

struct NodeReport {
    int uav_id = 0;
    double t = 0.0;
    double power_dbm = 0.0;
    std::optional<LocalEstimate> estimate;
    ClassifiedCondition classified_condition = ClassifiedCondition::Nlos;
};

struct FusedEstimate {
    double t = 0.0;
    Vec3 position_world;
    FusionRule rule_used = FusionRule::Arithmetic;
    std::vector<int> contributing_ids;
    double error_m = 0.0;  // vs ground truth, filled by the harness
};

// Marks each report LOS-usable iff its power is within los_threshold_db of
// the fleet maximum. Uses only the shared powers, never the ground truth.
void classify_conditions(std::vector<NodeReport>& reports, double los_threshold_db);

// Unweighted mean over every available estimate.
FusedEstimate fuse_arithmetic(const std::vector<NodeReport>& reports);

// Mean over LOS-usable estimates; falls back to the arithmetic rule when no
// LOS-usable node carries an estimate.
FusedEstimate fuse_weighted(const std::vector<NodeReport>& reports);

}  // namespace sdfsim
