#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace flownav::fuzzy {

enum class MfKind { smf, zmf };

/// Quadratic spline membership function on [a, b], a < b.
/// smf rises 0 -> 1, zmf falls 1 -> 0; both pass through 0.5 at (a+b)/2 and
/// are C1 at the three knots.
struct MembershipFunction {
    MfKind kind = MfKind::smf;
    double a = 0.0;
    double b = 1.0;
    double eval(double x) const;
};

struct FuzzySet {
    std::string name;
    MembershipFunction mf;
};

/// A named linguistic variable: its universe of discourse and the fuzzy
/// sets defined on it.
struct Variable {
    std::string name;
    double lo = 0.0;
    double hi = 10.0;
    std::vector<FuzzySet> sets;

    const FuzzySet* find_set(const std::string& set_name) const;
    double clamp(double x) const;
    double midpoint() const { return 0.5 * (lo + hi); }
};

struct Antecedent {
    std::string input;
    std::string set;
    bool negated = false;  // "is not high" -> 1 - membership
};

/// AND-joined antecedents, single consequent.
struct FuzzyRule {
    std::vector<Antecedent> antecedents;
    std::string output;
    std::string output_set;
};

enum class ModelId { center_flying, center_flying_speed, turn_at_threshold };

/// Which pairing of the two speed rules to use. `prose` slows down when the
/// total flow is high; `literal` keeps the transposed pairing (high total
/// flow -> fast) for comparison runs.
enum class RuleVariant { prose, literal };

/// Override of one set's breakpoints, optionally qualified by variable
/// ("l.high"); an empty variable name applies to every set with that name.
struct SetOverride {
    std::string variable;
    std::string set;
    MfKind kind = MfKind::smf;
    double a = 0.0;
    double b = 1.0;
};

/// Scenario-level controller description; resolved into a ControllerModel.
/// w_speed left unset picks the model default: 0.08 for center_flying_speed,
/// 0.025 for turn_at_threshold (whose fast-rule would otherwise accelerate
/// the robot until side flows reach the steering threshold).
struct ControllerConfig {
    ModelId id = ModelId::center_flying;
    RuleVariant variant = RuleVariant::prose;
    std::vector<SetOverride> overrides;
    double w_angle = 0.05;              // m/s per universe unit
    std::optional<double> w_speed;      // m/s per universe unit
    double cruise_speed = 0.5;          // m/s
    double scale_factor = 2.0;          // universe units per px/frame
};

struct ControllerModel {
    ModelId id = ModelId::center_flying;
    RuleVariant variant = RuleVariant::prose;
    std::vector<Variable> inputs;
    std::vector<Variable> outputs;
    std::vector<FuzzyRule> rules;
    double w_angle = 0.05;
    double w_speed = 0.08;
    double cruise_speed = 0.5;

    bool has_speed_output() const;
    const Variable* find_input(const std::string& name) const;
    const Variable* find_output(const std::string& name) const;
};

/// Crisp inference results in universe units. zero_activation_* flags mark
/// outputs that received no rule activation and fell back to their neutral
/// value (0 for angle, mid-universe for speed).
struct CrispOutputs {
    double angle = 0.0;
    double speed = 5.0;
    bool zero_activation_angle = false;
    bool zero_activation_speed = false;
};

/// Crisp actuation command after weight de-normalization.
struct Command {
    double lateral_velocity = 0.0;  // m/s, positive rightward
    double forward_speed = 0.0;     // m/s
};

/// Build one of the three controller models with its default sets and
/// rules, then apply config overrides. Throws ValidationError for overrides
/// naming unknown sets.
ControllerModel build_controller(const ControllerConfig& config);

/// Mamdani inference: rule firing = min over antecedent degrees (negated
/// antecedents use 1 - degree), per-output aggregate = pointwise max of
/// min(firing, consequent set) over a 101-point uniform discretization,
/// defuzzified by centroid. Inputs are clamped into their universe.
CrispOutputs infer(const ControllerModel& model, const std::map<std::string, double>& inputs);

/// lateral_velocity = w_angle * angle; forward_speed = cruise + w_speed *
/// (speed - mid-universe) for speed-bearing models, else cruise.
Command denormalize(const CrispOutputs& outputs, const ControllerModel& model);

/// Human-readable dump of the resolved model: variables, sets, rules,
/// weights and membership tables.
std::string describe_controller(const ControllerModel& model);

const char* model_name(ModelId id);
ModelId model_from_name(const std::string& name);          // throws ValidationError
const char* rule_variant_name(RuleVariant v);
RuleVariant rule_variant_from_name(const std::string& s);  // throws ValidationError

}  // namespace flownav::fuzzy
