#include "flownav/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "flownav/errors.hpp"

namespace flownav::fuzzy {

namespace {
constexpr int kGridPoints = 101;  // defuzzification discretization
}

double MembershipFunction::eval(double x) const {
    // MATLAB-style quadratic spline; smf rises, zmf is its reflection.
    const double width = b - a;
    const double mid = 0.5 * (a + b);
    if (kind == MfKind::smf) {
        if (x <= a) return 0.0;
        if (x >= b) return 1.0;
        if (x <= mid) {
            double q = (x - a) / width;
            return 2.0 * q * q;
        }
        double q = (x - b) / width;
        return 1.0 - 2.0 * q * q;
    }
    if (x <= a) return 1.0;
    if (x >= b) return 0.0;
    if (x <= mid) {
        double q = (x - a) / width;
        return 1.0 - 2.0 * q * q;
    }
    double q = (x - b) / width;
    return 2.0 * q * q;
}

const FuzzySet* Variable::find_set(const std::string& set_name) const {
    for (const FuzzySet& s : sets)
        if (s.name == set_name) return &s;
    return nullptr;
}

double Variable::clamp(double x) const { return std::clamp(x, lo, hi); }

bool ControllerModel::has_speed_output() const {
    return find_output("speed") != nullptr;
}

const Variable* ControllerModel::find_input(const std::string& name) const {
    for (const Variable& v : inputs)
        if (v.name == name) return &v;
    return nullptr;
}

const Variable* ControllerModel::find_output(const std::string& name) const {
    for (const Variable& v : outputs)
        if (v.name == name) return &v;
    return nullptr;
}

namespace {

FuzzySet set(const char* name, MfKind kind, double a, double b) {
    return FuzzySet{name, MembershipFunction{kind, a, b}};
}

Variable angle_output() {
    return Variable{"angle", -10.0, 10.0,
                    {set("turn_left", MfKind::zmf, -8.0, -2.0),
                     set("turn_right", MfKind::smf, 2.0, 8.0)}};
}

Variable speed_output() {
    return Variable{"speed", 0.0, 10.0,
                    {set("slow", MfKind::zmf, 2.0, 6.0), set("fast", MfKind::smf, 4.0, 8.0)}};
}

FuzzyRule rule(std::vector<Antecedent> ants, const char* out, const char* out_set) {
    return FuzzyRule{std::move(ants), out, out_set};
}

void append_speed_rules(std::vector<FuzzyRule>& rules, RuleVariant variant) {
    // The prose pairing slows the robot when the total flow is high; the
    // literal pairing is the transposed one kept for comparison runs.
    if (variant == RuleVariant::prose) {
        rules.push_back(rule({{"l_plus_r", "high_flow", false}}, "speed", "slow"));
        rules.push_back(rule({{"l_plus_r", "low_flow", false}}, "speed", "fast"));
    } else {
        rules.push_back(rule({{"l_plus_r", "low_flow", false}}, "speed", "slow"));
        rules.push_back(rule({{"l_plus_r", "high_flow", false}}, "speed", "fast"));
    }
}

}  // namespace

ControllerModel build_controller(const ControllerConfig& config) {
    ControllerModel m;
    m.id = config.id;
    m.variant = config.variant;
    m.w_angle = config.w_angle;
    m.w_speed = config.w_speed.value_or(
        config.id == ModelId::turn_at_threshold ? 0.025 : 0.08);
    m.cruise_speed = config.cruise_speed;

    Variable l_minus_r{"l_minus_r", -10.0, 10.0,
                       {set("R_Close", MfKind::zmf, -6.0, -1.0),
                        set("L_Close", MfKind::smf, 1.0, 6.0)}};

    switch (config.id) {
        case ModelId::center_flying:
            m.inputs = {l_minus_r};
            m.outputs = {angle_output()};
            m.rules = {rule({{"l_minus_r", "R_Close", false}}, "angle", "turn_left"),
                       rule({{"l_minus_r", "L_Close", false}}, "angle", "turn_right")};
            break;
        case ModelId::center_flying_speed: {
            Variable l_plus_r{"l_plus_r", 0.0, 10.0,
                              {set("low_flow", MfKind::zmf, 3.0, 7.0),
                               set("high_flow", MfKind::smf, 3.0, 7.0)}};
            m.inputs = {l_minus_r, l_plus_r};
            m.outputs = {angle_output(), speed_output()};
            m.rules = {rule({{"l_minus_r", "R_Close", false}}, "angle", "turn_left"),
                       rule({{"l_minus_r", "L_Close", false}}, "angle", "turn_right")};
            append_speed_rules(m.rules, config.variant);
            break;
        }
        case ModelId::turn_at_threshold: {
            // "high" must stay at zero for nominal corridor flow (calibrated
            // to 5), otherwise the threshold model acts continuously like the
            // centre-balancing one and inherits its drift toward openings.
            Variable left{"l", 0.0, 10.0, {set("high", MfKind::smf, 6.0, 9.0)}};
            Variable right{"r", 0.0, 10.0, {set("high", MfKind::smf, 6.0, 9.0)}};
            m.inputs = {left, right};
            m.outputs = {angle_output(), speed_output()};
            m.rules = {
                rule({{"l", "high", false}, {"r", "high", true}}, "angle", "turn_right"),
                rule({{"l", "high", true}, {"r", "high", false}}, "angle", "turn_left"),
                rule({{"l", "high", false}, {"r", "high", false}}, "speed", "slow"),
                rule({{"l", "high", true}, {"r", "high", true}}, "speed", "fast"),
            };
            break;
        }
    }

    for (const SetOverride& ov : config.overrides) {
        bool applied = false;
        auto apply = [&](Variable& var) {
            if (!ov.variable.empty() && ov.variable != var.name) return;
            for (FuzzySet& s : var.sets) {
                if (s.name == ov.set) {
                    s.mf = MembershipFunction{ov.kind, ov.a, ov.b};
                    applied = true;
                }
            }
        };
        for (Variable& v : m.inputs) apply(v);
        for (Variable& v : m.outputs) apply(v);
        if (!applied)
            throw ValidationError("controller override: no set named '" +
                                  (ov.variable.empty() ? ov.set : ov.variable + "." + ov.set) +
                                  "' in model " + model_name(config.id));
    }

    auto check = [](const Variable& var) {
        for (const FuzzySet& s : var.sets)
            if (!(s.mf.a < s.mf.b))
                throw ValidationError("controller set '" + var.name + "." + s.name +
                                      "': breakpoints must satisfy a < b");
    };
    for (const Variable& v : m.inputs) check(v);
    for (const Variable& v : m.outputs) check(v);
    return m;
}

CrispOutputs infer(const ControllerModel& model, const std::map<std::string, double>& inputs) {
    // Rule firing strengths: min over antecedent degrees, NOT = 1 - degree.
    std::vector<double> firing(model.rules.size(), 0.0);
    for (std::size_t i = 0; i < model.rules.size(); ++i) {
        const FuzzyRule& r = model.rules[i];
        double fire = 1.0;
        for (const Antecedent& ant : r.antecedents) {
            const Variable* var = model.find_input(ant.input);
            if (!var) throw ValidationError("infer: unknown input '" + ant.input + "'");
            auto it = inputs.find(ant.input);
            if (it == inputs.end())
                throw ValidationError("infer: missing input '" + ant.input + "'");
            const FuzzySet* s = var->find_set(ant.set);
            if (!s) throw ValidationError("infer: unknown set '" + ant.set + "'");
            double deg = s->mf.eval(var->clamp(it->second));
            if (ant.negated) deg = 1.0 - deg;
            fire = std::min(fire, deg);
        }
        firing[i] = fire;
    }

    CrispOutputs out;
    for (const Variable& var : model.outputs) {
        // Max-aggregate the clipped consequents over a uniform grid centred
        // on the universe midpoint (exactly symmetric for signed universes),
        // then take the centroid.
        const double mid = var.midpoint();
        const double step = (var.hi - var.lo) / (kGridPoints - 1);
        double num = 0.0;
        double den = 0.0;
        for (int p = 0; p < kGridPoints; ++p) {
            double x = mid + (p - (kGridPoints - 1) / 2) * step;
            double agg = 0.0;
            for (std::size_t i = 0; i < model.rules.size(); ++i) {
                if (model.rules[i].output != var.name || firing[i] <= 0.0) continue;
                const FuzzySet* s = var.find_set(model.rules[i].output_set);
                if (!s)
                    throw ValidationError("infer: unknown output set '" +
                                          model.rules[i].output_set + "'");
                agg = std::max(agg, std::min(firing[i], s->mf.eval(x)));
            }
            num += x * agg;
            den += agg;
        }

        bool zero_activation = den < 1e-12;
        double crisp = zero_activation ? mid : num / den;
        if (var.name == "angle") {
            out.angle = crisp;
            out.zero_activation_angle = zero_activation;
        } else if (var.name == "speed") {
            out.speed = crisp;
            out.zero_activation_speed = zero_activation;
        }
    }
    return out;
}

Command denormalize(const CrispOutputs& outputs, const ControllerModel& model) {
    Command cmd;
    cmd.lateral_velocity = model.w_angle * outputs.angle;
    if (const Variable* speed = model.find_output("speed"))
        cmd.forward_speed = model.cruise_speed + model.w_speed * (outputs.speed - speed->midpoint());
    else
        cmd.forward_speed = model.cruise_speed;
    return cmd;
}

std::string describe_controller(const ControllerModel& model) {
    std::ostringstream os;
    os << "model = " << model_name(model.id) << "\n";
    os << "rules_variant = " << rule_variant_name(model.variant) << "\n";
    os << "w_angle = " << model.w_angle << "\n";
    os << "w_speed = " << model.w_speed << "\n";
    os << "cruise_speed = " << model.cruise_speed << "\n";

    auto dump_var = [&os](const Variable& var, const char* role) {
        os << "\n" << role << " " << var.name << " on [" << var.lo << ", " << var.hi << "]\n";
        for (const FuzzySet& s : var.sets) {
            os << "  set " << s.name << " = " << (s.mf.kind == MfKind::smf ? "smf" : "zmf")
               << "(" << s.mf.a << ", " << s.mf.b << ")\n";
            os << "    ";
            for (int p = 0; p <= 20; ++p) {
                double x = var.lo + p * (var.hi - var.lo) / 20.0;
                os << s.mf.eval(x) << (p == 20 ? "\n" : " ");
            }
        }
    };
    for (const Variable& v : model.inputs) dump_var(v, "input");
    for (const Variable& v : model.outputs) dump_var(v, "output");

    os << "\nrules:\n";
    for (const FuzzyRule& r : model.rules) {
        os << "  if";
        for (std::size_t i = 0; i < r.antecedents.size(); ++i) {
            const Antecedent& a = r.antecedents[i];
            if (i) os << " and";
            os << " " << a.input << " is " << (a.negated ? "not " : "") << a.set;
        }
        os << " then " << r.output << " is " << r.output_set << "\n";
    }
    return os.str();
}

const char* model_name(ModelId id) {
    switch (id) {
        case ModelId::center_flying: return "center_flying";
        case ModelId::center_flying_speed: return "center_flying_speed";
        case ModelId::turn_at_threshold: return "turn_at_threshold";
    }
    return "center_flying";
}

ModelId model_from_name(const std::string& name) {
    if (name == "center_flying") return ModelId::center_flying;
    if (name == "center_flying_speed") return ModelId::center_flying_speed;
    if (name == "turn_at_threshold") return ModelId::turn_at_threshold;
    throw ValidationError("unknown controller model '" + name + "'");
}

const char* rule_variant_name(RuleVariant v) {
    return v == RuleVariant::prose ? "prose" : "literal";
}

RuleVariant rule_variant_from_name(const std::string& s) {
    if (s == "prose") return RuleVariant::prose;
    if (s == "literal") return RuleVariant::literal;
    throw ValidationError("unknown rules variant '" + s + "' (prose|literal)");
}

}  // namespace flownav::fuzzy
