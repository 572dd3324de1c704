#include "svsa/json_support.hpp"

#include <stdexcept>

namespace svsa {

nlohmann::json norm_to_json(const NormSpec& spec) {
    nlohmann::json j;
    switch (spec.kind) {
    case NormKind::Euclidean:
        j["kind"] = "euclidean";
        break;
    case NormKind::WeightedMax:
        j["kind"] = "weighted-max";
        j["weights"] = spec.weights;
        break;
    case NormKind::WeightedP:
        j["kind"] = "weighted-p";
        j["weights"] = spec.weights;
        j["p"] = spec.p;
        break;
    }
    return j;
}

NormSpec norm_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "euclidean") return NormSpec::euclidean();
    if (kind == "weighted-max")
        return NormSpec::weighted_max(j.at("weights").get<std::vector<double>>());
    if (kind == "weighted-p")
        return NormSpec::weighted_p(j.at("weights").get<std::vector<double>>(),
                                    j.at("p").get<double>());
    throw std::invalid_argument("norm_from_json: unknown kind '" + kind + "'");
}

nlohmann::json schedule_to_json(const StepSchedule& s) {
    nlohmann::json j;
    switch (s.kind) {
    case StepSchedule::Kind::Harmonic:
        j["kind"] = "harmonic";
        j["a0"] = s.a0;
        break;
    case StepSchedule::Kind::Polynomial:
        j["kind"] = "polynomial";
        j["a0"] = s.a0;
        j["q"] = s.q;
        break;
    case StepSchedule::Kind::Explicit:
        j["kind"] = "explicit";
        j["values"] = s.values;
        break;
    }
    return j;
}

StepSchedule schedule_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "harmonic") return StepSchedule::harmonic(j.value("a0", 1.0));
    if (kind == "polynomial")
        return StepSchedule::polynomial(j.value("a0", 1.0), j.at("q").get<double>());
    if (kind == "explicit")
        return StepSchedule::explicit_list(j.at("values").get<std::vector<double>>());
    throw std::invalid_argument("schedule_from_json: unknown kind '" + kind + "'");
}

nlohmann::json noise_to_json(const NoiseModel& m) {
    nlohmann::json j;
    switch (m.kind()) {
    case NoiseModel::Kind::Zero:
        j["kind"] = "zero";
        break;
    case NoiseModel::Kind::BoundedIid:
        j["kind"] = "bounded-iid";
        j["D"] = m.bound();
        break;
    case NoiseModel::Kind::StateScaledGaussian:
        j["kind"] = "state-scaled-gaussian";
        j["K"] = m.scale();
        break;
    }
    return j;
}

NoiseModel noise_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "zero") return NoiseModel::zero();
    if (kind == "bounded-iid") {
        const std::string shape = j.value("shape", "uniform-ball");
        NoiseModel::IidShape s = NoiseModel::IidShape::UniformBall;
        if (shape == "uniform-box")
            s = NoiseModel::IidShape::UniformBox;
        else if (shape == "rademacher")
            s = NoiseModel::IidShape::Rademacher;
        else if (shape != "uniform-ball")
            throw std::invalid_argument("noise_from_json: unknown shape '" + shape + "'");
        return NoiseModel::bounded_iid(j.at("D").get<double>(), s);
    }
    if (kind == "state-scaled-gaussian")
        return NoiseModel::state_scaled_gaussian(j.at("K").get<double>());
    throw std::invalid_argument("noise_from_json: unknown kind '" + kind + "'");
}

} // namespace svsa
