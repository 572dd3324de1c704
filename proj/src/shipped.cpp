#include "svsa/shipped.hpp"

namespace svsa {

namespace {

MdpAction act(double cost, std::vector<std::pair<std::size_t, double>> trans) {
    MdpAction a;
    a.cost = cost;
    a.transitions = std::move(trans);
    return a;
}

} // namespace

Mdp shipped_mdp_3state() {
    Mdp mdp;
    mdp.mode = Mdp::Mode::Discounted;
    mdp.gamma = 0.9;
    mdp.actions = {
        {act(0.08, {{0, 0.2}, {1, 0.5}, {2, 0.3}}), act(0.14, {{0, 0.6}, {1, 0.2}, {2, 0.2}})},
        {act(0.16, {{0, 0.3}, {1, 0.3}, {2, 0.4}}), act(0.10, {{0, 0.1}, {1, 0.6}, {2, 0.3}})},
        {act(0.12, {{0, 0.4}, {1, 0.4}, {2, 0.2}}), act(0.20, {{0, 0.25}, {1, 0.25}, {2, 0.5}})},
    };
    mdp.validate();
    return mdp;
}

Mdp shipped_mdp_ssp() {
    Mdp mdp;
    mdp.mode = Mdp::Mode::Ssp;
    mdp.terminal = 2;
    mdp.proper_declared = true;
    mdp.actions = {
        {act(0.20, {{0, 0.3}, {1, 0.3}, {2, 0.4}}), act(0.30, {{0, 0.1}, {1, 0.4}, {2, 0.5}})},
        {act(0.25, {{0, 0.35}, {1, 0.25}, {2, 0.4}}), act(0.15, {{0, 0.30}, {1, 0.35}, {2, 0.35}})},
        {act(0.0, {{2, 1.0}})},
    };
    mdp.validate();
    return mdp;
}

ContractiveSetMap shipped_fp_affine() {
    AffineMap aff;
    aff.A = {{0.5, 0.1}, {-0.1, 0.5}};
    aff.b = {0.2, -0.1};
    MetricSpec metric = MetricSpec::from_norm(NormSpec::weighted_max({1.0, 1.0}));
    const double radius = 0.05; // max-norm ball, diameter 0.1
    SetValuedMap map(
        2, [aff](const Vec& x) { return aff.apply(x); },
        BallPerturbation{radius, metric.norm});
    return ContractiveSetMap{std::move(map), std::move(metric), 0.6, 0.1, aff};
}

ContractiveSetMap shipped_stage_map() {
    AffineMap aff;
    aff.A = {{0.5, 0.0}, {0.0, 0.5}};
    aff.b = {0.0, 0.0};
    MetricSpec metric = MetricSpec::from_norm(NormSpec::euclidean());
    SetValuedMap map(
        2, [aff](const Vec& x) { return aff.apply(x); },
        BallPerturbation{0.05, NormSpec::euclidean()});
    return ContractiveSetMap{std::move(map), std::move(metric), 0.5, 0.1, aff};
}

} // namespace svsa
