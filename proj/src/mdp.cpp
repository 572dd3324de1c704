#include "svsa/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace svsa {

void Mdp::validate() const {
    if (actions.empty()) throw std::invalid_argument("Mdp: no states");
    if (mode == Mode::Discounted && !(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("Mdp: discount factor must be in (0,1)");
    if (mode == Mode::Ssp && terminal >= n_states())
        throw std::invalid_argument("Mdp: terminal state out of range");
    for (std::size_t i = 0; i < n_states(); ++i) {
        if (actions[i].empty())
            throw std::invalid_argument("Mdp: state " + std::to_string(i) + " has no actions");
        for (const MdpAction& a : actions[i]) {
            double row = 0.0;
            for (const auto& [j, p] : a.transitions) {
                if (j >= n_states()) throw std::invalid_argument("Mdp: transition out of range");
                if (p < 0.0) throw std::invalid_argument("Mdp: negative transition probability");
                row += p;
            }
            if (std::abs(row - 1.0) > 1e-12)
                throw std::invalid_argument("Mdp: transition row of state " + std::to_string(i) +
                                            " does not sum to 1");
        }
    }
    if (mode == Mode::Ssp) {
        for (const MdpAction& a : actions[terminal]) {
            if (a.cost != 0.0)
                throw std::invalid_argument("Mdp: terminal state must have zero cost");
            for (const auto& [j, p] : a.transitions)
                if (j != terminal && p > 0.0)
                    throw std::invalid_argument("Mdp: terminal state must be absorbing");
        }
    }
}

Vec bellman(const Mdp& mdp, const Vec& J) {
    require_dim(J, mdp.n_states(), "bellman J");
    const bool ssp = mdp.mode == Mdp::Mode::Ssp;
    const double gamma = ssp ? 1.0 : mdp.gamma;
    Vec out(mdp.n_states());
    for (std::size_t i = 0; i < mdp.n_states(); ++i) {
        if (ssp && i == mdp.terminal) {
            out[i] = 0.0;
            continue;
        }
        double best = std::numeric_limits<double>::infinity();
        for (const MdpAction& a : mdp.actions[i]) {
            double v = a.cost;
            for (const auto& [j, p] : a.transitions) {
                if (ssp && j == mdp.terminal) continue;
                v += gamma * p * J[j];
            }
            if (v < best) best = v; // strict '<' keeps the lowest action index on ties
        }
        out[i] = best;
    }
    return out;
}

std::vector<std::size_t> greedy_policy(const Mdp& mdp, const Vec& J) {
    require_dim(J, mdp.n_states(), "greedy_policy J");
    const bool ssp = mdp.mode == Mdp::Mode::Ssp;
    const double gamma = ssp ? 1.0 : mdp.gamma;
    std::vector<std::size_t> policy(mdp.n_states(), 0);
    for (std::size_t i = 0; i < mdp.n_states(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < mdp.actions[i].size(); ++k) {
            const MdpAction& a = mdp.actions[i][k];
            double v = a.cost;
            for (const auto& [j, p] : a.transitions) {
                if (ssp && j == mdp.terminal) continue;
                v += gamma * p * J[j];
            }
            if (v < best) {
                best = v;
                policy[i] = k;
            }
        }
    }
    return policy;
}

ViResult exact_vi(const Mdp& mdp, double tol, const NormSpec& nu, std::size_t max_sweeps) {
    ViResult result;
    result.J = zeros(mdp.n_states());
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        Vec next = bellman(mdp, result.J);
        result.residual = norm_dist(nu, next, result.J);
        result.J = std::move(next);
        result.sweeps = sweep + 1;
        if (result.residual <= tol) {
            result.converged = true;
            break;
        }
    }
    return result;
}

ViResult exact_vi(const Mdp& mdp, double tol) {
    return exact_vi(mdp, tol, NormSpec::weighted_max(ones(mdp.n_states())));
}

double contraction_certificate(const Mdp& mdp, const NormSpec& nu, std::size_t n_pairs,
                               std::uint64_t seed) {
    if (nu.kind != NormKind::WeightedMax)
        throw std::invalid_argument("contraction_certificate: nu must be a weighted max-norm");
    std::mt19937_64 rng = make_rng(seed);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    double worst = 0.0;
    for (std::size_t k = 0; k < n_pairs; ++k) {
        Vec j1(mdp.n_states()), j2(mdp.n_states());
        for (double& v : j1) v = u(rng);
        for (double& v : j2) v = u(rng);
        const double denom = norm_dist(nu, j1, j2);
        if (denom == 0.0) continue; // ratio undefined for coincident pairs
        const double num = norm_dist(nu, bellman(mdp, j1), bellman(mdp, j2));
        worst = std::max(worst, num / denom);
    }
    return worst;
}

SetValuedMap perturbed_bellman(const Mdp& mdp, double epsilon, const NormSpec& ball_norm) {
    if (epsilon < 0.0) throw std::invalid_argument("perturbed_bellman: epsilon must be >= 0");
    const std::size_t d = mdp.n_states();
    Perturbation pert = NoPerturbation{};
    if (epsilon > 0.0) pert = BallPerturbation{epsilon, ball_norm};
    return SetValuedMap(d, [mdp](const Vec& J) { return bellman(mdp, J); }, std::move(pert));
}

Mdp Mdp::from_json(const nlohmann::json& j) {
    Mdp mdp;
    const std::size_t n = j.at("n_states").get<std::size_t>();
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "discounted") {
        mdp.mode = Mode::Discounted;
        mdp.gamma = j.at("gamma").get<double>();
    } else if (mode == "ssp") {
        mdp.mode = Mode::Ssp;
        mdp.terminal = j.at("terminal").get<std::size_t>();
        mdp.proper_declared = j.value("proper", false);
    } else {
        throw std::invalid_argument("Mdp: unknown mode '" + mode + "'");
    }
    mdp.actions.resize(n);
    for (const auto& entry : j.at("actions")) {
        const std::size_t state = entry.at("state").get<std::size_t>();
        const std::size_t action = entry.at("action").get<std::size_t>();
        if (state >= n) throw std::invalid_argument("Mdp: action entry state out of range");
        MdpAction a;
        a.cost = entry.at("cost").get<double>();
        for (const auto& t : entry.at("transitions"))
            a.transitions.emplace_back(t.at(0).get<std::size_t>(), t.at(1).get<double>());
        if (mdp.actions[state].size() != action)
            throw std::invalid_argument("Mdp: action entries must be listed in order");
        mdp.actions[state].push_back(std::move(a));
    }
    mdp.validate();
    return mdp;
}

nlohmann::json Mdp::to_json() const {
    nlohmann::json j;
    j["n_states"] = n_states();
    if (mode == Mode::Discounted) {
        j["mode"] = "discounted";
        j["gamma"] = gamma;
    } else {
        j["mode"] = "ssp";
        j["terminal"] = terminal;
        j["proper"] = proper_declared;
    }
    j["actions"] = nlohmann::json::array();
    for (std::size_t i = 0; i < n_states(); ++i) {
        for (std::size_t k = 0; k < actions[i].size(); ++k) {
            nlohmann::json entry;
            entry["state"] = i;
            entry["action"] = k;
            entry["cost"] = actions[i][k].cost;
            entry["transitions"] = nlohmann::json::array();
            for (const auto& [s, p] : actions[i][k].transitions)
                entry["transitions"].push_back({s, p});
            j["actions"].push_back(std::move(entry));
        }
    }
    return j;
}

Mdp Mdp::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("Mdp::load: cannot open " + path);
    nlohmann::json j;
    in >> j;
    return from_json(j);
}

} // namespace svsa
