#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "svsa/norms.hpp"
#include "svsa/set_valued_map.hpp"
#include "svsa/vec.hpp"

#include <json.hpp>

namespace svsa {

struct MdpAction {
    double cost = 0.0;
    std::vector<std::pair<std::size_t, double>> transitions; // (state, prob)
};

/// Finite MDP, either discounted or stochastic shortest path with an
/// absorbing zero-cost terminal state.
struct Mdp {
    enum class Mode { Discounted, Ssp };

    Mode mode = Mode::Discounted;
    double gamma = 0.9;           // Discounted
    std::size_t terminal = 0;     // Ssp
    bool proper_declared = false; // Ssp: all policies declared proper by config
    std::vector<std::vector<MdpAction>> actions; // [state][action]

    std::size_t n_states() const { return actions.size(); }
    std::size_t n_actions(std::size_t state) const { return actions[state].size(); }

    /// Row sums within 1e-12 of 1, probabilities nonnegative, and for SSP an
    /// absorbing zero-cost terminal. Throws on violation.
    void validate() const;

    static Mdp from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    static Mdp load(const std::string& path);
};

/// Bellman operator. Discounted: (TJ)(i) = min_a [ c(i,a) + gamma sum_j
/// p(j|i,a) J(j) ]. SSP: gamma = 1 with the sum excluding the terminal state
/// and (TJ)(terminal) = 0. Ties in the min break toward the lowest action
/// index.
Vec bellman(const Mdp& mdp, const Vec& J);

/// Greedy action per state under J, ties toward the lowest index.
std::vector<std::size_t> greedy_policy(const Mdp& mdp, const Vec& J);

struct ViResult {
    Vec J;
    double residual = 0.0;
    bool converged = false;
    std::size_t sweeps = 0;
};

/// Value iteration J <- TJ until ||TJ - J||_nu <= tol, capped at max_sweeps.
ViResult exact_vi(const Mdp& mdp, double tol, const NormSpec& nu,
                  std::size_t max_sweeps = 1000000);
ViResult exact_vi(const Mdp& mdp, double tol); // unweighted max-norm

/// Empirical contraction modulus: max over sampled pairs of
/// ||TJ1 - TJ2||_nu / ||J1 - J2||_nu. Coincident pairs are excluded.
double contraction_certificate(const Mdp& mdp, const NormSpec& nu, std::size_t n_pairs,
                               std::uint64_t seed);

/// The perturbed Bellman map T~J = TJ + B^eps as a set-valued map.
SetValuedMap perturbed_bellman(const Mdp& mdp, double epsilon, const NormSpec& ball_norm);

} // namespace svsa
