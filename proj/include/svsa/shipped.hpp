#pragma once

#include "svsa/fixed_point.hpp"
#include "svsa/mdp.hpp"

namespace svsa {

/// The 3-state, 2-action, gamma = 0.9 discounted MDP used by the shipped
/// experiments. Costs are O(0.1) so harmonic-step runs settle at desk scale.
Mdp shipped_mdp_3state();

/// A small stochastic shortest path instance: two transient states, one
/// absorbing zero-cost terminal, every action reaches the terminal with
/// probability >= 0.35, so all policies are proper.
Mdp shipped_mdp_ssp();

/// Affine contraction in R^2 with modulus 0.6 under the unweighted max-norm
/// and a max-norm ball of diameter 0.1.
ContractiveSetMap shipped_fp_affine();

/// Stage map for the generic boundedness experiment: F(x) = 0.5 x with a
/// Euclidean ball of diameter 0.1.
ContractiveSetMap shipped_stage_map();

} // namespace svsa
