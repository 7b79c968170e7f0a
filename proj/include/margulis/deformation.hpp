#pragma once

// First-order deformations of hyperbolic length along a cocycle:
// t -> lift(g) exp(t psi^{-1}(u(g))) and the derivative of half its
// translation length at t = 0.

#include "margulis/affine.hpp"
#include "margulis/fuchsian.hpp"
#include "margulis/word.hpp"

namespace margulis
{

inline constexpr double default_fd_step = 1e-5;

struct DerivativeOptions
{
    double step = default_fd_step;
    /** Combine steps h and h/2 as (4 D(h/2) - D(h)) / 3. */
    bool richardson = false;
};

/** 1/2 translation_length(lift(g) exp(t psi^{-1}(u(w)))) with g = evaluate(w). */
double half_length_along(const Cocycle& u, const Word& w, double t);

/**
 * Central difference of half_length_along at t = 0. Throws
 * StepLeavesHyperbolicLocus when +-step (or +-step/2) leaves |trace| > 2.
 */
double length_derivative(const Cocycle& u, const Word& w, const DerivativeOptions& opts = {});

/** B(Y_l^0 - g_{l+1} Y_l^0, X_{f_l}^0). */
double twist_pairing(const Holonomy& hol, int l);

/**
 * The two crossing angles of f_l with h_l: theta from the axes of h_l and
 * f_l, theta' = pi - arccos B(g_{l+1} Y_l^0, X_{f_l}^0) at the translated
 * crossing. Throws AxesDisjoint.
 */
struct CrossingAngles
{
    double theta;
    double theta_prime;
    double cosine_sum() const;
};

CrossingAngles crossing_angles(const Holonomy& hol, int l);

struct TwistCheck
{
    int l = 0;
    double t_l = 0;
    /** 1/2 dL_{f_l}/dt(0) by finite differences */
    double lhs = 0;
    /** alpha_{u_0}(f_l) + t_l * twist_pairing(l) */
    double rhs = 0;
    /** |lhs - rhs| */
    double residual = 0;
    /** |margulis(phi(p), f_l) - rhs| */
    double margulis_residual = 0;
};

TwistCheck verify_twist_formula(const HolonomyPtr& hol, const DeformationParams& p, int l,
                                const DerivativeOptions& opts = {});

}  // namespace margulis
