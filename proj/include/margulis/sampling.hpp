#pragma once

// Seeded random inputs for property sweeps. Every generator takes the
// engine by reference so a single seed fixes a whole sweep.

#include <cmath>
#include <random>
#include <vector>

#include "margulis/affine.hpp"
#include "margulis/liealg.hpp"
#include "margulis/word.hpp"

namespace margulis
{

using Rng = std::mt19937_64;

template <typename URBG>
double uniform(URBG& rng, double lo = -1.0, double hi = 1.0)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

template <typename URBG>
LorentzVectord random_vector(URBG& rng, double lo = -1.0, double hi = 1.0)
{
    return {uniform(rng, lo, hi), uniform(rng, lo, hi), uniform(rng, lo, hi)};
}

/** Random traceless matrix with entries in [-s, s]. */
template <typename URBG>
TracelessMatrixd random_traceless(URBG& rng, double s = 1.0)
{
    const double a = uniform(rng, -s, s);
    TracelessMatrixd X;
    X << a, uniform(rng, -s, s), uniform(rng, -s, s), -a;
    return X;
}

/**
 * k diag(e^{l/2}, e^{-l/2}) k^{-1} with l in [min_length, max_length] and k
 * the exponential of a random traceless matrix with entries in [-1/2, 1/2].
 */
template <typename URBG>
UnimodularMatrixd random_hyperbolic_lift(URBG& rng, double min_length = 0.2,
                                          double max_length = 3.0)
{
    const double l = uniform(rng, min_length, max_length);
    const UnimodularMatrixd k = sl2_exp(random_traceless(rng, 0.5));
    const UnimodularMatrixd d = Eigen::Vector2d(std::exp(l / 2), std::exp(-l / 2)).asDiagonal();
    return k * d * sl2_inverse(k);
}

template <typename URBG>
LorentzIsometryd random_hyperbolic(URBG& rng, double min_length = 0.2, double max_length = 3.0)
{
    return adjoint(random_hyperbolic_lift(rng, min_length, max_length));
}

/** Uniform reduced word of length in [min_len, max_len] over g_1 .. g_generators. */
template <typename URBG>
Word random_word(URBG& rng, int generators, int max_len, int min_len = 1)
{
    const int len = std::uniform_int_distribution<int>(min_len, max_len)(rng);
    std::uniform_int_distribution<int> gen(1, generators);
    std::bernoulli_distribution sign;
    std::vector<Letter> letters;
    while (static_cast<int>(letters.size()) < len) {
        const Letter l{gen(rng), sign(rng) ? 1 : -1};
        if (!letters.empty() && letters.back() == l.inverse()) {
            continue;
        }
        letters.push_back(l);
    }
    return Word(std::move(letters));
}

/** Parameters with every entry uniform in [-scale, scale]. */
template <typename URBG>
DeformationParams random_params(URBG& rng, int b, double scale = 1.0)
{
    DeformationParams p = DeformationParams::zero(b);
    for (auto* part : {&p.alpha, &p.beta, &p.t}) {
        for (double& x : *part) {
            x = uniform(rng, -scale, scale);
        }
    }
    return p;
}

}  // namespace margulis
