#include "margulis/deformation.hpp"

#include <numbers>
#include <string>

#include "margulis/liealg.hpp"

namespace margulis
{

namespace
{

using Mat2 = UnimodularMatrix<Extended>;

struct LengthPath
{
    Mat2 base;
    Mat2 direction;

    Extended half_length(Extended t) const
    {
        const Mat2 g = base * sl2_exp(t * direction);
        if (!(abs(g.trace()) > Extended(2) + Extended(1e-10))) {
            throw StepLeavesHyperbolicLocus("|trace| <= 2 at t = " + std::to_string(double(t)));
        }
        return translation_length(g) / 2;
    }

    Extended central(double h) const
    {
        const Extended he(h);
        return (half_length(he) - half_length(-he)) / (2 * he);
    }
};

LengthPath length_path(const Cocycle& u, const Word& w)
{
    const HyperbolicFrame<Extended> f = u.holonomy()->frame_extended(w);
    return {lift(f), psi_inv(evaluate_cocycle_extended(u, w))};
}

}  // namespace

double half_length_along(const Cocycle& u, const Word& w, double t)
{
    return double(length_path(u, w).half_length(Extended(t)));
}

double length_derivative(const Cocycle& u, const Word& w, const DerivativeOptions& opts)
{
    if (!(opts.step > 0)) {
        throw std::invalid_argument("finite-difference step must be positive");
    }
    const LengthPath path = length_path(u, w);
    const Extended d = path.central(opts.step);
    if (!opts.richardson) {
        return double(d);
    }
    return double((4 * path.central(opts.step / 2) - d) / 3);
}

double twist_pairing(const Holonomy& hol, int l)
{
    const int b = hol.b();
    const auto y = hol.frame_extended(h_word(b, l)).x_zero;
    const auto xf = hol.frame_extended(f_word(b, l)).x_zero;
    const auto gy = hol.generator_extended(l + 1) * y;
    return double(inner(y - gy, xf));
}

double CrossingAngles::cosine_sum() const { return std::cos(theta) + std::cos(theta_prime); }

CrossingAngles crossing_angles(const Holonomy& hol, int l)
{
    const int b = hol.b();
    const LorentzVectord y = hol.frame(h_word(b, l)).x_zero;
    const LorentzVectord xf = hol.frame(f_word(b, l)).x_zero;
    const LorentzVectord gy = hol.generator(l + 1) * y;
    return {axis_angle_from_normals(y, xf), std::numbers::pi - axis_angle_from_normals(gy, xf)};
}

TwistCheck verify_twist_formula(const HolonomyPtr& hol, const DeformationParams& p, int l,
                                const DerivativeOptions& opts)
{
    p.validate(hol->b());
    const Word f = f_word(hol->b(), l);
    const Cocycle u = phi(hol, p);
    const Cocycle u0 = base_cocycle(hol, p.alpha, p.beta);

    TwistCheck c;
    c.l = l;
    c.t_l = p.t[l - 1];
    c.lhs = length_derivative(u, f, opts);
    c.rhs = margulis(u0, f) + c.t_l * twist_pairing(*hol, l);
    c.residual = std::abs(c.lhs - c.rhs);
    c.margulis_residual = std::abs(margulis(u, f) - c.rhs);
    return c;
}

}  // namespace margulis
