#pragma once

// Cocycles u: G_b -> R^{2,1}, u(gh) = u(g) + g u(h), their Margulis
// invariants, and the parametrization (alpha, beta, t) -> u of the first
// cohomology by boundary invariants, dividing-curve invariants and affine
// twists along the dividing curves.

#include <array>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "margulis/fuchsian.hpp"
#include "margulis/lorentz.hpp"
#include "margulis/word.hpp"

namespace margulis
{

/**
 * A cocycle determined by its values on the free generators g_1 ... g_b.
 * The value on g_{b+1} follows from the relation and is kept alongside.
 */
class Cocycle
{
public:
    /** values[i - 1] = u(g_i), 1 <= i <= b. */
    Cocycle(HolonomyPtr hol, const std::vector<LorentzVectord>& values);
    /** Values are held in extended precision; see Holonomy::evaluate_extended. */
    Cocycle(HolonomyPtr hol, std::vector<LorentzVector<Extended>> values);

    static Cocycle zero(HolonomyPtr hol);

    const HolonomyPtr& holonomy() const { return hol_; }
    int b() const { return hol_->b(); }

    /** u(g_i) for 1 <= i <= b+1. */
    LorentzVectord value(int i) const { return value_extended(i).cast<double>(); }
    const LorentzVector<Extended>& value_extended(int i) const;

    Cocycle& operator+=(const Cocycle& other);
    Cocycle& operator*=(double s);
    friend Cocycle operator+(Cocycle a, const Cocycle& b) { return a += b; }
    friend Cocycle operator-(Cocycle a, const Cocycle& b) { return a += b * -1.0; }
    friend Cocycle operator*(Cocycle a, double s) { return a *= s; }
    friend Cocycle operator*(double s, Cocycle a) { return a *= s; }

private:
    HolonomyPtr hol_;
    std::vector<LorentzVector<Extended>> values_;  // index i - 1, i <= b + 1
};

/** A point (alpha, beta, t) of the (3b-3)-dimensional parameter space. */
struct DeformationParams
{
    std::vector<double> alpha;  // b + 1 boundary invariants
    std::vector<double> beta;   // b - 2 dividing-curve invariants
    std::vector<double> t;      // b - 2 affine twist parameters

    static DeformationParams zero(int b);
    /** k-th standard basis vector, ordered alpha, beta, t. */
    static DeformationParams basis(int b, int k);

    int dimension() const { return static_cast<int>(alpha.size() + beta.size() + t.size()); }
    Eigen::VectorXd flatten() const;

    /** Throws std::invalid_argument on a size mismatch. */
    void validate(int b) const;
};

/** delta_v(g) = v - g v. */
Cocycle coboundary(HolonomyPtr hol, const LorentzVectord& v);

/** u(w), expanded left to right with u(g^{-1}) = -g^{-1} u(g); u(id) = 0. */
LorentzVectord evaluate_cocycle(const Cocycle& u, const Word& w);
LorentzVector<Extended> evaluate_cocycle_extended(const Cocycle& u, const Word& w);

/** alpha_u(w) = B(u(w), X_w^0). Throws NotHyperbolic. */
double margulis(const Cocycle& u, const Word& w);

/** The line of E^2_1 on which x -> g x + u acts by translation along X_g^0. */
struct InvariantAxis
{
    LorentzVectord base_point;
    LorentzVectord direction;
    /** Signed translation along direction (the Margulis invariant). */
    double translation = 0;
};

/**
 * Base point in span(X^-, X^+) solving (g - I) p = -u + alpha X^0.
 * Throws NotHyperbolic.
 */
InvariantAxis invariant_axis(const LorentzIsometryd& g, const LorentzVectord& uval);

/** Boundary frames of a pants F_1 F_2 F_3 = id with the matrices of F_1, F_2. */
template <typename Scalar>
struct PantsFramesT
{
    HyperbolicFrame<Scalar> f1, f2, f3;
    LorentzIsometry<Scalar> f1_matrix;
    LorentzIsometry<Scalar> f2_matrix;
};

/**
 * The nine coefficients u(F_i) = alpha_i X_i^0 + c_i^- X_i^- + c_i^+ X_i^+
 * of a cocycle on one pants.
 */
template <typename Scalar>
struct PantsCoefficientsT
{
    Scalar alpha1 = 0, alpha2 = 0, alpha3 = 0;
    Scalar c1_minus = 0, c1_plus = 0, c2_minus = 0;
    Scalar c2_plus = 0, c3_minus = 0, c3_plus = 0;
};

template <typename Scalar>
struct PantsSolutionT
{
    PantsCoefficientsT<Scalar> coefficients;
    /** det of the 3x3 system in (c2^+, c3^-, c3^+) */
    double system_determinant = 0;
    /** det of the Gram matrix B(X_i^0, X_j^0); negative for consistently oriented pants */
    double gram_determinant = 0;
    /** max |F_3^{-1} u(F_3) + F_1 u(F_2) + u(F_1)| after solving */
    double residual = 0;
};

using PantsFrames = PantsFramesT<double>;
using PantsCoefficients = PantsCoefficientsT<double>;
using PantsSolution = PantsSolutionT<double>;

/** u(F_1), u(F_2), u(F_3) reconstructed from coefficients. */
template <typename Scalar>
std::array<LorentzVector<Scalar>, 3> pants_values(const PantsFramesT<Scalar>& fr,
                                                  const PantsCoefficientsT<Scalar>& c)
{
    return {from_frame_coordinates(fr.f1, c.alpha1, c.c1_minus, c.c1_plus),
            from_frame_coordinates(fr.f2, c.alpha2, c.c2_minus, c.c2_plus),
            from_frame_coordinates(fr.f3, c.alpha3, c.c3_minus, c.c3_plus)};
}

/**
 * Solves the pants relation F_3^{-1} u(F_3) + F_1 u(F_2) + u(F_1) = 0 for
 * (c2^+, c3^-, c3^+), pairing it with X_1^0, X_2^0, X_3^0. The remaining six
 * fields of knowns are copied through. Throws SingularSystem.
 */
template <typename Scalar>
PantsSolutionT<Scalar> solve_pants(const PantsFramesT<Scalar>& fr,
                                   const PantsCoefficientsT<Scalar>& knowns)
{
    using Vec = LorentzVector<Scalar>;
    using Mat = LorentzIsometry<Scalar>;
    const Mat& F1 = fr.f1_matrix;
    const Scalar l3 = fr.f3.lambda;

    // F_3^{-1} X_3^- = X_3^- / lambda_3 and F_3^{-1} X_3^+ = lambda_3 X_3^+.
    Mat columns;
    columns.col(0) = F1 * fr.f2.x_plus;
    columns.col(1) = fr.f3.x_minus / l3;
    columns.col(2) = l3 * fr.f3.x_plus;
    const Vec known = knowns.alpha3 * fr.f3.x_zero +
                      F1 * Vec(knowns.alpha2 * fr.f2.x_zero + knowns.c2_minus * fr.f2.x_minus) +
                      from_frame_coordinates(fr.f1, knowns.alpha1, knowns.c1_minus, knowns.c1_plus);

    const std::array<const Vec*, 3> normals{&fr.f1.x_zero, &fr.f2.x_zero, &fr.f3.x_zero};
    Mat system;
    Mat gram;
    Vec rhs;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            system(r, c) = inner(*normals[r], columns.col(c));
            gram(r, c) = inner(*normals[r], *normals[c]);
        }
        rhs(r) = -inner(*normals[r], known);
    }

    PantsSolutionT<Scalar> out;
    out.system_determinant = double(system.determinant());
    out.gram_determinant = double(gram.determinant());
    if (!(std::abs(out.system_determinant) > 1e-12)) {
        throw SingularSystem("pants system determinant " + std::to_string(out.system_determinant));
    }
    const Vec x = system.partialPivLu().solve(rhs);
    out.coefficients = knowns;
    out.coefficients.c2_plus = x(0);
    out.coefficients.c3_minus = x(1);
    out.coefficients.c3_plus = x(2);

    // F_3^{-1} = F_1 F_2
    const auto u = pants_values(fr, out.coefficients);
    const Vec relation = F1 * (fr.f2_matrix * u[2]) + F1 * u[1] + u[0];
    out.residual = double(relation.cwiseAbs().maxCoeff());
    return out;
}

/** Frames of pants P_j of the holonomy, ordered as pants_presentation. */
PantsFrames pants_frames(const Holonomy& hol, int j);
PantsFramesT<Extended> pants_frames_extended(const Holonomy& hol, int j);

/**
 * The gauge-fixed cocycle with alpha(g_i) = alpha_i and alpha(h_j) = beta_j:
 * c_1^+- = c_2^- = 0 on P_1, then c_{j+1}^- = 0 on each later pants.
 */
Cocycle base_cocycle(HolonomyPtr hol, const std::vector<double>& alpha,
                     const std::vector<double>& beta);

/** AT_k: zero on g_1 .. g_{k+1}, delta_{Y_k^0} on g_{k+2} .. g_{b+1}. */
Cocycle affine_twist(HolonomyPtr hol, int k);

/** base_cocycle(alpha, beta) + sum_k t_k AT_k. */
Cocycle phi(HolonomyPtr hol, const DeformationParams& p);

/** (alpha(g_1..g_{b+1}), alpha(h_1..h_{b-2}), alpha(f_1..f_{b-2})). */
Eigen::VectorXd cohomology_coordinates(const Cocycle& u);

/** Matrix whose k-th column is cohomology_coordinates(phi(e_k)). */
Eigen::MatrixXd isomorphism_matrix(const HolonomyPtr& hol);

/** Least-squares v minimizing sum_i |u(g_i) - (v - g_i v)|^2 over i <= b. */
LorentzVectord fit_coboundary(const Cocycle& u);

/** CSV with header generator,x1,x2,x3; one row per g_1 .. g_{b+1}. */
void write_cocycle_csv(std::ostream& os, const Cocycle& u);

}  // namespace margulis
