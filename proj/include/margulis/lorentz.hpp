#pragma once

// Minkowski (2,1) linear algebra on R^{2,1}: the inner product
// B(x, y) = x1 y1 + x2 y2 - x3 y3, the Lorentzian cross product, causal
// classification and the eigenframes of hyperbolic elements of SO^0(2,1).
//
// All routines are templated on the scalar type and accept arbitrary Eigen
// expressions. Tolerances are absolute and assume O(1)-normalized input;
// frames of isometries with entries beyond ~1e6 lose accuracy.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "margulis/errors.hpp"

namespace margulis
{

template <typename Scalar>
using LorentzVector = Eigen::Matrix<Scalar, 3, 1>;

/** Matrix of an element of SO^0(2,1) acting on column vectors. */
template <typename Scalar>
using LorentzIsometry = Eigen::Matrix<Scalar, 3, 3>;

using LorentzVectord = LorentzVector<double>;
using LorentzIsometryd = LorentzIsometry<double>;

namespace tolerance
{
/** |B(x,x)| at or below this is classified as lightlike */
inline constexpr double null_band = 1e-9;
/** minimal eigenvalue separation accepted as hyperbolic */
inline constexpr double eigen_separation = 1e-8;
/** slack allowed on |B(X_g^0, X_h^0)| <= 1 for crossing axes */
inline constexpr double axis_crossing = 1e-9;
}  // namespace tolerance

/** The Gram matrix diag(1, 1, -1) of B. */
template <typename Scalar = double>
LorentzIsometry<Scalar> minkowski_metric()
{
    return LorentzVector<Scalar>(1, 1, -1).asDiagonal();
}

template <typename DerivedX, typename DerivedY>
typename DerivedX::Scalar inner(const Eigen::MatrixBase<DerivedX>& x,
                                const Eigen::MatrixBase<DerivedY>& y)
{
    return x(0) * y(0) + x(1) * y(1) - x(2) * y(2);
}

/** Lorentzian quadratic form B(x, x). */
template <typename Derived>
typename Derived::Scalar norm2(const Eigen::MatrixBase<Derived>& x)
{
    return inner(x, x);
}

/** Euclidean determinant of the matrix with columns x, y, z. */
template <typename DX, typename DY, typename DZ>
typename DX::Scalar det3(const Eigen::MatrixBase<DX>& x,
                         const Eigen::MatrixBase<DY>& y,
                         const Eigen::MatrixBase<DZ>& z)
{
    using S = typename DX::Scalar;
    return LorentzVector<S>(x).dot(LorentzVector<S>(y).cross(LorentzVector<S>(z)));
}

/**
 * Lorentzian vector product: the unique w with B(w, z) = det(x, y, z) for
 * every z, i.e. w = J (x \times y).
 */
template <typename DX, typename DY>
LorentzVector<typename DX::Scalar> cross(const Eigen::MatrixBase<DX>& x,
                                         const Eigen::MatrixBase<DY>& y)
{
    using S = typename DX::Scalar;
    LorentzVector<S> w = LorentzVector<S>(x).cross(LorentzVector<S>(y));
    w(2) = -w(2);
    return w;
}

/** Inverse of an element of O(2,1): J g^T J. */
template <typename Derived>
LorentzIsometry<typename Derived::Scalar> lorentz_inverse(const Eigen::MatrixBase<Derived>& g)
{
    using S = typename Derived::Scalar;
    const LorentzIsometry<S> J = minkowski_metric<S>();
    return J * g.transpose() * J;
}

/**
 * True when g preserves B (checked as |g^T J g - J| entrywise), has
 * determinant one and preserves time orientation.
 */
template <typename Derived>
bool is_lorentz_isometry(const Eigen::MatrixBase<Derived>& g, double tol = 1e-9)
{
    using S = typename Derived::Scalar;
    const LorentzIsometry<S> J = minkowski_metric<S>();
    using std::abs;
    const S defect = (g.transpose() * J * g - J).cwiseAbs().maxCoeff();
    return defect <= tol && abs(g.determinant() - S(1)) <= tol && g(2, 2) > 0;
}

enum class CausalKind { spacelike, timelike, lightlike };
enum class TimeOrientation { future, past, none };

struct CausalClass
{
    CausalKind kind;
    TimeOrientation orientation;

    friend bool operator==(const CausalClass&, const CausalClass&) = default;
};

template <typename Derived>
CausalClass classify(const Eigen::MatrixBase<Derived>& x,
                     double null_band = tolerance::null_band)
{
    const auto q = norm2(x);
    CausalKind kind = CausalKind::lightlike;
    if (q > null_band) {
        kind = CausalKind::spacelike;
    }
    else if (q < -null_band) {
        kind = CausalKind::timelike;
    }
    TimeOrientation orient = TimeOrientation::none;
    if (kind != CausalKind::spacelike && !x.isZero(0)) {
        orient = x(2) > 0 ? TimeOrientation::future
                          : (x(2) < 0 ? TimeOrientation::past : TimeOrientation::none);
    }
    return {kind, orient};
}

/**
 * Normalized eigenframe of a hyperbolic g in SO^0(2,1).
 *
 * g x_minus = lambda x_minus, g x_plus = x_plus / lambda, g x_zero = x_zero with
 * 0 < lambda < 1. Both null vectors have Euclidean length one and point to the
 * future; x_zero is unit spacelike with det(x_zero, x_minus, x_plus) > 0.
 */
template <typename Scalar>
struct HyperbolicFrame
{
    LorentzVector<Scalar> x_minus;
    LorentzVector<Scalar> x_plus;
    LorentzVector<Scalar> x_zero;
    Scalar lambda;

    /** Frame of the inverse element: null directions swap, x_zero flips. */
    HyperbolicFrame inverse() const { return {x_plus, x_minus, -x_zero, lambda}; }

    /** Translation length -log(lambda) of the element in H^2. */
    Scalar length() const
    {
        using std::log;
        return -log(lambda);
    }

    template <typename Other>
    HyperbolicFrame<Other> cast() const
    {
        return {x_minus.template cast<Other>(), x_plus.template cast<Other>(),
                x_zero.template cast<Other>(), static_cast<Other>(lambda)};
    }
};

using HyperbolicFramed = HyperbolicFrame<double>;

namespace detail
{

/** Unit vector spanning the kernel of a rank-2 3x3 matrix. */
template <typename Scalar>
LorentzVector<Scalar> kernel_direction(const Eigen::Matrix<Scalar, 3, 3>& m)
{
    LorentzVector<Scalar> best = LorentzVector<Scalar>::Zero();
    Scalar best_norm = 0;
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            LorentzVector<Scalar> c = m.row(i).transpose().cross(m.row(j).transpose());
            const Scalar n = c.norm();
            if (n > best_norm) {
                best_norm = n;
                best = c;
            }
        }
    }
    if (best_norm == Scalar(0)) {
        throw NotHyperbolic("eigenspace is not one-dimensional");
    }
    return best / best_norm;
}

/** Expanding null eigenvector of a hyperbolic isometry with eigenvalue mu > 1. */
template <typename Scalar>
LorentzVector<Scalar> expanding_null(const LorentzIsometry<Scalar>& g, Scalar mu)
{
    LorentzVector<Scalar> v =
        kernel_direction<Scalar>(g - mu * LorentzIsometry<Scalar>::Identity());
    return v(2) < 0 ? LorentzVector<Scalar>(-v) : v;
}

}  // namespace detail

/**
 * Eigenvalues (lambda, 1/lambda) of a hyperbolic isometry from its
 * characteristic polynomial (x - 1)(x^2 - (tr g - 1) x + 1). The determinant
 * is taken to be exactly one: computed determinants of long words cancel
 * catastrophically. Throws NotHyperbolic when the spectrum is not three
 * separated reals.
 */
template <typename Derived>
typename Derived::Scalar hyperbolic_eigenvalue(const Eigen::MatrixBase<Derived>& g)
{
    using S = typename Derived::Scalar;
    using std::abs, std::isfinite, std::sqrt;
    const S p = g.trace() - S(1);
    const S disc = p * p - S(4);
    if (!(p > 0) || !(disc > 0) || !isfinite(disc)) {
        throw NotHyperbolic("characteristic polynomial has non-real or repeated roots (trace " +
                            std::to_string(double(g.trace())) + ")");
    }
    const S big = (p + sqrt(disc)) / S(2);
    const S small = S(1) / big;
    const S sep = S(tolerance::eigen_separation);
    if (!(big - small > sep) || !(abs(small - S(1)) > sep)) {
        throw NotHyperbolic("eigenvalues not separated (trace " +
                            std::to_string(double(g.trace())) + ")");
    }
    return small;
}

template <typename Derived>
HyperbolicFrame<typename Derived::Scalar> hyperbolic_frame(const Eigen::MatrixBase<Derived>& gin)
{
    using S = typename Derived::Scalar;
    using std::sqrt;
    const LorentzIsometry<S> g = gin;
    const S lambda = hyperbolic_eigenvalue(g);

    HyperbolicFrame<S> f;
    f.lambda = lambda;
    // X^- is the expanding direction of g^{-1}; both null vectors are taken
    // from the dominant eigenvalue where the kernel is best conditioned.
    f.x_plus = detail::expanding_null<S>(g, S(1) / lambda);
    f.x_minus = detail::expanding_null<S>(lorentz_inverse(g), S(1) / lambda);

    LorentzVector<S> x0 = detail::kernel_direction<S>(g - LorentzIsometry<S>::Identity());
    const S q = norm2(x0);
    if (!(q > 0)) {
        throw NotHyperbolic("fixed direction is not spacelike");
    }
    x0 /= sqrt(q);
    if (det3(x0, f.x_minus, f.x_plus) < 0) {
        x0 = -x0;
    }
    f.x_zero = x0;
    return f;
}

/**
 * Coefficients (a, c^-, c^+) of v = a X^0 + c^- X^- + c^+ X^+ in a hyperbolic
 * frame. The X^0 coefficient a is the Margulis-type pairing B(v, X^0).
 */
template <typename Scalar, typename Derived>
LorentzVector<Scalar> frame_coordinates(const HyperbolicFrame<Scalar>& f,
                                        const Eigen::MatrixBase<Derived>& v)
{
    const Scalar bmp = inner(f.x_minus, f.x_plus);
    return {inner(v, f.x_zero), inner(v, f.x_plus) / bmp, inner(v, f.x_minus) / bmp};
}

template <typename Scalar>
LorentzVector<Scalar> from_frame_coordinates(const HyperbolicFrame<Scalar>& f, Scalar a,
                                             Scalar cm, Scalar cp)
{
    return a * f.x_zero + cm * f.x_minus + cp * f.x_plus;
}

/**
 * Angle between two crossing geodesics given the unit spacelike normals of
 * their axes: arccos B(X_g^0, X_h^0), in [0, pi].
 */
template <typename DG, typename DH>
typename DG::Scalar axis_angle_from_normals(const Eigen::MatrixBase<DG>& xg0,
                                            const Eigen::MatrixBase<DH>& xh0)
{
    using S = typename DG::Scalar;
    using std::abs, std::acos;
    const S c = inner(xg0, xh0);
    if (!(abs(c) <= S(1) + S(tolerance::axis_crossing))) {
        throw AxesDisjoint("|B(X_g^0, X_h^0)| = " + std::to_string(double(abs(c))));
    }
    return acos(std::clamp(c, S(-1), S(1)));
}

/** Angle between the axes of two hyperbolic isometries. */
template <typename Scalar>
Scalar axis_angle(const LorentzIsometry<Scalar>& g, const LorentzIsometry<Scalar>& h)
{
    return axis_angle_from_normals(hyperbolic_frame(g).x_zero, hyperbolic_frame(h).x_zero);
}

}  // namespace margulis
