#pragma once

// The correspondence between sl_2(R) with half the trace form and R^{2,1},
// the adjoint map SL(2,R) -> SO^0(2,1) it induces, and its positive-trace
// inverse on hyperbolic elements.

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "margulis/errors.hpp"
#include "margulis/lorentz.hpp"

namespace margulis
{

/** Element of sl_2(R): a 2x2 matrix with zero trace. */
template <typename Scalar>
using TracelessMatrix = Eigen::Matrix<Scalar, 2, 2>;

/** Element of SL(2,R), representing +-g in PSL(2,R). */
template <typename Scalar>
using UnimodularMatrix = Eigen::Matrix<Scalar, 2, 2>;

using TracelessMatrixd = TracelessMatrix<double>;
using UnimodularMatrixd = UnimodularMatrix<double>;

/** Basis e1, e2, e3 of sl_2(R); psi sends it to the standard basis. */
template <typename Scalar = double>
TracelessMatrix<Scalar> sl2_basis(int k)
{
    TracelessMatrix<Scalar> m;
    switch (k) {
        case 0: m << 1, 0, 0, -1; break;
        case 1: m << 0, 1, 1, 0; break;
        case 2: m << 0, -1, 1, 0; break;
        default: throw IndexOutOfRange("sl2 basis index " + std::to_string(k));
    }
    return m;
}

/** [[v1, v2], [v3, -v1]] -> (v1, (v2 + v3)/2, (-v2 + v3)/2). */
template <typename Derived>
LorentzVector<typename Derived::Scalar> psi(const Eigen::MatrixBase<Derived>& X)
{
    using S = typename Derived::Scalar;
    return {X(0, 0), (X(0, 1) + X(1, 0)) / S(2), (X(1, 0) - X(0, 1)) / S(2)};
}

template <typename Derived>
TracelessMatrix<typename Derived::Scalar> psi_inv(const Eigen::MatrixBase<Derived>& v)
{
    TracelessMatrix<typename Derived::Scalar> X;
    X << v(0), v(1) - v(2), v(1) + v(2), -v(0);
    return X;
}

/** Half the trace form, 1/2 tr(XY); psi carries it to B. */
template <typename DX, typename DY>
typename DX::Scalar killing(const Eigen::MatrixBase<DX>& X, const Eigen::MatrixBase<DY>& Y)
{
    return (X * Y).trace() / typename DX::Scalar(2);
}

template <typename Derived>
UnimodularMatrix<typename Derived::Scalar> sl2_inverse(const Eigen::MatrixBase<Derived>& g)
{
    UnimodularMatrix<typename Derived::Scalar> inv;
    inv << g(1, 1), -g(0, 1), -g(1, 0), g(0, 0);
    return inv / g.determinant();
}

/**
 * Matrix exponential of a traceless 2x2 matrix. X^2 = B(psi X, psi X) I, so
 * exp(X) = cosh(r) I + sinh(r)/r X for r^2 = B > 0 (cos/sin when B < 0).
 */
template <typename Derived>
UnimodularMatrix<typename Derived::Scalar> sl2_exp(const Eigen::MatrixBase<Derived>& X)
{
    using S = typename Derived::Scalar;
    using std::cos, std::cosh, std::sin, std::sinh, std::sqrt;
    const S q = -X.determinant();
    const auto I = UnimodularMatrix<S>::Identity();
    if (q > S(0)) {
        const S r = sqrt(q);
        return cosh(r) * I + (sinh(r) / r) * X;
    }
    if (q < S(0)) {
        const S r = sqrt(-q);
        return cos(r) * I + (sin(r) / r) * X;
    }
    return I + X;
}

/** Matrix of X -> g X g^{-1} in the basis psi^{-1}(standard basis). */
template <typename Derived>
LorentzIsometry<typename Derived::Scalar> adjoint(const Eigen::MatrixBase<Derived>& g)
{
    using S = typename Derived::Scalar;
    const UnimodularMatrix<S> gi = sl2_inverse(g);
    LorentzIsometry<S> m;
    for (int k = 0; k < 3; ++k) {
        m.col(k) = psi(g * sl2_basis<S>(k) * gi);
    }
    return m;
}

/**
 * Hyperbolic translation length 2 arccosh(|tr g| / 2) of an element of
 * SL(2,R); equals -2 log(mu) for the eigenvalues +-mu, +-1/mu with mu < 1.
 */
template <typename Derived>
typename Derived::Scalar translation_length(const Eigen::MatrixBase<Derived>& g)
{
    using S = typename Derived::Scalar;
    using std::abs, std::acosh;
    const S t = abs(g.trace());
    if (!(t > S(2) + S(1e-10))) {
        throw NotHyperbolic("|trace| = " + std::to_string(double(t)) + " <= 2");
    }
    return S(2) * acosh(t / S(2));
}

/**
 * Positive-trace preimage of a hyperbolic isometry under adjoint:
 * exp((l/2) psi^{-1}(X^0)) with l = -log(lambda).
 */
template <typename Scalar>
UnimodularMatrix<Scalar> lift(const HyperbolicFrame<Scalar>& frame)
{
    return sl2_exp((frame.length() / Scalar(2)) * psi_inv(frame.x_zero));
}

template <typename Scalar>
UnimodularMatrix<Scalar> lift(const LorentzIsometry<Scalar>& g)
{
    return lift(hyperbolic_frame(g));
}

}  // namespace margulis
