#pragma once

#include <array>

#include "margulis/affine.hpp"

namespace margulis::test
{

// Dense oracle: all nine coefficients as unknowns, the three relation rows
// plus six pinning rows, solved by least squares. Returns (c2+, c3-, c3+).
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> pants_oracle(const PantsFramesT<Scalar>& fr,
                                         const PantsCoefficientsT<Scalar>& k)
{
    using Mat3 = Eigen::Matrix<Scalar, 3, 3>;
    using Mat9 = Eigen::Matrix<Scalar, 9, 9>;
    using Vec9 = Eigen::Matrix<Scalar, 9, 1>;
    const std::array<const HyperbolicFrame<Scalar>*, 3> f{&fr.f1, &fr.f2, &fr.f3};
    const std::array<Mat3, 3> act{Mat3::Identity(), fr.f1_matrix, fr.f1_matrix * fr.f2_matrix};
    Mat9 A = Mat9::Zero();
    Vec9 y = Vec9::Zero();
    for (int i = 0; i < 3; ++i) {
        A.template block<3, 1>(0, 3 * i) = act[i] * f[i]->x_zero;
        A.template block<3, 1>(0, 3 * i + 1) = act[i] * f[i]->x_minus;
        A.template block<3, 1>(0, 3 * i + 2) = act[i] * f[i]->x_plus;
    }
    // unknown order: a1 c1- c1+ a2 c2- c2+ a3 c3- c3+
    const std::array<std::pair<int, Scalar>, 6> pins{
        {{0, k.alpha1}, {1, k.c1_minus}, {2, k.c1_plus}, {3, k.alpha2}, {4, k.c2_minus},
         {6, k.alpha3}}};
    for (int r = 0; r < 6; ++r) {
        A(3 + r, pins[r].first) = Scalar(1);
        y(3 + r) = pins[r].second;
    }
    const Vec9 x = A.colPivHouseholderQr().solve(y);
    return {x(5), x(7), x(8)};
}

}  // namespace margulis::test
