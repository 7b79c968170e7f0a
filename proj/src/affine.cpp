#include "margulis/affine.hpp"

#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>

namespace margulis
{

namespace
{

using Real = Extended;
using Vec3 = LorentzVector<Real>;
using Mat3 = LorentzIsometry<Real>;

Vec3 derived_last_value(const Holonomy& hol, const std::vector<Vec3>& values)
{
    // u(g_1 ... g_b) accumulated left to right, then u(g_{b+1}) = -g_{b+1} u(g_1 ... g_b).
    Mat3 prefix = Mat3::Identity();
    Vec3 acc = Vec3::Zero();
    for (int i = 1; i <= hol.b(); ++i) {
        acc += prefix * values[i - 1];
        prefix = prefix * hol.generator_extended(i);
    }
    return -(hol.generator_extended(hol.b() + 1) * acc);
}

void require_size(const std::vector<double>& v, std::size_t n, const char* name)
{
    if (v.size() != n) {
        throw std::invalid_argument(std::string(name) + " needs " + std::to_string(n) +
                                    " values, got " + std::to_string(v.size()));
    }
}

}  // namespace

Cocycle::Cocycle(HolonomyPtr hol, const std::vector<LorentzVectord>& values)
    : Cocycle(hol, [&] {
          std::vector<Vec3> ext;
          for (const auto& v : values) {
              ext.push_back(v.cast<Real>());
          }
          return ext;
      }())
{
}

Cocycle::Cocycle(HolonomyPtr hol, std::vector<Vec3> values)
    : hol_(std::move(hol)), values_(std::move(values))
{
    if (!hol_) {
        throw std::invalid_argument("cocycle needs a holonomy");
    }
    if (values_.size() != static_cast<std::size_t>(hol_->b())) {
        throw std::invalid_argument("cocycle needs " + std::to_string(hol_->b()) +
                                    " generator values, got " + std::to_string(values_.size()));
    }
    values_.push_back(derived_last_value(*hol_, values_));
}

Cocycle Cocycle::zero(HolonomyPtr hol)
{
    const int b = hol->b();
    return Cocycle(std::move(hol), std::vector<Vec3>(b, Vec3::Zero()));
}

const LorentzVector<Extended>& Cocycle::value_extended(int i) const
{
    if (i < 1 || i > b() + 1) {
        throw IndexOutOfRange("generator index " + std::to_string(i));
    }
    return values_[i - 1];
}

Cocycle& Cocycle::operator+=(const Cocycle& other)
{
    if (other.hol_ != hol_) {
        throw std::invalid_argument("cocycles over different holonomies");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        values_[i] += other.values_[i];
    }
    return *this;
}

Cocycle& Cocycle::operator*=(double s)
{
    for (auto& v : values_) {
        v *= s;
    }
    return *this;
}

DeformationParams DeformationParams::zero(int b)
{
    return {std::vector<double>(b + 1, 0.0), std::vector<double>(b - 2, 0.0),
            std::vector<double>(b - 2, 0.0)};
}

DeformationParams DeformationParams::basis(int b, int k)
{
    DeformationParams p = zero(b);
    if (k < 0 || k >= 3 * b - 3) {
        throw IndexOutOfRange("basis index " + std::to_string(k));
    }
    if (k <= b) {
        p.alpha[k] = 1;
    }
    else if (k < 2 * b - 1) {
        p.beta[k - b - 1] = 1;
    }
    else {
        p.t[k - 2 * b + 1] = 1;
    }
    return p;
}

Eigen::VectorXd DeformationParams::flatten() const
{
    Eigen::VectorXd v(dimension());
    int k = 0;
    for (const auto* part : {&alpha, &beta, &t}) {
        for (double x : *part) {
            v(k++) = x;
        }
    }
    return v;
}

void DeformationParams::validate(int b) const
{
    require_size(alpha, b + 1, "alpha");
    require_size(beta, b - 2, "beta");
    require_size(t, b - 2, "t");
}

Cocycle coboundary(HolonomyPtr hol, const LorentzVectord& v)
{
    std::vector<Vec3> values;
    const Vec3 ve = v.cast<Real>();
    for (int i = 1; i <= hol->b(); ++i) {
        values.push_back(ve - hol->generator_extended(i) * ve);
    }
    return Cocycle(std::move(hol), std::move(values));
}

LorentzVector<Extended> evaluate_cocycle_extended(const Cocycle& u, const Word& w)
{
    const Holonomy& hol = *u.holonomy();
    Mat3 prefix = Mat3::Identity();
    Vec3 acc = Vec3::Zero();
    for (const Letter& l : w.letters()) {
        const Mat3& g = hol.generator_extended(l.generator);
        const Vec3& ug = u.value_extended(l.generator);
        if (l.exponent > 0) {
            acc += prefix * ug;
            prefix = prefix * g;
        }
        else {
            const Mat3 gi = lorentz_inverse(g);
            acc -= prefix * (gi * ug);
            prefix = prefix * gi;
        }
    }
    return acc;
}

LorentzVectord evaluate_cocycle(const Cocycle& u, const Word& w)
{
    return evaluate_cocycle_extended(u, w).cast<double>();
}

double margulis(const Cocycle& u, const Word& w)
{
    const auto frame = u.holonomy()->frame_extended(w);
    return double(inner(evaluate_cocycle_extended(u, w), frame.x_zero));
}

InvariantAxis invariant_axis(const LorentzIsometryd& g, const LorentzVectord& uval)
{
    const HyperbolicFramed f = hyperbolic_frame(g);
    const LorentzVectord c = frame_coordinates(f, uval);
    const double a_minus = -c(1) / (f.lambda - 1.0);
    const double a_plus = -c(2) / (1.0 / f.lambda - 1.0);
    return {a_minus * f.x_minus + a_plus * f.x_plus, f.x_zero, c(0)};
}

PantsFramesT<Extended> pants_frames_extended(const Holonomy& hol, int j)
{
    const auto [w1, w2, w3] = pants_presentation(hol.b(), j);
    return {hol.frame_extended(w1), hol.frame_extended(w2), hol.frame_extended(w3),
            hol.evaluate_extended(w1), hol.evaluate_extended(w2)};
}

PantsFrames pants_frames(const Holonomy& hol, int j)
{
    const auto e = pants_frames_extended(hol, j);
    return {e.f1.cast<double>(), e.f2.cast<double>(), e.f3.cast<double>(),
            e.f1_matrix.cast<double>(), e.f2_matrix.cast<double>()};
}

Cocycle base_cocycle(HolonomyPtr hol, const std::vector<double>& alpha,
                     const std::vector<double>& beta)
{
    const int b = hol->b();
    require_size(alpha, b + 1, "alpha");
    require_size(beta, b - 2, "beta");

    std::vector<Vec3> values(b, Vec3::Zero());

    // P_1 = (g_1, g_2, h_1): c_1^+- = c_2^- = 0.
    auto fr = pants_frames_extended(*hol, 1);
    PantsCoefficientsT<Real> k;
    k.alpha1 = alpha[0];
    k.alpha2 = alpha[1];
    k.alpha3 = beta[0];
    auto u = pants_values(fr, solve_pants(fr, k).coefficients);
    values[0] = u[0];
    values[1] = u[1];

    // P_j = (h_{j-1}^{-1}, g_{j+1}, h_j or g_{b+1}): u(h_{j-1}^{-1}) is already
    // fixed by P_{j-1}; the one remaining degree of freedom is set by c_{j+1}^- = 0.
    for (int j = 2; j <= b - 1; ++j) {
        const Mat3 h_prev = fr.f1_matrix * fr.f2_matrix;  // F_3^{-1} of P_{j-1}
        const Vec3 u_first = -(h_prev * u[2]);
        fr = pants_frames_extended(*hol, j);
        const Vec3 coords = frame_coordinates(fr.f1, u_first);
        k = PantsCoefficientsT<Real>{};
        k.alpha1 = coords(0);
        k.c1_minus = coords(1);
        k.c1_plus = coords(2);
        k.alpha2 = alpha[j];
        k.alpha3 = j <= b - 2 ? beta[j - 1] : alpha[b];
        u = pants_values(fr, solve_pants(fr, k).coefficients);
        values[j] = u[1];
    }
    return Cocycle(std::move(hol), std::move(values));
}

Cocycle affine_twist(HolonomyPtr hol, int k)
{
    const int b = hol->b();
    if (k < 1 || k > b - 2) {
        throw IndexOutOfRange("affine twist index " + std::to_string(k));
    }
    const Vec3 y = hol->frame_extended(h_word(b, k)).x_zero;
    std::vector<Vec3> values(b, Vec3::Zero());
    for (int i = k + 2; i <= b; ++i) {
        values[i - 1] = y - hol->generator_extended(i) * y;
    }
    return Cocycle(std::move(hol), std::move(values));
}

Cocycle phi(HolonomyPtr hol, const DeformationParams& p)
{
    p.validate(hol->b());
    Cocycle u = base_cocycle(hol, p.alpha, p.beta);
    for (int k = 1; k <= hol->b() - 2; ++k) {
        if (p.t[k - 1] != 0) {
            u += p.t[k - 1] * affine_twist(hol, k);
        }
    }
    return u;
}

Eigen::VectorXd cohomology_coordinates(const Cocycle& u)
{
    const int b = u.b();
    Eigen::VectorXd out(3 * b - 3);
    int r = 0;
    for (int i = 1; i <= b + 1; ++i) {
        out(r++) = margulis(u, Word::generator(i));
    }
    for (int j = 1; j <= b - 2; ++j) {
        out(r++) = margulis(u, h_word(b, j));
    }
    for (int l = 1; l <= b - 2; ++l) {
        out(r++) = margulis(u, f_word(b, l));
    }
    return out;
}

Eigen::MatrixXd isomorphism_matrix(const HolonomyPtr& hol)
{
    const int n = 3 * hol->b() - 3;
    Eigen::MatrixXd m(n, n);
    for (int k = 0; k < n; ++k) {
        m.col(k) = cohomology_coordinates(phi(hol, DeformationParams::basis(hol->b(), k)));
    }
    return m;
}

LorentzVectord fit_coboundary(const Cocycle& u)
{
    const int b = u.b();
    Eigen::MatrixXd A(3 * b, 3);
    Eigen::VectorXd y(3 * b);
    for (int i = 1; i <= b; ++i) {
        A.block<3, 3>(3 * (i - 1), 0) =
            Eigen::Matrix3d::Identity() - u.holonomy()->generator(i);
        y.segment<3>(3 * (i - 1)) = u.value(i);
    }
    return A.colPivHouseholderQr().solve(y);
}

void write_cocycle_csv(std::ostream& os, const Cocycle& u)
{
    const auto old = os.precision(17);
    os << "generator,x1,x2,x3\n";
    for (int i = 1; i <= u.b() + 1; ++i) {
        // Adding zero turns -0 into 0.
        const LorentzVectord v = u.value(i).array() + 0.0;
        os << i << ',' << v(0) << ',' << v(1) << ',' << v(2) << '\n';
    }
    os.precision(old);
}

}  // namespace margulis
