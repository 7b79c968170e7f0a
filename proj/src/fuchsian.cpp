#include "margulis/fuchsian.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace margulis
{

namespace
{

using std::acosh, std::cosh, std::exp, std::sqrt;

void check_range(int value, int lo, int hi, const char* what)
{
    if (value < lo || value > hi) {
        std::ostringstream ss;
        ss << what << " index " << value << " outside [" << lo << ", " << hi << "]";
        throw IndexOutOfRange(ss.str());
    }
}

constexpr double relation_tolerance = 1e-9;
constexpr double length_tolerance = 1e-6;

// The chain of pants is built and multiplied out in quad precision. For
// b >= 5 the generators reach norms ~1e3, and double rounding in words of
// length four already costs ~1e-6 in realized lengths.
using Real = Extended;
using Vec2 = Eigen::Matrix<Real, 2, 1>;
using Mat2 = UnimodularMatrix<Real>;
using Vec3 = LorentzVector<Real>;
using Mat3 = LorentzIsometry<Real>;
using Frame = HyperbolicFrame<Real>;

Mat2 positive_trace(const Mat2& g) { return g.trace() < 0 ? Mat2(-g) : g; }

// C with C^{-1} A C = diag(e^a, e^{-a}), det C = 1, for tr A > 2.
struct NormalFrame
{
    Mat2 C;
    Real a;
};

Vec2 eigenvector2(const Mat2& A, Real mu)
{
    const Vec2 v1(A(0, 1), mu - A(0, 0));
    const Vec2 v2(mu - A(1, 1), A(1, 0));
    return v1.norm() >= v2.norm() ? v1 : v2;
}

NormalFrame diagonalize(const Mat2& A)
{
    const Real a = acosh(A.trace() / 2);
    Mat2 C;
    C.col(0) = eigenvector2(A, exp(a)).normalized();
    C.col(1) = eigenvector2(A, exp(-a)).normalized();
    Real d = C.determinant();
    if (d < 0) {
        C.col(1) = -C.col(1);
        d = -d;
    }
    C /= sqrt(d);
    return {C, a};
}

// Second generator B of a pants (A, B, (AB)^{-1}) with tr B = trace_b and
// tr(AB) = trace_ab, in normal form relative to A. side selects one of the two
// mirror-image solutions; seam_ref, when given, places the foot of the common
// perpendicular from axis(A) to axis(B) where the perpendicular to
// axis(seam_ref) lands. twist then flows B along axis(A).
Mat2 pants_partner(const Mat2& A_in, Real trace_b, Real trace_ab, int side,
                   const Mat2* seam_ref, Real twist)
{
    const Mat2 A = positive_trace(A_in);
    const NormalFrame nf = diagonalize(A);
    const Real ea = exp(nf.a);
    const Real eia = exp(-nf.a);
    const Real p = (trace_ab - eia * trace_b) / (ea - eia);
    const Real s = trace_b - p;
    const Real qr = p * s - 1;
    if (!(qr < 0)) {
        throw ConstructionFailed("traces do not bound a pair of pants (qr = " +
                                 std::to_string(double(qr)) + ")");
    }
    Real height = 1;
    if (seam_ref) {
        const Mat2 R = sl2_inverse(nf.C) * (*seam_ref) * nf.C;
        const Real prod = -R(0, 1) / R(1, 0);
        if (!(prod > 0)) {
            throw ConstructionFailed("seam reference axis meets the gluing axis");
        }
        height = sqrt(prod);
    }
    const Real m = sqrt(-qr);
    Mat2 B;
    B << p, side * height * m, -side * m / height, s;
    B = nf.C * B * sl2_inverse(nf.C);

    const Frame axis = hyperbolic_frame(adjoint(A));
    const Mat2 T = sl2_exp((twist / 2) * psi_inv(axis.x_zero));
    return T * B * sl2_inverse(T);
}

OrientationReport orientation_of(const std::vector<HyperbolicFramed>& frames)
{
    const int n = static_cast<int>(frames.size());
    OrientationReport r;
    r.axis_products = Eigen::MatrixXd::Identity(n, n);
    r.axis_margin = -std::numeric_limits<double>::infinity();
    r.endpoint_margin = -std::numeric_limits<double>::infinity();
    for (int m = 0; m < n; ++m) {
        for (int k = 0; k < n; ++k) {
            if (m == k) {
                continue;
            }
            const double axes = inner(frames[m].x_zero, frames[k].x_zero);
            r.axis_products(m, k) = axes;
            const double ends = std::max(inner(frames[m].x_zero, frames[k].x_minus),
                                         inner(frames[m].x_zero, frames[k].x_plus));
            if (axes + 1.0 >= 0 && r.violation.empty()) {
                r.violation = "B(X_" + std::to_string(m + 1) + "^0, X_" + std::to_string(k + 1) +
                              "^0) = " + std::to_string(axes) + " is not < -1";
            }
            if (ends >= 0 && r.violation.empty()) {
                r.violation = "B(X_" + std::to_string(m + 1) + "^0, X_" + std::to_string(k + 1) +
                              "^+-) = " + std::to_string(ends) + " is not < 0";
            }
            r.axis_margin = std::max(r.axis_margin, axes + 1.0);
            r.endpoint_margin = std::max(r.endpoint_margin, ends);
        }
    }
    return r;
}

bool consistent(const std::vector<Mat2>& elements)
{
    std::vector<HyperbolicFramed> frames;
    frames.reserve(elements.size());
    try {
        for (const auto& e : elements) {
            frames.push_back(hyperbolic_frame(adjoint(e)).cast<double>());
        }
    }
    catch (const NotHyperbolic&) {
        return false;
    }
    return orientation_of(frames).consistent();
}

Real half_trace(double length) { return 2 * cosh(Real(length) / 2); }

// Conjugator k in SL(2,R) moving the point of H^2 minimizing
// sum_i B(x, X_i^0)^2 (squared sinh-distances to the axes) to (0, 0, 1).
// Keeps matrix entries of the chain O(e^{l/2}) as pants are added.
Mat2 centering_conjugator(const std::vector<Mat2>& elements)
{
    const Mat3 J = minkowski_metric<Real>();
    Mat3 Q = Mat3::Zero();
    for (const auto& e : elements) {
        const Vec3 n = J * hyperbolic_frame(adjoint(e)).x_zero;
        Q += n * n.transpose();
    }
    // x^T Q x is minimized on x^T J x = -1 by the unique J-timelike
    // generalized eigenvector of J v = nu Q v (the one with nu < 0).
    Eigen::GeneralizedSelfAdjointEigenSolver<Mat3> es(J, Q);
    if (es.info() != Eigen::Success || !(es.eigenvalues()(0) < 0)) {
        return Mat2::Identity();
    }
    Vec3 x = es.eigenvectors().col(0);
    x /= sqrt(-norm2(x));
    if (x(2) < 0) {
        x = -x;
    }
    const Vec3 e3(0, 0, 1);
    const Real dist = acosh(std::max(Real(1), x(2)));
    if (dist < 1e-30) {
        return Mat2::Identity();
    }
    Vec3 n = cross(x, e3);
    n /= sqrt(norm2(n));
    for (Real sgn : {Real(1), Real(-1)}) {
        const Mat2 k = sl2_exp((sgn * dist / 2) * psi_inv(n));
        if ((adjoint(k) * x - e3).norm() < 1e-12 * (1 + x.norm())) {
            return k;
        }
    }
    return Mat2::Identity();
}

}  // namespace

void HolonomySpec::validate() const
{
    if (b < 3) {
        throw std::invalid_argument("b must be at least 3, got " + std::to_string(b));
    }
    const auto need = [](const std::vector<double>& v, std::size_t n, const char* name) {
        if (v.size() != n) {
            throw std::invalid_argument(std::string(name) + " needs " + std::to_string(n) +
                                        " values, got " + std::to_string(v.size()));
        }
    };
    need(boundary_lengths, b + 1, "boundary_lengths");
    need(dividing_lengths, b - 2, "dividing_lengths");
    need(hyperbolic_twists, b - 2, "hyperbolic_twists");
    for (double l : boundary_lengths) {
        if (!(l > 0) || !std::isfinite(l)) {
            throw std::invalid_argument("boundary lengths must be positive and finite (no cusps)");
        }
    }
    for (double l : dividing_lengths) {
        if (!(l > 0) || !std::isfinite(l)) {
            throw std::invalid_argument("dividing lengths must be positive and finite");
        }
    }
    for (double t : hyperbolic_twists) {
        if (!std::isfinite(t)) {
            throw std::invalid_argument("twists must be finite");
        }
    }
}

HolonomySpec HolonomySpec::symmetric(int b, double length, double twist)
{
    HolonomySpec s;
    s.b = b;
    s.boundary_lengths.assign(b + 1, length);
    s.dividing_lengths.assign(std::max(b - 2, 0), length);
    s.hyperbolic_twists.assign(std::max(b - 2, 0), twist);
    return s;
}

Word h_word(int b, int j)
{
    check_range(j, 1, b - 2, "dividing curve");
    std::vector<Letter> letters;
    for (int i = j + 1; i >= 1; --i) {
        letters.push_back({i, -1});
    }
    return Word(std::move(letters));
}

Word f_word(int b, int l)
{
    check_range(l, 1, b - 2, "twist curve");
    return Word({Letter{l + 2, -1}, Letter{l + 1, -1}});
}

std::tuple<Word, Word, Word> pants_presentation(int b, int j)
{
    check_range(j, 1, b - 1, "pants");
    if (j == 1) {
        return {Word::generator(1), Word::generator(2), h_word(b, 1)};
    }
    if (j == b - 1) {
        return {h_word(b, b - 2).inverse(), Word::generator(b), Word::generator(b + 1)};
    }
    return {h_word(b, j - 1).inverse(), Word::generator(j + 1), h_word(b, j)};
}

const LorentzIsometryd& Holonomy::generator(int i) const
{
    check_range(i, 1, b() + 1, "generator");
    return generators_[i - 1];
}

const LorentzIsometry<Extended>& Holonomy::generator_extended(int i) const
{
    check_range(i, 1, b() + 1, "generator");
    return extended_[i - 1];
}

const UnimodularMatrixd& Holonomy::generator_lift(int i) const
{
    check_range(i, 1, b() + 1, "generator");
    return lifts_[i - 1];
}

const HyperbolicFramed& Holonomy::generator_frame(int i) const
{
    check_range(i, 1, b() + 1, "generator");
    return gen_frames_[i - 1];
}

const LorentzIsometryd& Holonomy::dividing(int j) const
{
    check_range(j, 1, b() - 2, "dividing curve");
    return dividing_[j - 1];
}

const HyperbolicFramed& Holonomy::dividing_frame(int j) const
{
    check_range(j, 1, b() - 2, "dividing curve");
    return div_frames_[j - 1];
}

const HyperbolicFramed& Holonomy::f_frame(int l) const
{
    check_range(l, 1, b() - 2, "twist curve");
    return f_frames_[l - 1];
}

LorentzIsometry<Extended> Holonomy::evaluate_extended(const Word& w) const
{
    Mat3 m = Mat3::Identity();
    for (const auto& l : w.letters()) {
        check_range(l.generator, 1, b() + 1, "generator");
        const Mat3& g = extended_[l.generator - 1];
        m = l.exponent > 0 ? Mat3(m * g) : Mat3(m * lorentz_inverse(g));
    }
    return m;
}

LorentzIsometryd Holonomy::evaluate(const Word& w) const
{
    return evaluate_extended(w).cast<double>();
}

HyperbolicFrame<Extended> Holonomy::frame_extended(const Word& w) const
{
    if (auto it = frame_cache_.find(w); it != frame_cache_.end()) {
        return it->second;
    }
    return hyperbolic_frame(evaluate_extended(w));
}

HyperbolicFramed Holonomy::frame(const Word& w) const { return frame_extended(w).cast<double>(); }

double Holonomy::relation_residual() const
{
    Mat3 prod = Mat3::Identity();
    for (const auto& g : extended_) {
        prod = prod * g;
    }
    return static_cast<double>((prod - Mat3::Identity()).cwiseAbs().maxCoeff());
}

OrientationReport Holonomy::orientation() const { return orientation_of(gen_frames_); }

LorentzIsometryd evaluate(const Holonomy& hol, const Word& w) { return hol.evaluate(w); }

HolonomyPtr build_holonomy(const HolonomySpec& spec)
{
    try {
        spec.validate();
    }
    catch (const std::invalid_argument& e) {
        throw ConstructionFailed(e.what());
    }
    const int b = spec.b;
    const auto& L = spec.boundary_lengths;
    const auto& M = spec.dividing_lengths;

    std::vector<Mat2> G(b + 2);  // 1-based
    G[1] = Mat2(Vec2(exp(Real(L[0]) / 2), exp(-Real(L[0]) / 2)).asDiagonal());

    // Tries the two mirror-image partners; keeps the consistently oriented one.
    const auto choose = [&](const Mat2& A, Real trace_b, Real trace_ab, const Mat2* ref,
                            double twist, int upto) {
        std::string why;
        for (int side : {1, -1}) {
            try {
                Mat2 B = pants_partner(A, trace_b, trace_ab, side, ref, twist);
                std::vector<Mat2> pants{A, B, sl2_inverse(Mat2(A * B))};
                std::vector<Mat2> boundary(G.begin() + 1, G.begin() + upto);
                boundary.push_back(B);
                if (consistent(pants) && consistent(boundary)) {
                    return B;
                }
                why = "neither mirror-image normal form is consistently oriented";
            }
            catch (const Error& e) {
                why = e.what();
            }
        }
        throw ConstructionFailed("pants containing g_" + std::to_string(upto) + ": " + why);
    };

    G[2] = choose(G[1], half_trace(L[1]), -half_trace(M[0]), nullptr, 0.0, 2);
    Mat2 prefix = G[1] * G[2];  // h_1^{-1}
    for (int j = 2; j <= b - 1; ++j) {
        const double product_length = j <= b - 2 ? M[j - 1] : L[b];
        G[j + 1] = choose(prefix, half_trace(L[j]), -half_trace(product_length), &G[j],
                          spec.hyperbolic_twists[j - 2], j + 1);

        const Mat2 k = centering_conjugator({G.begin() + 1, G.begin() + j + 2});
        const Mat2 ki = sl2_inverse(k);
        for (int i = 1; i <= j + 1; ++i) {
            G[i] = k * G[i] * ki;
        }
        prefix = G[1];
        for (int i = 2; i <= j + 1; ++i) {
            prefix = prefix * G[i];
        }
    }
    G[b + 1] = sl2_inverse(prefix);

    auto hol = std::make_shared<Holonomy>();
    hol->spec_ = spec;
    for (int i = 1; i <= b + 1; ++i) {
        hol->extended_.push_back(adjoint(G[i]));
    }
    // g_{b+1} is taken as the inverse of the product g_1 ... g_b of the stored
    // matrices, so the relation holds to working precision and cocycle values
    // derived through it agree with the frame of g_{b+1}.
    {
        Mat3 prod = Mat3::Identity();
        for (int i = 0; i < b; ++i) {
            prod = prod * hol->extended_[i];
        }
        hol->extended_[b] = prod.inverse();
    }
    for (int i = 1; i <= b + 1; ++i) {
        hol->lifts_.push_back(G[i].cast<double>());
        hol->generators_.push_back(hol->extended_[i - 1].cast<double>());
    }

    const double residual = hol->relation_residual();
    if (!(residual <= relation_tolerance)) {
        throw ConstructionFailed("relation residual " + std::to_string(residual));
    }
    const auto realized_length = [](const Mat3& g) {
        return double(translation_length(lift(hyperbolic_frame(g))));
    };
    try {
        for (int i = 1; i <= b + 1; ++i) {
            const Mat3& g = hol->extended_[i - 1];
            hol->gen_frames_.push_back(hyperbolic_frame(g).cast<double>());
            const double realized = realized_length(g);
            if (!(std::abs(realized - L[i - 1]) <= length_tolerance)) {
                throw ConstructionFailed("length of g_" + std::to_string(i) + " is " +
                                         std::to_string(realized));
            }
        }
        for (int j = 1; j <= b - 2; ++j) {
            const Mat3 h = hol->evaluate_extended(h_word(b, j));
            hol->dividing_.push_back(h.cast<double>());
            hol->div_frames_.push_back(hyperbolic_frame(h).cast<double>());
            const double realized = realized_length(h);
            if (!(std::abs(realized - M[j - 1]) <= length_tolerance)) {
                throw ConstructionFailed("length of h_" + std::to_string(j) + " is " +
                                         std::to_string(realized));
            }
        }
        for (int l = 1; l <= b - 2; ++l) {
            hol->f_frames_.push_back(
                hyperbolic_frame(hol->evaluate_extended(f_word(b, l))).cast<double>());
        }
    }
    catch (const NotHyperbolic& e) {
        throw ConstructionFailed(e.what());
    }
    const OrientationReport orient = hol->orientation();
    if (!orient.consistent()) {
        throw ConstructionFailed("consistently-oriented condition fails: " + orient.violation);
    }

    std::vector<Word> cached;
    for (int i = 1; i <= b + 1; ++i) {
        cached.push_back(Word::generator(i));
    }
    for (int j = 1; j <= b - 2; ++j) {
        cached.push_back(h_word(b, j));
        cached.push_back(f_word(b, j));
    }
    for (const Word& w : cached) {
        const Frame f = hyperbolic_frame(hol->evaluate_extended(w));
        hol->frame_cache_[w] = f;
        hol->frame_cache_[w.inverse()] = f.inverse();
    }
    return hol;
}

}  // namespace margulis
