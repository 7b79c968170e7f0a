#include <sstream>

#include "doctest.h"
#include "margulis/affine.hpp"
#include "margulis/sampling.hpp"
#include "oracles.hpp"

using namespace margulis;

namespace
{

const HolonomyPtr& holonomy(int b)
{
    static std::map<int, HolonomyPtr> cache;
    auto& h = cache[b];
    if (!h) {
        h = build_holonomy(HolonomySpec::symmetric(b));
    }
    return h;
}

double max_diff(const Cocycle& a, const Cocycle& b)
{
    double d = 0;
    for (int i = 1; i <= a.b() + 1; ++i) {
        d = std::max(d, (a.value(i) - b.value(i)).cwiseAbs().maxCoeff());
    }
    return d;
}

}  // namespace

TEST_CASE("coboundaries")
{
    const HolonomyPtr& hol = holonomy(3);
    CHECK(max_diff(coboundary(hol, LorentzVectord::Zero()), Cocycle::zero(hol)) == 0);

    Rng rng(41);
    for (int k = 0; k < 20; ++k) {
        const LorentzVectord v = random_vector(rng);
        const Cocycle d = coboundary(hol, v);
        for (int i = 1; i <= 4; ++i) {
            const LorentzVectord expect = v - hol->generator(i) * v;
            CHECK((d.value(i) - expect).norm() <= 1e-9 * (1 + expect.norm()));
        }
        const Word w = random_word(rng, 4, 5);
        const LorentzVectord dw = v - hol->evaluate(w) * v;
        CHECK((evaluate_cocycle(d, w) - dw).norm() <= 1e-9 * (1 + dw.norm()));
        CHECK(std::abs(margulis::margulis(d, w)) <= 1e-9);
        CHECK(cohomology_coordinates(d).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("cocycle evaluation")
{
    const HolonomyPtr& hol = holonomy(4);
    Rng rng(42);
    const Cocycle u = phi(hol, random_params(rng, 4));
    CHECK(evaluate_cocycle(u, Word()).norm() == 0);

    const LorentzVectord g12 = u.value(1) + hol->generator(1) * u.value(2);
    CHECK((evaluate_cocycle(u, Word({{1, 1}, {2, 1}})) - g12).norm() <= 1e-9 * g12.norm());

    // u(h_j) = -sum_{x=1}^{j+1} g_{j+1}^{-1} ... g_x^{-1} u(g_x)
    for (int j = 1; j <= 2; ++j) {
        LorentzVector<Extended> sum = LorentzVector<Extended>::Zero();
        for (int x = 1; x <= j + 1; ++x) {
            LorentzIsometry<Extended> m = LorentzIsometry<Extended>::Identity();
            for (int y = j + 1; y >= x; --y) {
                m = m * lorentz_inverse(hol->generator_extended(y));
            }
            sum -= m * u.value_extended(x);
        }
        const auto direct = evaluate_cocycle_extended(u, h_word(4, j));
        CHECK(double((direct - sum).norm()) <= 1e-9 * (1 + double(sum.norm())));
    }

    // u(g_1 ... g_{b+1}) = 0
    LorentzVector<Extended> acc = LorentzVector<Extended>::Zero();
    LorentzIsometry<Extended> prefix = LorentzIsometry<Extended>::Identity();
    for (int i = 1; i <= 5; ++i) {
        acc += prefix * u.value_extended(i);
        prefix = prefix * hol->generator_extended(i);
    }
    CHECK(double(acc.norm()) <= 1e-9);
}

TEST_CASE("cocycle condition on random word pairs")
{
    Rng rng(43);
    for (int b = 3; b <= 5; ++b) {
        const HolonomyPtr& hol = holonomy(b);
        double worst = 0;
        for (int k = 0; k < 200; ++k) {
            const Cocycle u = phi(hol, random_params(rng, b));
            const Word v = random_word(rng, b + 1, 8), w = random_word(rng, b + 1, 8);
            const auto lhs = evaluate_cocycle_extended(u, v * w);
            const auto rhs = hol->evaluate_extended(v) * evaluate_cocycle_extended(u, w) +
                             evaluate_cocycle_extended(u, v);
            worst = std::max(worst, double((lhs - rhs).norm() / (1 + rhs.norm())));
        }
        CHECK(worst <= 1e-8);
    }
}

TEST_CASE("Margulis invariant")
{
    const HolonomyPtr& hol = holonomy(3);
    const HyperbolicFramed f = hol->generator_frame(1);
    std::vector<LorentzVectord> values(3, LorentzVectord::Zero());
    values[0] = 3 * f.x_zero + 5 * f.x_minus;
    const Cocycle u(hol, values);
    CHECK(margulis::margulis(u, Word::generator(1)) == doctest::Approx(3).epsilon(1e-12));

    // Independence of the base point: B(gamma(x) - x, X^0) with gamma(x) = g x + u(g).
    Rng rng(44);
    const Cocycle v = phi(hol, random_params(rng, 3));
    for (int k = 0; k < 100; ++k) {
        const Word w = random_word(rng, 4, 4);
        const auto g = hol->evaluate_extended(w);
        const auto uw = evaluate_cocycle_extended(v, w);
        const auto x = random_vector(rng, -10, 10).cast<Extended>().eval();
        const auto x0 = hol->frame_extended(w).x_zero;
        const double at_x = double(inner(LorentzVector<Extended>(g * x + uw - x), x0));
        CHECK(at_x == doctest::Approx(margulis::margulis(v, w)).epsilon(1e-10));
        CHECK(margulis::margulis(v, w.inverse()) == doctest::Approx(margulis::margulis(v, w)).epsilon(1e-10));
    }
}

TEST_CASE("invariant axis")
{
    Rng rng(45);
    for (int k = 0; k < 50; ++k) {
        const LorentzIsometryd g = random_hyperbolic(rng);
        const LorentzVectord uval = random_vector(rng);
        const InvariantAxis ax = invariant_axis(g, uval);
        const HyperbolicFramed f = hyperbolic_frame(g);
        CHECK((ax.direction - f.x_zero).norm() == 0);
        CHECK(ax.translation == doctest::Approx(inner(uval, f.x_zero)));
        const LorentzVectord moved = g * ax.base_point + uval - ax.base_point;
        CHECK((moved - ax.translation * f.x_zero).norm() <= 1e-9);

        // Conjugating by a translation v shifts the axis by v modulo the axis direction.
        const LorentzVectord v = random_vector(rng);
        const InvariantAxis shifted = invariant_axis(g, uval + v - g * v);
        const LorentzVectord d = shifted.base_point - ax.base_point - v;
        CHECK((d - inner(d, f.x_zero) * f.x_zero).norm() <= 1e-9);
    }
    const InvariantAxis zero = invariant_axis(random_hyperbolic(rng), LorentzVectord::Zero());
    CHECK(zero.base_point.norm() == 0);
}

TEST_CASE("pants system against the dense oracle")
{
    Rng rng(46);
    int checked = 0;
    for (int b = 3; b <= 5; ++b) {
        const HolonomyPtr& hol = holonomy(b);
        for (int j = 1; j <= b - 1; ++j) {
            const PantsFrames fr = pants_frames(*hol, j);
            const PantsFramesT<Extended> fe = pants_frames_extended(*hol, j);
            const double a12 = inner(fr.f1.x_zero, fr.f2.x_zero);
            const double a23 = inner(fr.f2.x_zero, fr.f3.x_zero);
            const double a13 = inner(fr.f1.x_zero, fr.f3.x_zero);
            CHECK(a12 < -1);
            CHECK(a23 < -1);
            CHECK(a13 < -1);
            const double det_a = 1 + 2 * a12 * a23 * a13 - a12 * a12 - a23 * a23 - a13 * a13;
            const double scale = fr.f1_matrix.norm() * fr.f2_matrix.norm();

            for (int k = 0; k < 10; ++k, ++checked) {
                PantsCoefficients c;
                c.alpha1 = uniform(rng);
                c.alpha2 = uniform(rng);
                c.alpha3 = uniform(rng);
                c.c1_minus = uniform(rng);
                c.c1_plus = uniform(rng);
                c.c2_minus = uniform(rng);
                const PantsSolution s = solve_pants(fr, c);
                CHECK(s.gram_determinant < 0);
                CHECK(s.gram_determinant == doctest::Approx(det_a));
                CHECK(std::abs(s.system_determinant) > 1e-12);
                const double size = std::max({1.0, std::abs(s.coefficients.c2_plus),
                                              std::abs(s.coefficients.c3_minus),
                                              std::abs(s.coefficients.c3_plus)});
                CHECK(s.residual <= 1e-15 * scale * size);

                PantsCoefficientsT<Extended> ce;
                ce.alpha1 = c.alpha1;
                ce.alpha2 = c.alpha2;
                ce.alpha3 = c.alpha3;
                ce.c1_minus = c.c1_minus;
                ce.c1_plus = c.c1_plus;
                ce.c2_minus = c.c2_minus;
                const Eigen::Vector3d o = test::pants_oracle(fe, ce).cast<double>();
                CHECK(std::abs(s.coefficients.c2_plus - o(0)) <= 1e-8);
                CHECK(std::abs(s.coefficients.c3_minus - o(1)) <= 1e-8);
                CHECK(std::abs(s.coefficients.c3_plus - o(2)) <= 1e-8);
            }
            const PantsSolution z = solve_pants(fr, PantsCoefficients{});
            CHECK(z.coefficients.c2_plus == 0);
            CHECK(z.coefficients.c3_minus == 0);
            CHECK(z.coefficients.c3_plus == 0);
        }
    }
    CHECK(checked == 90);
}

TEST_CASE("base cocycle")
{
    const HolonomyPtr& hol = holonomy(3);
    const Cocycle ones = base_cocycle(hol, {1, 1, 1, 1}, {1});
    for (int i = 1; i <= 4; ++i) {
        CHECK(std::abs(margulis::margulis(ones, Word::generator(i)) - 1) <= 1e-8);
    }
    CHECK(std::abs(margulis::margulis(ones, h_word(3, 1)) - 1) <= 1e-8);
    CHECK(max_diff(base_cocycle(hol, {0, 0, 0, 0}, {0}), Cocycle::zero(hol)) == 0);

    // Gauge: c1^+- = c2^- = 0
    const HolonomyPtr& h5 = holonomy(5);
    Rng rng(47);
    const DeformationParams p = random_params(rng, 5);
    const Cocycle u = base_cocycle(h5, p.alpha, p.beta);
    const LorentzVectord c1 = frame_coordinates(h5->generator_frame(1), u.value(1));
    const LorentzVectord c2 = frame_coordinates(h5->generator_frame(2), u.value(2));
    CHECK(std::abs(c1(1)) <= 1e-12);
    CHECK(std::abs(c1(2)) <= 1e-12);
    CHECK(std::abs(c2(1)) <= 1e-12);
    // c_{j+1}^- = 0 on every later pants
    for (int j = 2; j <= 4; ++j) {
        const LorentzVectord c = frame_coordinates(h5->generator_frame(j + 1), u.value(j + 1));
        CHECK(std::abs(c(1)) <= 1e-9);
    }

    const DeformationParams q = random_params(rng, 5);
    const Cocycle lhs = base_cocycle(h5, [&] {
        std::vector<double> a;
        for (int i = 0; i < 6; ++i) a.push_back(2 * p.alpha[i] - 3 * q.alpha[i]);
        return a;
    }(), [&] {
        std::vector<double> a;
        for (int i = 0; i < 3; ++i) a.push_back(2 * p.beta[i] - 3 * q.beta[i]);
        return a;
    }());
    const Cocycle rhs = 2.0 * u - 3.0 * base_cocycle(h5, q.alpha, q.beta);
    CHECK(max_diff(lhs, rhs) <= 1e-9 * (1 + max_diff(rhs, Cocycle::zero(h5))));
}

TEST_CASE("affine twists")
{
    const HolonomyPtr& hol = holonomy(5);
    for (int k = 1; k <= 3; ++k) {
        const Cocycle at = affine_twist(hol, k);
        const LorentzVectord y = hol->dividing_frame(k).x_zero;
        for (int i = 1; i <= 6; ++i) {
            const LorentzVectord expect =
                i <= k + 1 ? LorentzVectord::Zero() : LorentzVectord(y - hol->generator(i) * y);
            CHECK((at.value(i) - expect).norm() <= 1e-9 * (1 + expect.norm()));
            CHECK(std::abs(margulis::margulis(at, Word::generator(i))) <= 1e-9);
        }
        CHECK(evaluate_cocycle(at, h_word(5, k)).norm() <= 1e-9);
        for (int j = 1; j <= 3; ++j) {
            CHECK(std::abs(margulis::margulis(at, h_word(5, j))) <= 1e-9);
        }
        for (int m = 1; m <= 3; ++m) {
            if (m != k) {
                CHECK(std::abs(margulis::margulis(at, f_word(5, m))) <= 1e-9);
            }
        }
        CHECK(std::abs(margulis::margulis(at, f_word(5, k))) > 1e-3);
    }
    CHECK_THROWS_AS(affine_twist(hol, 0), IndexOutOfRange);
    CHECK_THROWS_AS(affine_twist(hol, 4), IndexOutOfRange);
}

TEST_CASE("phi and cohomology coordinates")
{
    Rng rng(48);
    for (int b = 3; b <= 5; ++b) {
        CAPTURE(b);
        const HolonomyPtr& hol = holonomy(b);
        CHECK(max_diff(phi(hol, DeformationParams::zero(b)), Cocycle::zero(hol)) == 0);
        for (int k = 0; k < 20; ++k) {
            const DeformationParams p = random_params(rng, b);
            const Cocycle u = phi(hol, p);
            const Eigen::VectorXd c = cohomology_coordinates(u);
            REQUIRE(c.size() == 3 * b - 3);
            for (int i = 0; i <= b; ++i) {
                CHECK(std::abs(c(i) - p.alpha[i]) <= 1e-8);
            }
            for (int j = 0; j < b - 2; ++j) {
                CHECK(std::abs(c(b + 1 + j) - p.beta[j]) <= 1e-8);
            }
        }
        const DeformationParams p = random_params(rng, b), q = random_params(rng, b);
        DeformationParams mix = p;
        for (auto [dst, a, c] : {std::tuple{&mix.alpha, &p.alpha, &q.alpha},
                                 std::tuple{&mix.beta, &p.beta, &q.beta},
                                 std::tuple{&mix.t, &p.t, &q.t}}) {
            for (std::size_t i = 0; i < dst->size(); ++i) {
                (*dst)[i] = 0.5 * (*a)[i] + 4 * (*c)[i];
            }
        }
        const Cocycle lhs = phi(hol, mix);
        const Cocycle rhs = 0.5 * phi(hol, p) + 4.0 * phi(hol, q);
        CHECK(max_diff(lhs, rhs) <= 1e-9 * (1 + max_diff(rhs, Cocycle::zero(hol))));

        const Eigen::MatrixXd m = isomorphism_matrix(hol);
        CHECK(m.rows() == 3 * b - 3);
        CHECK(std::abs(m.determinant()) > 1e-12);
    }
}

TEST_CASE("classes with equal coordinates differ by a coboundary")
{
    const HolonomyPtr& hol = holonomy(4);
    Rng rng(49);
    const DeformationParams p = random_params(rng, 4);
    const LorentzVectord v = random_vector(rng);
    const Cocycle u1 = phi(hol, p);
    const Cocycle u2 = phi(hol, p) + coboundary(hol, v);
    const Cocycle d = u1 - u2;
    CHECK(cohomology_coordinates(d).cwiseAbs().maxCoeff() <= 1e-9);
    double size = 0;
    for (int i = 1; i <= 5; ++i) {
        size = std::max({size, u1.value(i).norm(), u2.value(i).norm()});
    }
    for (int k = 0; k < 200; ++k) {
        // Rounding the cocycle values to double is amplified by |rho(w)|.
        const Word w = random_word(rng, 5, 6);
        const double bound = 1e-15 * hol->evaluate(w).norm() * size;
        CHECK(std::abs(margulis::margulis(u1, w) - margulis::margulis(u2, w)) <= bound);
    }
    const LorentzVectord fit = fit_coboundary(d);
    CHECK(max_diff(d, coboundary(hol, fit)) <= 1e-6);
    CHECK((fit + v).norm() <= 1e-6);

    // A class with a nonzero coordinate is not a coboundary.
    const Cocycle e = phi(hol, DeformationParams::basis(4, 0));
    CHECK(max_diff(e, coboundary(hol, fit_coboundary(e))) > 1e-3);
}

TEST_CASE("params and CSV")
{
    CHECK(DeformationParams::zero(5).dimension() == 12);
    const DeformationParams e = DeformationParams::basis(4, 5);
    CHECK(e.beta[0] == 1);
    CHECK(e.flatten()(5) == 1);
    CHECK(e.flatten().sum() == 1);
    CHECK_THROWS_AS(DeformationParams::basis(4, 9), IndexOutOfRange);
    DeformationParams bad = DeformationParams::zero(4);
    bad.t.push_back(0);
    CHECK_THROWS_AS(bad.validate(4), std::invalid_argument);

    std::ostringstream os;
    write_cocycle_csv(os, Cocycle::zero(holonomy(3)));
    CHECK(os.str() == "generator,x1,x2,x3\n1,0,0,0\n2,0,0,0\n3,0,0,0\n4,0,0,0\n");
}
