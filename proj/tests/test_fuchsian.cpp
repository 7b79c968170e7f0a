#include "doctest.h"
#include "margulis/fuchsian.hpp"
#include "margulis/sampling.hpp"

using namespace margulis;

namespace
{

Word w(std::initializer_list<std::pair<int, int>> letters)
{
    std::vector<Letter> v;
    for (auto [g, e] : letters) {
        v.push_back({g, e});
    }
    return Word(v);
}

}  // namespace

TEST_CASE("free reduction")
{
    CHECK(w({{1, 1}, {2, 1}, {2, -1}, {1, -1}}).empty());
    CHECK(w({{1, 1}, {2, 1}, {2, -1}, {3, 1}}) == w({{1, 1}, {3, 1}}));
    Rng rng(31);
    for (int k = 0; k < 200; ++k) {
        std::vector<Letter> raw;
        for (int n = 0; n < 10; ++n) {
            raw.push_back({1 + static_cast<int>(rng() % 3), rng() % 2 ? 1 : -1});
        }
        const auto once = free_reduce(raw);
        CHECK(free_reduce(once) == once);
        CHECK(once.size() <= raw.size());
    }
    CHECK(w({{1, 1}, {2, -1}}).inverse() == w({{2, 1}, {1, -1}}));
    CHECK(Word().to_string() == "id");
    CHECK(w({{1, 1}, {3, -1}}).to_string() == "g1*g3^-1");
}

TEST_CASE("dividing and crossing words")
{
    CHECK(h_word(3, 1) == w({{2, -1}, {1, -1}}));
    CHECK(h_word(4, 2) == w({{3, -1}, {2, -1}, {1, -1}}));
    CHECK(h_word(5, 3) == Word::generator(4, -1) * h_word(5, 2));
    CHECK(f_word(3, 1) == w({{3, -1}, {2, -1}}));
    CHECK(f_word(5, 3) == w({{5, -1}, {4, -1}}));
    CHECK(Word::generator(4, -1) == f_word(4, 2) * Word::generator(3));
    CHECK_THROWS_AS(h_word(3, 2), IndexOutOfRange);
    CHECK_THROWS_AS(f_word(3, 0), IndexOutOfRange);
}

TEST_CASE("pants presentation")
{
    for (int b = 3; b <= 6; ++b) {
        for (int j = 1; j <= b - 2; ++j) {
            const auto [a, c, d] = pants_presentation(b, j);
            CHECK((a * c * d).empty());
        }
        const auto [a, c, d] = pants_presentation(b, b - 1);
        Word all;
        for (int i = 1; i <= b + 1; ++i) {
            all = all * Word::generator(i);
        }
        // The last pants closes up only through g_{b+1} = (g_1 ... g_b)^{-1}.
        CHECK(a * c * d == all);
        CHECK(a == h_word(b, b - 2).inverse());
        CHECK(c == Word::generator(b));
        CHECK(d == Word::generator(b + 1));
    }
    const auto [a, c, d] = pants_presentation(3, 1);
    CHECK(a == Word::generator(1));
    CHECK(c == Word::generator(2));
    CHECK(d == h_word(3, 1));
    CHECK_THROWS_AS(pants_presentation(3, 3), IndexOutOfRange);
}

TEST_CASE("holonomy invariants for the default symmetric inputs")
{
    for (int b = 3; b <= 5; ++b) {
        CAPTURE(b);
        const HolonomySpec spec = HolonomySpec::symmetric(b);
        const HolonomyPtr hol = build_holonomy(spec);
        CHECK(hol->relation_residual() <= 1e-9);

        LorentzIsometry<Extended> prod = LorentzIsometry<Extended>::Identity();
        for (int i = 1; i <= b + 1; ++i) {
            prod = prod * hol->generator_extended(i);
        }
        CHECK(static_cast<double>((prod - LorentzIsometry<Extended>::Identity())
                                      .cwiseAbs()
                                      .maxCoeff()) <= 1e-20);

        for (int i = 1; i <= b + 1; ++i) {
            CHECK(is_lorentz_isometry(hol->generator_extended(i), 1e-20));
            // Rounding to double perturbs g^T J g by about eps |g|^2.
            const LorentzIsometryd& g = hol->generator(i);
            const double defect =
                (g.transpose() * minkowski_metric<double>() * g - minkowski_metric<double>())
                    .cwiseAbs()
                    .maxCoeff();
            CHECK(defect <= 1e-15 * g.squaredNorm());
            const double len = translation_length(lift(hol->generator(i)));
            CHECK(std::abs(len - spec.boundary_lengths[i - 1]) <= 1e-6);
        }
        for (int j = 1; j <= b - 2; ++j) {
            const double len = translation_length(lift(hol->evaluate(h_word(b, j))));
            CHECK(std::abs(len - spec.dividing_lengths[j - 1]) <= 1e-6);
            CHECK_NOTHROW(hyperbolic_frame(hol->evaluate(f_word(b, j))));
        }

        // Consistently oriented, re-derived from independently computed frames.
        for (int m = 1; m <= b + 1; ++m) {
            for (int n = 1; n <= b + 1; ++n) {
                if (m == n) continue;
                const HyperbolicFramed fm = hyperbolic_frame(hol->generator(m));
                const HyperbolicFramed fn = hyperbolic_frame(hol->generator(n));
                CHECK(inner(fm.x_zero, fn.x_zero) < -1);
                CHECK(inner(fm.x_zero, fn.x_minus) < 0);
                CHECK(inner(fm.x_zero, fn.x_plus) < 0);
            }
        }
        const OrientationReport o = hol->orientation();
        CHECK(o.consistent());
        CHECK(o.violation.empty());

        for (int j = 1; j <= b - 1; ++j) {
            const auto [a, c, d] = pants_presentation(b, j);
            for (const Word& x : {a, c, d}) {
                CHECK_NOTHROW(hol->frame(x));
            }
        }
    }
}

TEST_CASE("seam-matched gluing builds")
{
    HolonomySpec spec = HolonomySpec::symmetric(3, 2.0, 0.0);
    const HolonomyPtr hol = build_holonomy(spec);
    CHECK(hol->relation_residual() <= 1e-9);
    const HyperbolicFramed f1 = hol->generator_frame(1), f2 = hol->generator_frame(2);
    CHECK(inner(f1.x_zero, f2.x_zero) < -1);
}

TEST_CASE("evaluate")
{
    const HolonomyPtr hol = build_holonomy(HolonomySpec::symmetric(4));
    CHECK(hol->evaluate(Word()) == LorentzIsometryd::Identity());
    for (int j = 2; j <= 2; ++j) {
        const LorentzIsometryd lhs = hol->evaluate(h_word(4, j));
        const LorentzIsometryd rhs =
            lorentz_inverse(hol->generator(j + 1)) * hol->evaluate(h_word(4, j - 1));
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-9 * lhs.norm());
    }

    Rng rng(32);
    Extended worst = 0;
    for (int k = 0; k < 1000; ++k) {
        const Word v = random_word(rng, 5, 4), u = random_word(rng, 5, 4);
        const auto lhs = hol->evaluate_extended(v * u);
        const auto rhs = hol->evaluate_extended(v) * hol->evaluate_extended(u);
        worst = std::max(worst, Extended((lhs - rhs).cwiseAbs().maxCoeff()));
    }
    CHECK(double(worst) <= 1e-9);
}

TEST_CASE("invalid holonomy inputs fail construction")
{
    HolonomySpec spec = HolonomySpec::symmetric(3);
    spec.boundary_lengths[2] = 0.0;
    CHECK_THROWS_AS(build_holonomy(spec), ConstructionFailed);

    spec = HolonomySpec::symmetric(3);
    spec.b = 2;
    CHECK_THROWS_AS(spec.validate(), std::invalid_argument);

    spec = HolonomySpec::symmetric(4);
    spec.dividing_lengths.pop_back();
    CHECK_THROWS_AS(build_holonomy(spec), ConstructionFailed);
}
