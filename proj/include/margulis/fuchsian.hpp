#pragma once

// The Fuchsian holonomy of a sphere with b+1 boundary components, presented as
//
//   G_b = < g_1, ..., g_{b+1} | g_1 g_2 ... g_{b+1} = id >,
//
// cut into the linear chain of pants P_1, ..., P_{b-1} along the dividing
// curves h_j = g_{j+1}^{-1} ... g_1^{-1} (1 <= j <= b-2).

#include <map>
#include <memory>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "margulis/liealg.hpp"
#include "margulis/lorentz.hpp"
#include "margulis/precision.hpp"
#include "margulis/word.hpp"

namespace margulis
{

/** Fenchel-Nielsen data of the holonomy. Lengths are hyperbolic translation lengths. */
struct HolonomySpec
{
    int b = 3;
    std::vector<double> boundary_lengths;   // b + 1 values, l(g_i)
    std::vector<double> dividing_lengths;   // b - 2 values, l(h_j)
    std::vector<double> hyperbolic_twists;  // b - 2 values, twist along h_j

    /** Throws std::invalid_argument describing the first violated constraint. */
    void validate() const;

    /**
     * Equal lengths everywhere and the same twist on every dividing curve.
     * A twist of 0 is the seam-matched gluing (see build_holonomy).
     */
    static HolonomySpec symmetric(int b, double length = 2.0, double twist = 0.5);
};

/** h_j = g_{j+1}^{-1} g_j^{-1} ... g_1^{-1}, 1 <= j <= b-2. */
Word h_word(int b, int j);

/** f_l = g_{l+2}^{-1} g_{l+1}^{-1}, the curve crossing h_l twice; 1 <= l <= b-2. */
Word f_word(int b, int l);

/**
 * Boundary words (F_1, F_2, F_3) of the pants P_j with F_1 F_2 F_3 = id:
 * (g_1, g_2, h_1) for j = 1, (h_{j-1}^{-1}, g_{j+1}, h_j) in the middle and
 * (h_{b-2}^{-1}, g_b, g_{b+1}) for j = b-1.
 */
std::tuple<Word, Word, Word> pants_presentation(int b, int j);

/** Pairwise axis data of the boundary generators. */
struct OrientationReport
{
    /** B(X_m^0, X_n^0), symmetric (b+1)x(b+1) with unit diagonal */
    Eigen::MatrixXd axis_products;
    /** max over m != n of B(X_m^0, X_n^0) + 1; negative when all hold */
    double axis_margin = 0;
    /** max over m != n of B(X_m^0, X_n^{+-}); negative when all hold */
    double endpoint_margin = 0;
    /** First violated inequality, empty when consistent */
    std::string violation;

    bool consistent() const { return axis_margin < 0 && endpoint_margin < 0; }
};

class Holonomy
{
public:
    const HolonomySpec& spec() const { return spec_; }
    int b() const { return spec_.b; }

    /** rho_0(g_i), 1 <= i <= b+1. */
    const LorentzIsometryd& generator(int i) const;
    /** g_i before rounding to double; evaluate_extended multiplies these. */
    const LorentzIsometry<Extended>& generator_extended(int i) const;
    /** SL(2,R) representative of g_i produced by the builder. */
    const UnimodularMatrixd& generator_lift(int i) const;
    const HyperbolicFramed& generator_frame(int i) const;

    /** rho_0(h_j), 1 <= j <= b-2. */
    const LorentzIsometryd& dividing(int j) const;
    const HyperbolicFramed& dividing_frame(int j) const;

    const HyperbolicFramed& f_frame(int l) const;

    /** Ordered product of generator images; the empty word gives the identity. */
    LorentzIsometryd evaluate(const Word& w) const;
    /** evaluate() before the final rounding to double. */
    LorentzIsometry<Extended> evaluate_extended(const Word& w) const;

    /** Frame of evaluate(w); cached for g_i, h_j, f_l and their inverses. */
    HyperbolicFramed frame(const Word& w) const;
    HyperbolicFrame<Extended> frame_extended(const Word& w) const;

    /** Max entry of |rho_0(g_1 ... g_{b+1}) - I|. */
    double relation_residual() const;

    OrientationReport orientation() const;

private:
    friend std::shared_ptr<const Holonomy> build_holonomy(const HolonomySpec& spec);

    HolonomySpec spec_;
    std::vector<UnimodularMatrixd> lifts_;       // index i - 1
    std::vector<LorentzIsometryd> generators_;   // index i - 1
    std::vector<LorentzIsometry<Extended>> extended_;
    std::vector<HyperbolicFramed> gen_frames_;
    std::vector<LorentzIsometryd> dividing_;     // index j - 1
    std::vector<HyperbolicFramed> div_frames_;
    std::vector<HyperbolicFramed> f_frames_;     // index l - 1
    std::map<Word, HyperbolicFrame<Extended>> frame_cache_;
};

using HolonomyPtr = std::shared_ptr<const Holonomy>;

/**
 * Builds rho_0 from Fenchel-Nielsen data.
 *
 * Each pants is put in trace normal form in SL(2,R): its first boundary is
 * diagonal, the second is solved from its trace and the (negative) trace of
 * the product. Pants P_{j+1} is glued to P_j along h_j so that the common
 * perpendiculars (seams) from h_j to g_{j+1} and to g_{j+2} meet h_j at the
 * same point, then conjugated by the flow exp((tau_j / 2) psi^{-1}(Y_j^0))
 * along h_j. Of the two mirror-image normal forms the builder keeps the one
 * satisfying the consistently-oriented inequalities.
 *
 * The output is certified post hoc (relation, hyperbolicity, orientation,
 * realized lengths); ConstructionFailed names the violated check.
 */
HolonomyPtr build_holonomy(const HolonomySpec& spec);

LorentzIsometryd evaluate(const Holonomy& hol, const Word& w);

}  // namespace margulis
