#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "margulis/cli.hpp"
#include "margulis/deformation.hpp"
#include "margulis/sampling.hpp"

namespace margulis::cli
{

namespace
{

constexpr int identity_samples = 10000;
constexpr int isometry_samples = 100;
constexpr int coboundary_samples = 100;
constexpr int gm_samples = 50;
constexpr int gm_max_word = 5;
constexpr std::array<double, 5> twist_grid{-1.0, -0.5, 0.0, 0.5, 1.0};

/** Keeps the instance with the largest residual. */
struct Worst
{
    double lhs = 0, rhs = 0, residual = -1;

    void take(double l, double r, double res)
    {
        if (res > residual || std::isnan(res)) {
            lhs = l;
            rhs = r;
            residual = res;
        }
    }
    void take(double l, double r) { take(l, r, std::abs(l - r)); }

    CheckRow row(std::string name, double tol) const
    {
        return {std::move(name), lhs, rhs, residual, tol, residual <= tol};
    }
};

void lorentz_suite(const RunConfig& cfg, Rng& rng, std::vector<CheckRow>& rows)
{
    Worst det, quad, killing_form;
    for (int k = 0; k < identity_samples; ++k) {
        const LorentzVectord x = random_vector(rng), y = random_vector(rng),
                             z = random_vector(rng), w = random_vector(rng);
        det.take(det3(x, y, z), inner(cross(x, y), z));
        quad.take(inner(cross(x, y), cross(z, w)),
                  inner(x, w) * inner(y, z) - inner(x, z) * inner(y, w));
    }
    for (int k = 0; k < identity_samples; ++k) {
        const TracelessMatrixd X = random_traceless(rng), Y = random_traceless(rng);
        killing_form.take(inner(psi(X), psi(Y)), killing(X, Y));
    }
    Worst frame_cross, frame_eigen, adj;
    for (int k = 0; k < isometry_samples; ++k) {
        const LorentzIsometryd g = random_hyperbolic(rng);
        const HyperbolicFramed f = hyperbolic_frame(g);
        const LorentzVectord c = cross(f.x_minus, f.x_plus);
        const double bmp = inner(f.x_minus, f.x_plus);
        frame_cross.take(c.norm(), std::abs(bmp), (c + bmp * f.x_zero).norm());
        const double eig = std::max({(g * f.x_minus - f.lambda * f.x_minus).norm(),
                                     (g * f.x_plus - f.x_plus / f.lambda).norm(),
                                     (g * f.x_zero - f.x_zero).norm()});
        frame_eigen.take(0, 0, eig);
        const LorentzIsometryd back = adjoint(lift(g));
        adj.take(back.norm(), g.norm(), (back - g).cwiseAbs().maxCoeff());
    }
    rows.push_back(det.row("cross_det", cfg.tolerance("cross")));
    rows.push_back(quad.row("cross_quadruple", cfg.tolerance("cross")));
    rows.push_back(frame_cross.row("frame_cross", cfg.tolerance("frame")));
    rows.push_back(frame_eigen.row("frame_eigen", cfg.tolerance("frame")));
    rows.push_back(killing_form.row("psi_killing", cfg.tolerance("killing")));
    rows.push_back(adj.row("adjoint_lift", cfg.tolerance("adjoint_lift")));
}

void iso_suite(const RunConfig& cfg, const HolonomyPtr& hol, Rng& rng,
               std::vector<CheckRow>& rows)
{
    const Eigen::MatrixXd m = isomorphism_matrix(hol);
    const double det = m.determinant();
    const double tol = cfg.tolerance("iso_det");
    rows.push_back({"iso_det", det, 0.0, std::abs(det), tol, std::abs(det) > tol});

    const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
    const double cond = sv(0) / sv(sv.size() - 1);
    rows.push_back({"iso_condition", cond, 0.0, cond, std::numeric_limits<double>::infinity(),
                    std::isfinite(cond)});

    Worst cob;
    for (int k = 0; k < coboundary_samples; ++k) {
        const Eigen::VectorXd c = cohomology_coordinates(coboundary(hol, random_vector(rng)));
        cob.take(c.cwiseAbs().maxCoeff(), 0.0);
    }
    rows.push_back(cob.row("coboundary_coordinates", cfg.tolerance("coboundary")));
}

void gm_suite(const RunConfig& cfg, const HolonomyPtr& hol, Rng& rng,
              std::vector<CheckRow>& rows)
{
    const double tol = cfg.tolerance("gm");
    for (int k = 0; k < gm_samples; ++k) {
        const Cocycle u = phi(hol, random_params(rng, hol->b()));
        const Word w = random_word(rng, hol->b() + 1, gm_max_word);
        const double a = margulis(u, w);
        double d = std::numeric_limits<double>::quiet_NaN();
        try {
            d = length_derivative(u, w);
        }
        catch (const StepLeavesHyperbolicLocus&) {
        }
        const double res = std::abs(a - d);
        rows.push_back({"gm:" + w.to_string(), a, d, res, tol, res <= tol});
    }
}

void twist_suite(const RunConfig& cfg, const HolonomyPtr& hol, Rng& rng,
                 std::vector<CheckRow>& rows)
{
    const int b = hol->b();
    const DeformationParams base = random_params(rng, b);
    for (int l = 1; l <= b - 2; ++l) {
        for (double t : twist_grid) {
            DeformationParams p = base;
            std::fill(p.t.begin(), p.t.end(), 0.0);
            p.t[l - 1] = t;
            const TwistCheck c = verify_twist_formula(hol, p, l);
            const std::string tag = "l=" + std::to_string(l) + ":t=" + nlohmann::json(t).dump();
            rows.push_back({"twist:" + tag, c.lhs, c.rhs, c.residual, cfg.tolerance("twist"),
                            c.residual <= cfg.tolerance("twist")});
            rows.push_back({"twist_margulis:" + tag, c.rhs + c.margulis_residual, c.rhs,
                            c.margulis_residual, cfg.tolerance("twist_margulis"),
                            c.margulis_residual <= cfg.tolerance("twist_margulis")});
        }
    }
}

}  // namespace

std::vector<CheckRow> run_suite(const RunConfig& cfg, const HolonomyPtr& hol,
                                const std::string& which)
{
    static const std::array<std::string, 4> suites{"lorentz", "iso", "gm", "twist"};
    if (which != "all" && std::find(suites.begin(), suites.end(), which) == suites.end()) {
        throw UsageError("unknown suite '" + which + "'");
    }
    std::vector<CheckRow> rows;
    for (const std::string& s : suites) {
        if (which != "all" && which != s) {
            continue;
        }
        // Each suite draws from its own stream so selecting one does not
        // change the samples of another.
        Rng rng(cfg.seed + static_cast<std::uint64_t>(&s - suites.data()));
        if (s == "lorentz") {
            lorentz_suite(cfg, rng, rows);
        }
        else if (s == "iso") {
            iso_suite(cfg, hol, rng, rows);
        }
        else if (s == "gm") {
            gm_suite(cfg, hol, rng, rows);
        }
        else {
            twist_suite(cfg, hol, rng, rows);
        }
    }
    return rows;
}

}  // namespace margulis::cli
