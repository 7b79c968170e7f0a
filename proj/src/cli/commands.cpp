#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "margulis/cli.hpp"
#include "margulis/proper.hpp"

namespace margulis::cli
{

namespace
{

using nlohmann::json;

json to_json(const LorentzVectord& v) { return json::array({v(0), v(1), v(2)}); }

json matrix_json(const Eigen::MatrixXd& m)
{
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(m(r, c));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json to_json(const HyperbolicFramed& f)
{
    return {{"x_minus", to_json(f.x_minus)},
            {"x_plus", to_json(f.x_plus)},
            {"x_zero", to_json(f.x_zero)},
            {"lambda", f.lambda}};
}

json header(const RunConfig& cfg)
{
    return {{"tool", "margulis-lab"}, {"version", version()}, {"config_hash", cfg.hash},
            {"seed", cfg.seed}};
}

std::ofstream open_output(const RunConfig& cfg, const std::string& name)
{
    std::filesystem::create_directories(cfg.output_dir);
    const auto path = cfg.output_dir / name;
    std::ofstream os(path);
    if (!os) {
        throw UsageError("cannot write " + path.string());
    }
    os.precision(17);
    return os;
}

void write_json(const RunConfig& cfg, const std::string& name, const json& j)
{
    open_output(cfg, name) << j.dump(2) << '\n';
}

std::vector<std::string> coordinate_names(int b)
{
    std::vector<std::string> names;
    for (int i = 1; i <= b + 1; ++i) {
        names.push_back("alpha_g" + std::to_string(i));
    }
    for (int j = 1; j <= b - 2; ++j) {
        names.push_back("alpha_h" + std::to_string(j));
    }
    for (int l = 1; l <= b - 2; ++l) {
        names.push_back("alpha_f" + std::to_string(l));
    }
    return names;
}

}  // namespace

int cmd_holonomy(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    HolonomyPtr hol;
    try {
        hol = build_holonomy(cfg.spec);
    }
    catch (const ConstructionFailed& e) {
        err << e.what() << '\n';
        return exit_finding;
    }
    const int b = hol->b();
    json j = header(cfg);
    j["b"] = b;
    j["relation_residual"] = hol->relation_residual();

    json gens = json::array();
    for (int i = 1; i <= b + 1; ++i) {
        gens.push_back({{"index", i},
                        {"matrix", matrix_json(hol->generator(i))},
                        {"frame", to_json(hol->generator_frame(i))},
                        {"length_spec", cfg.spec.boundary_lengths[i - 1]},
                        {"length_realized", hol->generator_frame(i).length()}});
    }
    j["generators"] = std::move(gens);

    json div = json::array();
    for (int k = 1; k <= b - 2; ++k) {
        div.push_back({{"index", k},
                       {"word", h_word(b, k).to_string()},
                       {"matrix", matrix_json(hol->dividing(k))},
                       {"frame", to_json(hol->dividing_frame(k))},
                       {"length_spec", cfg.spec.dividing_lengths[k - 1]},
                       {"length_realized", hol->dividing_frame(k).length()}});
    }
    j["dividing"] = std::move(div);

    const OrientationReport o = hol->orientation();
    json pairs = json::array();
    for (int m = 0; m <= b; ++m) {
        for (int n = m + 1; n <= b; ++n) {
            pairs.push_back({{"m", m + 1}, {"n", n + 1}, {"value", o.axis_products(m, n) + 1}});
        }
    }
    j["margins"] = {{"axis_products", matrix_json(o.axis_products)},
                    {"axis_margin", o.axis_margin},
                    {"endpoint_margin", o.endpoint_margin},
                    {"axis_pairs_plus_one", std::move(pairs)}};

    write_json(cfg, "holonomy.json", j);
    out << "relation residual " << hol->relation_residual() << ", axis margin "
        << o.axis_margin << ", endpoint margin " << o.endpoint_margin << '\n';
    return exit_pass;
}

int cmd_cocycle(const RunConfig& cfg, bool gauge_check, std::ostream& out, std::ostream& err)
{
    const HolonomyPtr hol = build_holonomy(cfg.spec);
    const Cocycle u = phi(hol, cfg.deformation);
    {
        auto os = open_output(cfg, "cocycle.csv");
        write_cocycle_csv(os, u);
    }
    {
        auto os = open_output(cfg, "coordinates.csv");
        const Eigen::VectorXd c = cohomology_coordinates(u);
        const auto names = coordinate_names(hol->b());
        os << "coordinate,value\n";
        for (Eigen::Index k = 0; k < c.size(); ++k) {
            os << names[k] << ',' << c(k) << '\n';
        }
    }
    if (!gauge_check) {
        return exit_pass;
    }
    // Re-derive the P_1 gauge from the written values alone.
    const LorentzVectord c1 = frame_coordinates(hol->generator_frame(1), u.value(1));
    const LorentzVectord c2 = frame_coordinates(hol->generator_frame(2), u.value(2));
    const double tol = cfg.tolerance("gauge");
    const std::array<std::pair<const char*, double>, 3> gauge{
        {{"c1_minus", c1(1)}, {"c1_plus", c1(2)}, {"c2_minus", c2(1)}}};
    bool ok = true;
    for (const auto& [name, value] : gauge) {
        const bool pass = std::abs(value) <= tol;
        ok = ok && pass;
        out << name << ' ' << value << (pass ? " pass" : " FAIL") << '\n';
    }
    if (!ok) {
        err << "gauge check failed\n";
    }
    return ok ? exit_pass : exit_finding;
}

int cmd_verify(const RunConfig& cfg, const std::string& which, std::ostream& out,
               std::ostream& err)
{
    const HolonomyPtr hol = build_holonomy(cfg.spec);
    const std::vector<CheckRow> rows = run_suite(cfg, hol, which);

    json j = header(cfg);
    j["which"] = which;
    json arr = json::array();
    const CheckRow* first_fail = nullptr;
    {
        auto os = open_output(cfg, "report.csv");
        os << "check,lhs,rhs,residual,tolerance,pass\n";
        for (const CheckRow& r : rows) {
            os << r.check << ',' << r.lhs << ',' << r.rhs << ',' << r.residual << ','
               << r.tolerance << ',' << (r.pass ? "true" : "false") << '\n';
            arr.push_back({{"check", r.check},
                           {"lhs", r.lhs},
                           {"rhs", r.rhs},
                           {"residual", r.residual},
                           {"tolerance", r.tolerance},
                           {"pass", r.pass}});
            if (!r.pass && !first_fail) {
                first_fail = &r;
            }
        }
    }
    j["pass"] = first_fail == nullptr;
    j["rows"] = std::move(arr);
    write_json(cfg, "report.json", j);

    out << rows.size() << " checks, " << (first_fail ? "FAIL" : "pass") << '\n';
    if (first_fail) {
        err << "first failing check " << first_fail->check << ": residual "
            << first_fail->residual << " > tolerance " << first_fail->tolerance << '\n';
        return exit_finding;
    }
    return exit_pass;
}

int cmd_scan(const RunConfig& cfg, int max_len, std::ostream& out, std::ostream& err)
{
    if (max_len < 1) {
        throw UsageError("--max-len must be at least 1");
    }
    const HolonomyPtr hol = build_holonomy(cfg.spec);
    const ScanVerdict v = sign_scan(phi(hol, cfg.deformation), max_len);

    json j = header(cfg);
    j["status"] = to_string(v.status);
    j["max_len"] = max_len;
    if (v.witness) {
        const auto& [a, b] = *v.witness;
        j["witness"] = json::array({{{"word", a.word.to_string()}, {"alpha", a.alpha}},
                                    {{"word", b.word.to_string()}, {"alpha", b.alpha}}});
    }
    else {
        j["witness"] = nullptr;
    }
    json spectrum = json::array();
    for (const LengthSummary& s : v.spectrum) {
        spectrum.push_back({{"length", s.length},
                            {"count", s.count},
                            {"zeros", s.zeros},
                            {"min", s.min},
                            {"max", s.max}});
    }
    j["stats"] = {{"words", v.entries.size()},
                  {"skipped_non_hyperbolic", v.skipped},
                  {"zero_band", zero_band},
                  {"spectrum", std::move(spectrum)}};
    write_json(cfg, "verdict.json", j);
    {
        auto os = open_output(cfg, "spectrum.csv");
        write_spectrum_csv(os, v);
    }

    out << to_string(v.status);
    if (v.witness) {
        out << ": " << v.witness->first.word.to_string() << " (" << v.witness->first.alpha
            << "), " << v.witness->second.word.to_string() << " (" << v.witness->second.alpha
            << ")";
    }
    out << '\n';
    if (v.status == ScanStatus::not_proper) {
        err << "opposite-sign Margulis invariants found\n";
        return exit_finding;
    }
    return exit_pass;
}

int run(int argc, char** argv)
{
    CLI::App app{"Affine deformations of holed-sphere Fuchsian groups", "margulis-lab"};
    app.set_version_flag("--version", version());
    app.require_subcommand(1);

    std::string config_path;
    std::string output_dir = ".";
    const auto common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--output-dir", output_dir, "Directory for reports");
    };

    auto* holonomy = app.add_subcommand("holonomy", "Build and certify the holonomy");
    common(holonomy);

    bool gauge_check = false;
    auto* cocycle = app.add_subcommand("cocycle", "Write phi(deformation) and its coordinates");
    common(cocycle);
    cocycle->add_flag("--gauge-check", gauge_check, "Re-derive the P_1 gauge from the output");

    std::string which = "all";
    auto* verify = app.add_subcommand("verify", "Run verification suites");
    common(verify);
    verify->add_option("--which", which, "Suite to run")
        ->check(CLI::IsMember({"lorentz", "iso", "gm", "twist", "all"}));

    int max_len = 6;
    auto* scan = app.add_subcommand("scan", "Opposite-sign scan of Margulis invariants");
    common(scan);
    scan->add_option("--max-len", max_len, "Longest word to enumerate");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_pass : exit_usage;
    }

    try {
        RunConfig cfg = load_config(config_path);
        cfg.output_dir = output_dir;
        if (holonomy->parsed()) {
            return cmd_holonomy(cfg, std::cout, std::cerr);
        }
        if (cocycle->parsed()) {
            return cmd_cocycle(cfg, gauge_check, std::cout, std::cerr);
        }
        if (verify->parsed()) {
            return cmd_verify(cfg, which, std::cout, std::cerr);
        }
        return cmd_scan(cfg, max_len, std::cout, std::cerr);
    }
    catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_finding;
    }
}

}  // namespace margulis::cli
