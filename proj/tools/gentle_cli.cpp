// gentle: command-line front end for the gentle library.
// Exit codes: 0 success or true verdict, 1 false verdict, 2 error.

#include <gentle/gentle.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace gentle;

namespace {

struct RunConfig {
    std::string input;
    std::string second;  // module, curve or lamination file
    std::string curve;   // inline curve JSON
    std::string dims;
    int max_len = 8;
    std::uint64_t seed = 0;
    std::string format = "human";
    std::string output;
};

std::string join(const std::vector<int>& v, const char* sep = ",")
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
    return s;
}

json summands_json(const GentleAlgebra& A, const std::vector<Summand>& parts)
{
    json j = json::array();
    for (const auto& s : parts) j.push_back(format_summand(A, s));
    return j;
}

int emit(const RunConfig& cfg, const std::string& human, const json& j, int code)
{
    std::string text = cfg.format == "json" ? j.dump(2) + "\n" : human;
    if (cfg.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(cfg.output);
        if (!out) throw Error("IOError", "cannot write " + cfg.output);
        out << text;
    }
    return code;
}

int cmd_check(const RunConfig& cfg)
{
    GentleAlgebra A = load_algebra(cfg.input);
    json j{{"gentle", true}, {"jacobian", is_jacobian(A)}};
    std::string human;
    if (is_jacobian(A)) {
        std::vector<int> sizes;
        json blocks = json::array();
        for (const auto& B : rho_blocks(A)) {
            sizes.push_back(B.size);
            blocks.push_back(B.type_name());
        }
        std::sort(sizes.rbegin(), sizes.rend());
        j["blocks"] = blocks;
        human = "gentle Jacobian; blocks: " + join(sizes) + "\n";
        return emit(cfg, human, j, 0);
    }
    j["reason"] = jacobian_failure(A);
    human = "gentle; not Jacobian (" + jacobian_failure(A) + ")\n";
    return emit(cfg, human, j, 1);
}

int cmd_components(const RunConfig& cfg)
{
    GentleAlgebra A = load_algebra(cfg.input);
    auto d = parse_int_list(cfg.dims);
    if (static_cast<int>(d.size()) != A.n()) throw Error("ParseError", "--dims needs one entry per vertex");
    bool jac = is_jacobian(A);
    json list = json::array();
    std::ostringstream h;
    auto comps = components(A, d);
    h << comps.size() << " component(s) for d=(" << join(d) << ")\n";
    for (const auto& Z : comps) {
        auto parts = canonical_decomposition(A, Z, cfg.max_len, cfg.seed);
        bool band_only = string_count(parts) == 0 && !parts.empty();
        auto ceh = ceh_values(A, Z, cfg.seed);
        json c{{"r", Z.r},
               {"dim", component_dim(A, Z)},
               {"dim_gl", gl_dim(Z.d)},
               {"generically_reduced", is_generically_reduced(A, Z)},
               {"band_only", band_only},
               {"ceh", {ceh.c, ceh.e, ceh.h}},
               {"canonical_decomposition", summands_json(A, parts)}};
        h << "  r=(" << join(Z.r) << ") dim=" << component_dim(A, Z) << " dimGL=" << gl_dim(Z.d)
          << " ceh=(" << ceh.c << "," << ceh.e << "," << ceh.h << ")"
          << (is_generically_reduced(A, Z) ? " generically-reduced" : " not-generically-reduced");
        if (jac) {
            c["tau_reduced"] = is_tau_reduced(A, Z);
            h << (is_tau_reduced(A, Z) ? " tau-reduced" : "");
        }
        h << (band_only ? " band" : "") << "\n";
        for (const auto& s : parts) h << "    " << format_summand(A, s) << "\n";
        list.push_back(c);
    }
    return emit(cfg, h.str(), json{{"d", d}, {"components", list}}, 0);
}

int cmd_smooth(const RunConfig& cfg)
{
    GentleAlgebra A = load_algebra(cfg.input);
    Representation M = rep_from_json(A, read_json_file(cfg.second));
    bool smooth = is_smooth_point(A, M);
    json j{{"smooth", smooth}, {"tangent_dim", tangent_dim(A, M)}};
    return emit(cfg, smooth ? "smooth\n" : "singular\n", j, smooth ? 0 : 1);
}

Curve read_curve(const Triangulation& T, const RunConfig& cfg)
{
    if (!cfg.curve.empty()) {
        try {
            return curve_from_json(T, json::parse(cfg.curve));
        } catch (const json::parse_error& e) {
            throw Error("ParseError", std::string("--curve: ") + e.what());
        }
    }
    if (cfg.second.empty()) throw Error("ParseError", "give --curve or --curve-file");
    return curve_from_json(T, read_json_file(cfg.second));
}

int cmd_bangle(const RunConfig& cfg)
{
    Triangulation T = load_triangulation(cfg.input);
    SurfaceAlgebra S = build_QT_full(T);
    Curve c = read_curve(T, cfg);
    LaurentPoly p = bangle(T, S, c);
    json j{{"curve", curve_to_json(T, c)}, {"terms", laurent_to_json(p)}};
    return emit(cfg, p.str() + "\n", j, 0);
}

Lamination read_lamination(const Triangulation& T, const SurfaceAlgebra& S, const RunConfig& cfg)
{
    if (cfg.second.empty()) throw Error("ParseError", "give --lamination");
    return lamination_from_json(T, S, read_json_file(cfg.second));
}

int cmd_shear(const RunConfig& cfg)
{
    Triangulation T = load_triangulation(cfg.input);
    if (cfg.second.empty()) throw Error("ParseError", "give --lamination");
    auto s = shear_coordinates(T, curve_entries_from_json(T, read_json_file(cfg.second)));
    return emit(cfg, "[" + join(s) + "]\n", json(s), 0);
}

int cmd_eta(const RunConfig& cfg)
{
    Triangulation T = load_triangulation(cfg.input);
    SurfaceAlgebra S = build_QT_full(T);
    auto D = eta(T, S, read_lamination(T, S, cfg));
    json j{{"d", D.component.d}, {"r", D.component.r}, {"v", D.v}};
    std::string h = "d=(" + join(D.component.d) + ") r=(" + join(D.component.r) + ") v=(" + join(D.v) + ")\n";
    return emit(cfg, h, j, 0);
}

int cmd_verify(const RunConfig& cfg)
{
    Triangulation T = load_triangulation(cfg.input);
    SurfaceAlgebra S = build_QT_full(T);
    auto r = verify_bangle_equals_generic(T, S, read_lamination(T, S, cfg), cfg.seed);
    json j{{"equal", r.equal}, {"bangle", laurent_to_json(r.bangle)}, {"generic", laurent_to_json(r.generic)}};
    if (!r.equal) j["diff"] = r.diff;
    std::string h = r.equal ? "EQUAL\n" : "DIFFERENT: " + r.diff + "\n";
    return emit(cfg, h, j, r.equal ? 0 : 1);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Gentle algebras, module schemes and surface laminations"};
    app.require_subcommand(1);
    RunConfig cfg;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--input,-i", cfg.input, "algebra or triangulation JSON")->required();
        sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
        sub->add_option("--format", cfg.format, "human or json")
            ->check(CLI::IsMember({"human", "json"}))
            ->capture_default_str();
        sub->add_option("--output,-o", cfg.output, "write the result here instead of stdout");
    };
    auto* check = app.add_subcommand("check", "gentleness, Jacobian property and rho-blocks");
    common(check);
    auto* comps = app.add_subcommand("components", "irreducible components of mod(A, d)");
    common(comps);
    comps->add_option("--dims,-d", cfg.dims, "dimension vector, comma separated")->required();
    comps->add_option("--max-len", cfg.max_len, "longest word used when decomposing")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    auto* smooth = app.add_subcommand("smooth", "is the module a smooth point of mod(A, d)");
    common(smooth);
    smooth->add_option("--module,-m", cfg.second, "module JSON")->required();
    auto* bang = app.add_subcommand("bangle", "bangle function of a curve");
    common(bang);
    bang->add_option("--curve", cfg.curve, "curve JSON, e.g. {\"loop\":[3,6,1]}");
    bang->add_option("--curve-file", cfg.second, "curve JSON file");
    auto* shear = app.add_subcommand("shear", "shear coordinates of a lamination");
    common(shear);
    shear->add_option("--lamination,-l", cfg.second, "lamination JSON")->required();
    auto* et = app.add_subcommand("eta", "decorated component of a lamination");
    common(et);
    et->add_option("--lamination,-l", cfg.second, "lamination JSON")->required();
    auto* ver = app.add_subcommand("verify", "bangle function against the generic CC' function");
    common(ver);
    ver->add_option("--lamination,-l", cfg.second, "lamination JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        if (*check) return cmd_check(cfg);
        if (*comps) return cmd_components(cfg);
        if (*smooth) return cmd_smooth(cfg);
        if (*bang) return cmd_bangle(cfg);
        if (*shear) return cmd_shear(cfg);
        if (*et) return cmd_eta(cfg);
        if (*ver) return cmd_verify(cfg);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
