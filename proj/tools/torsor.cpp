// torsor - Reidemeister torsion of link-exterior CW complexes with twisted
// coefficients over number fields.
//
//   torsor run --complex F --local-system F --rep R --loop ID
//              [--orientation F] [--emit exact|embed|report|json]
//   torsor validate F
//   torsor selftest [--full] [--data DIR]

#include "torsor/io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <iostream>

using namespace torsor;

namespace {

constexpr int EXIT_PARSE = 2;
constexpr int EXIT_VALIDATION = 3;
constexpr int EXIT_NONREGULAR = 4;

Representation make_rep(const std::string& name, const MarkedLocalSystem& ls) {
    if (name == "adjoint-pgsp4") {
        if (ls.group != GroupTag::GSp4)
            throw std::invalid_argument("adjoint-pgsp4 needs a GSp(4) local system");
        return adjoint_rep_pgsp4(ls.field);
    }
    if (name.rfind("sl2-irrep:", 0) == 0) {
        int n = std::stoi(name.substr(10));
        if (ls.group == GroupTag::PGL2 && n % 2 == 0)
            throw std::invalid_argument("even sl2 irrep on a PGL(2) system");
        return sl2_irrep(ls.field, n);
    }
    if (name.rfind("trivial:", 0) == 0)
        return trivial_rep(ls.field, std::stoi(name.substr(8)));
    throw std::invalid_argument("unknown representation: " + name +
                                " (try adjoint-pgsp4, sl2-irrep:N, trivial:R,"
                                " principal-embed-then-adjoint)");
}

MarkedLocalSystem maybe_embed(const MarkedLocalSystem& ls, const std::string& rep_name) {
    if (rep_name != "principal-embed-then-adjoint") return ls;
    if (ls.group != GroupTag::PGL2)
        throw std::invalid_argument("principal-embed-then-adjoint needs a PGL(2) system");
    MarkedLocalSystem out;
    out.name = ls.name + " via principal embedding";
    out.field = ls.field;
    out.group = GroupTag::GSp4;
    out.matrix_dim = 4;
    for (const auto& [id, m] : ls.monodromy)
        out.monodromy.emplace(id, principal_embedding_c2(m));
    return out;
}

std::string fmt_embedding(const ComplexApprox& e) {
    std::ostringstream os;
    os << std::setprecision(15) << e.re;
    if (e.im != 0.0) os << (e.im > 0 ? " + " : " - ") << std::fabs(e.im) << "i";
    return os.str();
}

int cmd_run(const std::string& complex_path, const std::string& system_path,
            const std::string& rep_name, const std::string& loop,
            const std::string& orientation_path, const std::string& emit) {
    LinkExteriorComplex cx;
    MarkedLocalSystem ls;
    try {
        cx = load_complex(complex_path);
        ls = load_local_system(system_path);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return EXIT_PARSE;
    }
    ValidationReport vr = validate_complex(cx);
    if (!vr.valid) {
        std::cerr << "complex validation failed:\n";
        for (const auto& m : vr.errors) std::cerr << "  " << m << "\n";
        return EXIT_VALIDATION;
    }
    ValidationReport lr = validate_local_system(ls);
    if (!lr.valid) {
        std::cerr << "local system validation failed:\n";
        for (const auto& m : lr.errors) std::cerr << "  " << m << "\n";
        return EXIT_VALIDATION;
    }
    HomologyOrientation o = orientation_path.empty()
                                ? default_homology_orientation(cx.cw)
                                : load_orientation(orientation_path, cx.cw);
    auto t0 = std::chrono::steady_clock::now();
    MarkedLocalSystem effective = maybe_embed(ls, rep_name);
    Representation rep = rep_name == "principal-embed-then-adjoint"
                             ? adjoint_rep_pgsp4(ls.field)
                             : make_rep(rep_name, effective);
    TorsionResult res = torsion(cx, effective, rep, loop, o);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (emit == "exact") {
        std::cout << res.value.str() << "\n";
    } else if (emit == "embed") {
        for (const auto& e : res.embeddings) std::cout << fmt_embedding(e) << "\n";
    } else if (emit == "json") {
        std::cout << report_to_json(res, cx.name, ls.name, rep.name(), loop, secs) << "\n";
    } else {
        std::cout << "complex        " << cx.name << "\n";
        std::cout << "local system   " << ls.name << "\n";
        std::cout << "representation " << rep.name() << "\n";
        std::cout << "loop           " << loop << "\n";
        std::cout << "betti          (" << res.regular.betti[0] << ", " << res.regular.betti[1]
                  << ", " << res.regular.betti[2] << ", " << res.regular.betti[3] << ")\n";
        std::cout << "dim H^0(dM)    " << res.regular.boundary_h0_dim << "\n";
        std::cout << "boundary-regular " << (res.regular.boundary_regular ? "yes" : "no")
                  << ", gamma-regular " << (res.regular.gamma_regular ? "yes" : "no") << "\n";
        std::cout << "torsion        " << res.value.str() << "\n";
        for (const auto& e : res.embeddings)
            std::cout << "  embedding    " << fmt_embedding(e) << "\n";
        std::cout << "time           " << std::fixed << std::setprecision(2) << secs << "s\n";
    }
    return res.regular.gamma_regular ? 0 : EXIT_NONREGULAR;
}

int cmd_validate(const std::string& path) {
    try {
        std::string text;
        {
            std::ifstream in(path);
            std::ostringstream ss;
            ss << in.rdbuf();
            text = ss.str();
        }
        if (text.find("cw-complex/1") != std::string::npos) {
            LinkExteriorComplex cx = parse_complex(text);
            ValidationReport r = validate_complex(cx);
            if (r.valid) {
                std::cout << "valid complex: " << cx.name << "\n";
                return 0;
            }
            for (const auto& m : r.errors) std::cout << "invalid: " << m << "\n";
            return EXIT_VALIDATION;
        }
        MarkedLocalSystem ls = parse_local_system(text);
        ValidationReport r = validate_local_system(ls);
        if (r.valid) {
            std::cout << "valid local system: " << ls.name << " over degree "
                      << ls.field->degree() << " field\n";
            return 0;
        }
        for (const auto& m : r.errors) std::cout << "invalid: " << m << "\n";
        return EXIT_VALIDATION;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return EXIT_PARSE;
    }
}

struct SelfTest {
    int passed = 0, failed = 0;
    void check(const std::string& name, bool ok) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
        (ok ? passed : failed)++;
    }
};

int cmd_selftest(bool full, const std::string& data_dir) {
    namespace fs = std::filesystem;
    SelfTest st;
    auto data = [&](const std::string& f) { return (fs::path(data_dir) / f).string(); };

    LinkExteriorComplex cx = load_complex(data("figure_eight.json"));
    st.check("figure-eight complex validates", validate_complex(cx).valid);

    MarkedLocalSystem geom = load_local_system(data("geom.json"));
    MarkedLocalSystem iota = load_local_system(data("iota_geom.json"));
    MarkedLocalSystem exotic = load_local_system(data("p_exotic.json"));
    st.check("geom validates", validate_local_system(geom).valid);
    st.check("iota-geom validates (GSp relations)", validate_local_system(iota).valid);
    st.check("p-exotic validates (GSp relations)", validate_local_system(exotic).valid);

    HomologyOrientation o = default_homology_orientation(cx.cw);

    TorsionResult a = adjoint_torsion(cx, iota, "mu", o);
    st.check("adjoint torsion of iota-geom = 360",
             a.value == FieldElement::from_int(iota.field, 360));
    st.check("iota-geom boundary- and gamma-regular",
             a.regular.boundary_regular && a.regular.gamma_regular);

    TorsionResult b = adjoint_torsion(cx, exotic, "mu", o);
    FieldElement expected = parse_field_element(
        exotic.field, "85/16*w^5 - 33/8*w^4 + 217/16*w^3 - 99/8*w^2 + 321/8*w - 11");
    st.check("adjoint torsion of p-exotic matches the degree-6 value", b.value == expected);
    st.check("p-exotic boundary- and gamma-regular",
             b.regular.boundary_regular && b.regular.gamma_regular);

    if (full) {
        DecompositionCheck dc = decomposition_check(cx, geom, "C2", "mu");
        std::cout << "  decomposition lhs = " << dc.lhs.str() << ", rhs = " << dc.rhs.str()
                  << "\n";
        st.check("decomposition product equals adjoint value", dc.equal);

        ExpansionSpec spec;
        spec.dim = 3;
        spec.attach = "H0";
        ExpansionResult ex = elementary_expansion(cx, spec);
        MarkedLocalSystem iota2 = extend_over_expansion(iota, ex.new_one_cells);
        TorsionResult a2 = adjoint_torsion(ex.complex, iota2, "mu", o);
        st.check("torsion invariant under elementary expansion", a2.value == a.value);
    }

    std::cout << st.passed << " passed, " << st.failed << " failed\n";
    return st.failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"reidemeister torsion of link-exterior complexes"};
    app.require_subcommand(1);

    std::string complex_path, system_path, rep_name = "adjoint-pgsp4", loop = "mu";
    std::string orientation_path, emit = "report";
    auto* run = app.add_subcommand("run", "compute one torsion job");
    run->add_option("--complex", complex_path, "complex JSON file")->required();
    run->add_option("--local-system", system_path, "local system JSON file")->required();
    run->add_option("--rep", rep_name,
                    "adjoint-pgsp4 | sl2-irrep:N | trivial:R | principal-embed-then-adjoint");
    run->add_option("--loop", loop, "peripheral loop id");
    run->add_option("--orientation", orientation_path, "homology orientation JSON file");
    run->add_option("--emit", emit, "exact | embed | report | json");

    std::string validate_path;
    auto* val = app.add_subcommand("validate", "validate a data file");
    val->add_option("file", validate_path, "complex or local-system JSON")->required();

    bool full = false;
    std::string data_dir = "data";
    auto* self = app.add_subcommand("selftest", "golden values and invariants");
    self->add_flag("--full", full, "include decomposition and expansion checks");
    self->add_option("--data", data_dir, "data directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return cmd_run(complex_path, system_path, rep_name, loop, orientation_path, emit);
        if (*val) return cmd_validate(validate_path);
        if (*self) return cmd_selftest(full, data_dir);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return EXIT_PARSE;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
