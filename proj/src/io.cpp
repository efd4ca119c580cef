#include "torsor/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace torsor {

using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json(const std::string& text, const std::string& what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSON in " + what);
    return j;
}

Word word_from_json(const json& j) {
    Word w;
    for (const auto& letter : j) {
        if (!letter.is_array() || letter.size() != 2)
            throw ParseError("path letters must be [id, exponent] pairs");
        w.letters.push_back({letter[0].get<std::string>(), letter[1].get<int>()});
    }
    return w;
}

json word_to_json(const Word& w) {
    json out = json::array();
    for (const auto& [l, e] : w.letters) out.push_back(json::array({l, e}));
    return out;
}

} // namespace

LinkExteriorComplex parse_complex(const std::string& text) {
    json j = parse_json(text, "complex document");
    if (j.value("format", "") != "cw-complex/1")
        throw ParseError("expected format cw-complex/1");
    LinkExteriorComplex out;
    out.name = j.value("name", "");
    const auto& cells = j.at("cells");
    for (int d = 0; d < 4; ++d) {
        std::string key = std::to_string(d);
        if (!cells.contains(key)) continue;
        for (const auto& cj : cells.at(key)) {
            Cell c;
            c.id = cj.at("id").get<std::string>();
            c.dim = d;
            if (cj.contains("boundary"))
                for (const auto& tj : cj.at("boundary")) {
                    BoundaryTerm t;
                    t.target = tj.at("target").get<std::string>();
                    t.sign = tj.at("sign").get<int>();
                    if (tj.contains("path")) t.path = word_from_json(tj.at("path"));
                    c.boundary.push_back(std::move(t));
                }
            out.cw.cells[d].push_back(std::move(c));
        }
    }
    out.cw.rebuild_index();
    json bcs_in = j.value("boundary_components", json::array());
    for (const auto& bj : bcs_in) {
        BoundaryComponent bc;
        bc.name = bj.at("name").get<std::string>();
        for (const auto& id : bj.at("cells")) bc.cells.push_back(id.get<std::string>());
        out.boundary_components.push_back(std::move(bc));
    }
    json pls_in = j.value("peripheral_loops", json::array());
    for (const auto& pj : pls_in) {
        PeripheralLoop pl;
        pl.name = pj.at("name").get<std::string>();
        pl.component = pj.at("component").get<std::string>();
        for (const auto& id : pj.at("cells")) pl.cells.push_back(id.get<std::string>());
        for (const auto& [k, v] : pj.at("cycle").items()) pl.cycle[k] = v.get<long>();
        out.peripheral_loops.push_back(std::move(pl));
    }
    json f3 = j.value("fundamental_class_3", json::object());
    for (const auto& [k, v] : f3.items()) out.fundamental_class_3[k] = v.get<long>();
    json f2 = j.value("fundamental_class_2", json::object());
    for (const auto& [k, v] : f2.items()) out.fundamental_class_2[k] = v.get<long>();
    return out;
}

LinkExteriorComplex load_complex(const std::string& path) {
    return parse_complex(slurp(path));
}

std::string complex_to_json(const LinkExteriorComplex& c) {
    json cells;
    for (int d = 0; d < 4; ++d) {
        json arr = json::array();
        for (const auto& cell : c.cw.cells[d]) {
            json cj;
            cj["id"] = cell.id;
            if (d > 0) {
                json terms = json::array();
                for (const auto& t : cell.boundary) {
                    json tj;
                    tj["target"] = t.target;
                    tj["sign"] = t.sign;
                    tj["path"] = word_to_json(t.path);
                    terms.push_back(std::move(tj));
                }
                cj["boundary"] = std::move(terms);
            }
            arr.push_back(std::move(cj));
        }
        cells[std::to_string(d)] = std::move(arr);
    }
    json j;
    j["format"] = "cw-complex/1";
    j["name"] = c.name;
    j["cells"] = std::move(cells);
    json bcs = json::array();
    for (const auto& bc : c.boundary_components)
        bcs.push_back({{"name", bc.name}, {"cells", bc.cells}});
    j["boundary_components"] = std::move(bcs);
    json pls = json::array();
    for (const auto& pl : c.peripheral_loops) {
        json pj;
        pj["name"] = pl.name;
        pj["component"] = pl.component;
        pj["cells"] = pl.cells;
        json cyc;
        for (const auto& [k, v] : pl.cycle) cyc[k] = v;
        pj["cycle"] = std::move(cyc);
        pls.push_back(std::move(pj));
    }
    j["peripheral_loops"] = std::move(pls);
    json f3, f2;
    for (const auto& [k, v] : c.fundamental_class_3) f3[k] = v;
    for (const auto& [k, v] : c.fundamental_class_2) f2[k] = v;
    j["fundamental_class_3"] = std::move(f3);
    j["fundamental_class_2"] = std::move(f2);
    return j.dump(1);
}

MarkedLocalSystem parse_local_system(const std::string& text) {
    json j = parse_json(text, "local system document");
    if (j.value("format", "") != "local-system/1")
        throw ParseError("expected format local-system/1");
    MarkedLocalSystem out;
    out.name = j.value("name", "");
    std::vector<Rational> poly;
    for (const auto& c : j.at("field").at("min_poly"))
        poly.push_back(parse_rational(c.get<std::string>()));
    out.field = NumberField::create(std::move(poly), /*trusted=*/true);
    out.group = parse_group_tag(j.at("group").get<std::string>());
    for (const auto& [id, mj] : j.at("monodromy").items()) {
        size_t n = mj.size();
        Matrix m(out.field, n, n);
        for (size_t i = 0; i < n; ++i) {
            if (mj[i].size() != n) throw ParseError("non-square monodromy for " + id);
            for (size_t k = 0; k < n; ++k) {
                std::vector<std::string> coeffs;
                for (const auto& s : mj[i][k]) coeffs.push_back(s.get<std::string>());
                m.at(i, k) = element_from_coeff_strings(out.field, coeffs);
            }
        }
        if (out.matrix_dim == 0) out.matrix_dim = static_cast<int>(n);
        if (out.matrix_dim != static_cast<int>(n))
            throw ParseError("inconsistent monodromy sizes");
        out.monodromy.emplace(id, std::move(m));
    }
    if (j.contains("similitude"))
        for (const auto& [id, sj] : j.at("similitude").items()) {
            std::vector<std::string> coeffs;
            for (const auto& s : sj) coeffs.push_back(s.get<std::string>());
            out.similitude.emplace(id, element_from_coeff_strings(out.field, coeffs));
        }
    return out;
}

MarkedLocalSystem load_local_system(const std::string& path) {
    return parse_local_system(slurp(path));
}

HomologyOrientation load_orientation(const std::string& path, const CWComplexData& cw) {
    json j = parse_json(slurp(path), "orientation document");
    HomologyOrientation o;
    FieldPtr Q = NumberField::rationals();
    for (int d = 0; d < 4; ++d) {
        o.basis[d].ambient_dim = cw.count(d);
        std::string key = "h" + std::to_string(d);
        if (!j.contains(key)) continue;
        for (const auto& vj : j.at(key)) {
            std::vector<FieldElement> v;
            for (const auto& c : vj)
                v.push_back(FieldElement::from_rational(Q, parse_rational(c.get<std::string>())));
            if (v.size() != cw.count(d))
                throw ParseError("orientation vector length mismatch in " + key);
            o.basis[d].vectors.push_back(std::move(v));
        }
    }
    o.sign = j.value("sign", 1);
    if (o.sign != 1 && o.sign != -1) throw ParseError("orientation sign must be +-1");
    return o;
}

std::string report_to_json(const TorsionResult& res, const std::string& complex_name,
                           const std::string& system_name, const std::string& rep_name,
                           const std::string& loop, double seconds) {
    json j;
    j["complex"] = complex_name;
    j["local_system"] = system_name;
    j["representation"] = rep_name;
    j["loop"] = loop;
    j["torsion"] = res.value.str();
    j["torsion_coeffs"] = element_to_coeff_strings(res.value);
    json emb = json::array();
    for (const auto& e : res.embeddings)
        emb.push_back({{"re", e.re}, {"im", e.im}, {"precision_bits", e.precision_bits}});
    j["embeddings"] = std::move(emb);
    j["sign_alpha"] = res.sign_alpha;
    j["sign_orientation"] = res.sign_orientation;
    j["betti"] = res.regular.betti;
    j["boundary_h0_dim"] = res.regular.boundary_h0_dim;
    j["h2_map_iso"] = res.regular.h2_map_iso;
    j["h1_map_iso"] = res.regular.h1_map_iso;
    j["boundary_regular"] = res.regular.boundary_regular;
    j["gamma_regular"] = res.regular.gamma_regular;
    j["seconds"] = seconds;
    return j.dump(1);
}

} // namespace torsor
