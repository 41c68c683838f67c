#pragma once

#include "cubical.hpp"
#include "errors.hpp"
#include "gradient.hpp"
#include "hasse.hpp"
#include "ordered_value.hpp"
#include "polyhedral.hpp"
#include "simplicial_complex.hpp"
#include "smoothness.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace greedy_morse {

using Json = nlohmann::json;

/// A parsed complex file: a valuation plus either maximal simplices or,
/// when `polyhedral`, the full list of cells.
struct ComplexInput {
    Valuation valuation;
    std::vector<std::vector<VertexId>> cells;
    bool polyhedral = false;
};

inline std::string read_text(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::ParseError, "cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// A number, or an array of values (a value set, possibly nested).
inline OrderedValue value_from_json(const Json& j)
{
    if (j.is_number()) {
        return OrderedValue(j.get<double>());
    }
    if (j.is_array()) {
        std::vector<OrderedValue> elements;
        for (const auto& e : j) {
            elements.push_back(value_from_json(e));
        }
        return OrderedValue::set(std::move(elements));
    }
    throw Error(ErrorKind::ParseError, "a value must be a number or an array of values");
}

inline Json value_to_json(const OrderedValue& v)
{
    if (v.is_scalar()) {
        return v.scalar();
    }
    Json out = Json::array();
    for (const auto& e : v.elements()) {
        out.push_back(value_to_json(e));
    }
    return out;
}

inline Json parse_json_text(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
}

/// {"vertices":[{"id":0,"f":1.5}, ...], "simplices":[[0,1], ...]}; with a
/// "cells" key instead of "simplices" the complex is polyhedral and every
/// cell must be listed.
inline ComplexInput complex_input_from_json(const Json& j)
{
    try {
        ComplexInput in;
        for (const auto& v : j.at("vertices")) {
            const auto id = v.at("id").get<VertexId>();
            if (!in.valuation.emplace(id, value_from_json(v.at("f"))).second) {
                throw Error(ErrorKind::ParseError, "vertex " + std::to_string(id) + " listed twice");
            }
        }
        const bool has_cells = j.contains("cells");
        if (has_cells && j.contains("simplices")) {
            throw Error(ErrorKind::ParseError, "give either \"simplices\" or \"cells\", not both");
        }
        in.polyhedral = has_cells;
        for (const auto& s : j.at(has_cells ? "cells" : "simplices")) {
            in.cells.push_back(s.get<std::vector<VertexId>>());
        }
        return in;
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
}

/// OFF mesh plus one scalar per vertex. Triangle-only meshes load as
/// simplicial complexes; a face with more vertices makes the whole mesh
/// polyhedral, with the boundary edges of every face added as cells.
inline ComplexInput complex_input_from_off(std::istream& off, std::istream& scalars)
{
    auto fail = [](const std::string& what) { throw Error(ErrorKind::ParseError, "OFF: " + what); };
    std::vector<std::string> lines;
    for (std::string line; std::getline(off, line);) {
        line = line.substr(0, line.find('#'));
        if (line.find_first_not_of(" \t\r") != std::string::npos) {
            lines.push_back(line);
        }
    }
    if (lines.empty()) {
        fail("empty file");
    }
    std::istringstream header(lines[0]);
    std::string magic;
    header >> magic;
    if (magic != "OFF") {
        fail("missing OFF header");
    }
    std::size_t next_line = 1;
    long long nv = 0;
    long long nf = 0;
    if (!(header >> nv)) {
        if (lines.size() < 2) {
            fail("missing element counts");
        }
        header = std::istringstream(lines[next_line++]);
        header >> nv;
    }
    if (!(header >> nf) || nv < 0 || nf < 0) {
        fail("bad element counts");
    }
    if (lines.size() < next_line + static_cast<std::size_t>(nv + nf)) {
        fail("unexpected end of file");
    }
    next_line += static_cast<std::size_t>(nv);

    // Anything after a face's vertex list (colours) is ignored.
    ComplexInput in;
    std::vector<std::vector<VertexId>> faces;
    for (long long i = 0; i < nf; ++i) {
        std::istringstream words(lines[next_line++]);
        long long k = 0;
        if (!(words >> k) || k < 1) {
            fail("bad face vertex count");
        }
        std::vector<VertexId> face;
        for (long long t = 0; t < k; ++t) {
            long long v = -1;
            if (!(words >> v) || v < 0 || v >= nv) {
                fail("face vertex missing or out of range");
            }
            face.push_back(static_cast<VertexId>(v));
        }
        in.polyhedral = in.polyhedral || face.size() > 3;
        faces.push_back(std::move(face));
    }

    // Whitespace-separated, one value per vertex in file order.
    std::vector<double> values;
    for (std::string word; scalars >> word;) {
        std::size_t used = 0;
        double x = 0;
        try {
            x = std::stod(word, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != word.size()) {
            fail("bad scalar value " + word);
        }
        values.push_back(x);
    }
    if (values.size() != static_cast<std::size_t>(nv)) {
        fail("expected " + std::to_string(nv) + " scalar values, got " + std::to_string(values.size()));
    }
    for (long long v = 0; v < nv; ++v) {
        in.valuation.emplace(static_cast<VertexId>(v), OrderedValue(values[static_cast<std::size_t>(v)]));
    }

    if (!in.polyhedral) {
        in.cells = std::move(faces);
        return in;
    }
    for (const auto& face : faces) {
        in.cells.push_back(face);
        for (std::size_t i = 0; face.size() > 2 && i < face.size(); ++i) {
            in.cells.push_back({face[i], face[(i + 1) % face.size()]});
        }
    }
    return in;
}

/// Reads JSON, or OFF when `scalars_path` is given.
inline ComplexInput load_complex_input(const std::string& path, const std::string& scalars_path = {})
{
    if (!scalars_path.empty()) {
        std::ifstream off(path);
        std::ifstream scalars(scalars_path);
        if (!off || !scalars) {
            throw Error(ErrorKind::ParseError, "cannot open " + (off ? scalars_path : path));
        }
        return complex_input_from_off(off, scalars);
    }
    return complex_input_from_json(parse_json_text(read_text(path)));
}

inline SimplicialComplex build_simplicial(const ComplexInput& in)
{
    if (in.polyhedral) {
        throw Error(ErrorKind::InvalidInput, "input is polyhedral, not simplicial");
    }
    return SimplicialComplex::build(in.cells, in.valuation);
}

inline Json valuation_to_json(const Valuation& f)
{
    Json out = Json::array();
    for (const auto& [id, value] : f) {
        out.push_back({{"id", id}, {"f", value_to_json(value)}});
    }
    return out;
}

inline Json complex_to_json(const SimplicialComplex& k)
{
    Json simplices = Json::array();
    for (const auto& s : k.maximal_simplices()) {
        simplices.push_back(s.vertices());
    }
    return {{"vertices", valuation_to_json(k.valuation())}, {"simplices", simplices}};
}

/// Cell labels for reports: vertex lists for simplicial and polyhedral
/// complexes.
inline Json cell_json(const Simplex& s) { return s.vertices(); }

/// {"pairs":[[σ,τ],...], "critical":[σ,...], "vpaths":[...]}. Pairs are in
/// cell order, critical cells by dimension then value. With `vpaths`, one
/// single-mode V-path per cell matched upward.
inline Json gradient_report(const SimplicialComplex& k, const DiscreteGradientField& v, bool vpaths)
{
    Json pairs = Json::array();
    for (const auto& [lower, upper] : v.pairs()) {
        pairs.push_back({cell_json(k.simplex(lower)), cell_json(k.simplex(upper))});
    }
    Json critical = Json::array();
    for (CellId c : sorted_critical(k, v)) {
        critical.push_back(cell_json(k.simplex(c)));
    }
    Json paths = Json::array();
    if (vpaths) {
        for (const auto& [lower, upper] : v.pairs()) {
            (void)upper;
            for (const auto& p : trace_vpath(k, v, k.simplex(lower), TraceMode::Single)) {
                Json cells = Json::array();
                for (CellId c : p.cells) {
                    cells.push_back(cell_json(k.simplex(c)));
                }
                paths.push_back(cells);
            }
        }
    }
    return {{"pairs", pairs}, {"critical", critical}, {"vpaths", paths}};
}

inline Json gradient_report(const PolyhedralComplex& k, const DiscreteGradientField& v, bool vpaths)
{
    Json pairs = Json::array();
    for (const auto& [lower, upper] : v.pairs()) {
        pairs.push_back({cell_json(k.cell(lower)), cell_json(k.cell(upper))});
    }
    auto crit = v.critical();
    std::sort(crit.begin(), crit.end(), [&k](CellId a, CellId b) {
        const int da = k.poset().dim(a);
        const int db = k.poset().dim(b);
        return da != db ? da < db : k.compare_cells(a, b) < 0;
    });
    Json critical = Json::array();
    for (CellId c : crit) {
        critical.push_back(cell_json(k.cell(c)));
    }
    Json paths = Json::array();
    if (vpaths) {
        auto less = [&k](CellId a, CellId b) { return k.compare_cells(a, b) < 0; };
        for (const auto& [lower, upper] : v.pairs()) {
            (void)upper;
            for (const auto& p : trace_vpath(k.poset(), v, lower, TraceMode::Single, less)) {
                Json cells = Json::array();
                for (CellId c : p.cells) {
                    cells.push_back(cell_json(k.cell(c)));
                }
                paths.push_back(cells);
            }
        }
    }
    return {{"pairs", pairs}, {"critical", critical}, {"vpaths", paths}};
}

inline Json smoothness_report_json(const SimplicialComplex& k, const SmoothnessReport& r)
{
    Json witnesses = Json::array();
    for (const auto& w : r.witnesses) {
        witnesses.push_back({{"sigma", cell_json(k.simplex(w.sigma))},
                             {"tau", cell_json(k.simplex(w.tau))},
                             {"h_sigma", w.sigma_min},
                             {"h_face", w.face_min}});
    }
    return {{"smooth", r.smooth}, {"witnesses", witnesses}};
}

/// Complex JSON of the subdivision, valued by nested value sets, plus a
/// table mapping each new vertex to the simplex it subdivides.
inline Json subdivision_to_json(const Subdivision& sub)
{
    Json out = complex_to_json(sub.complex);
    Json table = Json::array();
    for (VertexId v : sub.complex.vertex_ids()) {
        table.push_back({{"id", v}, {"simplex", sub.barycenter_of.at(v).vertices()}});
    }
    out["barycenters"] = table;
    return out;
}

inline Pip pip_from_json(const Json& j)
{
    try {
        Pip p;
        p.elements = j.at("elements").get<std::vector<std::string>>();
        std::map<std::string, std::size_t> index;
        for (std::size_t i = 0; i < p.elements.size(); ++i) {
            if (!index.emplace(p.elements[i], i).second) {
                throw Error(ErrorKind::ParseError, "element " + p.elements[i] + " listed twice");
            }
        }
        auto lookup = [&index](const std::string& name) {
            auto it = index.find(name);
            if (it == index.end()) {
                throw Error(ErrorKind::ParseError, "unknown element " + name);
            }
            return it->second;
        };
        auto pairs = [&](const char* key, auto& out) {
            if (!j.contains(key)) {
                return;
            }
            for (const auto& pr : j.at(key)) {
                const auto names = pr.get<std::vector<std::string>>();
                if (names.size() != 2) {
                    throw Error(ErrorKind::ParseError, std::string(key) + " entries must be pairs");
                }
                out.emplace_back(lookup(names[0]), lookup(names[1]));
            }
        };
        pairs("covers", p.covers);
        pairs("inconsistent", p.inconsistent);
        return p;
    } catch (const Json::exception& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
}

inline Json pip_to_json(const Pip& p)
{
    Json covers = Json::array();
    for (const auto& [a, b] : p.covers) {
        covers.push_back({p.elements[a], p.elements[b]});
    }
    Json inconsistent = Json::array();
    for (const auto& [a, b] : p.inconsistent) {
        inconsistent.push_back({p.elements[a], p.elements[b]});
    }
    return {{"elements", p.elements}, {"covers", covers}, {"inconsistent", inconsistent}};
}

inline Json element_set_json(const Pip& p, ElementSet s)
{
    Json out = Json::array();
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (s >> i & 1) {
            out.push_back(p.elements[i]);
        }
    }
    return out;
}

inline Json cube_json(const Pip& p, const CubeCell& c)
{
    return {{"ideal", element_set_json(p, c.ideal)}, {"marks", element_set_json(p, c.marks)}};
}

inline Json certificate_to_json(const Pip& p, const CollapseCertificate& cert)
{
    auto pair_list = [&p](const std::vector<std::pair<CubeCell, CubeCell>>& pairs) {
        Json out = Json::array();
        for (const auto& [lower, upper] : pairs) {
            out.push_back({cube_json(p, lower), cube_json(p, upper)});
        }
        return out;
    };
    Json critical = Json::array();
    for (const auto& c : cert.critical) {
        critical.push_back(cube_json(p, c));
    }
    return {{"elements", p.elements},
            {"cells", cert.complex.size()},
            {"euler_characteristic", cert.complex.poset.euler_characteristic()},
            {"matching", pair_list(cert.matching)},
            {"critical", critical},
            {"collapse_order", pair_list(cert.collapse_order)}};
}

// DOT output ---------------------------------------------------------------

inline std::string dot_quote(const std::string& s)
{
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\') {
            out += '\\';
        }
        out += ch;
    }
    return out + "\"";
}

/// Hasse diagram with unmatched arcs drawn downward and matched arcs drawn
/// upward in bold.
template <class W, class CellLabel, class WeightLabel>
std::string hasse_to_dot(const HasseDiagram<W>& h, const DiscreteGradientField* v, CellLabel&& cell_label,
                         WeightLabel&& weight_label)
{
    std::ostringstream out;
    out << "digraph hasse {\n  rankdir=BT;\n";
    for (CellId c = 0; c < h.node_count; ++c) {
        out << "  n" << c << " [label=" << dot_quote(cell_label(c));
        if (v && v->is_critical(c)) {
            out << ", style=filled, fillcolor=lightcoral";
        }
        out << "];\n";
    }
    for (const auto& arc : h.arcs) {
        const bool matched = v && v->up(arc.lower) == arc.upper;
        const std::string label = dot_quote(weight_label(arc.weight));
        if (matched) {
            out << "  n" << arc.lower << " -> n" << arc.upper << " [label=" << label << ", style=bold];\n";
        } else {
            out << "  n" << arc.upper << " -> n" << arc.lower << " [label=" << label << "];\n";
        }
    }
    out << "}\n";
    return out.str();
}

/// The V-path digraph: σ -> τ for each pair and τ -> σ' for the other
/// facets of a matched τ. Critical cells are filled.
template <class CellLabel>
std::string vpath_digraph_to_dot(const FacePoset& poset, const DiscreteGradientField& v, CellLabel&& cell_label)
{
    std::ostringstream out;
    out << "digraph vpaths {\n";
    for (CellId c = 0; c < poset.size(); ++c) {
        out << "  n" << c << " [label=" << dot_quote(cell_label(c));
        if (v.is_critical(c)) {
            out << ", style=filled, fillcolor=lightcoral";
        }
        out << "];\n";
    }
    for (const auto& [sigma, tau] : v.pairs()) {
        out << "  n" << sigma << " -> n" << tau << " [style=bold];\n";
        for (CellId f : poset.facets(tau)) {
            if (f != sigma) {
                out << "  n" << tau << " -> n" << f << ";\n";
            }
        }
    }
    out << "}\n";
    return out.str();
}

} // namespace greedy_morse
