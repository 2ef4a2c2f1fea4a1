#include "paracyc/io.hpp"

#include "paracyc/errors.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace paracyc {

namespace {

using nlohmann::json;

json matrix_to_json(const SparseMat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        Vec d = dense_row(m, i);
        for (const Rat& v : d) row.push_back(rat_str(v));
        rows.push_back(std::move(row));
    }
    return rows;
}

SparseMat matrix_from_json(const json& j, int rows, int cols, const std::string& what) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw IoError(what + ": expected " + std::to_string(rows) + " rows");
    SparseMat m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& row = j[i];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw IoError(what + ": expected " + std::to_string(cols) + " columns");
        for (int c = 0; c < cols; ++c) {
            Rat v = rat_parse(row[c].get<std::string>());
            if (v != 0) m.set(i, c, v);
        }
    }
    return m;
}

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw IoError("bad JSON in '" + path + "': " + e.what());
    }
    return j;
}

} // namespace

std::string structure_to_json(const CyclicStructure& cs) {
    json j;
    int M = cs.C.window;
    j["max_degree"] = M;
    j["ranks"] = cs.C.ranks;
    json faces = json::array();
    for (int m = 0; m <= M; ++m) {
        json per = json::array();
        for (const auto& f : cs.faces[m]) per.push_back(matrix_to_json(f));
        faces.push_back(std::move(per));
    }
    j["faces"] = std::move(faces);
    json t = json::array();
    for (int m = 0; m <= M; ++m) t.push_back(matrix_to_json(cs.t[m]));
    j["t"] = std::move(t);
    if (cs.degens) {
        json degs = json::array();
        for (int m = 0; m <= M - 1; ++m) {
            json per = json::array();
            for (const auto& s : (*cs.degens)[m]) per.push_back(matrix_to_json(s));
            degs.push_back(std::move(per));
        }
        j["degeneracies"] = std::move(degs);
    }
    if (cs.homotopy_s) {
        json hs = json::array();
        for (int m = 0; m <= M - 1; ++m) hs.push_back(matrix_to_json((*cs.homotopy_s)[m]));
        j["homotopy_s"] = std::move(hs);
    }
    return j.dump(1);
}

CyclicStructure structure_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        throw IoError(std::string("bad JSON: ") + e.what());
    }
    CyclicStructure cs;
    cs.name = j.value("name", std::string("structure"));
    if (!j.contains("max_degree") || !j.contains("ranks") || !j.contains("faces") ||
        !j.contains("t"))
        throw IoError("structure file needs max_degree, ranks, faces, t");
    int M = j["max_degree"].get<int>();
    if (M < 0) throw IoError("max_degree must be non-negative");
    cs.C.window = M;
    cs.C.ranks = j["ranks"].get<std::vector<long>>();
    if (static_cast<int>(cs.C.ranks.size()) != M + 1)
        throw IoError("ranks must list max_degree + 1 entries");

    const json& faces = j["faces"];
    if (static_cast<int>(faces.size()) != M + 1)
        throw IoError("faces must list one family per degree");
    cs.faces.resize(M + 1);
    for (int m = 0; m <= M; ++m) {
        if (static_cast<int>(faces[m].size()) != m + 1)
            throw IoError("degree " + std::to_string(m) + " needs " +
                          std::to_string(m + 1) + " faces");
        int rows = m >= 1 ? static_cast<int>(cs.C.ranks[m - 1]) : 0;
        for (int i = 0; i <= m; ++i)
            cs.faces[m].push_back(matrix_from_json(
                faces[m][i], rows, static_cast<int>(cs.C.ranks[m]), "face"));
    }
    const json& t = j["t"];
    if (static_cast<int>(t.size()) != M + 1) throw IoError("t must cover every degree");
    cs.t.resize(M + 1);
    for (int m = 0; m <= M; ++m)
        cs.t[m] = matrix_from_json(t[m], static_cast<int>(cs.C.ranks[m]),
                                   static_cast<int>(cs.C.ranks[m]), "t");
    if (j.contains("degeneracies")) {
        const json& degs = j["degeneracies"];
        if (static_cast<int>(degs.size()) != M)
            throw IoError("degeneracies must cover degrees 0..max_degree-1");
        cs.degens.emplace(M);
        for (int m = 0; m <= M - 1; ++m) {
            if (static_cast<int>(degs[m].size()) != m + 1)
                throw IoError("degree " + std::to_string(m) + " needs " +
                              std::to_string(m + 1) + " degeneracies");
            for (int i = 0; i <= m; ++i)
                (*cs.degens)[m].push_back(
                    matrix_from_json(degs[m][i], static_cast<int>(cs.C.ranks[m + 1]),
                                     static_cast<int>(cs.C.ranks[m]), "degeneracy"));
        }
    }
    if (j.contains("homotopy_s")) {
        const json& hs = j["homotopy_s"];
        if (static_cast<int>(hs.size()) != M)
            throw IoError("homotopy_s must cover degrees 0..max_degree-1");
        cs.homotopy_s.emplace(M);
        for (int m = 0; m <= M - 1; ++m)
            (*cs.homotopy_s)[m] =
                matrix_from_json(hs[m], static_cast<int>(cs.C.ranks[m + 1]),
                                 static_cast<int>(cs.C.ranks[m]), "homotopy");
    }
    return cs;
}

CyclicStructure read_structure_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return structure_from_json(ss.str());
}

void write_structure_json(const CyclicStructure& cs, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << structure_to_json(cs) << "\n";
}

Cochain read_cocycle_json(const std::string& path) {
    json j = read_file(path);
    if (!j.contains("degree") || !j.contains("components"))
        throw IoError("cocycle file needs degree and components");
    Cochain c;
    c.degree = j["degree"].get<int>();
    for (const auto& comp : j["components"]) {
        Vec v;
        for (const auto& entry : comp) v.push_back(rat_parse(entry.get<std::string>()));
        c.comps.push_back(std::move(v));
    }
    return c;
}

std::string conversion_to_json(const Cochain& input, const CocycleConversion& cc) {
    json j;
    j["degree"] = input.degree;
    json comps = json::array();
    for (const auto& comp : input.comps) {
        json v = json::array();
        for (const Rat& x : comp) v.push_back(rat_str(x));
        comps.push_back(std::move(v));
    }
    j["components"] = std::move(comps);
    json out = json::array();
    for (const Rat& x : cc.cyclic) out.push_back(rat_str(x));
    j["cyclic_cocycle"] = std::move(out);
    json lifted = json::array();
    for (const Rat& x : cc.lifted) lifted.push_back(rat_str(x));
    j["lifted"] = std::move(lifted);
    json cert;
    cert["coboundary_degree"] = cc.coboundary.degree;
    json cb = json::array();
    for (const auto& comp : cc.coboundary.comps) {
        json v = json::array();
        for (const Rat& x : comp) v.push_back(rat_str(x));
        cb.push_back(std::move(v));
    }
    cert["coboundary_components"] = std::move(cb);
    json checks = json::array();
    for (const auto& c : cc.cert.checks()) {
        json e;
        e["identity"] = c.identity;
        e["degree"] = c.degree;
        e["status"] = c.ok ? "pass" : "fail";
        e["witness"] = c.witness;
        checks.push_back(std::move(e));
    }
    cert["checks"] = std::move(checks);
    j["certificate"] = std::move(cert);
    return j.dump(1);
}

std::string report_to_json(const ValidationReport& rep) {
    json arr = json::array();
    for (const auto& c : rep.checks()) {
        json e;
        e["identity"] = c.identity;
        e["degree"] = c.degree;
        e["status"] = c.ok ? "pass" : "fail";
        e["witness"] = c.witness;
        arr.push_back(std::move(e));
    }
    json j;
    j["subject"] = rep.subject();
    j["checks"] = std::move(arr);
    j["all_ok"] = rep.all_ok();
    return j.dump(1);
}

std::string report_to_csv(const ValidationReport& rep) {
    std::ostringstream os;
    os << "identity,degree,status,witness\n";
    for (const auto& c : rep.checks()) {
        std::string ident = c.identity;
        for (auto& ch : ident)
            if (ch == ',') ch = ';';
        std::string wit = c.witness;
        for (auto& ch : wit)
            if (ch == ',') ch = ';';
        os << '"' << ident << '"' << ',' << c.degree << ','
           << (c.ok ? "pass" : "fail") << ',' << '"' << wit << '"' << "\n";
    }
    return os.str();
}

std::string agreement_to_json(const AgreementReport& ar) {
    json j;
    j["names"] = ar.names;
    json table = json::array();
    for (int m = ar.lo; m <= ar.hi; ++m) {
        json row;
        row["degree"] = m;
        json vals = json::array();
        for (const auto& r : ar.ranks) vals.push_back(r[m - ar.lo]);
        row["ranks"] = std::move(vals);
        table.push_back(std::move(row));
    }
    j["table"] = std::move(table);
    j["all_equal"] = ar.all_equal;
    return j.dump(1);
}

std::string agreement_to_csv(const AgreementReport& ar) {
    std::ostringstream os;
    os << "degree";
    for (const auto& n : ar.names) os << "," << n;
    os << ",equal\n";
    for (int m = ar.lo; m <= ar.hi; ++m) {
        os << m;
        bool eq = true;
        for (const auto& r : ar.ranks) {
            os << "," << r[m - ar.lo];
            eq = eq && r[m - ar.lo] == ar.ranks[0][m - ar.lo];
        }
        os << "," << (eq ? "yes" : "no") << "\n";
    }
    return os.str();
}

} // namespace paracyc
