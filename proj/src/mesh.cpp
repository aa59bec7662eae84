#include "hexcurv/mesh.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "hexcurv/conformal.hpp"
#include "hexcurv/error.hpp"

namespace hexcurv {

namespace {

constexpr const char* kHeader = "hexcurv-mesh 1";

std::vector<std::string> split_ws(const std::string& line)
{
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok)
        out.push_back(tok);
    return out;
}

bool parse_int(const std::string& s, int& out)
{
    if (s.empty())
        return false;
    char* end = nullptr;
    errno = 0;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (*end != '\0' || errno != 0 || v < 0 || v > 100000000)
        return false;
    out = static_cast<int>(v);
    return true;
}

bool parse_real(const std::string& s, double& out)
{
    if (s.empty())
        return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return *end == '\0' && std::isfinite(out);
}

// Extracts the value of key=value; returns false if the token has another key.
bool keyed(const std::string& tok, const std::string& key, std::string& value)
{
    if (tok.rfind(key + "=", 0) != 0)
        return false;
    value = tok.substr(key.size() + 1);
    return true;
}

struct RawVertex {
    int line;
    int alpha;
};
struct RawEdge {
    int line;
    int a, b;
    double eta;
    double c;
    bool hasC;
};
struct RawFace {
    int line;
    Face f;
};

}  // namespace

MeshDocument parse_mesh(const std::string& text)
{
    std::vector<Diagnostic> errors;
    std::vector<Err> codes;
    auto error = [&](Err code, int line, std::string msg) {
        errors.push_back({line, err_name(code), std::move(msg)});
        codes.push_back(code);
    };

    std::map<int, RawVertex> verts;
    std::map<int, RawEdge> edges;
    std::map<int, RawFace> faces;
    MeshDocument doc;
    bool sawHeader = false, sawStructure = false;
    std::vector<int> specialIds;
    int specialLine = 0;

    std::istringstream in(text);
    std::string raw;
    int lineNo = 0;
    while (std::getline(in, raw)) {
        ++lineNo;
        const auto hash = raw.find('#');
        const std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
        const auto tok = split_ws(line);
        if (tok.empty())
            continue;
        if (!sawHeader) {
            if (tok.size() != 2 || tok[0] != "hexcurv-mesh" || tok[1] != "1") {
                error(Err::SyntaxError, lineNo, "expected header 'hexcurv-mesh 1'");
                break;
            }
            sawHeader = true;
            continue;
        }
        const std::string& kind = tok[0];
        if (kind == "open-edges" && tok.size() == 1) {
            doc.tri.open_edges = true;
        } else if (kind == "structure") {
            if (sawStructure) {
                error(Err::SyntaxError, lineNo, "duplicate structure record");
                continue;
            }
            sawStructure = true;
            specialLine = lineNo;
            bool haveFamily = false;
            for (std::size_t i = 1; i < tok.size(); ++i) {
                std::string val;
                if (keyed(tok[i], "family", val)) {
                    const auto fam = parse_family(val);
                    if (!fam)
                        error(Err::SyntaxError, lineNo, fmt::format("unknown family '{}'", val));
                    else
                        doc.spec.family = *fam;
                    haveFamily = true;
                } else if (keyed(tok[i], "special", val)) {
                    std::istringstream ids(val);
                    std::string id;
                    while (std::getline(ids, id, ',')) {
                        int v = 0;
                        if (id.empty())
                            continue;
                        if (!parse_int(id, v))
                            error(Err::SyntaxError, lineNo, fmt::format("bad special id '{}'", id));
                        else
                            specialIds.push_back(v);
                    }
                } else {
                    error(Err::SyntaxError, lineNo, fmt::format("unexpected token '{}'", tok[i]));
                }
            }
            if (!haveFamily)
                error(Err::SyntaxError, lineNo, "structure record needs family=");
        } else if (kind == "v") {
            int id = 0, alpha = 0;
            std::string val;
            if (tok.size() != 3 || !parse_int(tok[1], id) || !keyed(tok[2], "alpha", val) ||
                !(val == "-1" || val == "0" || val == "1")) {
                error(Err::SyntaxError, lineNo, "expected 'v <id> alpha=<-1|0|1>'");
                continue;
            }
            alpha = std::stoi(val);
            if (!verts.emplace(id, RawVertex{lineNo, alpha}).second)
                error(Err::SyntaxError, lineNo, fmt::format("duplicate vertex id {}", id));
        } else if (kind == "e") {
            RawEdge e{lineNo, 0, 0, 0.0, 0.0, false};
            int id = 0;
            std::string val;
            bool ok = (tok.size() == 5 || tok.size() == 6) && parse_int(tok[1], id) && parse_int(tok[2], e.a) &&
                      parse_int(tok[3], e.b) && keyed(tok[4], "eta", val) && parse_real(val, e.eta);
            if (ok && tok.size() == 6)
                ok = keyed(tok[5], "c", val) && parse_real(val, e.c) && (e.hasC = true);
            if (!ok) {
                error(Err::SyntaxError, lineNo, "expected 'e <id> <a> <b> eta=<real> [c=<real>]'");
                continue;
            }
            if (!edges.emplace(id, e).second)
                error(Err::SyntaxError, lineNo, fmt::format("duplicate edge id {}", id));
        } else if (kind == "f") {
            RawFace f{lineNo, {}};
            int id = 0;
            bool ok = tok.size() == 8 && parse_int(tok[1], id);
            for (int r = 0; ok && r < 3; ++r)
                ok = parse_int(tok[2 + r], f.f.v[r]) && parse_int(tok[5 + r], f.f.e[r]);
            if (!ok) {
                error(Err::SyntaxError, lineNo, "expected 'f <id> <va> <vb> <vc> <ea> <eb> <ec>'");
                continue;
            }
            if (!faces.emplace(id, f).second)
                error(Err::SyntaxError, lineNo, fmt::format("duplicate face id {}", id));
        } else {
            error(Err::SyntaxError, lineNo, fmt::format("unknown record '{}'", kind));
        }
    }
    if (!sawHeader && errors.empty())
        error(Err::SyntaxError, 1, "missing header 'hexcurv-mesh 1'");

    auto dense = [&](const auto& m, const char* what) {
        int expect = 0;
        for (const auto& [id, rec] : m) {
            if (id != expect) {
                error(Err::SyntaxError, rec.line, fmt::format("{} ids must be 0..n-1 without gaps (got {})", what, id));
                return;
            }
            ++expect;
        }
    };
    dense(verts, "vertex");
    dense(edges, "edge");
    dense(faces, "face");

    const int n = static_cast<int>(verts.size());
    doc.tri.n_boundary = n;
    doc.spec.alpha.clear();
    for (const auto& [id, v] : verts)
        doc.spec.alpha.push_back(v.alpha);
    doc.spec.special.assign(n, 0);
    for (int s : specialIds) {
        if (s >= n)
            error(Err::DanglingReference, specialLine, fmt::format("special vertex {} does not exist", s));
        else
            doc.spec.special[s] = 1;
    }
    bool anyShift = false;
    for (const auto& [id, e] : edges) {
        if (e.a >= n)
            error(Err::DanglingReference, e.line, fmt::format("edge {} references unknown vertex {}", id, e.a));
        if (e.b >= n)
            error(Err::DanglingReference, e.line, fmt::format("edge {} references unknown vertex {}", id, e.b));
        doc.tri.edges.push_back({e.a, e.b});
        doc.spec.eta.push_back(e.eta);
        anyShift = anyShift || e.hasC;
    }
    if (anyShift) {
        for (const auto& [id, e] : edges)
            doc.spec.c_shift.push_back(e.c);
    }
    const int ne = static_cast<int>(edges.size());
    for (const auto& [id, f] : faces) {
        bool ok = true;
        for (int r = 0; r < 3; ++r) {
            if (f.f.v[r] >= n) {
                error(Err::DanglingReference, f.line, fmt::format("face {} references unknown vertex {}", id, f.f.v[r]));
                ok = false;
            }
            if (f.f.e[r] >= ne) {
                error(Err::DanglingReference, f.line, fmt::format("face {} references unknown edge {}", id, f.f.e[r]));
                ok = false;
            }
        }
        if (ok) {
            for (int r = 0; r < 3; ++r) {
                const Edge& e = doc.tri.edges[f.f.e[r]];
                const int p = f.f.v[r], q = f.f.v[(r + 1) % 3];
                if (!((e.a == p && e.b == q) || (e.a == q && e.b == p)))
                    error(Err::SyntaxError, f.line,
                          fmt::format("face {}: edge {} does not join vertices {} and {}", id, f.f.e[r], p, q));
            }
        }
        doc.tri.faces.push_back(f.f);
    }
    doc.spec.special.resize(n);

    if (errors.empty()) {
        try {
            doc.warnings = validate_topology(doc.tri);
        } catch (const Error& e) {
            error(e.code(), 0, e.detail());
        }
    }
    if (errors.empty()) {
        for (const auto& issue : check_weights(doc.spec, doc.tri)) {
            if (issue.code == Err::FamilyConstraint)
                error(issue.code, specialLine, issue.message);
            else
                doc.warnings.push_back({0, err_name(issue.code), issue.message});
        }
    }
    if (!errors.empty()) {
        std::string msg;
        for (const auto& d : errors) {
            if (!msg.empty())
                msg += "; ";
            msg += d.line > 0 ? fmt::format("line {}: {}", d.line, d.message) : d.message;
        }
        fail(codes.front(), msg);
    }
    return doc;
}

MeshDocument load_mesh(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        fail(Err::PreconditionViolated, fmt::format("cannot open '{}'", path));
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_mesh(ss.str());
}

std::string serialize_mesh(const Triangulation& tri, const StructureSpec& spec)
{
    std::string out = fmt::format("{}\n", kHeader);
    if (tri.open_edges)
        out += "open-edges\n";
    if (tri.n_boundary == 0 && tri.edges.empty() && tri.faces.empty())
        return out;
    std::string special;
    for (int v = 0; v < tri.n_boundary; ++v) {
        if (spec.is_special(v))
            special += (special.empty() ? "" : ",") + std::to_string(v);
    }
    out += fmt::format("structure family={} special={}\n", family_name(spec.family), special);
    for (int v = 0; v < tri.n_boundary; ++v)
        out += fmt::format("v {} alpha={}\n", v, spec.alpha[v]);
    for (std::size_t e = 0; e < tri.edges.size(); ++e) {
        out += fmt::format("e {} {} {} eta={:.17g}", e, tri.edges[e].a, tri.edges[e].b, spec.eta[e]);
        if (!spec.c_shift.empty())
            out += fmt::format(" c={:.17g}", spec.c_shift[e]);
        out += "\n";
    }
    for (std::size_t f = 0; f < tri.faces.size(); ++f) {
        const Face& fc = tri.faces[f];
        out += fmt::format("f {} {} {} {} {} {} {}\n", f, fc.v[0], fc.v[1], fc.v[2], fc.e[0], fc.e[1], fc.e[2]);
    }
    return out;
}

std::vector<Corner> vertex_star(const Triangulation& tri, int i)
{
    if (i < 0 || i >= tri.n_boundary)
        fail(Err::OutOfRange, fmt::format("boundary component {} out of range (N={})", i, tri.n_boundary));
    std::vector<Corner> out;
    for (int f = 0; f < static_cast<int>(tri.faces.size()); ++f) {
        for (int r = 0; r < 3; ++r) {
            if (tri.faces[f].v[r] == i)
                out.push_back({f, r});
        }
    }
    return out;
}

std::vector<Diagnostic> validate_topology(const Triangulation& tri)
{
    std::vector<Diagnostic> warnings;
    std::vector<int> uses(tri.edges.size(), 0);
    for (std::size_t f = 0; f < tri.faces.size(); ++f) {
        const Face& fc = tri.faces[f];
        for (int r = 0; r < 3; ++r)
            ++uses[fc.e[r]];
        if (fc.v[0] == fc.v[1] || fc.v[1] == fc.v[2] || fc.v[2] == fc.v[0])
            warnings.push_back({0, "SelfAdjacent",
                                fmt::format("face {} meets one boundary component twice; convexity of the admissible "
                                            "space under this identification is not established",
                                            f)});
    }
    bool open = false;
    for (std::size_t e = 0; e < tri.edges.size(); ++e) {
        if (uses[e] == 0 || uses[e] > 2)
            fail(Err::SyntaxError, fmt::format("edge {} belongs to {} faces", e, uses[e]));
        open = open || uses[e] == 1;
    }
    if (open && !tri.open_edges)
        fail(Err::SyntaxError, "some edges bound only one face; add an 'open-edges' line to allow this");
    for (int v = 0; v < tri.n_boundary; ++v) {
        bool used = false;
        for (const Face& fc : tri.faces)
            used = used || fc.v[0] == v || fc.v[1] == v || fc.v[2] == v;
        if (!used)
            warnings.push_back({0, "Isolated", fmt::format("boundary component {} is in no face", v)});
    }
    return warnings;
}

Triangulation pants()
{
    Triangulation t;
    t.n_boundary = 3;
    t.edges = {{0, 1}, {1, 2}, {2, 0}};
    t.faces = {Face{{0, 1, 2}, {0, 1, 2}}, Face{{0, 2, 1}, {2, 1, 0}}};
    return t;
}

namespace {

int rotate_to_edge(Face& f, int edge)
{
    for (int r = 0; r < 3; ++r) {
        if (f.e[r] == edge) {
            Face g;
            for (int s = 0; s < 3; ++s) {
                g.v[s] = f.v[(r + s) % 3];
                g.e[s] = f.e[(r + s) % 3];
            }
            f = g;
            return 0;
        }
    }
    return -1;
}

}  // namespace

Triangulation random_sphere(int n, std::uint64_t seed)
{
    if (n < 3)
        fail(Err::PreconditionViolated, "a sphere triangulation needs at least three boundary components");
    std::mt19937_64 rng(seed);
    Triangulation t = pants();
    while (t.n_boundary < n) {
        const int fi = static_cast<int>(std::uniform_int_distribution<std::size_t>(0, t.faces.size() - 1)(rng));
        const Face old = t.faces[fi];
        const int d = t.n_boundary++;
        const int base = static_cast<int>(t.edges.size());
        for (int r = 0; r < 3; ++r)
            t.edges.push_back({old.v[r], d});
        // corner r, corner r+1, new vertex
        for (int r = 0; r < 3; ++r) {
            Face nf{{old.v[r], old.v[(r + 1) % 3], d}, {old.e[r], base + (r + 1) % 3, base + r}};
            if (r == 0)
                t.faces[fi] = nf;
            else
                t.faces.push_back(nf);
        }
    }
    std::vector<int> degree(t.n_boundary, 0);
    for (const Edge& e : t.edges) {
        ++degree[e.a];
        ++degree[e.b];
    }
    const int attempts = 4 * static_cast<int>(t.edges.size());
    for (int k = 0; k < attempts; ++k) {
        const int e = static_cast<int>(std::uniform_int_distribution<std::size_t>(0, t.edges.size() - 1)(rng));
        int f1 = -1, f2 = -1;
        for (int f = 0; f < static_cast<int>(t.faces.size()); ++f) {
            const Face& fc = t.faces[f];
            if (fc.e[0] == e || fc.e[1] == e || fc.e[2] == e)
                (f1 < 0 ? f1 : f2) = f;
        }
        if (f1 < 0 || f2 < 0)
            continue;
        Face A = t.faces[f1], B = t.faces[f2];
        rotate_to_edge(A, e);
        rotate_to_edge(B, e);
        const int a = A.v[0], b = A.v[1], c = A.v[2];
        if (B.v[0] != b || B.v[1] != a)
            continue;
        const int dd = B.v[2];
        if (c == dd || degree[a] <= 3 || degree[b] <= 3)
            continue;
        bool exists = false;
        for (const Edge& ed : t.edges)
            exists = exists || (ed.a == c && ed.b == dd) || (ed.a == dd && ed.b == c);
        if (exists)
            continue;
        t.edges[e] = {c, dd};
        t.faces[f1] = Face{{c, a, dd}, {A.e[2], B.e[1], e}};
        t.faces[f2] = Face{{dd, b, c}, {B.e[2], A.e[1], e}};
        --degree[a];
        --degree[b];
        ++degree[c];
        ++degree[dd];
    }
    return t;
}

}  // namespace hexcurv
