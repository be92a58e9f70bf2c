#include "ski/io.hpp"

#include <fstream>
#include <sstream>

#include "ski/error.hpp"

#include "json.hpp"

namespace ski {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

bool looks_like_json(const std::string& text) {
    for (char ch : text) {
        if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') continue;
        return ch == '{';
    }
    return false;
}

// Strip a '#' comment and surrounding whitespace; empty result means the
// line carries nothing.
std::string strip_line(const std::string& line) {
    std::string s = line.substr(0, line.find('#'));
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

long to_long(const std::string& tok, const std::string& what) {
    try {
        std::size_t used = 0;
        const long v = std::stol(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw parse_error("expected an integer for " + what + ", got '" +
                          tok + "'");
    }
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
}

SeifertKnot build_knot(std::string name, bool mirrored,
                       std::vector<std::vector<Int>> rows) {
    SeifertKnot k;
    k.name = name.empty() ? "knot" : std::move(name);
    k.mirrored = mirrored;
    k.seifert = SeifertMatrix(std::move(rows)); // validates det(V - V^T) = 1
    return k;
}

} // namespace

SeifertKnot parse_knot(const std::string& text) {
    if (looks_like_json(text)) {
        const json j = parse_json(text);
        if (!j.is_object()) throw parse_error("knot JSON must be an object");
        std::string name = "knot";
        bool mirrored = false;
        std::vector<std::vector<Int>> rows;
        if (j.contains("name")) {
            if (!j["name"].is_string())
                throw parse_error("knot field 'name' must be a string");
            name = j["name"].get<std::string>();
        }
        if (j.contains("mirrored")) {
            if (!j["mirrored"].is_boolean())
                throw parse_error("knot field 'mirrored' must be a boolean");
            mirrored = j["mirrored"].get<bool>();
        }
        if (j.contains("seifert")) {
            if (!j["seifert"].is_array())
                throw parse_error("knot field 'seifert' must be an array of "
                                  "integer rows");
            for (const auto& row : j["seifert"]) {
                if (!row.is_array())
                    throw parse_error("seifert rows must be arrays");
                std::vector<Int> r;
                for (const auto& x : row) {
                    if (!x.is_number_integer())
                        throw parse_error("seifert entries must be integers");
                    r.emplace_back(x.get<long>());
                }
                rows.push_back(std::move(r));
            }
        }
        for (const auto& [key, value] : j.items()) {
            (void)value;
            if (key != "name" && key != "mirrored" && key != "seifert")
                throw parse_error("unknown knot field '" + key + "'");
        }
        return build_knot(name, mirrored, std::move(rows));
    }

    std::string name = "knot";
    bool mirrored = false;
    std::vector<std::vector<Int>> rows;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string s = strip_line(line);
        if (s.empty()) continue;
        std::istringstream ls(s);
        std::string key;
        ls >> key;
        if (key == "name") {
            std::string rest;
            std::getline(ls, rest);
            const std::string v = strip_line(rest);
            if (v.empty())
                throw parse_error("line " + std::to_string(lineno) +
                                  ": 'name' needs a value");
            name = v;
        } else if (key == "mirrored") {
            std::string v;
            ls >> v;
            if (v == "true" || v == "1")
                mirrored = true;
            else if (v == "false" || v == "0")
                mirrored = false;
            else
                throw parse_error("line " + std::to_string(lineno) +
                                  ": 'mirrored' must be true or false");
        } else if (key == "seifert") {
            std::vector<Int> row;
            std::string tok;
            while (ls >> tok)
                row.emplace_back(
                    to_long(tok, "seifert entry (line " +
                                     std::to_string(lineno) + ")"));
            if (row.empty())
                throw parse_error("line " + std::to_string(lineno) +
                                  ": 'seifert' row is empty");
            rows.push_back(std::move(row));
        } else {
            throw parse_error("line " + std::to_string(lineno) +
                              ": unknown knot key '" + key + "'");
        }
    }
    return build_knot(name, mirrored, std::move(rows));
}

SeifertKnot load_knot(const std::string& path) {
    return parse_knot(read_file(path));
}

namespace {

struct MapEntry {
    int grading;
    std::size_t row, col;
    NovikovElement value;
};

// Shared assembly once sections are collected as entry lists.
ComplexFile assemble(const std::array<std::size_t, 4>& ranks,
                     const std::vector<MapEntry>& boundary,
                     const std::vector<MapEntry>& delta1,
                     const std::vector<MapEntry>& delta2,
                     const std::vector<MapEntry>& u, bool endo_present,
                     const std::vector<MapEntry>& endo) {
    ComplexFile out;
    GradedComplex& c = out.complex;
    c.ranks = ranks;
    for (int g = 0; g < 4; ++g) {
        c.boundary[g] = nov_zero_matrix(ranks[(g + 3) % 4], ranks[g]);
        c.umap[g] = nov_zero_matrix(ranks[(g + 2) % 4], ranks[g]);
    }
    c.delta1.assign(ranks[1], NovikovElement());
    c.delta2.assign(ranks[2], NovikovElement());

    auto place = [](NovMatrix& m, const MapEntry& e, const char* sec) {
        if (e.row >= m.size() || (!m.empty() && e.col >= m[0].size()))
            throw parse_error(std::string(sec) + " index (" +
                              std::to_string(e.row) + "," +
                              std::to_string(e.col) + ") out of range at "
                              "grading " + std::to_string(e.grading));
        m[e.row][e.col] = e.value;
    };
    auto check_grading = [](const MapEntry& e, const char* sec) {
        if (e.grading < 0 || e.grading > 3)
            throw parse_error(std::string(sec) + " grading " +
                              std::to_string(e.grading) +
                              " out of range (0..3)");
    };

    for (const auto& e : boundary) {
        check_grading(e, "boundary");
        place(c.boundary[e.grading], e, "boundary");
    }
    for (const auto& e : u) {
        check_grading(e, "u");
        place(c.umap[e.grading], e, "u");
    }
    for (const auto& e : delta1) {
        if (e.grading != 1)
            throw parse_error("delta1 entries carry grading 1, got " +
                              std::to_string(e.grading));
        if (e.row != 0)
            throw parse_error("delta1 is a single row (row index must be 0)");
        if (e.col >= ranks[1])
            throw parse_error("delta1 column " + std::to_string(e.col) +
                              " out of range");
        c.delta1[e.col] = e.value;
    }
    for (const auto& e : delta2) {
        if (e.grading != 2)
            throw parse_error("delta2 entries carry grading 2, got " +
                              std::to_string(e.grading));
        if (e.col != 0)
            throw parse_error(
                "delta2 is a single column (column index must be 0)");
        if (e.row >= ranks[2])
            throw parse_error("delta2 row " + std::to_string(e.row) +
                              " out of range");
        c.delta2[e.row] = e.value;
    }
    if (endo_present) {
        CobordismEndomorphism m;
        for (int g = 0; g < 4; ++g)
            m.maps[g] = nov_zero_matrix(ranks[g], ranks[g]);
        for (const auto& e : endo) {
            check_grading(e, "endo");
            place(m.maps[e.grading], e, "endo");
        }
        out.endo = std::move(m);
    }
    return out;
}

} // namespace

ComplexFile parse_complex(const std::string& text) {
    std::optional<std::array<std::size_t, 4>> ranks;
    std::vector<MapEntry> boundary, delta1, delta2, u, endo;
    bool endo_present = false;

    auto section_of = [&](const std::string& key) -> std::vector<MapEntry>* {
        if (key == "boundary") return &boundary;
        if (key == "delta1") return &delta1;
        if (key == "delta2") return &delta2;
        if (key == "u") return &u;
        if (key == "endo") {
            endo_present = true;
            return &endo;
        }
        return nullptr;
    };

    auto ranks_from = [](const std::vector<long>& v) {
        if (v.size() != 4)
            throw parse_error("'ranks' needs exactly four integers");
        std::array<std::size_t, 4> r{};
        for (int g = 0; g < 4; ++g) {
            if (v[g] < 0) throw parse_error("ranks must be nonnegative");
            r[g] = static_cast<std::size_t>(v[g]);
        }
        return r;
    };

    if (looks_like_json(text)) {
        const json j = parse_json(text);
        if (!j.is_object())
            throw parse_error("complex JSON must be an object");
        if (!j.contains("ranks"))
            throw parse_error("complex file needs a 'ranks' field");
        {
            if (!j["ranks"].is_array())
                throw parse_error("'ranks' must be an array");
            std::vector<long> v;
            for (const auto& x : j["ranks"]) {
                if (!x.is_number_integer())
                    throw parse_error("'ranks' entries must be integers");
                v.push_back(x.get<long>());
            }
            ranks = ranks_from(v);
        }
        for (const auto& [key, value] : j.items()) {
            if (key == "ranks") continue;
            std::vector<MapEntry>* sec = section_of(key);
            if (!sec)
                throw parse_error("unknown complex field '" + key + "'");
            if (!value.is_array())
                throw parse_error("section '" + key +
                                  "' must be an array of [grading, row, "
                                  "col, literal] tuples");
            for (const auto& t : value) {
                if (!t.is_array() || t.size() != 4 ||
                    !t[0].is_number_integer() || !t[1].is_number_integer() ||
                    !t[2].is_number_integer() || !t[3].is_string())
                    throw parse_error("section '" + key +
                                      "' entries must be [grading, row, col, "
                                      "novikov-literal]");
                MapEntry e;
                e.grading = t[0].get<int>();
                const long r = t[1].get<long>(), ccol = t[2].get<long>();
                if (r < 0 || ccol < 0)
                    throw parse_error("negative index in section '" + key +
                                      "'");
                e.row = static_cast<std::size_t>(r);
                e.col = static_cast<std::size_t>(ccol);
                e.value = parse_novikov(t[3].get<std::string>());
                sec->push_back(std::move(e));
            }
        }
    } else {
        std::istringstream in(text);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const std::string s = strip_line(line);
            if (s.empty()) continue;
            std::istringstream ls(s);
            std::string key;
            ls >> key;
            const std::string at = " at line " + std::to_string(lineno);
            if (key == "ranks") {
                std::vector<long> v;
                std::string tok;
                while (ls >> tok) v.push_back(to_long(tok, "rank" + at));
                ranks = ranks_from(v);
                continue;
            }
            std::vector<MapEntry>* sec = section_of(key);
            if (!sec)
                throw parse_error("unknown complex key '" + key + "'" + at);
            std::string gs, rs, cs;
            if (!(ls >> gs >> rs >> cs))
                throw parse_error("section '" + key +
                                  "' needs grading, row, col, literal" + at);
            MapEntry e;
            e.grading = static_cast<int>(to_long(gs, "grading" + at));
            const long r = to_long(rs, "row" + at);
            const long ccol = to_long(cs, "col" + at);
            if (r < 0 || ccol < 0)
                throw parse_error("negative index" + at);
            e.row = static_cast<std::size_t>(r);
            e.col = static_cast<std::size_t>(ccol);
            std::string rest;
            std::getline(ls, rest);
            const std::string lit = strip_line(rest);
            if (lit.empty())
                throw parse_error("missing novikov literal" + at);
            e.value = parse_novikov(lit);
            sec->push_back(std::move(e));
        }
    }

    if (!ranks) throw parse_error("complex file needs a 'ranks' line");
    return assemble(*ranks, boundary, delta1, delta2, u, endo_present, endo);
}

ComplexFile load_complex(const std::string& path) {
    return parse_complex(read_file(path));
}

} // namespace ski
