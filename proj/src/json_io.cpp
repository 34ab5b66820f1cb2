#include "rainbow/json_io.hpp"

#include <fstream>

namespace rainbow {

namespace {

nlohmann::json edge_to_json(const Edge& e) { return nlohmann::json(e.vertices()); }

Edge edge_from_json(const nlohmann::json& j, const std::string& where) {
    if (!j.is_array())
        throw ValidationError(where + ": edge must be an array of vertex ids");
    std::vector<VertexId> vs;
    for (const auto& v : j) {
        if (!v.is_number_integer())
            throw ValidationError(where + ": vertex ids must be integers");
        vs.push_back(v.get<VertexId>());
    }
    try {
        return Edge(std::move(vs));
    } catch (const ValidationError& err) {
        throw ValidationError(where + ": " + err.what());
    }
}

std::vector<VertexId> vertex_list_from_json(const nlohmann::json& j,
                                            const std::string& where) {
    if (!j.is_array()) throw ValidationError(where + ": expected an array");
    std::vector<VertexId> out;
    for (const auto& v : j) {
        if (!v.is_number_integer())
            throw ValidationError(where + ": vertex ids must be integers");
        out.push_back(v.get<VertexId>());
    }
    return out;
}

nlohmann::json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

void write_file(const nlohmann::json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace

nlohmann::json family_to_json(const MatchingFamily& family) {
    nlohmann::json matchings = nlohmann::json::array();
    for (const Matching& m : family.matchings) {
        nlohmann::json edges = nlohmann::json::array();
        for (const Edge& e : m.edges) edges.push_back(edge_to_json(e));
        matchings.push_back(std::move(edges));
    }
    return {{"r", family.r},
            {"class", to_string(family.cls)},
            {"matchings", std::move(matchings)}};
}

MatchingFamily family_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ValidationError("family: expected a JSON object");
    for (const char* key : {"r", "class", "matchings"})
        if (!j.contains(key))
            throw ValidationError(std::string("family: missing field \"") + key + "\"");
    MatchingFamily f;
    if (!j["r"].is_number_integer())
        throw ValidationError("family: \"r\" must be an integer");
    f.r = j["r"].get<int>();
    if (!j["class"].is_string())
        throw ValidationError("family: \"class\" must be a string");
    f.cls = instance_class_from_string(j["class"].get<std::string>());
    if (!j["matchings"].is_array())
        throw ValidationError("family: \"matchings\" must be an array");
    int i = 0;
    for (const auto& jm : j["matchings"]) {
        std::string where = "matchings[" + std::to_string(i) + "]";
        if (!jm.is_array()) throw ValidationError(where + ": expected an array of edges");
        std::vector<Edge> edges;
        int k = 0;
        for (const auto& je : jm) {
            edges.push_back(edge_from_json(je, where + "[" + std::to_string(k) + "]"));
            ++k;
        }
        f.matchings.emplace_back(std::move(edges));
        ++i;
    }
    return f;
}

MatchingFamily load_family(const std::string& path) {
    return family_from_json(parse_file(path));
}

void save_family(const MatchingFamily& family, const std::string& path) {
    write_file(family_to_json(family), path);
}

nlohmann::json path_instance_to_json(const PathInstance& inst) {
    nlohmann::json paths = nlohmann::json::array();
    for (const DirectedPath& p : inst.paths) paths.push_back(nlohmann::json(p.vertices));
    nlohmann::json j = {{"S", nlohmann::json(inst.s)},
                        {"Y", nlohmann::json(inst.y)},
                        {"paths", std::move(paths)}};
    if (inst.is_st()) j["T"] = nlohmann::json(inst.t);
    return j;
}

PathInstance path_instance_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ValidationError("path instance: expected a JSON object");
    for (const char* key : {"S", "Y", "paths"})
        if (!j.contains(key))
            throw ValidationError(std::string("path instance: missing field \"") + key +
                                  "\"");
    PathInstance inst;
    inst.s = vertex_list_from_json(j["S"], "S");
    inst.y = vertex_list_from_json(j["Y"], "Y");
    if (j.contains("T")) inst.t = vertex_list_from_json(j["T"], "T");
    if (!j["paths"].is_array())
        throw ValidationError("path instance: \"paths\" must be an array");
    int k = 0;
    for (const auto& jp : j["paths"]) {
        DirectedPath p;
        p.vertices = vertex_list_from_json(jp, "paths[" + std::to_string(k) + "]");
        inst.paths.push_back(std::move(p));
        ++k;
    }
    return inst;
}

PathInstance load_path_instance(const std::string& path) {
    return path_instance_from_json(parse_file(path));
}

void save_path_instance(const PathInstance& inst, const std::string& path) {
    write_file(path_instance_to_json(inst), path);
}

nlohmann::json labeled_path_to_json(const LabeledPath& p) {
    return {{"vertices", nlohmann::json(p.vertices)},
            {"labels", nlohmann::json(p.labels)}};
}

nlohmann::json selection_to_json(const RainbowSelection& sel) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [i, e] : sel.picks())
        j[std::to_string(i)] = edge_to_json(e);
    return j;
}

nlohmann::json alternating_system_to_json(const AlternatingSystem& sys) {
    nlohmann::json m = nlohmann::json::array();
    for (const Edge& e : sys.m.edges) m.push_back(edge_to_json(e));
    nlohmann::json h = nlohmann::json::array();
    for (const auto& set : sys.h) {
        nlohmann::json js = nlohmann::json::array();
        for (const AlternatingPath& p : set) js.push_back(nlohmann::json(p.vertices));
        h.push_back(std::move(js));
    }
    return {{"m", std::move(m)}, {"h", std::move(h)}};
}

AlternatingSystem alternating_system_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("m") || !j.contains("h"))
        throw ValidationError("alternating system: need fields \"m\" and \"h\"");
    AlternatingSystem sys;
    std::vector<Edge> medges;
    int k = 0;
    for (const auto& je : j["m"])
        medges.push_back(edge_from_json(je, "m[" + std::to_string(k++) + "]"));
    sys.m = Matching(std::move(medges));
    for (const auto& jset : j["h"]) {
        std::vector<AlternatingPath> set;
        for (const auto& jp : jset) {
            AlternatingPath p;
            p.vertices = vertex_list_from_json(jp, "h path");
            // parity flags are recomputed against m
            for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i)
                p.in_m.push_back(
                    sys.m.contains_edge(Edge{p.vertices[i], p.vertices[i + 1]}));
            set.push_back(std::move(p));
        }
        sys.h.push_back(std::move(set));
    }
    return sys;
}

}  // namespace rainbow
