#include "mirrorglue/ainf.hpp"
#include "mirrorglue/data.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mg {

using nlohmann::json;

namespace {

std::map<std::string, std::string> string_map(const json& j)
{
    std::map<std::string, std::string> out;
    for (auto& [k, v] : j.items()) out[k] = v.is_string() ? v.get<std::string>() : v.dump();
    return out;
}

} // namespace

Model parse_model(const std::string& text)
{
    json j = json::parse(text);
    Model m;
    m.name = j.at("name").get<std::string>();
    m.note = j.value("note", "");
    m.objects = j.at("objects").get<std::vector<std::string>>();
    if (j.contains("units")) m.units = string_map(j["units"]);
    m.symbols = j.value("symbols", std::vector<std::string>{});
    if (j.contains("params"))
        for (auto& [k, v] : j["params"].items()) m.params[k] = LinExpr::parse(v.get<std::string>(), &m.params);
    for (auto& c : j.value("constraints", std::vector<std::string>{})) m.constraints.push_back(Constraint::parse(c, &m.params));
    m.variables = j.value("variables", std::vector<std::string>{});
    m.nontrivial_spin = j.value("spin", std::string("nontrivial")) == "nontrivial";
    m.max_insertions = j.value("max_insertions", 3);

    for (auto& g : j.at("generators")) {
        Generator gen;
        gen.name = g.at("name").get<std::string>();
        if (g.contains("object")) gen.src = gen.tgt = g["object"].get<std::string>();
        else {
            gen.src = g.at("src").get<std::string>();
            gen.tgt = g.at("tgt").get<std::string>();
        }
        gen.deg = g.at("deg").get<int>();
        if (g.contains("offset")) gen.offset = LinExpr::parse(g["offset"].get<std::string>(), &m.params);
        gen.open = g.value("open", false);
        gen.incomplete = g.value("incomplete", false);
        gen.note = g.value("note", "");
        m.generators.push_back(gen);
    }
    for (auto& e : j.value("entries", json::array())) {
        Entry en;
        en.inputs = e.at("m").get<std::vector<std::string>>();
        en.output = e.at("out").get<std::string>();
        en.coeff = e.value("coeff", std::string("1"));
        en.spin_flip = e.value("spin_flip", false);
        en.sign_unknown = e.value("sign_unknown", false);
        en.open = e.value("open", false);
        en.note = e.value("note", "");
        m.entries.push_back(en);
    }
    if (j.contains("deformations"))
        for (auto& [k, v] : j["deformations"].items()) m.deformations[k] = string_map(v);
    if (j.contains("elements"))
        for (auto& [k, v] : j["elements"].items()) m.elements[k] = string_map(v);
    if (j.contains("expected")) m.expected = string_map(j["expected"]);
    if (j.contains("strings")) m.strings = string_map(j["strings"]);

    auto errs = m.validate();
    if (!errs.empty()) {
        std::string msg = "model " + m.name + " invalid:";
        for (auto& e : errs) msg += "\n  " + e;
        throw std::invalid_argument(msg);
    }
    return m;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Model load_model(const std::string& path) { return parse_model(read_file(path)); }

std::string data_dir()
{
    namespace fs = std::filesystem;
    if (const char* env = std::getenv("MIRRORGLUE_DATA_DIR"); env && *env) return env;
#ifdef MIRRORGLUE_SOURCE_DATA_DIR
    if (fs::exists(MIRRORGLUE_SOURCE_DATA_DIR)) return MIRRORGLUE_SOURCE_DATA_DIR;
#endif
#ifdef MIRRORGLUE_INSTALL_DATA_DIR
    if (fs::exists(MIRRORGLUE_INSTALL_DATA_DIR)) return MIRRORGLUE_INSTALL_DATA_DIR;
#endif
    return "data";
}

std::string model_dir()
{
    if (const char* env = std::getenv("MIRRORGLUE_MODEL_DIR"); env && *env) return env;
    return data_dir() + "/models";
}

Model load_shipped_model(const std::string& name) { return load_model(model_dir() + "/" + name + ".json"); }

} // namespace mg
