#include "fiblrc/profile_io.hpp"

#include <fstream>
#include <sstream>

#include "fiblrc/error.hpp"

namespace fiblrc::io {

namespace {

void expect_kind(const json& j, const char* kind) {
    if (!j.is_object()) throw SchemaMismatch("expected a JSON object");
    if (!j.contains("schema") || j["schema"] != kSchema) throw SchemaMismatch("schema tag is not " + std::string(kSchema));
    if (!j.contains("kind") || j["kind"] != kind) throw SchemaMismatch("expected kind " + std::string(kind));
}

template <typename T>
T get_field(const json& j, const char* key) {
    if (!j.contains(key)) throw SchemaMismatch(std::string("missing key ") + key);
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw SchemaMismatch(std::string("bad value for ") + key + ": " + e.what());
    }
}

}  // namespace

json element_to_json(const gf::Field& f, Raw a) {
    if (a == 0) return "0";
    return *f.log(a);
}

Raw element_from_json(const gf::Field& f, const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "0") return 0;
        throw SchemaMismatch("unknown element token " + j.get<std::string>());
    }
    if (!j.is_number_unsigned()) throw SchemaMismatch("element must be a log index or \"0\"");
    const auto k = j.get<std::uint64_t>();
    if (k >= f.order() - 1) throw SchemaMismatch("log index " + std::to_string(k) + " out of range");
    return f.exp(k);
}

json profile_to_json(const lrc::CodeProfile& p) {
    const auto fp = gf::parse_field(p.field);
    json j;
    j["schema"] = kSchema;
    j["kind"] = "profile";
    j["field"] = p.field;
    j["r"] = p.r;
    j["q"] = p.q;
    j["m"] = p.m;
    j["n"] = p.n;
    j["k"] = p.k;
    j["b"] = p.b;
    j["availability"] = p.availability;
    j["orbits"] = p.orbits;
    j["d"] = p.d_exact ? json(*p.d_exact) : json(nullptr);
    j["d_is_exact"] = p.d_is_exact;
    j["d_lower"] = p.d_lower;
    j["d_upper"] = p.d_upper;
    json w = json::array();
    for (Raw a : p.witness) w.push_back(element_to_json(*fp, a));
    j["witness"] = w;
    return j;
}

lrc::CodeProfile profile_from_json(const json& j) {
    expect_kind(j, "profile");
    lrc::CodeProfile p;
    p.field = get_field<std::string>(j, "field");
    gf::FieldPtr fp;
    try {
        fp = gf::parse_field(p.field);
    } catch (const Error& e) {
        throw SchemaMismatch(std::string("bad field: ") + e.what());
    }
    p.r = get_field<unsigned>(j, "r");
    p.q = get_field<std::uint64_t>(j, "q");
    p.m = get_field<unsigned>(j, "m");
    p.n = get_field<std::size_t>(j, "n");
    p.k = get_field<std::size_t>(j, "k");
    p.b = get_field<std::size_t>(j, "b");
    p.availability = get_field<unsigned>(j, "availability");
    p.orbits = get_field<std::vector<std::size_t>>(j, "orbits");
    if (j.contains("d") && !j["d"].is_null()) p.d_exact = get_field<std::size_t>(j, "d");
    p.d_is_exact = get_field<bool>(j, "d_is_exact");
    p.d_lower = get_field<long>(j, "d_lower");
    p.d_upper = get_field<long>(j, "d_upper");
    if (j.contains("witness")) {
        if (!j["witness"].is_array()) throw SchemaMismatch("witness must be an array");
        for (const auto& e : j["witness"]) p.witness.push_back(element_from_json(*fp, e));
    }
    lrc::validate_profile(p);
    return p;
}

construction::EvaluationSet evaluation_set_for(const lrc::CodeProfile& p) {
    const auto fp = gf::parse_field(p.field);
    const auto sp = construction::SurfaceParams::make(fp, p.r, p.q);
    if (sp.m != p.m) throw SchemaMismatch("profile m does not match q and the field");
    auto es = construction::build_evaluation_set(sp, p.orbits);
    if (es.size() != p.n) throw SchemaMismatch("profile n does not match the evaluation set");
    return es;
}

json codeword_to_json(const gf::Field& f, const std::vector<Raw>& word) {
    json j;
    j["schema"] = kSchema;
    j["kind"] = "codeword";
    j["field"] = f.describe();
    json syms = json::array();
    for (Raw a : word) syms.push_back(element_to_json(f, a));
    j["symbols"] = syms;
    return j;
}

std::vector<Raw> codeword_from_json(const gf::Field& f, const json& j) {
    expect_kind(j, "codeword");
    if (get_field<std::string>(j, "field") != f.describe()) throw SchemaMismatch("codeword is over a different field");
    if (!j.contains("symbols") || !j["symbols"].is_array()) throw SchemaMismatch("missing symbols array");
    std::vector<Raw> out;
    for (const auto& e : j["symbols"]) out.push_back(element_from_json(f, e));
    return out;
}

json evaluation_set_to_json(const construction::EvaluationSet& es) {
    const auto& f = *es.params().field;
    json j;
    j["schema"] = kSchema;
    j["kind"] = "evaluation-set";
    j["field"] = f.describe();
    j["r"] = es.r();
    j["orbits"] = es.orbit_indices();
    json pts = json::array();
    for (std::size_t idx = 0; idx < es.size(); ++idx) {
        const auto c = es.coords(idx);
        const auto& pt = es.point(idx);
        pts.push_back({{"index", idx},
                       {"l", c.l},
                       {"i", c.i},
                       {"j", c.j},
                       {"x", element_to_json(f, pt.x)},
                       {"y", element_to_json(f, pt.y)},
                       {"t", element_to_json(f, pt.t)}});
    }
    j["points"] = pts;
    return j;
}

json sim_report_to_json(const harness::SimReport& rep) {
    json j;
    j["schema"] = kSchema;
    j["kind"] = "sim-report";
    json sc;
    sc["failures"] = rep.scenario.failures;
    sc["trials"] = rep.scenario.trials;
    sc["seed"] = rep.scenario.seed;
    sc["group_by_fiber"] = rep.scenario.group_by_fiber;
    sc["fixed_nodes"] = rep.scenario.fixed_nodes ? json(*rep.scenario.fixed_nodes) : json(nullptr);
    j["scenario"] = sc;
    j["nodes"] = rep.nodes;
    json trials = json::array();
    for (const auto& t : rep.trials)
        trials.push_back({{"failed_nodes", t.failed_nodes},
                          {"erased", t.erased},
                          {"repaired", t.repaired},
                          {"unrecovered", t.unrecovered},
                          {"reads", t.reads},
                          {"horizontal", t.horizontal},
                          {"vertical", t.vertical},
                          {"success", t.success}});
    j["trials"] = trials;
    j["totals"] = {{"erased", rep.erased},         {"repaired", rep.repaired},
                   {"unrecovered", rep.unrecovered}, {"reads", rep.reads},
                   {"horizontal", rep.horizontal}, {"vertical", rep.vertical},
                   {"success_rate", rep.success_rate}, {"reads_per_repair", rep.reads_per_repair}};
    return j;
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

json read_json_file(const std::string& path) { return parse_json(read_text_file(path)); }

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

}  // namespace fiblrc::io
