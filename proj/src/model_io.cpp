#include "reim/model_io.hpp"

#include <fstream>

#include "json.hpp"
#include "reim/numerics.hpp"

namespace reim {

namespace {

using nlohmann::json;

json common_header(const Interval& iv) {
    json j;
    j["eta"] = iv.lo;
    j["hi"] = iv.hi;
    j["meta"] = json::object();
    return j;
}

void write_file(const json& j, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("save_model: cannot open " + path);
    out << j.dump(2) << '\n';
    if (!out)
        throw std::runtime_error("save_model: write failed for " + path);
}

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("load_model: cannot open " + path);
    return json::parse(in);  // malformed input raises json::parse_error
}

Vec read_vec(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array())
        throw std::runtime_error(std::string("load_model: missing array field ") + key);
    return j.at(key).get<Vec>();
}

void check_poles(const Vec& b) {
    for (double v : b)
        if (!(v > 0.0))
            throw std::runtime_error("load_model: pole parameters must be positive");
}

}  // namespace

void save_model(const ReimModel& model, const std::string& path) {
    json j = common_header(model.interval);
    j["poles"] = model.poles_b;
    j["residues"] = json::array();
    j["interp_points"] = model.interp_x;
    for (const auto& [k, v] : model.meta) j["meta"][k] = v;
    write_file(j, path);
}

void save_model(const PartialFraction& pf, const Interval& iv, const std::string& path) {
    json j = common_header(iv);
    j["poles"] = pf.poles_b;
    j["residues"] = pf.residues_c;
    write_file(j, path);
}

ReimModel load_model(const std::string& path) {
    const json j = read_file(path);
    ReimModel m;
    m.interval = Interval(j.at("eta").get<double>(), j.at("hi").get<double>());
    m.poles_b = read_vec(j, "poles");
    check_poles(m.poles_b);
    m.interp_x = read_vec(j, "interp_points");
    if (m.interp_x.size() != m.poles_b.size())
        throw std::runtime_error("load_model: poles and interp_points disagree in length");
    if (j.contains("meta"))
        for (const auto& [k, v] : j.at("meta").items())
            m.meta[k] = v.get<std::string>();
    if (!m.poles_b.empty())
        m.cauchy_factorization = lu_factor(cauchy_matrix(m.poles_b, m.interp_x));
    return m;
}

PartialFraction load_partial_fraction(const std::string& path) {
    const json j = read_file(path);
    PartialFraction pf;
    pf.poles_b = read_vec(j, "poles");
    check_poles(pf.poles_b);
    pf.residues_c = read_vec(j, "residues");
    if (pf.residues_c.size() != pf.poles_b.size())
        throw std::runtime_error("load_model: poles and residues disagree in length");
    return pf;
}

}  // namespace reim
