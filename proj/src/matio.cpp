#include "svv/matio.hpp"

#include <fstream>

namespace svv {

using nlohmann::json;

json cmat_to_json(const CMat& m, std::optional<std::pair<Eigen::Index, Eigen::Index>> dims) {
    json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    if (dims) j["dims"] = {dims->first, dims->second};
    json data = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index k = 0; k < m.cols(); ++k)
            data.push_back({m(i, k).real(), m(i, k).imag()});
    j["data"] = std::move(data);
    return j;
}

CMat cmat_from_json(const json& j) {
    if (!j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw InvalidInput("matrix json: missing rows/cols/data");
    const Eigen::Index rows = j.at("rows").get<Eigen::Index>();
    const Eigen::Index cols = j.at("cols").get<Eigen::Index>();
    const auto& data = j.at("data");
    if (static_cast<Eigen::Index>(data.size()) != rows * cols)
        throw InvalidInput("matrix json: data length != rows*cols");
    CMat m(rows, cols);
    Eigen::Index n = 0;
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index k = 0; k < cols; ++k, ++n)
            m(i, k) = Complex(data[n].at(0).get<double>(), data[n].at(1).get<double>());
    return m;
}

std::optional<std::pair<Eigen::Index, Eigen::Index>> dims_from_json(const json& j) {
    if (!j.contains("dims")) return std::nullopt;
    const auto& d = j.at("dims");
    if (d.size() != 2) throw InvalidInput("matrix json: dims must have two entries");
    return std::make_pair(d.at(0).get<Eigen::Index>(), d.at(1).get<Eigen::Index>());
}

BipartiteOp bipartite_from_json(const json& j) {
    const auto dims = dims_from_json(j);
    if (!dims) throw InvalidInput("matrix json: bipartite input needs a dims field");
    return BipartiteOp(cmat_from_json(j), dims->first, dims->second);
}

json channel_to_json(const Channel& c) {
    json j;
    j["dimIn"] = c.dimIn();
    j["dimOut"] = c.dimOut();
    json ks = json::array();
    for (const CMat& k : c.kraus()) ks.push_back(cmat_to_json(k));
    j["kraus"] = std::move(ks);
    return j;
}

Channel channel_from_json(const json& j) {
    if (!j.contains("kraus")) throw InvalidInput("channel json: missing kraus list");
    std::vector<CMat> ks;
    for (const auto& k : j.at("kraus")) ks.push_back(cmat_from_json(k));
    return Channel(std::move(ks));
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidInput("parse error in " + path + ": " + e.what());
    }
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write file: " + path);
    out << j.dump(2) << "\n";
}

}  // namespace svv
