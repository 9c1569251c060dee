#include "banditlab/log_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace banditlab {

using nlohmann::json;

void write_log(const LogDataset& data, std::ostream& out) {
    json header;
    header["format"] = "banditlog-v1";
    header["num_items"] = data.num_items;
    out << header.dump() << '\n';
    for (const BanditEvent& e : data.events) {
        json line;
        line["user_id"] = e.user_id;
        line["views"] = e.context.views;
        line["action"] = e.action;
        line["click"] = e.click;
        line["propensity"] = e.propensity;
        out << line.dump() << '\n';
    }
}

LogDataset read_log(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty log: missing banditlog-v1 header");
    json header = json::parse(line);
    if (header.value("format", "") != "banditlog-v1")
        throw std::runtime_error("not a banditlog-v1 file");

    LogDataset data;
    data.num_items = header.at("num_items").get<int>();
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j = json::parse(line);
        BanditEvent e;
        e.user_id = j.at("user_id").get<std::int64_t>();
        e.context.views = j.at("views").get<std::vector<int>>();
        e.action = j.at("action").get<int>();
        e.click = j.at("click").get<int>();
        e.propensity = j.at("propensity").get<double>();
        if (e.context.size() != data.num_items)
            throw std::runtime_error("views length mismatch on line " +
                                     std::to_string(lineno));
        data.events.push_back(std::move(e));
    }
    return data;
}

void write_log_file(const LogDataset& data, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_log(data, out);
    if (!out) throw std::runtime_error("write failed: " + path);
}

LogDataset read_log_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return read_log(in);
}

}  // namespace banditlab
