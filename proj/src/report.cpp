#include "invforge/lab.hpp"

#include <json.hpp>

#include <sstream>

namespace invforge {

namespace {

nlohmann::ordered_json report_obj(const Report& r) {
    nlohmann::ordered_json j;
    j["case"] = {{"group", group_name(r.c.group)},
                 {"space", space_name(r.c.space)},
                 {"q", r.c.field->q()}};
    j["checks"] = nlohmann::ordered_json::array();
    for (const Check& ch : r.checks)
        j["checks"].push_back({{"name", ch.name},
                               {"expected", ch.expected},
                               {"observed", ch.observed},
                               {"pass", ch.pass},
                               {"ms", ch.ms}});
    j["dims"] = r.dims;
    j["expected_dims"] = r.expected_dims;
    return j;
}

} // namespace

std::string report_json(const Report& r) { return report_obj(r).dump(2) + "\n"; }

std::string reports_json(std::span<const Report> rs) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Report& r : rs) arr.push_back(report_obj(r));
    return arr.dump(2) + "\n";
}

std::string report_csv(const Report& r) {
    std::ostringstream os;
    os << "group,space,q,degree,computed,expected\n";
    for (std::size_t d = 0; d < r.dims.size(); ++d)
        os << group_name(r.c.group) << "," << space_name(r.c.space) << ","
           << r.c.field->q() << "," << d << "," << r.dims[d] << ","
           << (d < r.expected_dims.size() ? r.expected_dims[d] : 0) << "\n";
    return os.str();
}

std::string report_text(const Report& r) {
    std::ostringstream os;
    os << "case " << r.c.name() << "\n";
    for (const Check& ch : r.checks)
        os << "  [" << (ch.pass ? "pass" : "FAIL") << "] " << ch.name
           << ": expected " << ch.expected << ", observed " << ch.observed << " ("
           << ch.ms << " ms)\n";
    os << "  dims          ";
    for (auto v : r.dims) os << v << " ";
    os << "\n  expected_dims ";
    for (auto v : r.expected_dims) os << v << " ";
    os << "\n";
    return os.str();
}

} // namespace invforge
