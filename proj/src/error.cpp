#include "sigmapi/error.hpp"

namespace sigmapi {

std::string path_to_string(const std::vector<int>& path) {
    if (path.empty()) return "root";
    std::string s;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) s += '.';
        s += std::to_string(path[i]);
    }
    return s;
}

TypeError::TypeError(std::vector<int> p, std::string r, const std::string& msg)
    : Error("type error at " + path_to_string(p) + " (" + r + "): " + msg), path(std::move(p)), rule(std::move(r)) {}

}  // namespace sigmapi
