#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace sigmapi {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " at offset " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

// Raised by the type checker; path is the sequence of child indices from
// the root of the term to the offending node.
class TypeError : public Error {
public:
    TypeError(std::vector<int> p, std::string r, const std::string& msg);
    std::vector<int> path;
    std::string rule;
};

class SizeError : public Error {
public:
    using Error::Error;
};

std::string path_to_string(const std::vector<int>& path);

}  // namespace sigmapi
