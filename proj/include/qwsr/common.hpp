#pragma once

#include <stdexcept>
#include <string>

namespace qwsr {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

[[noreturn]] inline void fail(const std::string& msg) {
    throw Error(msg);
}

inline void require(bool cond, const std::string& msg) {
    if (!cond) fail(msg);
}

}  // namespace qwsr
