#ifndef ROMSCAT_LOG_HPP
#define ROMSCAT_LOG_HPP

#include <iostream>
#include <string>

namespace romscat {

inline void warn(const std::string& msg) {
    std::cerr << "[romscat] warning: " << msg << "\n";
}

}  // namespace romscat

#endif
