#ifndef ROMSCAT_VERSION_HPP
#define ROMSCAT_VERSION_HPP

namespace romscat {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
