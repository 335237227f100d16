#ifndef QGAUGE_VERSION_HPP
#define QGAUGE_VERSION_HPP

namespace qgauge {

inline constexpr const char* kVersion = "qgauge 0.1.0";

}

#endif
