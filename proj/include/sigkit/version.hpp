#ifndef SIGKIT_VERSION_HPP
#define SIGKIT_VERSION_HPP

namespace sigkit {
inline constexpr const char* kVersion = "0.1.0";
}

#endif
