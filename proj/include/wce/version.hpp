#ifndef WCE_VERSION_HPP
#define WCE_VERSION_HPP

namespace wce {

inline constexpr const char* kVersion = "0.1.0";

}

#endif
