// version.hpp

#pragma once

namespace whichpath {

inline constexpr const char* version = "0.1.0";

}  // namespace whichpath
