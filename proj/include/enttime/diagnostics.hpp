#pragma once

#include <functional>
#include <string>

namespace enttime {

using WarningSink = std::function<void(const std::string&)>;

// Replaces the warning sink (default: one line on stderr) and returns the
// previous one. Passing an empty function restores the default.
WarningSink set_warning_sink(WarningSink sink);

void warn(const std::string& message);

}  // namespace enttime
