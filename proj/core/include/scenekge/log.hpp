#pragma once

#include <functional>
#include <string>

namespace scenekge {

using WarningSink = std::function<void(const std::string&)>;

// Routes a non-fatal diagnostic to the installed sink (stderr by default).
void warn(const std::string& message);

// Installs a new sink and returns the previous one. Passing an empty function restores stderr.
WarningSink set_warning_sink(WarningSink sink);

}  // namespace scenekge
