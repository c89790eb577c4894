#pragma once

#include <functional>
#include <string>

namespace hullscope {

/// Non-fatal diagnostics. The default sink writes "warning: ..." to stderr;
/// tools and tests may replace or silence it.
using WarningSink = std::function<void(const std::string&)>;

void set_warning_sink(WarningSink sink);
void warn(const std::string& message);

}  // namespace hullscope
