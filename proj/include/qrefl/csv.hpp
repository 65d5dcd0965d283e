#pragma once

#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>

namespace qrefl::csv {

/// Scientific notation, 9 significant digits, '.' decimal separator,
/// independent of the global locale.
std::string number(double v);

void header(std::ostream& os, std::initializer_list<std::string_view> columns);

}  // namespace qrefl::csv
