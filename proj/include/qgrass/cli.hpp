#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qgrass::cli {

// Exit codes: 0 success/holds, 1 verified-false or structure mismatch,
// 2 usage or domain error, 3 budget exhaustion.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace qgrass::cli
