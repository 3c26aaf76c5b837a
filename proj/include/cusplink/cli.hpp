#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cusplink/verify.hpp"

namespace cusplink::cli {

// Exit codes: 0 = success / all checks passed, 1 = a verification failed,
// 2 = usage or precondition error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

enum class OutputFormat { text, json };
void emit_reports(const std::vector<Report>& reports, OutputFormat format, std::ostream& out);

}  // namespace cusplink::cli
