#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nbts::cli {

/// Runs one command. `args` excludes the program name. Returns 0 on success,
/// 1 on domain errors (JSON {"error","detail"} on err) and 2 on usage errors.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

struct TableRow {
  const char* label;
  const char* regime;
  bool classical;
  std::size_t dim;
  std::size_t vertices;
};

/// Expected dimension and vertex count of the six polytopes at (2,2,2,2).
const std::vector<TableRow>& expected_table();

}  // namespace nbts::cli
