#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace mosrank {

inline constexpr int kResultSchemaVersion = 1;

enum class OutputFormat { table, csv, json };

OutputFormat parse_output_format(const std::string& name);
const char* to_string(OutputFormat format);

// Shortest decimal text that parses back to the same double.
std::string format_real(double value);

using Cell = std::variant<std::monostate, std::string, double, std::int64_t, bool>;

struct ResultTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

// Self-describing output of one CLI operation: the effective configuration
// plus scalar summary values and zero or more tables.
struct ResultDocument {
  std::string operation;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  std::vector<ResultTable> tables;
};

// JSON layout (schema_version 1):
//   {"schema_version":1,"tool":"mosrank","tool_version":"...",
//    "operation":"...","config":{...},"summary":{...},
//    "tables":{"<name>":{"columns":[...],"rows":[[...],...]}}}
// CSV: '# key=value' preamble lines, then per table a '# table=<name>' line,
// the column header and the rows. Table: aligned plain text.
void render(std::ostream& out, const ResultDocument& doc, OutputFormat format);

const char* tool_version();

}  // namespace mosrank
