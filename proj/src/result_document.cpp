#include "mosrank/result_document.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>

#include <fmt/format.h>

#include "mosrank/error.hpp"

#ifndef MOSRANK_VERSION
#define MOSRANK_VERSION "0.0.0"
#endif

namespace mosrank {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

std::string cell_text(const Cell& cell, bool human) {
  return std::visit(overloaded{
                        [](std::monostate) { return std::string(); },
                        [](const std::string& s) { return s; },
                        [&](double d) { return human ? fmt::format("{:.6f}", d) : format_real(d); },
                        [](std::int64_t i) { return std::to_string(i); },
                        [](bool b) { return std::string(b ? "true" : "false"); },
                    },
                    cell);
}

nlohmann::ordered_json cell_json(const Cell& cell) {
  return std::visit(overloaded{
                        [](std::monostate) { return nlohmann::ordered_json(nullptr); },
                        [](const std::string& s) { return nlohmann::ordered_json(s); },
                        [](double d) { return nlohmann::ordered_json(d); },
                        [](std::int64_t i) { return nlohmann::ordered_json(i); },
                        [](bool b) { return nlohmann::ordered_json(b); },
                    },
                    cell);
}

// Scalars print bare; strings unquoted; containers as compact JSON.
std::string json_scalar_text(const nlohmann::ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_real(v.get<double>());
  if (v.is_null()) return "";
  return v.dump();
}

void render_json(std::ostream& out, const ResultDocument& doc) {
  nlohmann::ordered_json j;
  j["schema_version"] = kResultSchemaVersion;
  j["tool"] = "mosrank";
  j["tool_version"] = tool_version();
  j["operation"] = doc.operation;
  j["config"] = doc.config;
  j["summary"] = doc.summary;
  auto& tables = j["tables"] = nlohmann::ordered_json::object();
  for (const auto& t : doc.tables) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
      nlohmann::ordered_json r = nlohmann::ordered_json::array();
      for (const auto& c : row) r.push_back(cell_json(c));
      rows.push_back(std::move(r));
    }
    tables[t.name] = {{"columns", t.columns}, {"rows", std::move(rows)}};
  }
  out << j.dump(2) << '\n';
}

void render_csv(std::ostream& out, const ResultDocument& doc) {
  out << "# schema_version=" << kResultSchemaVersion << '\n';
  out << "# tool=mosrank " << tool_version() << '\n';
  out << "# operation=" << doc.operation << '\n';
  for (const auto& [k, v] : doc.config.items()) out << "# config." << k << '=' << json_scalar_text(v) << '\n';
  for (const auto& [k, v] : doc.summary.items()) out << "# summary." << k << '=' << json_scalar_text(v) << '\n';
  for (const auto& t : doc.tables) {
    if (doc.tables.size() > 1) out << "# table=" << t.name << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << csv_escape(t.columns[i]);
    out << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(cell_text(row[i], false));
      out << '\n';
    }
  }
}

void render_table(std::ostream& out, const ResultDocument& doc) {
  out << doc.operation << " (mosrank " << tool_version() << ")\n";
  for (const auto& [k, v] : doc.config.items()) out << "  " << k << ": " << json_scalar_text(v) << '\n';
  if (!doc.summary.empty()) out << '\n';
  for (const auto& [k, v] : doc.summary.items()) {
    const std::string text = v.is_number_float() ? fmt::format("{:.6f}", v.get<double>()) : json_scalar_text(v);
    out << k << ": " << text << '\n';
  }
  for (const auto& t : doc.tables) {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> width;
    for (const auto& c : t.columns) width.push_back(c.size());
    for (const auto& row : t.rows) {
      auto& line = cells.emplace_back();
      for (std::size_t i = 0; i < row.size(); ++i) {
        line.push_back(cell_text(row[i], true));
        width[i] = std::max(width[i], line.back().size());
      }
    }
    out << '\n' << t.name << '\n';
    auto emit = [&](const std::vector<std::string>& line) {
      std::string text;
      for (std::size_t i = 0; i < line.size(); ++i)
        text += fmt::format("{}{:>{}}", i ? "  " : "", line[i], width[i]);
      out << text << '\n';
    };
    emit(t.columns);
    for (const auto& line : cells) emit(line);
  }
}

}  // namespace

OutputFormat parse_output_format(const std::string& name) {
  if (name == "table") return OutputFormat::table;
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw InvalidInput("unknown output format '" + name + "' (expected table, csv or json)");
}

const char* to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::table: return "table";
    case OutputFormat::csv: return "csv";
    case OutputFormat::json: return "json";
  }
  return "table";
}

std::string format_real(double value) {
  if (value == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

void render(std::ostream& out, const ResultDocument& doc, OutputFormat format) {
  switch (format) {
    case OutputFormat::table: render_table(out, doc); break;
    case OutputFormat::csv: render_csv(out, doc); break;
    case OutputFormat::json: render_json(out, doc); break;
  }
}

const char* tool_version() { return MOSRANK_VERSION; }

}  // namespace mosrank
