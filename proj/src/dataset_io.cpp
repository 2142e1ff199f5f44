#include "mosrank/dataset_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mosrank/error.hpp"
#include "mosrank/result_document.hpp"

namespace mosrank {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_row(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

double parse_real(std::string_view text, const char* field, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v))
    throw DatasetError(std::string("invalid ") + field + " '" + std::string(text) + "'", line);
  return v;
}

int parse_int(std::string_view text, const char* field, std::size_t line) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw DatasetError(std::string("invalid ") + field + " '" + std::string(text) + "'", line);
  return v;
}

enum class Schema { estimates, votes };

constexpr std::string_view kEstimatesHeader = "condition,mos,ci95[,n,sd]";
constexpr std::string_view kVotesHeader = "condition,vote";

Schema detect_schema(const std::vector<std::string_view>& header, std::size_t& columns) {
  static const std::vector<std::string_view> estimates{"condition", "mos", "ci95", "n", "sd"};
  columns = header.size();
  if (header.size() == 2 && header[0] == "condition" && header[1] == "vote") return Schema::votes;
  if (header.size() >= 3 && header.size() <= estimates.size() &&
      std::equal(header.begin(), header.end(), estimates.begin()))
    return Schema::estimates;

  std::string got;
  for (std::size_t i = 0; i < header.size(); ++i) got += (i ? "," : "") + std::string(header[i]);
  throw DatasetError("unknown header '" + got + "'; expected '" + std::string(kEstimatesHeader) +
                         "' or '" + std::string(kVotesHeader) + "'",
                     1);
}

}  // namespace

Dataset read_dataset(std::istream& in, Scale scale, CiMethod method) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw DatasetError("empty file: missing header row", 1);
  ++line_no;
  std::string_view header_text = line;
  if (header_text.starts_with("\xEF\xBB\xBF")) header_text.remove_prefix(3);

  std::size_t columns = 0;
  const Schema schema = detect_schema(split_row(header_text), columns);

  std::vector<MosEstimate> estimates;
  std::vector<OpinionVotes> votes;
  std::unordered_map<std::string, std::size_t> index;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_row(line);
    if (fields.size() != columns)
      throw DatasetError("expected " + std::to_string(columns) + " fields, found " +
                             std::to_string(fields.size()),
                         line_no);
    const std::string id(fields[0]);
    if (id.empty()) throw DatasetError("empty condition id", line_no);

    if (schema == Schema::votes) {
      const int v = parse_int(fields[1], "vote", line_no);
      if (v < scale.lo || v > scale.hi)
        throw DatasetError("vote " + std::to_string(v) + " outside scale [" +
                               std::to_string(scale.lo) + ", " + std::to_string(scale.hi) + "]",
                           line_no);
      auto [it, inserted] = index.try_emplace(id, votes.size());
      if (inserted) votes.push_back({id, {}});
      votes[it->second].votes.push_back(v);
      continue;
    }

    if (!index.try_emplace(id, estimates.size()).second)
      throw DatasetError("duplicate condition '" + id + "'", line_no);
    MosEstimate e;
    e.condition_id = id;
    e.mos = parse_real(fields[1], "mos", line_no);
    if (!fields[2].empty()) {
      e.ci95 = parse_real(fields[2], "ci95", line_no);
      if (*e.ci95 < 0) throw DatasetError("negative ci95", line_no);
    }
    if (columns > 3 && !fields[3].empty()) {
      e.n = parse_int(fields[3], "n", line_no);
      if (*e.n < 1) throw DatasetError("vote count below 1", line_no);
    }
    if (columns > 4 && !fields[4].empty()) {
      e.sd = parse_real(fields[4], "sd", line_no);
      if (*e.sd < 0) throw DatasetError("negative sd", line_no);
    }
    estimates.push_back(std::move(e));
  }
  if (in.bad()) throw DatasetError("read error", 0);

  if (schema == Schema::votes) {
    for (const auto& v : votes) estimates.push_back(compute_mos_estimate(v, method, scale));
  }
  return Dataset(std::move(estimates), scale);
}

Dataset load_dataset(const std::filesystem::path& path, Scale scale, CiMethod method) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read dataset file '" + path.string() + "'");
  try {
    return read_dataset(in, scale, method);
  } catch (const DatasetError& e) {
    throw DatasetError(path.string(), e);
  }
}

void write_dataset_csv(std::ostream& out, const Dataset& dataset) {
  bool any_n = false;
  bool any_sd = false;
  for (const auto& e : dataset.entries()) {
    any_n = any_n || e.n.has_value();
    any_sd = any_sd || e.sd.has_value();
  }
  const bool with_n = any_n || any_sd;
  out << "condition,mos,ci95" << (with_n ? ",n" : "") << (any_sd ? ",sd" : "") << '\n';
  for (const auto& e : dataset.entries()) {
    out << e.condition_id << ',' << format_real(e.mos) << ',';
    if (e.ci95) out << format_real(*e.ci95);
    if (with_n) {
      out << ',';
      if (e.n) out << *e.n;
    }
    if (any_sd) {
      out << ',';
      if (e.sd) out << format_real(*e.sd);
    }
    out << '\n';
  }
}

}  // namespace mosrank
