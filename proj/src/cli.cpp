#include "mosrank/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "mosrank/dataset_io.hpp"
#include "mosrank/error.hpp"
#include "mosrank/gap_analysis.hpp"
#include "mosrank/missed_tie.hpp"
#include "mosrank/ranks.hpp"
#include "mosrank/result_document.hpp"
#include "mosrank/simulation.hpp"
#include "mosrank/transform.hpp"

namespace mosrank {

namespace {

struct CommonOptions {
  std::string format;
  std::string output;
  int scale_lo = 1;
  int scale_hi = 5;
  std::string ci_method = "student_t";
};

struct Invocation {
  ResultDocument doc;
  int status = kExitOk;
};

CiMethod parse_ci_method(const std::string& s) {
  return s == "normal" ? CiMethod::normal : CiMethod::student_t;
}

void add_output_options(CLI::App& sub, CommonOptions& opt) {
  sub.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"table", "csv", "json"}));
  sub.add_option("--output,-o", opt.output, "Write the result document to this file");
}

void add_dataset_options(CLI::App& sub, CommonOptions& opt) {
  sub.add_option("--scale-lo", opt.scale_lo, "Lowest rating on the scale")->capture_default_str();
  sub.add_option("--scale-hi", opt.scale_hi, "Highest rating on the scale")->capture_default_str();
  sub.add_option("--ci-method", opt.ci_method, "CI quantile for raw-vote files")
      ->check(CLI::IsMember({"student_t", "normal"}))
      ->capture_default_str();
}

Dataset load(const std::string& path, const CommonOptions& opt) {
  return load_dataset(path, Scale{opt.scale_lo, opt.scale_hi}, parse_ci_method(opt.ci_method));
}

void put_dataset_config(ResultDocument& doc, const CommonOptions& opt) {
  doc.config["scale_lo"] = opt.scale_lo;
  doc.config["scale_hi"] = opt.scale_hi;
  doc.config["ci_method"] = opt.ci_method;
}

Cell optional_cell(const std::optional<double>& v) { return v ? Cell(*v) : Cell(std::monostate{}); }

Invocation do_transform(const std::string& input, bool report_groups, const CommonOptions& opt) {
  const Dataset data = load(input, opt);
  const TieGrouping grouping = build_tie_groups(data);

  Invocation inv;
  auto& doc = inv.doc;
  doc.operation = "transform";
  doc.config["input"] = input;
  put_dataset_config(doc, opt);
  doc.config["report_groups"] = report_groups;
  doc.summary["conditions"] = data.size();
  doc.summary["groups"] = grouping.groups.size();
  doc.summary["rounding_collisions"] = grouping.rounding_collisions.size();

  ResultTable values{"transformed", {"condition", "mos", "ci95", "transformed_mos", "group"}, {}};
  for (std::size_t i = 0; i < data.size(); ++i) {
    const std::size_t g = grouping.group_of[i];
    values.rows.push_back({data[i].condition_id, data[i].mos, optional_cell(data[i].ci95),
                           grouping.groups[g].transformed_value, static_cast<std::int64_t>(g + 1)});
  }
  doc.tables.push_back(std::move(values));

  if (report_groups) {
    ResultTable groups{"groups", {"group", "transformed_mos", "mean_mos", "size", "members", "rounding_collision"}, {}};
    for (std::size_t g = 0; g < grouping.groups.size(); ++g) {
      const auto& grp = grouping.groups[g];
      std::string members;
      for (const auto& id : grp.member_ids) members += (members.empty() ? "" : ";") + id;
      const bool collides = std::any_of(grouping.rounding_collisions.begin(), grouping.rounding_collisions.end(),
                                        [&](const auto& c) { return c.first == g || c.second == g; });
      groups.rows.push_back({static_cast<std::int64_t>(g + 1), grp.transformed_value, grp.mean_mos,
                             static_cast<std::int64_t>(grp.members.size()), members, collides});
    }
    doc.tables.push_back(std::move(groups));
  }
  return inv;
}

Invocation do_srcc(const std::string& path_a, const std::string& path_b, bool with_transform,
                   const CommonOptions& opt, std::ostream& err) {
  const Dataset a = load(path_a, opt);
  const Dataset b = load(path_b, opt);

  std::vector<std::string> unmatched;
  for (const auto& e : a.entries())
    if (!b.find(e.condition_id)) unmatched.push_back(e.condition_id);
  for (const auto& e : b.entries())
    if (!a.find(e.condition_id)) unmatched.push_back(e.condition_id);
  if (!unmatched.empty()) {
    std::string list;
    for (const auto& id : unmatched) list += (list.empty() ? "" : ", ") + id;
    throw InvalidInput("condition ids not present in both inputs: " + list);
  }

  // Align B to A's order.
  const auto n = static_cast<Eigen::Index>(a.size());
  std::vector<std::size_t> b_index(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) b_index[i] = *b.find(a[i].condition_id);
  Eigen::VectorXd mos_a = a.mos_values();
  Eigen::VectorXd mos_b(n);
  for (Eigen::Index i = 0; i < n; ++i) mos_b(i) = b[b_index[static_cast<std::size_t>(i)]].mos;

  Invocation inv;
  auto& doc = inv.doc;
  doc.operation = "srcc";
  doc.config["input_a"] = path_a;
  doc.config["input_b"] = path_b;
  put_dataset_config(doc, opt);
  doc.config["transform"] = with_transform;
  doc.summary["conditions"] = a.size();

  auto guarded = [&](const char* label, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    try {
      doc.summary[label] = srcc(x, y);
    } catch (const DegenerateCorrelation& e) {
      doc.summary[label] = nullptr;
      err << "mosrank: " << label << ": " << e.what() << '\n';
      inv.status = kExitDegenerate;
    }
  };
  guarded("srcc_raw", mos_a, mos_b);

  ResultTable table{"conditions", {"condition", "mos_a", "mos_b"}, {}};
  Eigen::VectorXd ta, tb;
  if (with_transform) {
    ta = transform_mos(a);
    const Eigen::VectorXd tb_own = transform_mos(b);
    tb.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) tb(i) = tb_own(static_cast<Eigen::Index>(b_index[static_cast<std::size_t>(i)]));
    guarded("srcc_transformed", ta, tb);
    table.columns.insert(table.columns.end(), {"transformed_a", "transformed_b"});
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    std::vector<Cell> row{a[static_cast<std::size_t>(i)].condition_id, mos_a(i), mos_b(i)};
    if (with_transform) {
      row.emplace_back(ta(i));
      row.emplace_back(tb(i));
    }
    table.rows.push_back(std::move(row));
  }
  doc.tables.push_back(std::move(table));
  return inv;
}

Invocation do_max_effect(int n, int m_max) {
  if (n < 2) throw InvalidInput("--n must be at least 2");
  if (m_max < 0 || m_max > n - 1) throw InvalidInput("--m-max must lie in [0, n-1]");
  Invocation inv;
  auto& doc = inv.doc;
  doc.operation = "max-effect";
  doc.config["n"] = n;
  doc.config["m_max"] = m_max;
  ResultTable table{"max_effect", {"n", "m", "max_delta_rho"}, {}};
  for (int m = 0; m <= m_max; ++m)
    table.rows.push_back({static_cast<std::int64_t>(n), static_cast<std::int64_t>(m), max_delta_rho(n, m)});
  doc.tables.push_back(std::move(table));
  return inv;
}

Invocation do_gaps(const std::string& input, const CommonOptions& opt) {
  const Dataset data = load(input, opt);
  const GapReport report = gap_analysis(data);
  Invocation inv;
  auto& doc = inv.doc;
  doc.operation = "gaps";
  doc.config["input"] = input;
  put_dataset_config(doc, opt);
  doc.summary["pairs"] = report.pairs.size();
  doc.summary["fraction_within_ci"] = report.fraction_within_ci;

  ResultTable pairs{"gaps", {"upper", "lower", "gap", "ci_upper", "ci_lower", "within_ci"}, {}};
  for (const auto& p : report.pairs)
    pairs.rows.push_back({p.upper_id, p.lower_id, p.gap, p.ci_upper, p.ci_lower, p.within_ci});
  doc.tables.push_back(std::move(pairs));

  // Conditions in the same descending order the gaps were taken in.
  std::vector<std::string> ids;
  if (!report.pairs.empty()) ids.push_back(report.pairs.front().upper_id);
  for (const auto& p : report.pairs) ids.push_back(p.lower_id);
  ResultTable cis{"ci95", {"rank", "condition", "ci95"}, {}};
  for (std::size_t i = 0; i < ids.size(); ++i)
    cis.rows.push_back({static_cast<std::int64_t>(i + 1), ids[i], report.ci95[i]});
  doc.tables.push_back(std::move(cis));
  return inv;
}

struct SimulateOptions {
  std::string input;
  double sigma_start = 0.0;
  double sigma_stop = 0.0;
  double sigma_step = 0.0;
  int runs = 1000;
  std::uint64_t seed = 0;
  std::size_t top_k = 0;
  bool clamp = false;
  bool one_sided = false;
  std::string noisy_ci = "original";
  unsigned threads = 1;
};

std::vector<double> sigma_grid(double start, double stop, double step) {
  if (!(step > 0.0)) throw InvalidInput("--sigma-step must be positive");
  if (!(stop >= start)) throw InvalidInput("--sigma-stop must not be below --sigma-start");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> grid;
  for (std::size_t i = 0; i < count; ++i) {
    // 0.01 * 3 lands on 0.030000000000000002; snap to 12 decimals
    grid.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
  }
  return grid;
}

Invocation do_simulate(const SimulateOptions& s, const CommonOptions& opt) {
  const Dataset data = load(s.input, opt);
  NoiseStudyConfig cfg;
  cfg.sigma_grid = sigma_grid(s.sigma_start, s.sigma_stop, s.sigma_step);
  cfg.runs_per_sigma = s.runs;
  cfg.seed = s.seed;
  cfg.clamp_to_scale = s.clamp;
  if (s.top_k > 0) cfg.top_k = s.top_k;
  cfg.transform_side = s.one_sided ? TransformSide::noisy_only : TransformSide::both;
  cfg.noisy_ci = s.noisy_ci == "zero" ? NoisyCiPolicy::zero : NoisyCiPolicy::original;
  cfg.threads = s.threads;
  const NoiseStudyResult result = run_noise_study(data, cfg);

  Invocation inv;
  auto& doc = inv.doc;
  doc.operation = "simulate";
  doc.config["input"] = s.input;
  put_dataset_config(doc, opt);
  doc.config["sigma_start"] = s.sigma_start;
  doc.config["sigma_stop"] = s.sigma_stop;
  doc.config["sigma_step"] = s.sigma_step;
  doc.config["runs"] = s.runs;
  doc.config["seed"] = s.seed;
  doc.config["top_k"] = s.top_k > 0 ? nlohmann::ordered_json(s.top_k) : nlohmann::ordered_json(nullptr);
  doc.config["clamp"] = s.clamp;
  doc.config["transform_side"] = s.one_sided ? "noisy_only" : "both";
  doc.config["noisy_ci"] = s.noisy_ci;
  doc.config["delta_definition"] = "1 - srcc(true, noisy)";
  doc.summary["conditions"] = result.conditions;

  ResultTable table{"noise_study",
                    {"sigma", "max_delta_raw", "max_delta_transformed", "degenerate_runs_raw",
                     "degenerate_runs_transformed", "max_abs_raw_minus_transformed"},
                    {}};
  for (const auto& r : result.records)
    table.rows.push_back({r.sigma, r.max_delta_raw, r.max_delta_transformed,
                          static_cast<std::int64_t>(r.degenerate_runs_raw),
                          static_cast<std::int64_t>(r.degenerate_runs_transformed), r.max_raw_vs_transformed});
  doc.tables.push_back(std::move(table));
  return inv;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tied-rank-safe transformation of MOS values and rank-statistics tools", "mosrank"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version());

  CommonOptions opt;

  std::string input, input_a, input_b;
  bool report_groups = false;
  bool with_transform = false;
  int n = 0;
  int m_max = 0;
  SimulateOptions sim;

  auto* transform = app.add_subcommand("transform", "Transform MOS values into tie-group values");
  transform->add_option("--input", input, "Dataset file")->required();
  transform->add_flag("--report-groups", report_groups, "Also emit group membership");
  add_dataset_options(*transform, opt);
  add_output_options(*transform, opt);

  auto* srcc_cmd = app.add_subcommand("srcc", "Spearman rank correlation between two datasets");
  srcc_cmd->add_option("--input-a", input_a, "First dataset file")->required();
  srcc_cmd->add_option("--input-b", input_b, "Second dataset file")->required();
  srcc_cmd->add_flag("--transform", with_transform, "Also report the coefficient on transformed values");
  add_dataset_options(*srcc_cmd, opt);
  add_output_options(*srcc_cmd, opt);

  auto* max_effect = app.add_subcommand("max-effect", "Maximum SRCC change from missed tied ranks");
  max_effect->add_option("--n", n, "Number of conditions")->required();
  max_effect->add_option("--m-max", m_max, "Largest number of missed ties")->required();
  add_output_options(*max_effect, opt);

  auto* gaps = app.add_subcommand("gaps", "Consecutive MOS gaps against their CIs");
  gaps->add_option("--input", input, "Dataset file")->required();
  add_dataset_options(*gaps, opt);
  add_output_options(*gaps, opt);

  auto* simulate = app.add_subcommand("simulate", "Gaussian-noise robustness study of SRCC");
  simulate->add_option("--input", sim.input, "Dataset file")->required();
  simulate->add_option("--sigma-start", sim.sigma_start, "First noise SD")->required();
  simulate->add_option("--sigma-stop", sim.sigma_stop, "Last noise SD")->required();
  simulate->add_option("--sigma-step", sim.sigma_step, "Noise SD increment")->required();
  simulate->add_option("--runs", sim.runs, "Runs per noise SD")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "Master seed")->required();
  simulate->add_option("--top-k", sim.top_k, "Keep only the k highest-MOS conditions");
  simulate->add_flag("--clamp", sim.clamp, "Clamp noisy MOS to the rating scale");
  simulate->add_flag("--one-sided", sim.one_sided, "Transform only the noisy vector");
  simulate->add_option("--noisy-ci", sim.noisy_ci, "CI attached to noisy MOS values")
      ->check(CLI::IsMember({"original", "zero"}))
      ->capture_default_str();
  simulate->add_option("--threads", sim.threads, "Worker threads (0 = all cores); output does not depend on it")
      ->capture_default_str();
  add_dataset_options(*simulate, opt);
  add_output_options(*simulate, opt);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << tool_version() << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "mosrank: " << e.what() << "\n\n" << app.help();
    return kExitInputError;
  }

  try {
    std::string format_name = opt.format;
    if (format_name.empty()) {
      const char* env = std::getenv(kFormatEnvVar);
      format_name = env && *env ? env : "table";
    }
    const OutputFormat format = parse_output_format(format_name);

    Invocation inv;
    if (transform->parsed()) inv = do_transform(input, report_groups, opt);
    else if (srcc_cmd->parsed()) inv = do_srcc(input_a, input_b, with_transform, opt, err);
    else if (max_effect->parsed()) inv = do_max_effect(n, m_max);
    else if (gaps->parsed()) inv = do_gaps(input, opt);
    else inv = do_simulate(sim, opt);

    if (opt.output.empty()) {
      render(out, inv.doc, format);
    } else {
      std::ofstream file(opt.output, std::ios::binary);
      if (!file) throw InvalidInput("cannot write '" + opt.output + "'");
      render(file, inv.doc, format);
      if (!file) throw InvalidInput("failed writing '" + opt.output + "'");
    }
    return inv.status;
  } catch (const DegenerateCorrelation& e) {
    err << "mosrank: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const std::exception& e) {
    err << "mosrank: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace mosrank
