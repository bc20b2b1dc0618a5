// bdiff: block-aware line diff.
//
//   bdiff diff LEFT RIGHT [--format json|text|html] [--out PATH] [--exit-code]
//   bdiff eval CORPUS... [--cases N] [--seed N] [--out DIR]
//   bdiff version
//
// As a Git difftool:
//   git config difftool.bdiff.cmd 'bdiff diff "$LOCAL" "$REMOTE" --format text'
//   git difftool -t bdiff

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bdiff/config_io.hpp"
#include "bdiff/core.hpp"
#include "bdiff/es_builder.hpp"
#include "bdiff/eval.hpp"
#include "bdiff/html.hpp"
#include "bdiff/json_io.hpp"
#include "bdiff/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "1.0.0";
constexpr int kExitDifferent = 1;
constexpr int kExitError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kSettingFlags = {
    "algorithm", "tab-size", "ctx-len", "line-weight", "sim-threshold", "block-line-sim",
    "max-split", "min-bm",   "min-bc",  "stop-words",  "disable"};

void add_setting_flags(CLI::App* cmd, std::map<std::string, std::string>& values) {
  const std::map<std::string, std::string> help = {
      {"algorithm", "base diff: myers or histogram (default histogram)"},
      {"tab-size", "columns per tab stop (default 4)"},
      {"ctx-len", "context window in lines (default 4)"},
      {"line-weight", "content share of the line similarity (default 0.6)"},
      {"sim-threshold", "minimum line similarity for a line update (default 0.5)"},
      {"block-line-sim", "minimum similarity for an updated line inside a block (default 0.6)"},
      {"max-split", "maximum fragments tried for a split or merge (default 8)"},
      {"min-bm", "minimum effective length of a moved block (default 2)"},
      {"min-bc", "minimum effective length of a copied block (default 2)"},
      {"stop-words", "comma-separated lines ignored in block length"},
      {"disable", "comma-separated action kinds to leave out (LU,LS,LM,BM,BC)"},
  };
  for (const auto& name : kSettingFlags) {
    cmd->add_option("--" + name, values[name], help.at(name));
  }
}

bdiff::Config build_config(const CLI::App* cmd, const std::map<std::string, std::string>& values) {
  bdiff::Config cfg;
  if (const char* path = std::getenv("BDIFF_CONFIG"); path != nullptr && *path != '\0') {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError(std::string("cannot read BDIFF_CONFIG file ") + path);
    std::stringstream ss;
    ss << in.rdbuf();
    bdiff::apply_config_text(cfg, ss.str());
  }
  for (const auto& name : kSettingFlags) {
    if (cmd->count("--" + name) > 0) bdiff::apply_setting(cfg, name, values.at(name));
  }
  cfg.validate();
  return cfg;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool looks_binary(const std::string& data) { return data.find('\0') != std::string::npos; }

bdiff::TextFile read_text(const fs::path& path) {
  const std::string data = read_file(path);
  if (looks_binary(data)) throw UsageError(path.string() + ": binary file (NUL byte found)");
  return bdiff::split_text(data);
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + out_path);
  out << text;
}

void write_lines(const fs::path& path, const std::vector<std::string>& lines) {
  bdiff::TextFile f;
  f.lines = lines;
  f.final_newline = !lines.empty();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  out << bdiff::join_text(f);
}

int run_diff(const CLI::App* cmd, const std::map<std::string, std::string>& values,
             const std::string& left_path, const std::string& right_path,
             const std::string& format, const std::string& out_path, bool exit_code) {
  const bdiff::Config cfg = build_config(cmd, values);
  const bdiff::TextFile left = read_text(left_path);
  const bdiff::TextFile right = read_text(right_path);
  const bdiff::EditScript es = bdiff::compute_edit_script(left.lines, right.lines, cfg);

  std::string rendered;
  if (format == "json") {
    rendered = bdiff::es_to_json_string(es) + "\n";
  } else if (format == "text") {
    rendered = bdiff::render_text(es, left.lines);
  } else {
    rendered = bdiff::render_html(es, left.lines, right.lines,
                                  fs::path(left_path).filename().string() + " vs " +
                                      fs::path(right_path).filename().string());
  }
  write_output(rendered, out_path);
  return exit_code && !es.actions.empty() ? kExitDifferent : 0;
}

std::vector<bdiff::CorpusFile> load_corpus(const std::vector<std::string>& roots) {
  std::vector<fs::path> paths;
  for (const auto& r : roots) {
    const fs::path root(r);
    if (fs::is_directory(root)) {
      for (const auto& e : fs::recursive_directory_iterator(root)) {
        if (e.is_regular_file()) paths.push_back(e.path());
      }
    } else if (fs::is_regular_file(root)) {
      paths.push_back(root);
    } else {
      throw UsageError("no such corpus path: " + r);
    }
  }
  std::sort(paths.begin(), paths.end());
  std::vector<bdiff::CorpusFile> corpus;
  for (const auto& p : paths) {
    const std::string data = read_file(p);
    if (looks_binary(data)) continue;
    auto text = bdiff::split_text(data);
    if (text.lines.empty()) continue;
    corpus.push_back({p.string(), std::move(text.lines)});
  }
  return corpus;
}

int run_eval(const CLI::App* cmd, const std::map<std::string, std::string>& values,
             const std::vector<std::string>& roots, int cases, std::uint64_t seed,
             bool favor_blocks, const std::string& format, const std::string& out_dir) {
  const bdiff::Config cfg = build_config(cmd, values);
  const auto corpus = load_corpus(roots);
  if (corpus.empty()) throw UsageError("corpus contains no text files");

  bdiff::MutationOptions opt;
  opt.favor_blocks = favor_blocks;
  std::function<void(std::size_t, const bdiff::CaseResult&, const bdiff::CaseArtifacts&)> sink;
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    sink = [&](std::size_t i, const bdiff::CaseResult& c, const bdiff::CaseArtifacts& a) {
      char name[32];
      std::snprintf(name, sizeof name, "case_%05zu", i + 1);
      const fs::path dir = fs::path(out_dir) / name;
      fs::create_directories(dir);
      write_lines(dir / "left", a.left);
      write_lines(dir / "right", a.truth.right);
      std::ofstream(dir / "truth.json") << bdiff::es_to_json_string(a.truth.es) << "\n";
      std::ofstream(dir / "computed.json") << bdiff::es_to_json_string(a.computed) << "\n";
      std::ofstream(dir / "source.txt") << corpus[c.file].name << "\nseed " << c.seed << "\n";
    };
  }
  const bdiff::EvalReport report = bdiff::run_evaluation(corpus, cases, seed, cfg, opt, sink);
  const std::string json = bdiff::report_json(report).dump(2) + "\n";
  const std::string table = bdiff::report_table(report);
  if (!out_dir.empty()) {
    std::ofstream(fs::path(out_dir) / "report.json") << json;
    std::ofstream(fs::path(out_dir) / "report.txt") << table;
  }
  std::cout << (format == "json" ? json : table);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block-aware line diff"};
  app.require_subcommand(1);

  std::map<std::string, std::string> diff_values, eval_values;

  auto* diff = app.add_subcommand("diff", "Compare two files");
  std::string left_path, right_path, diff_format = "text", diff_out;
  bool exit_code = false;
  diff->add_option("left", left_path, "Left (old) file")->required();
  diff->add_option("right", right_path, "Right (new) file")->required();
  diff->add_option("--format", diff_format, "json, text or html")
      ->check(CLI::IsMember({"json", "text", "html"}));
  diff->add_option("--out", diff_out, "Write output here instead of stdout");
  diff->add_flag("--exit-code", exit_code, "Exit with 1 when the files differ");
  add_setting_flags(diff, diff_values);

  auto* eval = app.add_subcommand("eval", "Mutation-based evaluation over a corpus");
  std::vector<std::string> roots;
  int cases = 100;
  std::uint64_t seed = 1;
  bool favor_blocks = false;
  std::string eval_format = "text", eval_out;
  eval->add_option("corpus", roots, "Files or directories to mutate")->required();
  eval->add_option("--cases", cases, "Number of mutated cases")->check(CLI::PositiveNumber);
  eval->add_option("--seed", seed, "Random seed");
  eval->add_flag("--favor-blocks", favor_blocks, "Prefer block moves and copies when mutating");
  eval->add_option("--format", eval_format, "json or text")->check(CLI::IsMember({"json", "text"}));
  eval->add_option("--out", eval_out, "Directory for cases and reports");
  add_setting_flags(eval, eval_values);

  app.add_subcommand("version", "Print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (diff->parsed()) {
      return run_diff(diff, diff_values, left_path, right_path, diff_format, diff_out, exit_code);
    }
    if (eval->parsed()) {
      return run_eval(eval, eval_values, roots, cases, seed, favor_blocks, eval_format, eval_out);
    }
    std::cout << "bdiff " << kVersion << "\n";
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "bdiff: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << "bdiff: " << e.what() << "\n";
  } catch (const bdiff::EsError& e) {
    std::cerr << "bdiff: internal error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "bdiff: " << e.what() << "\n";
  }
  return kExitError;
}
