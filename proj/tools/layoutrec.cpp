// Command-line front end: reconstruct, flatten, cost, normalize, verify.
//
// Standard output carries only deterministic content: a tree or displacement
// list plus "# key: value" report lines. Timing and diagnostics go to stderr.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "layoutrec/errors.hpp"
#include "layoutrec/normalize.hpp"
#include "layoutrec/oracle.hpp"
#include "layoutrec/reconstruct.hpp"
#include "layoutrec/sequence_io.hpp"
#include "layoutrec/tree_io.hpp"

namespace {

using namespace layoutrec;

enum ExitCode : int { kOk = 0, kNotOptimal = 1, kInputError = 2, kSizeError = 3, kOverflow = 4 };

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Drops "#" report lines so that reconstruct output feeds straight back in.
std::string strip_comments(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string out;
  while (std::getline(in, line)) {
    const std::size_t start = line.find_first_not_of(" \t\r");
    if (start != std::string::npos && line[start] == '#') continue;
    out += line;
    out += '\n';
  }
  return out;
}

TypeNode read_tree(const std::string& path) {
  const std::string text = strip_comments(read_input(path));
  const std::size_t start = text.find_first_not_of(" \t\r\n");
  if (start == std::string::npos || text[start] != '{') return parse_tree(text);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
  return tree_from_json(doc.contains("tree") ? doc.at("tree") : doc);
}

struct Common {
  bool extended = false;
  std::string cost_spec;
  std::string format = "text";
  unsigned threads = 1;

  CostModel model() const { return CostModel::parse(cost_spec); }
  TreeFormat tree_format() const { return *tree_format_from_string(format); }
};

void add_model_options(CLI::App& cmd, Common& common) {
  cmd.add_option("--cost", common.cost_spec, "Cost constants, e.g. k_con=1,k_lookup=2");
  cmd.add_flag("--extended", common.extended, "Also use the bucket constructors");
}

void add_output_options(CLI::App& cmd, Common& common) {
  cmd.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"text", "json", "dot"}));
  cmd.add_option("--threads", common.threads, "Worker threads for the segment table")->check(CLI::Range(1U, 256U));
}

// Writes a tree followed by report lines in the chosen format.
void emit(const TypeNode& tree, const std::vector<std::pair<std::string, nlohmann::json>>& report, TreeFormat format) {
  if (format == TreeFormat::json) {
    nlohmann::json doc = nlohmann::json::object();
    doc["tree"] = tree_to_json(tree);
    for (const auto& [key, value] : report) doc[key] = value;
    std::cout << doc.dump(2) << '\n';
    return;
  }
  const char* marker = format == TreeFormat::dot ? "// " : "# ";
  std::cout << render_tree(tree, format);
  if (format == TreeFormat::text) std::cout << '\n';
  for (const auto& [key, value] : report) {
    std::cout << marker << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  }
}

std::string ratio_text(double ratio) {
  if (ratio == std::numeric_limits<double>::infinity()) return "inf";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.4f", ratio);
  return buffer;
}

int run(int argc, char** argv) {
  CLI::App app{"Reconstruct concise constructor trees for displacement sequences"};
  app.require_subcommand(1);
  Common common;

  std::string input = "-";
  std::size_t max_n = 1024;
  bool reject_duplicates = false;
  CLI::App* rec = app.add_subcommand("reconstruct", "Find a least-cost tree for a displacement file");
  rec->add_option("input", input, "Displacement file, '-' for stdin");
  rec->add_option("--max-n", max_n, "Largest accepted sequence length");
  rec->add_flag("--reject-duplicates", reject_duplicates, "Fail on repeated displacements");
  add_model_options(*rec, common);
  add_output_options(*rec, common);

  Displacement base = 0;
  CLI::App* flat = app.add_subcommand("flatten", "Print the displacements a tree describes");
  flat->add_option("tree", input, "Tree file, '-' for stdin");
  flat->add_option("--base", base, "Offset added to every displacement");

  CLI::App* cost_cmd = app.add_subcommand("cost", "Print a tree's cost");
  cost_cmd->add_option("tree", input, "Tree file, '-' for stdin");
  cost_cmd->add_option("--cost", common.cost_spec, "Cost constants, e.g. k_con=1,k_lookup=2");

  std::size_t max_flatten = 1'000'000;
  CLI::App* norm = app.add_subcommand("normalize", "Rebuild a tree from its flattening");
  norm->add_option("tree", input, "Tree file, '-' for stdin");
  norm->add_option("--max-n", max_n, "Largest sequence length handed to reconstruction");
  norm->add_option("--max-flatten", max_flatten, "Largest accepted flattened length");
  add_model_options(*norm, common);
  add_output_options(*norm, common);

  std::string tree_path;
  std::size_t oracle_max_n = 6;
  CLI::App* ver = app.add_subcommand("verify", "Compare a tree against the exhaustive search");
  ver->add_option("sequence", input, "Displacement file")->required();
  ver->add_option("tree", tree_path, "Tree file")->required();
  ver->add_option("--max-n", oracle_max_n, "Largest sequence length the search accepts");
  add_model_options(*ver, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  const CostModel model = common.model();
  if (*rec) {
    const DisplacementSequence seq = parse_displacements(read_input(input));
    if (reject_duplicates && seq.has_duplicates()) throw InputError("input contains repeated displacements");
    ReconstructOptions options{model, common.extended, max_n, common.threads};
    const ReconstructionReport r = reconstruct(seq, options);
    emit(r.tree,
         {{"n", r.n},
          {"cost", r.cost},
          {"trivial_cost", r.trivial_cost},
          {"compression_ratio", ratio_text(r.compression_ratio)},
          {"table_entries", r.table_entries}},
         common.tree_format());
    std::cerr << "# wall_time_s: " << r.wall_time.count() << '\n';
  } else if (*flat) {
    std::cout << render_displacements(flatten(read_tree(input), base));
  } else if (*cost_cmd) {
    std::cout << cost(read_tree(input), model) << '\n';
  } else if (*norm) {
    const TypeNode tree = read_tree(input);
    NormalizeOptions options{{model, common.extended, max_n, common.threads}, max_flatten};
    const NormalizeResult r = normalize_tree(tree, options);
    emit(r.tree, {{"old", render_tree(tree)}, {"old_cost", r.old_cost}, {"new_cost", r.new_cost}},
         common.tree_format());
  } else if (*ver) {
    const DisplacementSequence seq = parse_displacements(read_input(input));
    OracleConfig cfg;
    cfg.max_n = oracle_max_n;
    cfg.extended = common.extended;
    const VerifyResult v = verify(read_tree(tree_path), seq, model, cfg);
    std::cout << to_string(v.verdict);
    if (v.witness) std::cout << "; witness " << render_tree(*v.witness);
    std::cout << '\n' << "# tree_cost: " << v.tree_cost << '\n';
    if (v.optimal_cost) std::cout << "# optimal_cost: " << *v.optimal_cost << '\n';
    return v.verdict == Verdict::optimal ? kOk : kNotOptimal;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const layoutrec::SizeLimitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kSizeError;
  } catch (const layoutrec::OverflowError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOverflow;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
}
