#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Result {
  int status;
  std::string out;
};

// Runs the CLI through the shell with stderr discarded.
Result run(const std::string& args) {
  const std::string command = std::string("'") + LAYOUTREC_CLI + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buffer{};
  while (std::size_t got = std::fread(buffer.data(), 1, buffer.size(), pipe)) out.append(buffer.data(), got);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string data(const char* name) { return std::string("'") + LAYOUTREC_TEST_DATA + "/" + name + "'"; }

std::string temp_file(const std::string& name, const std::string& content) {
  const std::filesystem::path path = std::filesystem::temp_directory_path() / ("layoutrec_cli_" + name);
  std::ofstream(path) << content;
  return "'" + path.string() + "'";
}

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

const char* const kBlocksTree = "strc(2,[0,60],[con(5),vec(5,-10,idx(3,[0,-4,7],con(1)))])";
const char* const kBlocksValues = "0\n1\n2\n3\n4\n60\n56\n67\n50\n46\n57\n40\n36\n47\n30\n26\n37\n20\n16\n27\n";

}  // namespace

TEST_CASE("reconstruct prints the tree and the report") {
  const Result r = run("reconstruct " + data("blocks.dsp"));
  CHECK(r.status == 0);
  CHECK(first_line(r.out) == kBlocksTree);
  CHECK(r.out.find("# cost: 12\n") != std::string::npos);
  CHECK(r.out.find("# trivial_cost: 22\n") != std::string::npos);
  CHECK(r.out.find("# compression_ratio: 1.8333\n") != std::string::npos);

  const Result run4 = run("reconstruct " + temp_file("run.dsp", "0 1 2 3\n"));
  CHECK(first_line(run4.out) == "con(4)");
  CHECK(run4.out.find("# cost: 1\n") != std::string::npos);

  const Result shifted = run("reconstruct " + temp_file("shift.dsp", "3,5,7,9,11"));
  CHECK(first_line(shifted.out) == "idx(1,[3],vec(5,2,con(1)))");
  CHECK(shifted.out.find("# cost: 4\n") != std::string::npos);
}

TEST_CASE("output is deterministic") {
  const std::string args = "reconstruct --threads 3 --extended " + data("blocks.dsp");
  CHECK(run(args).out == run(args).out);
}

TEST_CASE("reconstruct output pipes into flatten") {
  const Result r = run("reconstruct " + data("blocks.dsp") + " | '" + LAYOUTREC_CLI + "' flatten -");
  CHECK(r.status == 0);
  CHECK(r.out == kBlocksValues);
  const Result json = run("reconstruct --format json " + data("blocks.dsp") + " | '" + LAYOUTREC_CLI + "' flatten");
  CHECK(json.out == kBlocksValues);
}

TEST_CASE("flatten and cost") {
  CHECK(run("flatten " + data("blocks.tree")).out == kBlocksValues);
  CHECK(run("flatten --base 10 " + temp_file("c2.tree", "con(2)")).out == "10\n11\n");
  const std::string trivial = temp_file(
      "trivial.tree", "idx(20,[0,1,2,3,4,60,56,67,50,46,57,40,36,47,30,26,37,20,16,27],con(1))");
  CHECK(run("cost " + trivial).out == "22\n");
  CHECK(run("cost --cost k_lookup=2 " + trivial).out == "42\n");
}

TEST_CASE("normalize keeps the new tree as the only tree line") {
  const std::string trivial = temp_file(
      "trivial2.tree", "idx(20,[0,1,2,3,4,60,56,67,50,46,57,40,36,47,30,26,37,20,16,27],con(1))");
  const Result r = run("normalize " + trivial);
  CHECK(r.status == 0);
  CHECK(first_line(r.out) == kBlocksTree);
  CHECK(r.out.find("# old_cost: 22\n") != std::string::npos);
  CHECK(r.out.find("# new_cost: 12\n") != std::string::npos);
}

TEST_CASE("verify verdicts and exit codes") {
  const std::string seq = temp_file("pair.dsp", "0 2");
  const Result sub = run("verify " + seq + " " + temp_file("idx.tree", "idx(2,[0,2],con(1))"));
  CHECK(sub.status == 1);
  CHECK(first_line(sub.out) == "suboptimal; witness vec(2,2,con(1))");
  const Result ok = run("verify " + seq + " " + temp_file("vec.tree", "vec(2,2,con(1))"));
  CHECK(ok.status == 0);
  CHECK(first_line(ok.out) == "optimal");
  const Result wrong = run("verify " + seq + " " + temp_file("con.tree", "con(2)"));
  CHECK(wrong.status == 1);
  CHECK(first_line(wrong.out) == "not-representing");
  CHECK(run("verify " + data("blocks.dsp") + " " + data("blocks.tree")).status == 3);
  CHECK(run("verify --max-n 20 " + data("blocks.dsp") + " " + data("blocks.tree")).status == 0);
}

TEST_CASE("error exit codes") {
  CHECK(run("reconstruct " + temp_file("bad.dsp", "1 2 x")).status == 2);
  CHECK(run("flatten " + temp_file("bad.tree", "idx(2,[0],con(1))")).status == 2);
  CHECK(run("reconstruct --max-n 5 " + data("blocks.dsp")).status == 3);
  CHECK(run("reconstruct " + temp_file("huge.dsp", "-9223372036854775808 9223372036854775807")).status == 4);
  CHECK(run("reconstruct --reject-duplicates " + temp_file("dup.dsp", "0 4 4")).status == 2);
  CHECK(run("reconstruct " + temp_file("dup2.dsp", "0 4 4")).status == 0);
  CHECK(run("normalize --max-flatten 10 " + temp_file("big.tree", "con(11)")).status == 3);
  CHECK(run("reconstruct --format xml " + data("blocks.dsp")).status == 2);
  CHECK(run("reconstruct --cost k_bogus=1 " + data("blocks.dsp")).status == 2);
  CHECK(run("reconstruct /nonexistent/file").status == 2);
  CHECK(run("").status == 2);
}

TEST_CASE("dot export") {
  const Result r = run("reconstruct --format dot " + data("blocks.dsp"));
  CHECK(r.out.rfind("digraph layout", 0) == 0);
  CHECK(r.out.find("// cost: 12") != std::string::npos);
}
