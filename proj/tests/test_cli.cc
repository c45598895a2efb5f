// test_cli.cc
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// Runs the wseg binary end to end.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

namespace fs = std::filesystem;

struct Run {
  int status = -1;
  std::string out;
};

Run Exec(const std::string &args) {
  const std::string cmd = std::string("\"") + WSEG_CLI + "\" " + args + " 2>/dev/null";
  Run r;
  FILE *p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof(buf), p)) > 0) r.out.append(buf, n);
  const int raw = pclose(p);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string F(const std::string &name) {
  return std::string("\"") + WSEG_FIXTURES + "/" + name + "\"";
}

std::string Dict(const std::string &prefix) {
  return "--lexicon " + F(prefix + "_lexicon.tsv") + " --fallback " +
         F(prefix + "_fallback.tsv");
}

fs::path TempDir() {
  fs::path dir = fs::temp_directory_path() / ("wseg_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

void WriteFile(const fs::path &p, const std::string &s) {
  std::ofstream out(p, std::ios::binary);
  out << s;
}

std::string ReadFile(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST_CASE("segment the example sentence") {
  fs::path dir = TempDir();
  WriteFile(dir / "in.txt", "日文章魚怎麼說\n");
  Run r = Exec("segment " + Dict("example") + " \"" + (dir / "in.txt").string() + "\"");
  CHECK(r.status == 0);
  CHECK(r.out == "日文/章魚/怎麼/說\n");
  Run tagged = Exec("segment " + Dict("example") + " --format tagged \"" +
                    (dir / "in.txt").string() + "\"");
  CHECK(tagged.out.find("章魚_") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("baselines differ on the ambiguity fixture") {
  fs::path dir = TempDir();
  WriteFile(dir / "in.txt", "研究生命起源\n");
  const std::string in = " \"" + (dir / "in.txt").string() + "\"";
  Run gr = Exec("baseline --algo gr " + Dict("ambiguity") + in);
  Run ag = Exec("baseline --algo ag " + Dict("ambiguity") + in);
  Run st = Exec("segment " + Dict("ambiguity") + in);
  CHECK(gr.status == 0);
  CHECK(gr.out == "研究生/命/起源\n");
  CHECK(ag.out == "研究/生命/起源\n");
  CHECK(gr.out != ag.out);
  CHECK(st.out == "研究/生命/起源\n");
  fs::remove_all(dir);
}

TEST_CASE("compiled cache gives the same output and reruns are byte-identical") {
  fs::path dir = TempDir();
  const std::string cache = "\"" + (dir / "m.wseg").string() + "\"";
  WriteFile(dir / "in.txt", "日文章魚怎麼說\n說日文abc\n\n章魚\n");
  const std::string in = " \"" + (dir / "in.txt").string() + "\"";
  CHECK(Exec("compile " + Dict("example") + " -o " + cache).status == 0);
  Run direct = Exec("segment --format tsv " + Dict("example") + in);
  Run cached = Exec("segment --format tsv --model " + cache + in);
  Run threaded = Exec("segment --format tsv --jobs 3 --model " + cache + in);
  CHECK(direct.status == 0);
  CHECK(direct.out == cached.out);
  CHECK(direct.out == threaded.out);
  CHECK(Exec("segment --format tsv " + Dict("example") + in).out == direct.out);
  fs::remove_all(dir);
}

TEST_CASE("stdin input and settings before the positional") {
  const std::string cmd = "printf '日文章魚怎麼說\\n' | \"" + std::string(WSEG_CLI) +
                          "\" segment " + Dict("example") + " --set fallback_cost=30 -";
  FILE *p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[256] = {0};
  const size_t n = fread(buf, 1, sizeof(buf) - 1, p);
  CHECK(WEXITSTATUS(pclose(p)) == 0);
  CHECK(std::string(buf, n) == "日文/章魚/怎麼/說\n");
}

TEST_CASE("judge self-agreement and mds") {
  Run self = Exec("eval-judges " + F("judge_a.txt") + " " + F("judge_a.txt"));
  CHECK(self.status == 0);
  CHECK(self.out == "id,judge_a,judge_a.2\njudge_a,1.0000,1.0000\njudge_a.2,1.0000,1.0000\n");
  fs::path dir = TempDir();
  const std::string a = F("judge_a.txt");
  Run r = Exec("eval-judges " + a + " " + a + " --ids x,y");
  CHECK(r.status == 0);
  CHECK(r.out.find("x,1.0000,1.0000") != std::string::npos);
  const std::string dist = "\"" + (dir / "d.csv").string() + "\"";
  CHECK(Exec("eval-judges " + F("judge_a.txt") + " " + F("judge_b.txt") + " " +
             F("judge_c.txt") + " --distances " + dist).status == 0);
  Run m = Exec("mds " + dist);
  CHECK(m.status == 0);
  CHECK(m.out.find("id,dim1") == 0);
  fs::remove_all(dir);
}

TEST_CASE("exit codes") {
  CHECK(Exec("").status == 1);
  CHECK(Exec("segment --no-such-flag").status == 1);
  CHECK(Exec("segment --lexicon /nonexistent/a.tsv --fallback /nonexistent/b.tsv")
            .status == 2);
  fs::path dir = TempDir();
  WriteFile(dir / "bad.tsv", "#lexicon v1 mode=costs\n日文\tri4 wen2\tnc\tnot-a-number\t1\n");
  CHECK(Exec("segment --lexicon \"" + (dir / "bad.tsv").string() + "\" --fallback " +
             F("example_fallback.tsv") + " -").status == 1);
  CHECK(Exec("segment " + Dict("example") + " --set no_such_key=1 -").status == 1);
  fs::remove_all(dir);
}

}  // namespace
