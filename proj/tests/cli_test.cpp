// Copyright 2026 The stablecount Authors.
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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "stablecount/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = stablecount::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) {
  const char* dir = std::getenv("STABLECOUNT_SAMPLES");
  return (fs::path(dir ? dir : "samples") / name).string();
}

const char* kThree =
    "n 3\nm 1: 1 2 3\nm 2: 2 3 1\nm 3: 3 1 2\n"
    "w 1: 2 3 1\nw 2: 3 1 2\nw 3: 1 2 3\n";

}  // namespace

TEST(Cli, SolveBothSides) {
  EXPECT_EQ(run({"solve", "-"}, kThree).out, "pair 1 1\npair 2 2\npair 3 3\n");
  EXPECT_EQ(run({"solve", "--side", "women", "-"}, kThree).out,
            "pair 1 3\npair 2 1\npair 3 2\n");
}

TEST(Cli, Blocking) {
  const auto r = run({"blocking", "-"},
                     std::string(kThree) + "pair 1 2\npair 2 1\npair 3 3\n");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "blocking 2 3\ntotal 1\n");
  EXPECT_EQ(run({"blocking", "-"}, kThree).code, 1);
}

TEST(Cli, RotationsPosetDot) {
  EXPECT_EQ(run({"rotations", "-"}, kThree).out,
            "rot 1: (1,1) (2,2) (3,3)\nrot 2: (1,2) (2,3) (3,1)\n");
  EXPECT_EQ(run({"poset", "-"}, kThree).out,
            "rot 1: (1,1) (2,2) (3,3)\nrot 2: (1,2) (2,3) (3,1)\ncover 1 2\n");
  EXPECT_NE(run({"poset", "--dot", "-"}, kThree).out.find("r1 -> r2;"),
            std::string::npos);
}

TEST(Cli, CountAndEnumerate) {
  EXPECT_EQ(run({"count", "-"}, kThree).out, "3\n");
  const auto r = run({"enumerate", "--limit", "1", "-"}, kThree);
  EXPECT_EQ(r.out, "matching 1\npair 1 1\npair 2 2\npair 3 3\ntotal 3\n");
}

TEST(Cli, GraphRoutesAgree) {
  const auto g = sample("graph_3x4.bis");
  EXPECT_EQ(run({"isets", g}).out, "29\n");
  for (const char* model : {"lists", "attr3", "euclid2"}) {
    EXPECT_EQ(run({"count", "--model", model, g}).out, "29\n") << model;
  }
  EXPECT_EQ(run({"count", "--tau", "3,1,2", sample("path4.bis")}).out, "8\n");
  EXPECT_EQ(run({"count", "--model", "attr3", "--tau", "3,1,2",
                 sample("path4.bis")}).code, 1);
}

TEST(Cli, GenOutputsParse) {
  const auto g = sample("path4.bis");
  const auto lists = run({"gen", g});
  EXPECT_EQ(lists.code, 0);
  EXPECT_EQ(run({"count", "-"}, lists.out).out, "8\n");
  for (const char* model : {"attr3", "euclid2"}) {
    const auto spec = run({"gen", "--model", model, g});
    EXPECT_EQ(spec.out.rfind("model ", 0), 0u);
    EXPECT_EQ(run({"count", "-"}, spec.out).out, "8\n") << model;
  }
}

TEST(Cli, OneAttribute) {
  EXPECT_EQ(run({"count-1d", sample("line5.spec")}).code, 0);
  EXPECT_EQ(run({"count-1d", sample("line5.spec")}).out,
            run({"count", sample("line5.spec")}).out);
  EXPECT_EQ(run({"count-1d", "-"}, kThree).code, 1);
}

TEST(Cli, VerifyFileAndDirectory) {
  const auto r = run({"verify", sample("graph_4x5.bis")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("is_count         : 93"), std::string::npos);
  const fs::path dir = fs::temp_directory_path() / "stablecount_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "b.bis") << "bis 1 1\ne 1 1\n";
  std::ofstream(dir / "a.bis") << "bis 2 1\ne 1 1\ne 2 1\n";
  std::ofstream(dir / "notes.txt") << "ignored\n";
  const auto ok = run({"verify", dir.string()});
  EXPECT_EQ(ok.code, 0);
  EXPECT_LT(ok.out.find("== a.bis"), ok.out.find("== b.bis"));
  EXPECT_NE(ok.out.find("files: 2  failed: 0"), std::string::npos);
  std::ofstream(dir / "c.bis") << "bis 2 2\ne 1 1\n";
  const auto bad = run({"verify", dir.string()});
  EXPECT_EQ(bad.code, 3);
  EXPECT_NE(bad.out.find("isolated"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"solve"}).code, 2);
  EXPECT_EQ(run({"solve", "--side", "both", "-"}, kThree).code, 2);
  EXPECT_EQ(run({"frobnicate", "-"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  const auto tie = run({"count", sample("tie.spec")});
  EXPECT_EQ(tie.code, 1);
  EXPECT_TRUE(tie.out.empty());
  EXPECT_NE(tie.err.find("equal"), std::string::npos);
  const auto parse = run({"count", "-"}, "n 2\nm 1: 1 1\n");
  EXPECT_EQ(parse.code, 1);
  EXPECT_NE(parse.err.find("line 2"), std::string::npos);
  EXPECT_EQ(run({"count", "/nonexistent/file"}).code, 1);
}

TEST(Cli, MaxBitsFromEnvironment) {
  ::setenv("STABLECOUNT_MAX_BITS", "64", 1);
  EXPECT_EQ(run({"count", "--model", "attr3", sample("path4.bis")}).code, 1);
  ::setenv("STABLECOUNT_MAX_BITS", "8192", 1);
  EXPECT_EQ(run({"count", "--model", "attr3", sample("path4.bis")}).out, "8\n");
  ::unsetenv("STABLECOUNT_MAX_BITS");
}
