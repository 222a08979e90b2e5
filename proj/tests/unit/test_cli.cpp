/* Copyright 2026 The SFSPN Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include <nlohmann/json.hpp>

#include "test_paths.hpp"

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sfspn_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(const std::string& args) const {
    const std::string cmd = std::string(SFSPN_CLI_PATH) + " " + args + " > " + path("stdout.txt") + " 2> " +
                            path("stderr.txt");
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string slurp(const std::string& name) const {
    std::ifstream in(path(name), std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
  }

  nlohmann::json json(const std::string& name) const { return nlohmann::json::parse(slurp(name)); }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("bogus"), 2);
  EXPECT_EQ(run("encrypt -i x"), 2);
  EXPECT_EQ(run("chaos classify --r notanumber"), 2);
  EXPECT_EQ(run("--help"), 0);
}

TEST_F(Cli, DomainErrorsExitOne) {
  EXPECT_EQ(run("sbox analyze --sbox " + path("missing.txt")), 1);
  EXPECT_EQ(run("sbox gen --alpha 0 --beta 0 -o " + path("t.txt")), 1);
  std::ofstream(path("bad.bin")) << "not a container";
  std::ofstream(path("keys.txt")) << "k1 = 00\n";
  EXPECT_EQ(run("decrypt -i " + path("bad.bin") + " -o " + path("out.bin") + " -k " + path("keys.txt")), 1);
  EXPECT_NE(slurp("stderr.txt").find("InvalidKeys"), std::string::npos);
}

TEST_F(Cli, AnalyzeFixtureJson) {
  ASSERT_EQ(run("sbox analyze --fixture --format json -o " + path("r.json")), 0);
  const auto j = json("r.json");
  const auto& box = j.contains("boxes") ? j["boxes"][0] : j;
  EXPECT_EQ(box["nonlinearity"], 112);
  EXPECT_DOUBLE_EQ(box["dp"].get<double>(), 0.015625);
  const auto manifest = json("r.json.manifest.json");
  EXPECT_EQ(manifest["subcommand"], "sbox analyze");
  EXPECT_TRUE(manifest.contains("threads"));
  EXPECT_TRUE(manifest.contains("wall_seconds"));
}

TEST_F(Cli, FamilyAndCsv) {
  ASSERT_EQ(run("sbox family --count 4 -o " + path("fam.txt")), 0);
  ASSERT_EQ(run("sbox analyze --family " + path("fam.txt") + " --format csv -o " + path("fam.csv")), 0);
  const auto csv = slurp("fam.csv");
  EXPECT_EQ(csv.substr(0, 5), "rank,");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
}

TEST_F(Cli, EncryptDecryptRoundTrip) {
  ASSERT_EQ(run("keygen --seed 5 -o " + path("keys.txt")), 0);
  ASSERT_EQ(run("image synth --width 40 --height 24 -o " + path("img.pgm")), 0);
  ASSERT_EQ(run("encrypt -i " + path("img.pgm") + " -o " + path("img.sfspn") + " -k " + path("keys.txt") +
                " --family-size 512 --rounds 4 --image-out " + path("cipher.pgm")),
            0);
  EXPECT_EQ(slurp("img.sfspn").substr(0, 7), "SFSPNv1");
  EXPECT_EQ(static_cast<int>(slurp("img.sfspn")[8]), 4);
  ASSERT_EQ(run("decrypt -i " + path("img.sfspn") + " -o " + path("back.pgm") + " -k " + path("keys.txt") +
                " --family-size 512"),
            0);
  EXPECT_EQ(slurp("back.pgm"), slurp("img.pgm"));
  ASSERT_EQ(run("image metrics -i " + path("cipher.pgm") + " -o " + path("m.json")), 0);
  EXPECT_GT(json("m.json")["entropy"].get<double>(), 7.0);
  ASSERT_EQ(run("image npcr-uaci " + path("img.pgm") + " " + path("cipher.pgm") + " -o " + path("n.json")), 0);
  EXPECT_GT(json("n.json")["npcr"].get<double>(), 90.0);
}

TEST_F(Cli, ChaosCommands) {
  ASSERT_EQ(run("chaos classify --r 4.52 -o " + path("c.json")), 0);
  EXPECT_EQ(json("c.json")["verdict"], "periodic");
  EXPECT_EQ(json("c.json")["period"], 3);
  ASSERT_EQ(run("chaos sensitivity --param r --delta 1e-10 --trace " + path("t.csv") + " -o " + path("s.json")), 0);
  EXPECT_TRUE(json("s.json").contains("first_index"));
  ASSERT_EQ(run("chaos bifurcate --r-from 3.0 --r-to 3.2 --r-step 0.1 --keep 5 -o " + path("b.csv")), 0);
  const auto csv = slurp("b.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 16);
}

TEST_F(Cli, NistRun) {
  ASSERT_EQ(run("nist run --source logistic --rule digit-parity --bits 20000 -o " + path("n.json")), 0);
  const auto j = json("n.json");
  ASSERT_TRUE(j.contains("tests"));
  EXPECT_EQ(j["tests"].size(), 14u);
}

TEST_F(Cli, AvalancheReport) {
  ASSERT_EQ(run("keygen --seed 2 -o " + path("keys.txt")), 0);
  ASSERT_EQ(run("avalanche -k " + path("keys.txt") + " --family-size 64 --trials 5 -o " + path("a.json")), 0);
  const auto j = json("a.json");
  EXPECT_EQ(j["pixel_change"].size(), 3u);
  EXPECT_TRUE(j["key_sensitivity"].contains("encryption"));
  EXPECT_EQ(j["bit_flip"]["trials"], 5);
}
