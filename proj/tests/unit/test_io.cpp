#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "fixtures.hpp"
#include "kernels.hpp"
#include "pframes/error.hpp"
#include "pframes/io.hpp"

using namespace pframes;
using namespace fixtures;
using pframes::io::Json;

namespace {

Error error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "expected pframes::Error";
  return Error(Errc::IoError, "none");
}

std::filesystem::path scratch(const std::string& name, const std::string& body) {
  const auto p = std::filesystem::temp_directory_path() / ("pframes_io_" + name);
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST(FrameJson, RoundTripIsBitExact) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const Frame f = random_frame(rng, 1 + t % 4, 2 + t % 5);
    const Json j = Json::parse(io::frame_to_json(f).dump());
    const Frame g = io::frame_from_json(j);
    EXPECT_EQ(g.vectors(), f.vectors());
  }
}

TEST(FrameJson, AcceptsSchemaKeyAndRejectsUnknownKeys) {
  EXPECT_NO_THROW(io::frame_from_json(Json::parse(R"({"schema": 1, "dim": 2, "vectors": [[1,0],[0,1]]})")));
  const Error e = error_of([] { io::frame_from_json(Json::parse(R"({"dim": 2, "vectors": [[1,0]], "vector": 1})")); });
  EXPECT_EQ(e.code(), Errc::ConfigError);
  EXPECT_NE(std::string(e.what()).find("'vector'"), std::string::npos);
}

TEST(FrameJson, RevalidatesInvariants) {
  const auto code = [](const char* text) { return error_of([&] { io::frame_from_json(Json::parse(text)); }).code(); };
  EXPECT_EQ(code(R"({"dim": 2})"), Errc::ConfigError);
  EXPECT_EQ(code(R"({"dim": 3, "vectors": [[1,0]]})"), Errc::ConfigError);
  EXPECT_EQ(code(R"({"dim": 2, "vectors": [[0,0],[0,0]]})"), Errc::ConfigError);
  EXPECT_EQ(code(R"({"dim": 2, "vectors": [[1,"a"]]})"), Errc::ConfigError);
  EXPECT_EQ(code(R"({"dim": 2, "vectors": [[1,0],[1]]})"), Errc::ConfigError);
  EXPECT_EQ(code(R"({"dim": -1, "vectors": [[1]]})"), Errc::ConfigError);
  EXPECT_EQ(code(R"([1, 2])"), Errc::ConfigError);
}

TEST(MeasureJson, RoundTripAndValidation) {
  const std::vector<Vector> atoms{vec({1, 2}), vec({-0.5, 3})};
  const std::vector<double> weights{0.25, 0.75};
  const DiscreteMeasure mu(atoms, weights);
  const DiscreteMeasure nu = io::measure_from_json(Json::parse(io::measure_to_json(mu).dump()));
  EXPECT_EQ(nu.atoms(), mu.atoms());
  EXPECT_EQ(nu.weights(), mu.weights());

  const Error bad = error_of([] {
    io::measure_from_json(Json::parse(R"({"dim": 1, "atoms": [[1],[2]], "weights": [0.5, 0.6]})"));
  });
  EXPECT_EQ(bad.code(), Errc::ConfigError);
  EXPECT_NE(std::string(bad.what()).find("weights"), std::string::npos);
}

TEST(KernelJson, RoundTripAndValidation) {
  std::mt19937_64 rng(12);
  const DppKernel k = random_kernel(rng, 4);
  const DppKernel k2 = io::kernel_from_json(Json::parse(io::kernel_to_json(k).dump()));
  EXPECT_EQ(k2.matrix(), k.matrix());
  EXPECT_EQ(error_of([] { io::kernel_from_json(Json::parse(R"({"k": [[2]]})")); }).code(), Errc::ConfigError);
  EXPECT_EQ(error_of([] { io::kernel_from_json(Json::parse(R"({"k": [[0.5, 0.1],[0.2, 0.5]]})")); }).code(),
            Errc::ConfigError);
}

TEST(JsonFiles, MalformedInputReportsLineAndColumn) {
  const auto p = scratch("bad.json", "{\n  \"dim\": 2,\n  \"vectors\": [[1, 0],, [0, 1]]\n}\n");
  const Error e = error_of([&] { io::read_json_file(p); });
  EXPECT_EQ(e.code(), Errc::ConfigError);
  EXPECT_NE(std::string(e.what()).find(":3:"), std::string::npos) << e.what();
  std::filesystem::remove(p);

  EXPECT_EQ(error_of([] { io::read_json_file("/nonexistent/pframes.json"); }).code(), Errc::IoError);
  EXPECT_EQ(error_of([] { io::parse_json_text("", "inline"); }).code(), Errc::ConfigError);
}

TEST(JsonFiles, ReadsWellFormedFile) {
  const auto p = scratch("ok.json", R"({"dim": 2, "vectors": [[1, 0], [0, 1]]})");
  EXPECT_TRUE(io::frame_from_json(io::read_json_file(p)).is_parseval());
  std::filesystem::remove(p);
}
