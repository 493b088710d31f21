#include <doctest.h>

#include "lfcap/errors.hpp"
#include "lfcap/service/protocol.hpp"

using namespace lfcap;
using namespace lfcap::service;
using nlohmann::json;

namespace {
const CameraModel kIntrinsics = CameraModel::from_fov(32, 48, 0.8);
}

TEST_CASE("wire modes round trip") {
  for (const char* name : {"RAW", "BLACK_BG", "ERROR_ON_VIDEO", "ERROR_ON_MPI"})
    CHECK(std::string(mode_wire_name(parse_wire_mode(name))) == name);
  CHECK_THROWS_AS(parse_wire_mode("black_bg"), ArgumentError);
}

TEST_CASE("frame request parsing") {
  const json j = {{"pose", {{"rotation", {1, 0, 0, 0, 1, 0, 0, 0, 1}}, {"center", {0.1, 0.2, 0.3}}}},
                  {"mode", "BLACK_BG"},
                  {"t", 0.25}};
  const FrameRequest r = parse_frame_request(j.dump(), kIntrinsics);
  CHECK(r.mode == mpi::OverlayMode::black_bg);
  CHECK(*r.t == 0.25);
  CHECK(r.pose.center.x() == 0.1);
  CHECK(r.pose.same_intrinsics(kIntrinsics));
  CHECK(parse_pose(pose_json(r.pose), kIntrinsics) == r.pose);

  json no_mode = j;
  no_mode.erase("mode");
  no_mode.erase("t");
  const FrameRequest d = parse_frame_request(no_mode, kIntrinsics);
  CHECK(d.mode == mpi::OverlayMode::error_on_mpi);
  CHECK_FALSE(d.t);
}

TEST_CASE("malformed frame requests") {
  const json pose = {{"rotation", {1, 0, 0, 0, 1, 0, 0, 0, 1}}, {"center", {0, 0, 0}}};
  CHECK_THROWS_AS(parse_frame_request(std::string("{oops"), kIntrinsics), ArgumentError);
  CHECK_THROWS_AS(parse_frame_request(json{{"mode", "RAW"}}, kIntrinsics), ArgumentError);
  CHECK_THROWS_AS(parse_frame_request(json{{"pose", pose}, {"mode", 3}}, kIntrinsics), ArgumentError);
  CHECK_THROWS_AS(parse_frame_request(json{{"pose", pose}, {"mode", "GLOW"}}, kIntrinsics), ArgumentError);
  CHECK_THROWS_AS(parse_frame_request(json{{"pose", pose}, {"t", -1}}, kIntrinsics), ArgumentError);
  CHECK_THROWS_AS(parse_frame_request(json{{"pose", pose}, {"t", "x"}}, kIntrinsics), ArgumentError);
  CHECK_THROWS_AS(parse_pose(json{{"rotation", {1, 0, 0}}, {"center", {0, 0, 0}}}, kIntrinsics), ArgumentError);
  CHECK_THROWS_AS(parse_pose(json{{"rotation", {2, 0, 0, 0, 1, 0, 0, 0, 1}}, {"center", {0, 0, 0}}}, kIntrinsics),
                  ArgumentError);
  CHECK_THROWS_AS(parse_pose(json{{"rotation", {1, 0, 0, 0, 1, 0, 0, 0, 1}}, {"center", {0, "a", 0}}}, kIntrinsics),
                  ArgumentError);
}

TEST_CASE("create requests") {
  const CreateRequest empty = parse_create_request("");
  CHECK_FALSE(empty.scene);
  CHECK(empty.params.width == 294);
  const CreateRequest r = parse_create_request(R"({"scene":"shelf","layers":8,"width":40,"height":30,"fov_deg":60})");
  REQUIRE(r.scene);
  CHECK(r.params.layers == 8);
  CHECK(r.params.fov_x == doctest::Approx(M_PI / 3));
  SessionParams base;
  base.width = 50;
  base.layers = 12;
  const CreateRequest over = parse_create_request(R"({"layers":6})", base);
  CHECK(over.params.width == 50);
  CHECK(over.params.layers == 6);
  CHECK(parse_create_request("", base).params.layers == 12);
  CHECK_THROWS_AS(parse_create_request(R"({"scene":"moon"})"), ArgumentError);
  CHECK_THROWS_AS(parse_create_request(R"({"layers":1})"), ArgumentError);
  CHECK_THROWS_AS(parse_create_request(R"({"layers":"many"})"), ArgumentError);
  CHECK_THROWS_AS(parse_create_request("[1]"), ArgumentError);
  CHECK_THROWS_AS(parse_create_request("{"), ArgumentError);
}

TEST_CASE("headers") {
  FrameResult f;
  f.error_rate = 0.25;
  f.capture_count = 3;
  const json h = frame_header(f, 1234);
  CHECK(h.at("frame_bytes") == 1234);
  CHECK(h.at("capture_count") == 3);
  CHECK_FALSE(h.contains("no_mpi"));
  f.no_mpi = true;
  CHECK(frame_header(f, 1).at("no_mpi") == true);
  const json c = capture_json({2, 0.5, 1.0, SessionState::active});
  CHECK(c.at("state") == "ACTIVE");
}
