#include <doctest.h>

#include "tfi/types.hpp"

using namespace tfi;

namespace {

Frame make_frame(uint32_t w, uint32_t h, std::vector<uint16_t> counts,
                 uint8_t channels = 1, uint8_t depth = 8) {
  Frame f;
  f.width = w;
  f.height = h;
  f.channels = channels;
  f.bit_depth = depth;
  f.counts = std::move(counts);
  return f;
}

}  // namespace

TEST_CASE("validate_stack accepts a well-formed stack") {
  FrameStack s;
  for (int i = 0; i < 3; ++i)
    s.frames.push_back(make_frame(2, 2, {1, 2, 3, 4}));
  CHECK_FALSE(validate_stack(s).has_value());
}

TEST_CASE("validate_stack flags the first mismatched frame") {
  FrameStack s;
  s.frames.push_back(make_frame(2, 2, {1, 2, 3, 4}));
  s.frames.push_back(make_frame(4, 4, std::vector<uint16_t>(16, 0)));
  const auto err = validate_stack(s);
  REQUIRE(err.has_value());
  CHECK(err->code() == Err::ShapeMismatch);
  CHECK(std::string(err->what()).find("frame 2") != std::string::npos);
}

TEST_CASE("validate_stack rejects an empty stack") {
  const auto err = validate_stack(FrameStack{});
  REQUIRE(err.has_value());
  CHECK(err->code() == Err::EmptyStack);
}

TEST_CASE("validate_stack rejects counts above the bit depth") {
  FrameStack s;
  s.frames.push_back(make_frame(2, 1, {12, 300}));  // 300 > 255 at 8-bit
  const auto err = validate_stack(s);
  REQUIRE(err.has_value());
  CHECK(err->code() == Err::CountOutOfRange);

  s.frames[0].bit_depth = 16;
  CHECK_FALSE(validate_stack(s).has_value());
}

TEST_CASE("validate_stack rejects a count array of the wrong length") {
  FrameStack s;
  s.frames.push_back(make_frame(2, 2, {1, 2, 3}));
  const auto err = validate_stack(s);
  REQUIRE(err.has_value());
  CHECK(err->code() == Err::ShapeMismatch);
}

TEST_CASE("frame_to_scalar copies counts exactly") {
  SUBCASE("single pixel") {
    const ScalarImage img = frame_to_scalar(make_frame(1, 1, {7}));
    CHECK(img.values == std::vector<double>{7.0});
  }
  SUBCASE("2x2") {
    const ScalarImage img = frame_to_scalar(make_frame(2, 2, {0, 1, 2, 3}));
    CHECK(img.values == std::vector<double>{0.0, 1.0, 2.0, 3.0});
  }
  SUBCASE("1x1 RGB keeps channel order") {
    const ScalarImage img = frame_to_scalar(make_frame(1, 1, {10, 20, 30}, 3));
    CHECK(img.channels == 3);
    CHECK(img.values == std::vector<double>{10.0, 20.0, 30.0});
  }
  SUBCASE("shape preserved") {
    const ScalarImage img =
        frame_to_scalar(make_frame(3, 2, {9, 8, 7, 6, 5, 4}));
    CHECK(img.width == 3);
    CHECK(img.height == 2);
    CHECK(img.channels == 1);
  }
}
