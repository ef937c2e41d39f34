#include <doctest.h>

#include <cmath>
#include <random>

#include "gridmap.hpp"
#include "oracles.hpp"
#include "pngprobe.hpp"
#include "tempdir.hpp"
#include "wiou/components.hpp"
#include "wiou/distance_transform.hpp"
#include "wiou/error.hpp"

using testutil::from_rows;

TEST_CASE("distance transforms equal the brute-force oracle") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 150; ++trial) {
    const int w = 1 + static_cast<int>(rng() % 24);
    const int h = 1 + static_cast<int>(rng() % 24);
    const int k = 2 + static_cast<int>(rng() % 3);
    const wiou::LabelMap map = oracle::random_map(rng, w, h, k);
    const auto want = oracle::brute_force_distances(map);
    for (wiou::Norm norm : {wiou::Norm::L1, wiou::Norm::L2, wiou::Norm::Linf}) {
      for (int cls = 0; cls < k; ++cls) {
        const wiou::RawDistanceMap raw =
            wiou::distance_map(map, static_cast<wiou::ClassId>(cls), norm);
        if (raw.background_empty) continue;
        for (std::size_t i = 0; i < map.size(); ++i) {
          const std::int64_t expected =
              map.labels[i] == cls ? oracle::brute_force_cost(want[i], norm) : 0;
          REQUIRE(raw.cost[i] == expected);
        }
      }
    }
  }
}

TEST_CASE("distance map fundamentals") {
  const wiou::LabelMap map = from_rows({"11111",
                                        "11111",
                                        "11011",
                                        "11111"}, 2);
  const wiou::RawDistanceMap l2 = wiou::distance_map(map, 1, wiou::Norm::L2);
  CHECK(!l2.background_empty);
  CHECK(l2.cost[map.index(2, 2)] == 0);          // the background pixel itself
  CHECK(l2.cost[map.index(2, 1)] == 1);
  CHECK(l2.cost[map.index(1, 1)] == 2);          // diagonal
  CHECK(l2.cost[map.index(0, 0)] == 8);
  CHECK(l2.cost[map.index(4, 0)] == 8);
  CHECK(l2.distance_at(map.index(0, 0)) == doctest::Approx(std::sqrt(8.0)));

  const wiou::RawDistanceMap l1 = wiou::distance_map(map, 1, wiou::Norm::L1);
  CHECK(l1.cost[map.index(0, 0)] == 4);
  const wiou::RawDistanceMap linf = wiou::distance_map(map, 1, wiou::Norm::Linf);
  CHECK(linf.cost[map.index(0, 0)] == 2);

  // Class without a complement: flagged, not fabricated.
  const wiou::LabelMap uniform = wiou::LabelMap::filled(4, 4, 1, 2);
  CHECK(wiou::distance_map(uniform, 1).background_empty);
  // Class with no pixels: all-zero distance.
  const wiou::RawDistanceMap empty = wiou::distance_map(uniform, 0);
  CHECK(!empty.background_empty);
  CHECK(std::all_of(empty.cost.begin(), empty.cost.end(),
                    [](std::int64_t c) { return c == 0; }));
}

TEST_CASE("per-instance normalization scales by each instance's deepest pixel") {
  const wiou::LabelMap map = from_rows({"1011"}, 2);
  const wiou::RawDistanceMap raw = wiou::distance_map(map, 1, wiou::Norm::L1);
  const wiou::InstanceMap inst = wiou::connected_components(map, 1, 4);
  REQUIRE(inst.count == 2);

  const wiou::DistanceField std_field = wiou::normalize_per_instance(raw, inst);
  CHECK(std_field.values[0] == doctest::Approx(1.0));  // lone pixel, depth 1 of max 1
  CHECK(std_field.values[1] == doctest::Approx(0.0));  // background stays 0
  CHECK(std_field.values[2] == doctest::Approx(0.5));  // depth 1 of max 2
  CHECK(std_field.values[3] == doctest::Approx(1.0));  // depth 2 of max 2

  const wiou::DistanceField shifted =
      wiou::normalize_per_instance(raw, inst, wiou::NormalizeMode::Shifted);
  CHECK(shifted.values[0] == doctest::Approx(0.0));  // max depth 1 collapses to 0
  CHECK(shifted.values[2] == doctest::Approx(0.0));  // (1-1)/(2-1)
  CHECK(shifted.values[3] == doctest::Approx(1.0));  // (2-1)/(2-1)

  wiou::InstanceMap wrong = inst;
  wrong.ids[1] = 9;
  CHECK_THROWS_AS(wiou::normalize_per_instance(raw, wrong), wiou::ValidationError);
}

TEST_CASE("normalized values stay inside the unit interval") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const int w = 2 + static_cast<int>(rng() % 20);
    const int h = 2 + static_cast<int>(rng() % 20);
    const wiou::LabelMap map = oracle::random_map(rng, w, h, 3);
    const wiou::DistanceField field = wiou::combined_distance_field(map);
    for (double v : field.values) {
      REQUIRE(v >= 0.0);
      REQUIRE(v <= 1.0);
    }
  }
}

TEST_CASE("combined field takes each pixel from its own class") {
  const wiou::LabelMap map = from_rows({"0011",
                                        "0011"}, 2);
  const wiou::DistanceField field = wiou::combined_distance_field(map, wiou::Norm::L1);
  // Both classes form a 2x2 block whose outer column touches the other class.
  CHECK(field.values[map.index(0, 0)] == doctest::Approx(1.0));
  CHECK(field.values[map.index(1, 0)] == doctest::Approx(0.5));
  CHECK(field.values[map.index(2, 0)] == doctest::Approx(0.5));
  CHECK(field.values[map.index(3, 0)] == doctest::Approx(1.0));
  CHECK(field.excluded.empty());
}

TEST_CASE("ignore labels are excluded from the combined field") {
  const wiou::LabelMap map = from_rows({"0211",
                                        "0011"}, 3, wiou::ClassId{2});
  const wiou::DistanceField field = wiou::combined_distance_field(map);
  CHECK(!field.excluded.empty());
  CHECK(field.excluded_at(map.index(1, 0)));
  CHECK(!field.excluded_at(map.index(0, 0)));
}

TEST_CASE("whole-image classes produce a constant field and a warning") {
  const wiou::LabelMap uniform = wiou::LabelMap::filled(5, 3, 0, 1);
  std::vector<std::string> warnings;
  const wiou::DistanceField field =
      wiou::combined_distance_field(uniform, wiou::Norm::L2, 4,
                                    wiou::NormalizeMode::Standard, &warnings);
  CHECK(std::all_of(field.values.begin(), field.values.end(),
                    [](double v) { return v == 1.0; }));
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("covers the whole image") != std::string::npos);
}

TEST_CASE("distance field exports as 16-bit grayscale") {
  const wiou::LabelMap map = from_rows({"0211",
                                        "0011"}, 3, wiou::ClassId{2});
  const wiou::DistanceField field = wiou::combined_distance_field(map);
  const auto bytes = wiou::encode_distance_png(field);
  const probe::GrayImage img = probe::decode_gray_png(bytes);
  CHECK(img.width == 4);
  CHECK(img.height == 2);
  CHECK(img.bit_depth == 16);
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    const std::uint16_t expected =
        field.excluded_at(i)
            ? 0
            : static_cast<std::uint16_t>(std::lround(field.values[i] * 65535.0));
    CHECK(img.samples[i] == expected);
  }
}
