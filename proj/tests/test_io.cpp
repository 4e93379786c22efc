#include <cstdio>
#include <string>

#include "doctest.h"
#include "esense/dictionary.hpp"
#include "esense/io.hpp"

using namespace esense;

namespace {

std::string temp_path(const char* name) {
  return std::string("/tmp/esense_test_") + name;
}

}  // namespace

TEST_CASE("shape spec JSON round trip") {
  ShapeSpec spec = ShapeSpec::standard(ShapeKind::TriangularShield);
  spec.k2 = 4.0;
  spec.coating_ratio = 0.5;
  const ShapeSpec back = shape_spec_from_json(to_json_string(spec));
  CHECK(back.kind == spec.kind);
  CHECK(back.params == spec.params);
  CHECK(back.corner_radius == spec.corner_radius);
  CHECK(back.k1 == spec.k1);
  REQUIRE(back.k2.has_value());
  CHECK(*back.k2 == 4.0);
  REQUIRE(back.coating_ratio.has_value());
  CHECK(*back.coating_ratio == 0.5);
}

TEST_CASE("CGPT JSON round trip is bit exact") {
  CgptMatrix m = CgptMatrix::zero(3);
  m.cc.setRandom();
  m.cs.setRandom();
  m.sc.setRandom();
  m.ss.setRandom();
  const CgptMatrix back = cgpt_from_json(to_json_string(m));
  CHECK((back - m).norm() == 0.0);
  CHECK(back.order == 3);
}

TEST_CASE("dictionary persistence round trip") {
  ShapeSpec circle;
  circle.kind = ShapeKind::Circle;
  circle.params = {1.0};
  circle.k1 = 2.0;
  const auto dict = build_dictionary({{"c", circle}}, 3, 128, 2);
  const std::string path = temp_path("dict.json");
  save_dictionary(dict, path);
  const auto loaded = load_dictionary(path);
  REQUIRE(loaded.size() == 1);
  CHECK(loaded[0].id == "c");
  CHECK((loaded[0].cgpt - dict[0].cgpt).norm() == 0.0);
  CHECK((loaded[0].descriptors.I2 - dict[0].descriptors.I2).norm() == 0.0);
  std::remove(path.c_str());
}

TEST_CASE("matrix CSV round trip with shortest decimals") {
  Eigen::MatrixXd m(3, 4);
  m.setRandom();
  m *= 1e-7;
  const std::string path = temp_path("matrix.csv");
  write_matrix_csv(m, path);
  const std::string first = read_file(path);
  write_matrix_csv(m, path);
  CHECK(read_file(path) == first);  // byte-identical rewrite
  const Eigen::MatrixXd back = read_matrix_csv(path);
  CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);
  std::remove(path.c_str());
}

TEST_CASE("acquisition config snapshot round trip") {
  AcquisitionConfig config;
  config.n_positions = 77;
  config.n_receptors = 33;
  config.orbit_radius_factor = 1.25;
  config.target_center = Vec2(0.5, -0.25);
  config.sim_order = 6;
  config.seed = 99;
  const AcquisitionConfig back =
      acquisition_config_from_json(acquisition_config_json(config));
  CHECK(back.n_positions == 77);
  CHECK(back.n_receptors == 33);
  CHECK(back.orbit_radius_factor == 1.25);
  CHECK(back.target_center == config.target_center);
  CHECK(back.sim_order == 6);
  CHECK(back.seed == 99);
}

TEST_CASE("frequency CSV format") {
  const std::vector<FrequencyRow> table = {{"1a", 0.1, "1a", 0.95},
                                           {"1a", 0.1, "5b", 0.05}};
  const std::string path = temp_path("freq.csv");
  write_frequency_csv(table, path);
  const std::string text = read_file(path);
  CHECK(text.rfind("true_id,sigma0,selected_id,frequency\n", 0) == 0);
  CHECK(text.find("1a,0.10000000000000001,5b,0.050000000000000003") !=
        std::string::npos);
  std::remove(path.c_str());
}
