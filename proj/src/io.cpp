#include "esense/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace esense {

namespace {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const Json& j) {
  const int rows = static_cast<int>(j.size());
  const int cols = rows > 0 ? static_cast<int>(j.at(0).size()) : 0;
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) m(i, k) = j.at(i).at(k).get<double>();
  return m;
}

Json spec_to_json(const ShapeSpec& spec) {
  Json j;
  j["kind"] = to_string(spec.kind);
  j["params"] = spec.params;
  j["corner_radius"] = spec.corner_radius;
  j["k1"] = spec.k1;
  if (spec.k2) j["k2"] = *spec.k2;
  if (spec.coating_ratio) j["coating_ratio"] = *spec.coating_ratio;
  return j;
}

ShapeSpec spec_from_json(const Json& j) {
  ShapeSpec spec;
  spec.kind = shape_kind_from_string(j.at("kind").get<std::string>());
  spec.params = j.at("params").get<std::vector<double>>();
  spec.corner_radius = j.value("corner_radius", 0.05);
  spec.k1 = j.at("k1").get<double>();
  if (j.contains("k2")) spec.k2 = j.at("k2").get<double>();
  if (j.contains("coating_ratio"))
    spec.coating_ratio = j.at("coating_ratio").get<double>();
  return spec;
}

Json cgpt_to_json(const CgptMatrix& m) {
  Json j;
  j["order"] = m.order;
  j["cc"] = matrix_to_json(m.cc);
  j["cs"] = matrix_to_json(m.cs);
  j["sc"] = matrix_to_json(m.sc);
  j["ss"] = matrix_to_json(m.ss);
  return j;
}

CgptMatrix cgpt_from_json_obj(const Json& j) {
  CgptMatrix m;
  m.order = j.at("order").get<int>();
  m.cc = matrix_from_json(j.at("cc"));
  m.cs = matrix_from_json(j.at("cs"));
  m.sc = matrix_from_json(j.at("sc"));
  m.ss = matrix_from_json(j.at("ss"));
  return m;
}

Json descriptors_to_json(const DescriptorPair& d) {
  Json j;
  j["order"] = d.order;
  j["I1"] = matrix_to_json(d.I1);
  j["I2"] = matrix_to_json(d.I2);
  j["u"] = {d.u.real(), d.u.imag()};
  return j;
}

DescriptorPair descriptors_from_json(const Json& j) {
  DescriptorPair d;
  d.order = j.at("order").get<int>();
  d.I1 = matrix_from_json(j.at("I1"));
  d.I2 = matrix_from_json(j.at("I2"));
  d.u = Complex(j.at("u").at(0).get<double>(), j.at("u").at(1).get<double>());
  return d;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string to_json_string(const ShapeSpec& spec) {
  return spec_to_json(spec).dump(2);
}

ShapeSpec shape_spec_from_json(const std::string& text) {
  return spec_from_json(Json::parse(text));
}

std::string to_json_string(const CgptMatrix& m) {
  return cgpt_to_json(m).dump(2);
}

CgptMatrix cgpt_from_json(const std::string& text) {
  return cgpt_from_json_obj(Json::parse(text));
}

std::string to_json_string(const std::vector<DictionaryEntry>& dict) {
  Json j = Json::array();
  for (const DictionaryEntry& entry : dict) {
    Json e;
    e["id"] = entry.id;
    e["spec"] = spec_to_json(entry.spec);
    e["cgpt"] = cgpt_to_json(entry.cgpt);
    e["descriptors"] = descriptors_to_json(entry.descriptors);
    j.push_back(std::move(e));
  }
  return j.dump(2);
}

std::vector<DictionaryEntry> dictionary_from_json(const std::string& text) {
  const Json j = Json::parse(text);
  std::vector<DictionaryEntry> dict;
  for (const Json& e : j) {
    DictionaryEntry entry;
    entry.id = e.at("id").get<std::string>();
    entry.spec = spec_from_json(e.at("spec"));
    entry.cgpt = cgpt_from_json_obj(e.at("cgpt"));
    entry.descriptors = descriptors_from_json(e.at("descriptors"));
    dict.push_back(std::move(entry));
  }
  return dict;
}

void save_dictionary(const std::vector<DictionaryEntry>& dict,
                     const std::string& path) {
  write_file(path, to_json_string(dict) + "\n");
}

std::vector<DictionaryEntry> load_dictionary(const std::string& path) {
  return dictionary_from_json(read_file(path));
}

std::string acquisition_config_json(const AcquisitionConfig& config) {
  Json j;
  j["n_positions"] = config.n_positions;
  j["n_receptors"] = config.n_receptors;
  j["orbit_radius_factor"] = config.orbit_radius_factor;
  j["orbit_center"] = {config.orbit_center.x(), config.orbit_center.y()};
  j["target_center"] = {config.target_center.x(), config.target_center.y()};
  j["arc_half_angle"] = config.arc_half_angle;
  j["radial_offset"] = config.radial_offset;
  j["sim_order"] = config.sim_order;
  j["seed"] = config.seed;
  return j.dump(2);
}

AcquisitionConfig acquisition_config_from_json(const std::string& text) {
  const Json j = Json::parse(text);
  AcquisitionConfig config;
  config.n_positions = j.at("n_positions").get<int>();
  config.n_receptors = j.at("n_receptors").get<int>();
  config.orbit_radius_factor = j.at("orbit_radius_factor").get<double>();
  config.orbit_center = Vec2(j.at("orbit_center").at(0).get<double>(),
                             j.at("orbit_center").at(1).get<double>());
  config.target_center = Vec2(j.at("target_center").at(0).get<double>(),
                              j.at("target_center").at(1).get<double>());
  config.arc_half_angle = j.at("arc_half_angle").get<double>();
  config.radial_offset = j.at("radial_offset").get<double>();
  config.sim_order = j.at("sim_order").get<int>();
  config.seed = j.at("seed").get<std::uint64_t>();
  return config;
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  const std::string text = read_file(path);
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  const int nr = static_cast<int>(rows.size());
  const int nc = nr > 0 ? static_cast<int>(rows[0].size()) : 0;
  Eigen::MatrixXd m(nr, nc);
  for (int i = 0; i < nr; ++i) {
    if (static_cast<int>(rows[i].size()) != nc)
      throw std::runtime_error("ragged CSV: " + path);
    for (int j = 0; j < nc; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

void write_matrix_csv(const Eigen::MatrixXd& m, const std::string& path) {
  std::ostringstream out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
  write_file(path, out.str());
}

void write_frequency_csv(const std::vector<FrequencyRow>& table,
                         const std::string& path) {
  std::ostringstream out;
  out << "true_id,sigma0,selected_id,frequency\n";
  for (const FrequencyRow& row : table)
    out << row.true_id << ',' << format_double(row.sigma0) << ','
        << row.selected_id << ',' << format_double(row.frequency) << '\n';
  write_file(path, out.str());
}

void write_error_csv(const std::vector<double>& errors, double sigma0,
                     int trials, const std::string& path, bool append) {
  std::ostringstream out;
  if (!append) out << "order,relative_error,sigma0,trials\n";
  for (std::size_t k = 0; k < errors.size(); ++k)
    out << (k + 1) << ',' << format_double(errors[k]) << ','
        << format_double(sigma0) << ',' << trials << '\n';
  std::ofstream file(path, append ? std::ios::app : std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open for writing: " + path);
  file << out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream out;
  out << file.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open for writing: " + path);
  file << content;
}

}  // namespace esense
