#pragma once

#include <string>
#include <vector>

#include "esense/dictionary.hpp"
#include "esense/geometry.hpp"
#include "esense/invariants.hpp"
#include "esense/sensing.hpp"

namespace esense {

/// Shortest round-trip decimal formatting ("%.17g"); keeps CSV output
/// bit-identical across reruns.
std::string format_double(double v);

std::string to_json_string(const ShapeSpec& spec);
ShapeSpec shape_spec_from_json(const std::string& text);

std::string to_json_string(const CgptMatrix& m);
CgptMatrix cgpt_from_json(const std::string& text);

std::string to_json_string(const std::vector<DictionaryEntry>& dict);
std::vector<DictionaryEntry> dictionary_from_json(const std::string& text);

void save_dictionary(const std::vector<DictionaryEntry>& dict,
                     const std::string& path);
std::vector<DictionaryEntry> load_dictionary(const std::string& path);

std::string acquisition_config_json(const AcquisitionConfig& config);
AcquisitionConfig acquisition_config_from_json(const std::string& text);

void write_matrix_csv(const Eigen::MatrixXd& m, const std::string& path);
Eigen::MatrixXd read_matrix_csv(const std::string& path);

void write_frequency_csv(const std::vector<FrequencyRow>& table,
                         const std::string& path);

/// Rows (order, relative_error, sigma0, trials).
void write_error_csv(const std::vector<double>& errors, double sigma0,
                     int trials, const std::string& path, bool append = false);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace esense
