#include "ck/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace ck {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) fields.push_back(field);
  return fields;
}

}  // namespace

std::string sweep_csv(const std::vector<sweep_row>& rows, const run_manifest& manifest) {
  std::ostringstream out;
  out << "# manifest digest=" << manifest.config_digest << " version=" << manifest.version
      << " seed=" << manifest.seed << "\n";
  out << "method,N_s,beta,cost,kappa,r,samples,mean,std_error\n";
  for (const sweep_row& row : rows) {
    out << row.method.name() << ',' << row.group_count << ',' << format_double(row.beta) << ','
        << cost_structure_name(row.costs) << ',' << format_double(row.noise_multiplier) << ','
        << format_double(row.info_error) << ',' << row.estimate.samples << ','
        << format_double(row.estimate.mean) << ',' << format_double(row.estimate.std_error)
        << '\n';
  }
  return out.str();
}

void write_sweep_csv(const std::string& path, const std::vector<sweep_row>& rows,
                     const run_manifest& manifest) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << sweep_csv(rows, manifest);
}

void write_manifest_file(const std::string& csv_path, const run_manifest& manifest,
                         const std::string& config_json) {
  nlohmann::json doc;
  doc["config_digest"] = manifest.config_digest;
  doc["artifact_version"] = manifest.version;
  doc["seed"] = manifest.seed;
  doc["timestamp"] = manifest.timestamp;
  doc["config"] = nlohmann::json::parse(config_json);
  std::ofstream out(csv_path + ".manifest.json", std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + csv_path + ".manifest.json");
  out << doc.dump(2) << "\n";
}

std::string read_manifest_comment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# manifest", 0) == 0) return line.substr(2);
    if (!line.empty() && line[0] != '#') break;
  }
  return "";
}

std::vector<sweep_row> read_sweep_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<sweep_row> rows;
  std::string line;
  bool seen_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) {
      if (line != "method,N_s,beta,cost,kappa,r,samples,mean,std_error") {
        throw std::runtime_error(path + ": unexpected CSV header: " + line);
      }
      seen_header = true;
      continue;
    }
    const std::vector<std::string> fields = split(line, ',');
    if (fields.size() != 9) throw std::runtime_error(path + ": malformed CSV row: " + line);
    sweep_row row;
    try {
      row.method = aggregation_method::from_name(fields[0]);
      row.group_count = std::stoi(fields[1]);
      row.beta = std::stod(fields[2]);
      row.costs = cost_structure_from_name(fields[3]);
      row.noise_multiplier = std::stod(fields[4]);
      row.info_error = std::stod(fields[5]);
      row.estimate.samples = std::stol(fields[6]);
      row.estimate.mean = std::stod(fields[7]);
      row.estimate.std_error = std::stod(fields[8]);
    } catch (const std::exception&) {
      throw std::runtime_error(path + ": malformed CSV row: " + line);
    }
    rows.push_back(row);
  }
  if (!seen_header) throw std::runtime_error(path + ": missing CSV header");
  return rows;
}

}  // namespace ck
