// Vector-file parsing and JSON/CSV rendering of results.
//
// Vector files: JSON {"vectors": [[...], ...]} or bare CSV with one vector
// per line. The CSV reader is chosen by a ".csv" extension.
#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "polarize/proof_check.hpp"
#include "polarize/slice_min.hpp"
#include "polarize/sign_search.hpp"
#include "polarize/sphere_opt.hpp"
#include "polarize/vectors.hpp"

namespace polarize {

using json = nlohmann::json;

inline UnitVectorSet parse_vectors_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vectors") || !doc["vectors"].is_array())
    throw std::invalid_argument("expected an object with a \"vectors\" array");
  std::vector<std::vector<double>> rows;
  for (const json& row : doc["vectors"]) {
    if (!row.is_array()) throw std::invalid_argument("each vector must be an array of numbers");
    std::vector<double>& r = rows.emplace_back();
    for (const json& x : row) {
      if (!x.is_number()) throw std::invalid_argument("vector entries must be numbers");
      r.push_back(x.get<double>());
    }
  }
  return UnitVectorSet::load(rows);
}

inline UnitVectorSet parse_vectors_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double>& r = rows.emplace_back();
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      std::size_t used = 0;
      double x;
      try {
        x = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("malformed CSV number: '" + cell + "'");
      }
      if (cell.find_first_not_of(" \t\r", used) != std::string::npos)
        throw std::invalid_argument("malformed CSV number: '" + cell + "'");
      r.push_back(x);
    }
  }
  return UnitVectorSet::load(rows);
}

inline UnitVectorSet read_vectors_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const bool csv = path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
  return csv ? parse_vectors_csv(buf.str()) : parse_vectors_json(buf.str());
}

inline json vectors_to_json(const UnitVectorSet& set) { return json{{"vectors", set.rows()}}; }

// nlohmann writes doubles in shortest round-trip form, so a dump/parse cycle
// is bit-exact. Non-finite log products are written as null.
inline void to_json(json& j, const WitnessReport& r) {
  j = json{{"x", r.x},
           {"log_product", std::isfinite(r.log_product) ? json(r.log_product) : json(nullptr)},
           {"product", r.product},
           {"bound", r.bound},
           {"passes", r.passes},
           {"source", std::string(to_string(r.source))}};
}

inline void from_json(const json& j, WitnessReport& r) {
  r.x = j.at("x").get<std::vector<double>>();
  const json& lp = j.at("log_product");
  r.log_product = lp.is_null() ? -std::numeric_limits<double>::infinity() : lp.get<double>();
  r.product = j.at("product").get<double>();
  r.bound = j.at("bound").get<double>();
  r.passes = j.at("passes").get<bool>();
  const std::string src = j.at("source").get<std::string>();
  if (src == "longest_sum") r.source = WitnessSource::longest_sum;
  else if (src == "optimizer") r.source = WitnessSource::optimizer;
  else if (src == "provided") r.source = WitnessSource::provided;
  else throw std::invalid_argument("unknown witness source: " + src);
}

inline json certificate_to_json(const MinimumCertificate& c) {
  return json{{"n", c.problem.n()},
              {"s", c.problem.s()},
              {"k0", c.k0},
              {"residual_sum", c.residual_sum},
              {"minimizer", c.minimizer.coords()},
              {"value", c.value}};
}

inline json longest_sum_to_json(const LongestSumResult& r) {
  return json{{"signs", r.signs.eps()},
              {"v", r.v},
              {"norm", r.norm},
              {"method", std::string(to_string(r.method))},
              {"is_global", r.is_global}};
}

/// Fixed 12-significant-digit rendering used by CSV output.
inline std::string csv_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline std::string table_csv(const std::vector<TableRow>& rows) {
  std::string out = "n,column2,s_nm1_pow_nm1,sqrt_n_pow_n,bound_holds\n";
  for (const TableRow& r : rows)
    out += std::to_string(r.n) + "," + csv_number(r.column2) + "," + csv_number(r.s_nm1_pow) + "," +
           csv_number(r.half_power) + "," + (r.bound_holds ? "true" : "false") + "\n";
  return out;
}

}  // namespace polarize
