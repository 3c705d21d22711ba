#include "nasq/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nasq {

namespace {

using nlohmann::json;

json matrix_part_to_json(const ComplexMatrix& m, bool imag) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(imag ? m(i, j).imag() : m(i, j).real());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

const json& field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end()) {
    throw Error(std::string("state JSON: missing field '") + name + "'");
  }
  return *it;
}

}  // namespace

std::string state_to_json_string(const DensityMatrix& rho) {
  json j;
  j["dims"] = {rho.dims().m, rho.dims().n};
  j["re"] = matrix_part_to_json(rho.mat(), false);
  j["im"] = matrix_part_to_json(rho.mat(), true);
  return j.dump();
}

DensityMatrix state_from_json_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("state JSON: parse error: ") + e.what());
  }
  const json& dims_j = field(j, "dims");
  if (!dims_j.is_array() || dims_j.size() != 2 ||
      !dims_j[0].is_number_integer() || !dims_j[1].is_number_integer()) {
    throw Error("state JSON: field 'dims' must be [m, n]");
  }
  const Dims dims{dims_j[0].get<Eigen::Index>(),
                  dims_j[1].get<Eigen::Index>()};
  if (dims.m < 1 || dims.n < 1 || dims.total() > 64) {
    throw Error("state JSON: field 'dims' out of supported range");
  }
  const Eigen::Index n = dims.total();

  auto read_part = [&](const char* name, auto&& sink) {
    const json& part = field(j, name);
    if (!part.is_array() || Eigen::Index(part.size()) != n) {
      throw Error(std::string("state JSON: field '") + name +
                  "' must be an mn x mn array");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      const json& row = part[i];
      if (!row.is_array() || Eigen::Index(row.size()) != n) {
        throw Error(std::string("state JSON: field '") + name +
                    "' row has wrong length");
      }
      for (Eigen::Index k = 0; k < n; ++k) {
        if (!row[k].is_number()) {
          throw Error(std::string("state JSON: field '") + name +
                      "' holds a non-numeric entry");
        }
        sink(i, k, row[k].get<double>());
      }
    }
  };

  ComplexMatrix mat = ComplexMatrix::Zero(n, n);
  read_part("re", [&](Eigen::Index i, Eigen::Index k, double v) {
    mat(i, k) += v;
  });
  read_part("im", [&](Eigen::Index i, Eigen::Index k, double v) {
    mat(i, k) += Complex(0.0, v);
  });
  try {
    return DensityMatrix(dims, std::move(mat));
  } catch (const Error& e) {
    throw Error(std::string("state JSON: not a valid density matrix: ") +
                e.what());
  }
}

void save_state(const std::filesystem::path& path, const DensityMatrix& rho) {
  std::ofstream out(path);
  if (!out) {
    throw Error("save_state: cannot open '" + path.string() + "' for write");
  }
  out << state_to_json_string(rho) << '\n';
  if (!out) throw Error("save_state: write failed for '" + path.string() + "'");
}

DensityMatrix load_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("load_state: cannot open '" + path.string() + "'");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return state_from_json_string(buf.str());
}

}  // namespace nasq
