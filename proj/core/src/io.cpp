#include "gridmrf/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gridmrf {

namespace {

double nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

[[noreturn]] void bad_file(const std::string& path, const std::string& what) {
  throw std::runtime_error(path + ": " + what);
}

}  // namespace

GridData make_grid_data(int rows, int cols, const std::vector<double>& field) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("grid dimensions must be >= 1");
  if (field.size() != static_cast<std::size_t>(rows) * cols)
    throw std::invalid_argument("field size does not match grid dimensions");
  std::vector<std::uint8_t> obs(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) obs[i] = std::isfinite(field[i]) ? 1 : 0;
  GridData data;
  data.orig_n1 = rows;
  data.orig_n2 = cols;
  data.mask = GridMask(rows, cols, std::move(obs));
  data.values.resize(data.mask.n_obs());
  for (int i = 0; i < data.mask.n_obs(); ++i) {
    auto [r, c] = data.mask.coord(i);
    if (data.mask.transposed) std::swap(r, c);
    data.values[i] = field[static_cast<std::size_t>(r) * cols + c];
  }
  return data;
}

GridData read_grid_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad_file(path, "cannot open");
  std::string key;
  int n1 = 0, n2 = 0;
  std::string missing;
  if (!(in >> key) || key != "n1" || !(in >> n1)) bad_file(path, "expected 'n1 <int>'");
  if (!(in >> key) || key != "n2" || !(in >> n2)) bad_file(path, "expected 'n2 <int>'");
  if (!(in >> key) || key != "missing" || !(in >> missing) || missing != "NaN")
    bad_file(path, "expected 'missing NaN'");
  if (n1 < 1 || n2 < 1) bad_file(path, "grid dimensions must be >= 1");
  std::vector<double> field(static_cast<std::size_t>(n1) * n2);
  std::string tok;
  for (auto& v : field) {
    if (!(in >> tok)) bad_file(path, "truncated value grid");
    try {
      v = std::stod(tok);
    } catch (const std::exception&) {
      bad_file(path, "bad value '" + tok + "'");
    }
  }
  return make_grid_data(n1, n2, field);
}

void write_grid_file(const std::string& path, const Eigen::MatrixXd& field) {
  std::ofstream out(path);
  if (!out) bad_file(path, "cannot open for writing");
  out << "n1 " << field.rows() << "\n";
  out << "n2 " << field.cols() << "\n";
  out << "missing NaN\n";
  out.precision(17);
  for (Eigen::Index i = 0; i < field.rows(); ++i) {
    for (Eigen::Index j = 0; j < field.cols(); ++j) {
      if (j) out << ' ';
      if (std::isfinite(field(i, j))) out << field(i, j);
      else out << "NaN";
    }
    out << '\n';
  }
  if (!out) bad_file(path, "write failed");
}

Eigen::MatrixXd to_field(const GridData& data) {
  Eigen::MatrixXd field =
      Eigen::MatrixXd::Constant(data.orig_n1, data.orig_n2, nan_value());
  for (int i = 0; i < data.mask.n_obs(); ++i) {
    auto [r, c] = data.mask.coord(i);
    if (data.mask.transposed) std::swap(r, c);
    field(r, c) = data.values[i];
  }
  return field;
}

void write_table_binary(const std::string& path, const CovarianceTable& table) {
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) bad_file(path, "cannot open for writing");
    for (int h1 = 0; h1 < table.t1; ++h1)
      for (int h2 = 0; h2 < table.t2; ++h2) {
        double v = table.values(h1, h2);
        out.write(reinterpret_cast<const char*>(&v), sizeof(v));
      }
    if (!out) bad_file(path, "write failed");
  }
  nlohmann::json meta{
      {"n1", table.n1},
      {"n2", table.n2},
      {"J", table.J},
      {"t1", table.t1},
      {"t2", table.t2},
      {"layout", "row-major"},
      {"dtype", "float64"},
      {"model",
       {{"tau", table.model.tau},
        {"kappa", table.model.kappa},
        {"nu", table.model.nu},
        {"sigma2", table.model.sigma2},
        {"mu", table.model.mu}}}};
  std::ofstream side(path + ".json");
  if (!side) bad_file(path + ".json", "cannot open for writing");
  side << meta.dump(2) << '\n';
}

}  // namespace gridmrf
