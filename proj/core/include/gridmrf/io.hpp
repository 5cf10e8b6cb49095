#ifndef GRIDMRF_IO_HPP
#define GRIDMRF_IO_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "gridmrf/covariance.hpp"
#include "gridmrf/grid.hpp"

namespace gridmrf {

// Masked field: canonical-orientation mask plus observed values in
// observation order. orig_n1/orig_n2 keep the file orientation.
struct GridData {
  GridMask mask;
  Eigen::VectorXd values;
  int orig_n1 = 0, orig_n2 = 0;
};

// Builds mask + observation vector from a rows x cols row-major field with
// NaN marking missing cells (handles canonicalization of both together).
GridData make_grid_data(int rows, int cols, const std::vector<double>& field);

// Text grid file: header lines "n1 <int>", "n2 <int>", "missing NaN",
// then n1 rows of n2 whitespace-separated values.
GridData read_grid_file(const std::string& path);

// `field` is rows x cols with NaN for missing cells.
void write_grid_file(const std::string& path, const Eigen::MatrixXd& field);

// Expands data back to a full matrix in the ORIGINAL file orientation,
// NaN at missing cells.
Eigen::MatrixXd to_field(const GridData& data);

// Flat binary (row-major doubles over the torus) plus a JSON sidecar with
// dims and model parameters at <path>.json.
void write_table_binary(const std::string& path, const CovarianceTable& table);

}  // namespace gridmrf

#endif
