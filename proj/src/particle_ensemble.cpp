#include "wgf/particle_ensemble.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wgf {

Eigen::VectorXd ParticleEnsemble::sorted_1d() const {
  if (dim() != 1) throw std::invalid_argument("sorted_1d: ensemble is not 1-d");
  Eigen::VectorXd v = points.col(0);
  std::sort(v.data(), v.data() + v.size());
  return v;
}

bool ParticleEnsemble::all_inside(const ConvexDomain& domain, double tol) const {
  for (int i = 0; i < size(); ++i)
    if (!domain.contains(point(i), tol)) return false;
  return true;
}

ParticleEnsemble ParticleEnsemble::UniformIn(const ConvexDomain& domain, int n, Rng& rng) {
  if (n < 1) throw std::invalid_argument("UniformIn: need at least one particle");
  Eigen::MatrixXd pts(n, domain.dim());
  for (int i = 0; i < n; ++i) pts.row(i) = domain.sample_uniform(rng).transpose();
  return ParticleEnsemble(std::move(pts));
}

void ParticleEnsemble::write_csv(std::ostream& out) const {
  char buf[32];
  for (int i = 0; i < size(); ++i) {
    for (int j = 0; j < dim(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", points(i, j));
      out << (j ? "," : "") << buf;
    }
    out << "\n";
  }
}

ParticleEnsemble ParticleEnsemble::read_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::invalid_argument("read_csv: ragged rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("read_csv: empty input");
  Eigen::MatrixXd pts(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) pts(i, j) = rows[i][j];
  return ParticleEnsemble(std::move(pts));
}

}  // namespace wgf
