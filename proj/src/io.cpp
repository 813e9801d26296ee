// Copyright 2026 The entbound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "entbound/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace entbound::io {

namespace {

Complex entry_from_json(const Json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number())
    return {e[0].get<double>(), e[1].get<double>()};
  throw ParseError("matrix entry must be a number or a [re, im] pair");
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw ParseError(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

int positive_int(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 1)
    throw ParseError(std::string(what) + " must be a positive integer");
  return j.get<int>();
}

Dims dims_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("\"dims\" must be [N1, N2]");
  return {positive_int(j[0], "N1"), positive_int(j[1], "N2")};
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty())
    throw ParseError("matrix must be a nonempty list of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
      throw ParseError("matrix rows must have equal length");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = entry_from_json(row[static_cast<std::size_t>(k)]);
  }
  if (!all_finite(m)) throw ParseError("matrix has non-finite entries");
  return m;
}

Json state_to_json(const PureState& psi) {
  const ComplexMatrix row = psi.amplitudes().transpose();
  return {{"dims", {psi.dims().first, psi.dims().second}}, {"kind", "pure"}, {"data", matrix_to_json(row)}};
}

Json state_to_json(const DensityMatrix& rho) {
  return {{"dims", {rho.dims().first, rho.dims().second}},
          {"kind", "density"},
          {"data", matrix_to_json(rho.matrix())}};
}

LoadedState state_from_json(const Json& j) {
  const Dims dims = dims_from_json(field(j, "dims"));
  const Json& kind = field(j, "kind");
  if (!kind.is_string()) throw ParseError("\"kind\" must be a string");
  const Json& data = field(j, "data");

  if (kind == "pure") {
    // A single row of amplitudes; a flat list is accepted as well.
    const Json row = (data.is_array() && !data.empty() && data[0].is_array() && !data[0].empty() &&
                      data[0][0].is_array())
                         ? data
                         : Json::array({data});
    const ComplexMatrix m = matrix_from_json(row);
    if (m.rows() != 1 || m.cols() != dims.total())
      throw ParseError("pure state data must hold N1*N2 amplitudes in one row");
    const ComplexVector amps = m.row(0).transpose();
    if (std::abs(amps.norm() - 1.0) > kInputSlack) throw ParseError("pure state is not normalized");
    PureState psi = PureState::normalized(dims, amps);
    return {DensityMatrix::from_pure(psi), psi};
  }
  if (kind == "density") {
    const ComplexMatrix m = matrix_from_json(data);
    if (m.rows() != dims.total() || m.cols() != dims.total())
      throw ParseError("density data must be (N1*N2) x (N1*N2)");
    if (hermiticity_defect(m) > kInputSlack) throw ParseError("density matrix is not Hermitian");
    if (std::abs(m.trace() - Complex(1.0)) > kInputSlack)
      throw ParseError("density matrix trace deviates from 1");
    try {
      return {DensityMatrix::from_unnormalized(dims, m), std::nullopt};
    } catch (const Error& e) {
      throw ParseError(e.what());
    }
  }
  throw ParseError("\"kind\" must be \"pure\" or \"density\"");
}

Json channel_to_json(const KrausChannel& ch) {
  Json ops = Json::array();
  for (const auto& m : ch.operators()) ops.push_back(matrix_to_json(m));
  return {{"input_dim", ch.input_dim()}, {"kraus", ops}};
}

KrausChannel channel_from_json(const Json& j) {
  const int dim = positive_int(field(j, "input_dim"), "input_dim");
  const Json& kraus = field(j, "kraus");
  if (!kraus.is_array() || kraus.empty()) throw ParseError("\"kraus\" must be a nonempty list");
  std::vector<ComplexMatrix> ops;
  for (const auto& k : kraus) {
    ops.push_back(matrix_from_json(k));
    if (ops.back().rows() != dim || ops.back().cols() != dim)
      throw ParseError("Kraus operators must be input_dim x input_dim");
  }
  try {
    return KrausChannel(std::move(ops));
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

Json probe_to_json(const ProbeState& probe) {
  return {{"dim", probe.dim()}, {"matrix", matrix_to_json(probe.matrix())}};
}

ProbeState probe_from_json(const Json& j) {
  const int dim = positive_int(field(j, "dim"), "dim");
  ComplexMatrix m = matrix_from_json(field(j, "matrix"));
  if (m.rows() != dim || m.cols() != dim) throw ParseError("probe matrix must be dim x dim");
  const double norm = m.norm();
  if (std::abs(norm - 1.0) > kInputSlack) throw ParseError("probe matrix is not normalized");
  // Rank deficiency is not a parse failure; probe_from_matrix reports it.
  return probe_from_matrix(m / norm);
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string format_number(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

}  // namespace entbound::io
