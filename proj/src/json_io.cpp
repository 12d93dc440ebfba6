#include "qfi/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace qfi {

namespace {

double number_from_json(const nlohmann::json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
  double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(std::string(what) + " must be finite");
  return v;
}

Complex entry_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2)
    throw ParseError("matrix entries must be [re, im] pairs");
  return {number_from_json(j[0], "entry real part"),
          number_from_json(j[1], "entry imaginary part")};
}

Matrix entries_from_json(const nlohmann::json& j, Index rows, Index cols) {
  if (!j.is_array() || static_cast<Index>(j.size()) != rows)
    throw ParseError("entries must have one row per dimension");
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const nlohmann::json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols)
      throw ParseError("entries rows must all match the dimension");
    for (Index k = 0; k < cols; ++k)
      m(i, k) = entry_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

Index dim_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw ParseError(std::string("missing integer field '") + key + "'");
  auto v = j[key].get<std::int64_t>();
  if (v <= 0 || v > 4096) throw ParseError(std::string("field '") + key + "' out of range");
  return static_cast<Index>(v);
}

// Square {"dim", "entries"} or rectangular {"rows", "cols", "entries"}.
Matrix any_matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("entries"))
    throw ParseError("matrix must be an object with an 'entries' field");
  if (j.contains("dim")) {
    Index n = dim_field(j, "dim");
    return entries_from_json(j["entries"], n, n);
  }
  Index rows = dim_field(j, "rows");
  Index cols = dim_field(j, "cols");
  return entries_from_json(j["entries"], rows, cols);
}

}  // namespace

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid JSON in '" + path + "': " + e.what());
  }
}

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !(j.contains("dim") || (j.contains("rows") && j.contains("cols"))))
    throw ParseError("matrix must be an object with 'dim' (or 'rows'/'cols') and 'entries'");
  return any_matrix_from_json(j);
}

nlohmann::json matrix_to_json(const Matrix& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index k = 0; k < m.cols(); ++k)
      row.push_back({m(i, k).real(), m(i, k).imag()});
    entries.push_back(std::move(row));
  }
  if (m.rows() == m.cols()) return {{"dim", m.rows()}, {"entries", std::move(entries)}};
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

KrausChannel channel_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("channel must be a JSON object");
  Index n_in = dim_field(j, "n_in");
  Index n_out = dim_field(j, "n_out");
  if (!j.contains("kraus") || !j["kraus"].is_array() || j["kraus"].empty())
    throw ParseError("channel needs a nonempty 'kraus' array");
  std::vector<Matrix> kraus;
  for (const nlohmann::json& jk : j["kraus"]) {
    Matrix k = any_matrix_from_json(jk);
    if (k.rows() != n_out || k.cols() != n_in)
      throw ParseError("kraus operator shape must be n_out x n_in");
    kraus.push_back(std::move(k));
  }
  return KrausChannel::create(std::move(kraus));
}

Povm povm_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("effects") || !j["effects"].is_array() ||
      j["effects"].empty())
    throw ParseError("povm needs a nonempty 'effects' array");
  std::vector<Matrix> effects;
  for (const nlohmann::json& je : j["effects"]) effects.push_back(any_matrix_from_json(je));
  return Povm::create(std::move(effects));
}

ParamFamily family_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("base"))
    throw ParseError("family needs 'base' and 'derivatives'");
  DensityMatrix base = DensityMatrix::validate(any_matrix_from_json(j["base"]));
  if (!j.contains("derivatives") || !j["derivatives"].is_array() || j["derivatives"].empty())
    throw ParseError("family needs a nonempty 'derivatives' array");
  std::vector<TangentVector> derivatives;
  for (const nlohmann::json& jd : j["derivatives"])
    derivatives.push_back(TangentVector::make(any_matrix_from_json(jd)));
  return ParamFamily(std::move(base), std::move(derivatives));
}

FdFamily fd_family_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("h") || !j.contains("base") || !j.contains("plus") ||
      !j.contains("minus"))
    throw ParseError("fd family needs 'h', 'base', 'plus' and 'minus'");
  double h = number_from_json(j["h"], "step h");
  if (!(h > 0.0)) throw ParseError("step h must be positive");
  DensityMatrix base = DensityMatrix::validate(any_matrix_from_json(j["base"]));
  const nlohmann::json& plus = j["plus"];
  const nlohmann::json& minus = j["minus"];
  if (!plus.is_array() || !minus.is_array() || plus.size() != minus.size() || plus.empty())
    throw ParseError("'plus' and 'minus' must be equal-length nonempty arrays");
  std::vector<TangentVector> derivatives;
  for (std::size_t i = 0; i < plus.size(); ++i) {
    DensityMatrix rp = DensityMatrix::validate(any_matrix_from_json(plus[i]));
    DensityMatrix rm = DensityMatrix::validate(any_matrix_from_json(minus[i]));
    Matrix diff = (rp.matrix() - rm.matrix()) / (2.0 * h);
    // Central differences keep the trace exactly 0 up to rounding; scrub it
    // so the tangent passes the traceless gate.
    Index n = diff.rows();
    diff -= (diff.trace() / static_cast<double>(n)) * Matrix::Identity(n, n);
    derivatives.push_back(TangentVector::make(diff));
  }
  return {ParamFamily(std::move(base), std::move(derivatives)), h};
}

}  // namespace qfi
