#include "qrenyi/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace qrenyi {

namespace {

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }

double number_at(const nlohmann::json& v, std::size_t index) {
  if (!v.is_number()) {
    std::ostringstream os;
    os << "entry " << index << " is not a number";
    parse_fail(os.str());
  }
  return v.get<double>();
}

}  // namespace

CMatrix matrix_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) parse_fail("matrix document must be a JSON object");
  if (!doc.contains("n") || !doc["n"].is_number_integer()) parse_fail("missing integer field \"n\"");
  if (!doc.contains("data") || !doc["data"].is_array()) parse_fail("missing array field \"data\"");
  const std::string field = doc.value("field", std::string("real"));
  if (field != "real" && field != "complex") parse_fail("field must be \"real\" or \"complex\"");
  const long long n = doc["n"].get<long long>();
  if (n < 1) parse_fail("n must be positive");
  const auto& data = doc["data"];
  const auto expected = static_cast<std::size_t>(n * n);
  if (data.size() != expected) {
    std::ostringstream os;
    os << "expected " << expected << " entries, got " << data.size();
    parse_fail(os.str());
  }
  CMatrix m(n, n);
  for (std::size_t idx = 0; idx < expected; ++idx) {
    const auto& v = data[idx];
    Complex z;
    if (field == "real") {
      z = number_at(v, idx);
    } else {
      if (!v.is_array() || v.size() != 2) {
        std::ostringstream os;
        os << "entry " << idx << " must be a [re, im] pair";
        parse_fail(os.str());
      }
      z = Complex(number_at(v[0], idx), number_at(v[1], idx));
    }
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      std::ostringstream os;
      os << "entry " << idx << " is not finite";
      throw Error(ErrorCode::ValidationError, os.str());
    }
    m(static_cast<Index>(idx) / n, static_cast<Index>(idx) % n) = z;
  }
  return m;
}

nlohmann::json matrix_to_json(const CMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::NonSquare, "only square matrices are serialized");
  const bool real = (m.imag().array() == 0.0).all();
  nlohmann::json data = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) {
      if (real)
        data.push_back(m(i, j).real());
      else
        data.push_back({m(i, j).real(), m(i, j).imag()});
    }
  return {{"n", m.rows()}, {"field", real ? "real" : "complex"}, {"data", std::move(data)}};
}

CMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    parse_fail(path + ": " + e.what());
  }
  try {
    return matrix_from_json(doc);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.detail());
  }
}

void write_matrix_file(const std::string& path, const CMatrix& m) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  out << matrix_to_json(m).dump() << '\n';
}

GeneralMatrix load_general(const std::string& path) { return GeneralMatrix(read_matrix_file(path)); }

HermitianMatrix load_hermitian(const std::string& path) {
  const CMatrix m = read_matrix_file(path);
  const double scale = m.cwiseAbs().maxCoeff();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > kHermiticityTol * scale) {
        std::ostringstream os;
        os << path << ": entry " << i * m.cols() + j << " (row " << i << ", column " << j
           << ") does not match its conjugate mirror";
        throw Error(ErrorCode::ValidationError, os.str());
      }
  return hermitian_from(m);
}

PositiveDefiniteMatrix load_pd(const std::string& path) {
  const HermitianMatrix h = load_hermitian(path);
  try {
    return pd_from(h);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotPositiveDefinite) throw;
    throw Error(ErrorCode::ValidationError, path + ": " + e.detail());
  }
}

}  // namespace qrenyi
