#include "qfi/report.hpp"

#include <cmath>
#include <cstdio>

namespace qfi {

std::string format_double17(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void append_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void append_complex(std::string& out, const Complex& z) {
  out += '[';
  out += format_double17(z.real());
  out += ',';
  out += format_double17(z.imag());
  out += ']';
}

void append_real_matrix(std::string& out, const RealMatrix& m) {
  out += '[';
  for (Index i = 0; i < m.rows(); ++i) {
    if (i) out += ',';
    out += '[';
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += format_double17(m(i, j));
    }
    out += ']';
  }
  out += ']';
}

void append_matrix(std::string& out, const Matrix& m) {
  out += m.rows() == m.cols() ? "{\"dim\":" : "{\"rows\":";
  out += std::to_string(m.rows());
  if (m.rows() != m.cols()) {
    out += ",\"cols\":";
    out += std::to_string(m.cols());
  }
  out += ",\"entries\":[";
  for (Index i = 0; i < m.rows(); ++i) {
    if (i) out += ',';
    out += '[';
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      append_complex(out, m(i, j));
    }
    out += ']';
  }
  out += "]}";
}

void append_value(std::string& out, const ReportValue& v) {
  std::visit(
      [&out](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, bool>) {
          out += x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          out += std::to_string(x);
        } else if constexpr (std::is_same_v<T, double>) {
          out += format_double17(x);
        } else if constexpr (std::is_same_v<T, Complex>) {
          append_complex(out, x);
        } else if constexpr (std::is_same_v<T, std::string>) {
          append_escaped(out, x);
        } else if constexpr (std::is_same_v<T, std::vector<double>>) {
          out += '[';
          for (std::size_t i = 0; i < x.size(); ++i) {
            if (i) out += ',';
            out += format_double17(x[i]);
          }
          out += ']';
        } else if constexpr (std::is_same_v<T, RealMatrix>) {
          append_real_matrix(out, x);
        } else if constexpr (std::is_same_v<T, Matrix>) {
          append_matrix(out, x);
        } else {
          out += '[';
          for (std::size_t i = 0; i < x.size(); ++i) {
            if (i) out += ',';
            append_matrix(out, x[i]);
          }
          out += ']';
        }
      },
      v);
}

}  // namespace

bool Report::all_pass() const {
  for (const Certificate& c : certificates)
    if (!c.pass) return false;
  return true;
}

std::string Report::to_json() const {
  std::string out = "{\"command\":";
  append_escaped(out, command);
  out += ",\"inputs_digest\":";
  append_escaped(out, inputs_digest);
  out += ",\"results\":{";
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (i) out += ',';
    append_escaped(out, results[i].first);
    out += ':';
    append_value(out, results[i].second);
  }
  out += "},\"certificates\":[";
  for (std::size_t i = 0; i < certificates.size(); ++i) {
    if (i) out += ',';
    const Certificate& c = certificates[i];
    out += "{\"name\":";
    append_escaped(out, c.name);
    out += ",\"pass\":";
    out += c.pass ? "true" : "false";
    out += ",\"worst_violation\":";
    out += format_double17(c.worst_violation);
    out += ",\"tolerance\":";
    out += format_double17(c.tolerance);
    out += '}';
  }
  out += "]}";
  return out;
}

void Digest::feed_bytes(const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h_ ^= p[i];
    h_ *= 1099511628211ULL;
  }
}

std::string Digest::hex() const {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h_));
  return buf;
}

}  // namespace qfi
