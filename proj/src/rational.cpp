#include "wbds/rational.hpp"

#include <cctype>
#include <sstream>

#include "wbds/error.hpp"

namespace wbds {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_graph: return "InvalidGraph";
    case ErrorCode::graph_too_large: return "GraphTooLarge";
    case ErrorCode::not_semiconnected: return "NotSemiconnected";
    case ErrorCode::not_strongly_connected: return "NotStronglyConnected";
    case ErrorCode::invalid_choice: return "InvalidChoice";
    case ErrorCode::not_doubly_stochastic: return "NotDoublyStochastic";
    case ErrorCode::zero_row: return "ZeroRow";
    case ErrorCode::c_too_small: return "CTooSmall";
    case ErrorCode::c_too_small_for_degrees: return "CTooSmallForDegrees";
    case ErrorCode::not_doubly_stochasticable: return "NotDoublyStochasticable";
    case ErrorCode::method_size_exceeded: return "MethodSizeExceeded";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::duplicate_edge: return "DuplicateEdge";
    case ErrorCode::bad_weight: return "BadWeight";
  }
  return "Unknown";
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw Error(ErrorCode::bad_weight,
                "malformed rational '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) {
    throw Error(ErrorCode::bad_weight,
                "zero denominator in '" + std::string(text) + "'");
  }
  Rational q(n, d);
  q.canonicalize();
  if (negative) q = -q;
  return q;
}

std::string to_string(const Rational& value) { return value.get_str(10); }

bool is_integer(const Rational& value) { return value.get_den() == 1; }

Rational make_rational(long num, long den) {
  if (den == 0) throw Error(ErrorCode::bad_weight, "zero denominator");
  Rational q{mpz_class(num), mpz_class(den)};
  q.canonicalize();
  return q;
}

RationalMatrix RationalMatrix::from_rows(
    const std::vector<std::vector<Rational>>& rows) {
  RationalMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw Error(ErrorCode::invalid_graph, "matrix must be square");
    }
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Rational RationalMatrix::row_sum(std::size_t i) const {
  Rational s = 0;
  for (std::size_t j = 0; j < n_; ++j) s += (*this)(i, j);
  return s;
}

Rational RationalMatrix::col_sum(std::size_t j) const {
  Rational s = 0;
  for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, j);
  return s;
}

bool RationalMatrix::is_zero() const {
  for (const auto& x : data_) {
    if (sgn(x) != 0) return false;
  }
  return true;
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& other) {
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

RationalMatrix& RationalMatrix::operator-=(const RationalMatrix& other) {
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

RationalMatrix& RationalMatrix::operator*=(const Rational& factor) {
  for (auto& x : data_) x *= factor;
  return *this;
}

RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) {
  a += b;
  return a;
}

RationalMatrix operator*(const Rational& factor, RationalMatrix a) {
  a *= factor;
  return a;
}

std::string to_string(const RationalMatrix& m) {
  std::ostringstream out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j) out << ' ';
      out << to_string(m(i, j));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace wbds
