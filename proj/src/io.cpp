#include <householder/io.hpp>

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace householder::io {

namespace {

double parse_double(const std::string& token) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw FormatError("not a number: '" + token + "'");
  }
  return value;
}

Index parse_index(const std::string& token) {
  Index value = 0;
  const char* first = token.data();
  const char* last = first + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || value < 0) {
    throw FormatError("not a nonnegative integer: '" + token + "'");
  }
  return value;
}

std::string next_token(std::istream& in, const char* what) {
  std::string token;
  if (!(in >> token)) throw FormatError(std::string("unexpected end of input reading ") + what);
  return token;
}

void write_row(std::ostream& out, const auto& values, Index count) {
  for (Index j = 0; j < count; ++j) {
    if (j) out << ' ';
    out << format_double(values(j));
  }
  out << '\n';
}

template <class Fn>
auto with_input(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  return fn(in);
}

template <class Fn>
void with_output(const std::filesystem::path& path, Fn&& fn) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  fn(out);
  if (!out) throw FormatError("error writing " + path.string());
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::scientific, 16);
  if (ec != std::errc()) throw FormatError("cannot format value");
  return std::string(buf, ptr);
}

void write_matrix(std::ostream& out, const Matrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Index i = 0; i < m.rows(); ++i) write_row(out, m.row(i), m.cols());
}

Matrix read_matrix(std::istream& in) {
  const Index rows = parse_index(next_token(in, "row count"));
  const Index cols = parse_index(next_token(in, "column count"));
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = parse_double(next_token(in, "matrix entry"));
  }
  std::string extra;
  if (in >> extra) throw FormatError("trailing data after matrix: '" + extra + "'");
  return m;
}

void write_product(std::ostream& out, const HouseholderProduct& p) {
  out << "HPROD " << p.dim() << ' ' << p.size() << '\n';
  for (const Reflector& h : p.factors()) write_row(out, h.direction(), p.dim());
}

HouseholderProduct read_product(std::istream& in) {
  const std::string tag = next_token(in, "header");
  if (tag != "HPROD") throw FormatError("expected HPROD header, got '" + tag + "'");
  const Index n = parse_index(next_token(in, "dimension"));
  const Index m = parse_index(next_token(in, "factor count"));
  HouseholderProduct p(n);
  Vector u(n);
  for (Index k = 0; k < m; ++k) {
    for (Index i = 0; i < n; ++i) u[i] = parse_double(next_token(in, "reflector entry"));
    try {
      p.push_back(Reflector(u));
    } catch (const InvalidInput& e) {
      throw FormatError("reflector " + std::to_string(k) + ": " + e.what());
    }
  }
  std::string extra;
  if (in >> extra) throw FormatError("trailing data after product: '" + extra + "'");
  return p;
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows) {
  out << "iter,residual,lambda_min,trace,dim_e1\n";
  for (const TraceRow& r : rows) {
    out << r.iteration << ',' << format_double(r.residual) << ',' << format_double(r.lambda_min)
        << ',' << format_double(r.trace) << ',' << r.dim_e1 << '\n';
  }
}

std::vector<TraceRow> read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "iter,residual,lambda_min,trace,dim_e1") {
    throw FormatError("missing or wrong trace CSV header");
  }
  std::vector<TraceRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 5) throw FormatError("trace row needs 5 fields: '" + line + "'");
    TraceRow r;
    r.iteration = parse_index(fields[0]);
    r.residual = parse_double(fields[1]);
    r.lambda_min = parse_double(fields[2]);
    r.trace = parse_double(fields[3]);
    // dim_e1 is -1 when the run skipped the eigenspace computation.
    r.dim_e1 = fields[4] == "-1" ? -1 : parse_index(fields[4]);
    rows.push_back(r);
  }
  return rows;
}

Matrix load_matrix(const std::filesystem::path& path) {
  return with_input(path, [](std::istream& in) { return read_matrix(in); });
}

void save_matrix(const std::filesystem::path& path, const Matrix& m) {
  with_output(path, [&](std::ostream& out) { write_matrix(out, m); });
}

HouseholderProduct load_product(const std::filesystem::path& path) {
  return with_input(path, [](std::istream& in) { return read_product(in); });
}

void save_product(const std::filesystem::path& path, const HouseholderProduct& p) {
  with_output(path, [&](std::ostream& out) { write_product(out, p); });
}

std::vector<TraceRow> load_trace_csv(const std::filesystem::path& path) {
  return with_input(path, [](std::istream& in) { return read_trace_csv(in); });
}

void save_trace_csv(const std::filesystem::path& path, const std::vector<TraceRow>& rows) {
  with_output(path, [&](std::ostream& out) { write_trace_csv(out, rows); });
}

}  // namespace householder::io
