#pragma once

// Text formats.
//
// Matrix file:    "n p" on the first line, then n rows of p numbers written
//                 with 17 significant digits (lossless for doubles).
// Factored file:  "HPROD n m" on the first line, then m rows of n numbers,
//                 the canonical reflector directions u_1 ... u_m of the
//                 product H_1 H_2 ... H_m.
// Trace CSV:      header "iter,residual,lambda_min,trace,dim_e1", one row
//                 per greedy step.

#include <householder/core.hpp>
#include <householder/decompose.hpp>

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace householder::io {

class FormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Scientific notation with 17 significant digits.
std::string format_double(double value);

void write_matrix(std::ostream& out, const Matrix& m);
Matrix read_matrix(std::istream& in);

void write_product(std::ostream& out, const HouseholderProduct& p);
HouseholderProduct read_product(std::istream& in);

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows);
std::vector<TraceRow> read_trace_csv(std::istream& in);

// File variants; throw FormatError when the file cannot be opened.
Matrix load_matrix(const std::filesystem::path& path);
void save_matrix(const std::filesystem::path& path, const Matrix& m);
HouseholderProduct load_product(const std::filesystem::path& path);
void save_product(const std::filesystem::path& path, const HouseholderProduct& p);
std::vector<TraceRow> load_trace_csv(const std::filesystem::path& path);
void save_trace_csv(const std::filesystem::path& path, const std::vector<TraceRow>& rows);

}  // namespace householder::io
