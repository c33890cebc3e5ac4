// Copyright 2026 The gaussent Authors
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

#include "gaussent/state_file.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace gaussent {

namespace {

struct Line {
  int number;
  std::vector<std::string_view> tokens;
};

std::vector<std::string_view> split_tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r' || s[i] == ',')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r' && s[j] != ',') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view line = text.substr(start, end - start);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tokens = split_tokens(line);
    if (!tokens.empty()) lines.push_back({number, std::move(tokens)});
    start = end + 1;
  }
  return lines;
}

double parse_double(std::string_view tok, int line) {
  double value = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && tok.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw StructuralError(fmt::format("line {}: '{}' is not a finite number", line, tok));
  }
  return value;
}

int parse_count(std::string_view tok, int line) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || value < 1) {
    throw StructuralError(fmt::format("line {}: '{}' is not a positive integer", line, tok));
  }
  return value;
}

class Reader {
 public:
  explicit Reader(std::string_view text) : lines_(tokenize(text)) {}

  bool done() const { return pos_ >= lines_.size(); }
  const Line& peek() const { return lines_.at(pos_); }
  const Line& next() {
    if (done()) throw StructuralError("unexpected end of file");
    return lines_[pos_++];
  }

  Matrix matrix(Eigen::Index rows, Eigen::Index cols, std::string_view what) {
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (done()) throw StructuralError(fmt::format("{}: expected {} rows, file ended after {}", what, rows, i));
      const Line& l = next();
      if (static_cast<Eigen::Index>(l.tokens.size()) != cols) {
        throw StructuralError(fmt::format("line {}: {} row has {} entries, expected {}", l.number, what,
                                          l.tokens.size(), cols));
      }
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = parse_double(l.tokens[static_cast<std::size_t>(j)], l.number);
    }
    return m;
  }

  Vector vector(Eigen::Index size, std::string_view what) {
    if (done()) throw StructuralError(fmt::format("{}: missing values", what));
    const Line& l = next();
    if (static_cast<Eigen::Index>(l.tokens.size()) != size) {
      throw StructuralError(fmt::format("line {}: {} has {} entries, expected {}", l.number, what,
                                        l.tokens.size(), size));
    }
    Vector v(size);
    for (Eigen::Index j = 0; j < size; ++j) v(j) = parse_double(l.tokens[static_cast<std::size_t>(j)], l.number);
    return v;
  }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StructuralError(fmt::format("cannot open '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void append_matrix(std::string& out, const Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ' ';
      out += format_number(m(i, j));
    }
    out += '\n';
  }
}

}  // namespace

std::string format_number(double x) {
  return fmt::format("{:.17g}", x);
}

GaussianState StateFile::state() const {
  const auto report = validate_covariance(gamma);
  if (!report.valid) {
    throw PhysicalError(fmt::format("invalid covariance matrix (min eigenvalue of gamma + i sigma = {:.6f})",
                                    report.min_uncertainty_eigenvalue));
  }
  return GaussianState(gamma, d);
}

StateFile parse_state_file(std::string_view text) {
  Reader r(text);
  StateFile out;
  int n = 0;
  bool have_gamma = false;
  bool have_d = false;
  while (!r.done()) {
    const Line& l = r.next();
    const std::string_view key = l.tokens[0];
    if (key == "n") {
      if (l.tokens.size() != 2) throw StructuralError(fmt::format("line {}: expected 'n <modes>'", l.number));
      if (n != 0) throw StructuralError(fmt::format("line {}: duplicate 'n'", l.number));
      n = parse_count(l.tokens[1], l.number);
    } else if (key == "gamma") {
      if (n == 0) throw StructuralError(fmt::format("line {}: 'gamma' before 'n'", l.number));
      if (have_gamma) throw StructuralError(fmt::format("line {}: duplicate 'gamma'", l.number));
      out.gamma = r.matrix(2 * n, 2 * n, "gamma");
      have_gamma = true;
    } else if (key == "d") {
      if (n == 0) throw StructuralError(fmt::format("line {}: 'd' before 'n'", l.number));
      if (have_d) throw StructuralError(fmt::format("line {}: duplicate 'd'", l.number));
      out.d = r.vector(2 * n, "d");
      have_d = true;
    } else if (key == "partition") {
      std::string labels;
      for (std::size_t i = 1; i < l.tokens.size(); ++i) labels += std::string(l.tokens[i]);
      out.partition = ModePartition::parse(labels);
    } else {
      throw StructuralError(fmt::format("line {}: unknown key '{}'", l.number, key));
    }
  }
  if (n == 0) throw StructuralError("state file has no 'n'");
  if (!have_gamma) throw StructuralError("state file has no 'gamma'");
  if (!have_d) out.d = Vector::Zero(2 * n);
  if (out.partition && out.partition->modes() != n) {
    throw StructuralError(fmt::format("partition has {} labels for {} modes", out.partition->modes(), n));
  }
  validate_covariance(out.gamma);  // shape and symmetry
  return out;
}

StateFile read_state_file(const std::string& path) { return parse_state_file(slurp(path)); }

std::string format_state_file(const GaussianState& state, const std::optional<ModePartition>& partition) {
  std::string out = fmt::format("n {}\ngamma\n", state.modes());
  append_matrix(out, state.cov());
  out += "d\n";
  append_matrix(out, state.disp().transpose());
  if (partition) {
    out += "partition";
    for (Party p : partition->parties()) out += p == Party::A ? " A" : " B";
    out += '\n';
  }
  return out;
}

void write_state_file(const std::string& path, const GaussianState& state,
                      const std::optional<ModePartition>& partition) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw StructuralError(fmt::format("cannot write '{}'", path));
  f << format_state_file(state, partition);
}

GaussianChannel parse_channel_file(std::string_view text) {
  Reader r(text);
  int n_in = 0;
  int n_out = 0;
  GaussianChannel ch;
  bool have_a = false;
  bool have_g = false;
  bool have_shift = false;
  while (!r.done()) {
    const Line& l = r.next();
    const std::string_view key = l.tokens[0];
    if (key == "n_in" || key == "n_out") {
      if (l.tokens.size() != 2) throw StructuralError(fmt::format("line {}: expected '{} <modes>'", l.number, key));
      (key == "n_in" ? n_in : n_out) = parse_count(l.tokens[1], l.number);
    } else if (key == "A" || key == "G" || key == "shift") {
      if (n_in == 0 || n_out == 0) {
        throw StructuralError(fmt::format("line {}: '{}' before 'n_in' and 'n_out'", l.number, key));
      }
      if (key == "A") {
        ch.a = r.matrix(2 * n_out, 2 * n_in, "A");
        have_a = true;
      } else if (key == "G") {
        ch.g = r.matrix(2 * n_out, 2 * n_out, "G");
        have_g = true;
      } else {
        ch.shift = r.vector(2 * n_out, "shift");
        have_shift = true;
      }
    } else {
      throw StructuralError(fmt::format("line {}: unknown key '{}'", l.number, key));
    }
  }
  if (!have_a || !have_g) throw StructuralError("channel file needs both 'A' and 'G'");
  if (!have_shift) ch.shift = Vector::Zero(2 * n_out);
  channel_valid(ch);  // shape and symmetry
  return ch;
}

GaussianChannel read_channel_file(const std::string& path) { return parse_channel_file(slurp(path)); }

std::vector<double> parse_vector_file(std::string_view text) {
  std::vector<double> out;
  for (const auto& l : tokenize(text)) {
    for (auto tok : l.tokens) out.push_back(parse_double(tok, l.number));
  }
  if (out.empty()) throw StructuralError("vector file is empty");
  return out;
}

std::vector<double> read_vector_file(const std::string& path) { return parse_vector_file(slurp(path)); }

Matrix parse_matrix_file(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw StructuralError("matrix file is empty");
  const auto cols = static_cast<Eigen::Index>(lines.front().tokens.size());
  Matrix m(static_cast<Eigen::Index>(lines.size()), cols);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& l = lines[i];
    if (static_cast<Eigen::Index>(l.tokens.size()) != cols) {
      throw StructuralError(fmt::format("line {}: row has {} entries, expected {}", l.number, l.tokens.size(), cols));
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), j) = parse_double(l.tokens[static_cast<std::size_t>(j)], l.number);
    }
  }
  return m;
}

Matrix read_matrix_file(const std::string& path) { return parse_matrix_file(slurp(path)); }

}  // namespace gaussent
