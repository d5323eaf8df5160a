#include "qet/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qet {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::string header_line() {
  std::string out;
  const auto& names = SweepRow::column_names();
  for (int i = 0; i < SweepRow::kColumns; ++i) {
    if (i) out += ',';
    out += names[i];
  }
  return out;
}

// Real part of a matrix entry; the states and operators written out are
// real-valued, so a noticeable imaginary part means a bug upstream.
double real_entry(const Mat& m, int i, int j) {
  const Complex v = m(i, j);
  if (std::abs(v.imag()) > 1e-12) {
    throw InvariantViolation("matrix expected real has imaginary entry " +
                             format_double(v.imag()));
  }
  return v.real();
}

class JsonWriter {
 public:
  void open(char bracket) {
    pending_value();
    out_ += bracket;
    first_.push_back(true);
  }
  void close(char bracket) {
    out_ += bracket;
    first_.pop_back();
  }
  void key(const std::string& k) {
    separate();
    out_ += '"';
    out_ += k;
    out_ += "\": ";
    have_key_ = true;
  }
  void value(double v) {
    pending_value();
    out_ += format_double(v);
  }
  void field(const std::string& k, double v) {
    key(k);
    value(v);
  }
  std::string str() && { return std::move(out_); }

 private:
  void separate() {
    if (!first_.empty() && !first_.back()) out_ += ", ";
    if (!first_.empty()) first_.back() = false;
  }
  void pending_value() {
    if (have_key_) {
      have_key_ = false;
    } else {
      separate();
    }
  }
  std::string out_;
  std::vector<bool> first_;
  bool have_key_ = false;
};

void write_matrix(JsonWriter& w, const std::string& key, const Mat& m) {
  w.key(key);
  w.open('[');
  for (int i = 0; i < m.rows(); ++i) {
    w.open('[');
    for (int j = 0; j < m.cols(); ++j) w.value(real_entry(m, i, j));
    w.close(']');
  }
  w.close(']');
}

void write_lambda(JsonWriter& w, const std::string& key,
                  const BlockSpectrum& sp) {
  w.key(key);
  w.open('[');
  for (int j = 0; j < 2; ++j) {
    w.open('[');
    w.value(sp.lambda[j][0]);
    w.value(sp.lambda[j][1]);
    w.close(']');
  }
  w.close(']');
}

}  // namespace

void write_sweep_csv(const std::string& path,
                     const std::vector<SweepRow>& rows) {
  for (const auto& row : rows) check_row_invariants(row);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << header_line() << '\n';
  for (const auto& row : rows) {
    const auto vals = row.values();
    for (int i = 0; i < SweepRow::kColumns; ++i) {
      if (i) out << ',';
      out << format_double(vals[i]);
    }
    out << '\n';
  }
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

std::vector<SweepRow> read_sweep_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty file: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header_line()) throw IoError("unexpected header in " + path);

  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::array<double, SweepRow::kColumns> vals{};
    std::istringstream fields(line);
    std::string cell;
    for (int i = 0; i < SweepRow::kColumns; ++i) {
      if (!std::getline(fields, cell, ',')) {
        throw IoError("short row in " + path);
      }
      size_t used = 0;
      vals[i] = std::stod(cell, &used);
      if (used != cell.size()) throw IoError("bad number in " + path);
    }
    if (std::getline(fields, cell, ',')) throw IoError("long row in " + path);
    rows.push_back(SweepRow::from_values(vals));
  }
  return rows;
}

std::string point_report_json(const PointAnalysis& pa) {
  JsonWriter w;
  w.open('{');
  const auto vals = pa.row.values();
  const auto& names = SweepRow::column_names();
  for (int i = 0; i < SweepRow::kColumns; ++i) w.field(names[i], vals[i]);
  w.field("theta", pa.theta);
  w.field("E_B_of_theta", pa.run.E_B_of_theta);
  w.field("X", pa.run.X);
  w.field("Y", pa.run.Y);

  w.key("state");
  w.open('{');
  w.field("energy", pa.gs.energy);
  w.field("gap", pa.gs.gap);
  w.field("a", pa.gs.a);
  w.field("b", pa.gs.b);
  w.field("c", pa.gs.c);
  w.field("d", pa.gs.d);
  w.field("eta", pa.gs.cal.eta);
  w.field("xi", pa.gs.cal.xi);
  w.field("beta", pa.eff_g.beta);
  w.key("probabilities");
  w.open('[');
  w.value(pa.outcomes[0].probability);
  w.value(pa.outcomes[1].probability);
  w.close(']');
  w.key("psi");
  w.open('[');
  for (int i = 0; i < 16; ++i) {
    const Complex v = pa.gs.psi[i];
    if (std::abs(v.imag()) > 1e-12) {
      throw InvariantViolation("ground state expected real");
    }
    w.value(v.real());
  }
  w.close(']');
  write_matrix(w, "rho34_g", pa.rho34_g);
  write_matrix(w, "rho34_f", pa.rho34_f);
  write_matrix(w, "betaH_g", pa.eff_g.betaH);
  write_matrix(w, "betaH_f", pa.eff_f.betaH);
  write_lambda(w, "lambda_g", pa.spect_g);
  write_lambda(w, "lambda_f", pa.spect_f);
  w.close('}');

  w.close('}');
  return std::move(w).str();
}

void write_minimal_csv(const std::string& path,
                       const std::vector<MinimalCurvePoint>& curve) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "h,EB_max,dSB,dSB_tilde,two_thirds_dSB,half_dSB_tilde\n";
  for (const auto& p : curve) {
    out << format_double(p.h) << ',' << format_double(p.EB_max) << ','
        << format_double(p.dSB) << ',' << format_double(p.dSB_tilde) << ','
        << format_double(2.0 / 3.0 * p.dSB) << ','
        << format_double(0.5 * p.dSB_tilde) << '\n';
  }
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace qet
