#include "qet/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace qet {

namespace {

constexpr double kWidth = 860, kHeight = 520;
constexpr double kLeft = 72, kRight = 660, kTop = 46, kBottom = 470;

const char* kPalette[12] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                            "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                            "#bcbd22", "#17becf", "#393b79", "#ad494a"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void extend(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!(lo <= hi)) {
      lo = 0;
      hi = 1;
    }
    double span = hi - lo;
    if (span <= 0) span = std::max(1e-12, std::abs(hi));
    lo -= 0.05 * span;
    hi += 0.05 * span;
  }
};

}  // namespace

void write_line_plot(const std::string& path, const std::string& title,
                     const std::string& x_label, const std::string& y_label,
                     const std::vector<Series>& series) {
  Range xr, yr;
  for (const auto& s : series) {
    for (double x : s.xs) xr.extend(x);
    for (double y : s.ys) yr.extend(y);
  }
  xr.pad();
  yr.pad();
  const auto px = [&](double x) {
    return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * (kRight - kLeft);
  };
  const auto py = [&](double y) {
    return kBottom - (y - yr.lo) / (yr.hi - yr.lo) * (kBottom - kTop);
  };

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"24\" "
      << "text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
      << escape(title) << "</text>\n";

  // frame and ticks
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\""
      << kRight - kLeft << "\" height=\"" << kBottom - kTop
      << "\" fill=\"none\" stroke=\"#333\"/>\n";
  const int n_ticks = 5;
  for (int i = 0; i < n_ticks; ++i) {
    const double f = static_cast<double>(i) / (n_ticks - 1);
    const double xv = xr.lo + f * (xr.hi - xr.lo);
    const double yv = yr.lo + f * (yr.hi - yr.lo);
    const double xp = px(xv), yp = py(yv);
    out << "<line x1=\"" << xp << "\" y1=\"" << kTop << "\" x2=\"" << xp
        << "\" y2=\"" << kBottom << "\" stroke=\"#ddd\"/>\n";
    out << "<line x1=\"" << kLeft << "\" y1=\"" << yp << "\" x2=\"" << kRight
        << "\" y2=\"" << yp << "\" stroke=\"#ddd\"/>\n";
    out << "<text x=\"" << xp << "\" y=\"" << kBottom + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"11\">" << num(xv) << "</text>\n";
    out << "<text x=\"" << kLeft - 6 << "\" y=\"" << yp + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
        << "font-size=\"11\">" << num(yv) << "</text>\n";
  }
  // zero line when it is in range
  if (yr.lo < 0 && yr.hi > 0) {
    out << "<line x1=\"" << kLeft << "\" y1=\"" << py(0) << "\" x2=\""
        << kRight << "\" y2=\"" << py(0)
        << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  }
  out << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"" << kBottom + 40
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"13\">" << escape(x_label) << "</text>\n";
  out << "<text x=\"20\" y=\"" << (kTop + kBottom) / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"13\" transform=\"rotate(-90 20 " << (kTop + kBottom) / 2
      << ")\">" << escape(y_label) << "</text>\n";

  for (size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % 12];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.6\" points=\"";
    for (size_t i = 0; i < s.xs.size(); ++i) {
      if (i) out << ' ';
      out << num(px(s.xs[i])) << ',' << num(py(s.ys[i]));
    }
    out << "\"/>\n";
    const double ly = kTop + 10 + 18 * static_cast<double>(k);
    out << "<line x1=\"" << kRight + 12 << "\" y1=\"" << ly << "\" x2=\""
        << kRight + 34 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kRight + 40 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">"
        << escape(s.label) << "</text>\n";
  }
  out << "</svg>\n";
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

std::vector<std::string> write_sweep_figures(
    const std::string& dir, const std::vector<SweepRow>& rows) {
  std::vector<double> h;
  h.reserve(rows.size());
  for (const auto& r : rows) h.push_back(r.h);
  const auto col = [&](double SweepRow::* field,
                       double scale = 1.0) {
    std::vector<double> ys;
    ys.reserve(rows.size());
    for (const auto& r : rows) ys.push_back(scale * (r.*field));
    return ys;
  };
  const auto s = [&](const std::string& label, double SweepRow::* field,
                     double scale = 1.0) {
    return Series{label, h, col(field, scale)};
  };

  std::vector<std::string> written;
  const auto plot = [&](const std::string& name, const std::string& title,
                        const std::string& y_label,
                        const std::vector<Series>& series) {
    const std::string path = dir + "/" + name;
    write_line_plot(path, title, "h", y_label, series);
    written.push_back(path);
  };

  plot("fig1.svg", "Far-pair entropy and measurement information gain",
       "entropy (nats)",
       {s("S34_g", &SweepRow::S34_g), s("I_QC", &SweepRow::I_QC)});
  plot("fig2.svg", "Energy deposited by the measurement", "energy",
       {s("E_A", &SweepRow::E_A), s("E12_int", &SweepRow::E12_int)});
  plot("fig3.svg", "Extracted energy against the far-pair entropy change",
       "energy",
       {s("E_B_max", &SweepRow::E_B_max),
        s("0.446 * dS34", &SweepRow::dS34, 0.446)});
  plot("fig4.svg", "Extracted energy split into field and bond terms",
       "energy",
       {s("E_B_max", &SweepRow::E_B_max), s("E4_h", &SweepRow::E4_h),
        s("E34_int", &SweepRow::E34_int)});
  plot("fig5.svg", "Extracted energy against the site-4 entropy change",
       "energy",
       {s("E_B_max", &SweepRow::E_B_max),
        s("-0.334 * dS4", &SweepRow::dS4, -0.334)});
  plot("fig6.svg", "Effective-Hamiltonian coefficients before/after",
       "coefficient",
       {s("J0_g", &SweepRow::J0_g), s("J1_g", &SweepRow::J1_g),
        s("J2_g", &SweepRow::J2_g), s("Bp_g", &SweepRow::Bp_g),
        s("Bm_g", &SweepRow::Bm_g), s("C_g", &SweepRow::C_g),
        s("J0_f", &SweepRow::J0_f), s("J1_f", &SweepRow::J1_f),
        s("J2_f", &SweepRow::J2_f), s("Bp_f", &SweepRow::Bp_f),
        s("Bm_f", &SweepRow::Bm_f), s("C_f", &SweepRow::C_f)});
  plot("fig7.svg", "Entropy change split by effective level", "entropy (nats)",
       {s("ds_00", &SweepRow::ds_00), s("ds_01", &SweepRow::ds_01),
        s("ds_10", &SweepRow::ds_10), s("ds_11", &SweepRow::ds_11)});
  plot("fig8a.svg", "Entropy change split by operator", "entropy (nats)",
       {s("dJ0", &SweepRow::dJ0), s("dJ1", &SweepRow::dJ1),
        s("dJ2", &SweepRow::dJ2), s("dBp", &SweepRow::dBp),
        s("dBm", &SweepRow::dBm), s("dC", &SweepRow::dC)});
  plot("fig8b.svg", "Block-resolved pieces of dC and dJ0", "entropy (nats)",
       {s("dC0", &SweepRow::dC0), s("dC1", &SweepRow::dC1),
        s("dJ0_0", &SweepRow::dJ0_0), s("dJ0_1", &SweepRow::dJ0_1)});
  return written;
}

}  // namespace qet
