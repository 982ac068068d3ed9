#include "sqkd/report.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace sqkd {

std::string format_double(double value) {
  if (value == 0.0) value = 0.0;  // fold -0
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 9);
  return std::string(buf.data(), res.ptr);
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows, bool header) {
  if (header) out << kSweepHeader << '\n';
  for (const auto& row : rows) {
    out << row.dim << ',' << row.n_mubs << ',' << to_string(row.scenario) << ',' << to_string(row.convention)
        << ',' << format_double(row.q) << ',' << format_double(row.r) << ',' << format_double(row.t.t1) << ','
        << format_double(row.t.t2) << ',' << format_double(row.t.t3) << ',' << format_double(row.t.t4) << ','
        << format_double(row.lambda1) << ',' << row.warnings << '\n';
  }
}

void write_threshold_csv(std::ostream& out, std::span<const ThresholdResult> results) {
  out << kThresholdHeader << '\n';
  for (const auto& res : results) {
    const auto& c = res.config;
    out << c.dim << ',' << c.n_mubs << ',' << to_string(c.scenario) << ',' << to_string(c.convention) << ','
        << format_double(res.q_star) << ',';
    if (auto ref = reference_threshold(c.dim, c.n_mubs, c.scenario)) {
      out << format_double(*ref) << ',' << format_double(std::abs(res.q_star - *ref));
    } else {
      out << ',';
    }
    out << '\n';
  }
}

void write_breakdown(std::ostream& out, const KeyRateBreakdown& b) {
  out << "d=" << b.model.dim << " n_mubs=" << b.n_mubs << " scenario=" << to_string(b.model.scenario)
      << " convention=" << to_string(b.model.convention) << " Q=" << format_double(b.model.q) << '\n';
  out << "t1=" << format_double(b.t.t1) << " t2=" << format_double(b.t.t2) << " t3=" << format_double(b.t.t3)
      << " t4=" << format_double(b.t.t4) << '\n';
  out << "overlap_bound=" << format_double(b.overlap.x_or_w) << " S=" << format_double(b.overlap.s)
      << " p_eig=" << format_double(b.overlap.p_eig) << '\n';
  out << "lambda1=" << format_double(b.lambda1) << " lambda2=" << format_double(b.lambda2) << '\n';
  out << "S(BEC)=" << format_double(b.s_bec) << " S(EC)_upper=" << format_double(b.s_ec_upper)
      << " H(B|A)=" << format_double(b.h_b_given_a) << '\n';
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", b.r);
  out << "r = " << buf << '\n';
  for (const auto& w : b.warnings) out << "warning: " << w << '\n';
}

void write_svg(std::ostream& out, std::span<const Curve> curves, const std::string& title) {
  constexpr double kWidth = 640, kHeight = 420, kLeft = 60, kRight = 150, kTop = 40, kBottom = 50;
  constexpr std::array<const char*, 6> kColors = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                                  "#000000"};
  double q_max = 0.0, r_min = 0.0, r_max = 0.0;
  for (const auto& curve : curves) {
    for (const auto& row : curve.rows) {
      q_max = std::max(q_max, row.q);
      r_min = std::min(r_min, row.r);
      r_max = std::max(r_max, row.r);
    }
  }
  if (q_max <= 0.0) q_max = 1.0;
  if (r_max <= r_min) r_max = r_min + 1.0;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto x_of = [&](double q) { return kLeft + q / q_max * plot_w; };
  auto y_of = [&](double r) { return kTop + (r_max - r) / (r_max - r_min) * plot_h; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kLeft << "\" y=\"24\" font-size=\"14\">" << title << "</text>\n";
  // axes
  out << "<line x1=\"" << kLeft << "\" y1=\"" << y_of(0.0) << "\" x2=\"" << kLeft + plot_w << "\" y2=\""
      << y_of(0.0) << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\"" << kTop + plot_h
      << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 12 << "\" font-size=\"12\">Q (max "
      << format_double(q_max) << ")</text>\n";
  out << "<text x=\"8\" y=\"" << kTop + plot_h / 2 << "\" font-size=\"12\">r</text>\n";
  out << "<text x=\"" << kLeft - 8 << "\" y=\"" << y_of(r_max) + 4 << "\" font-size=\"10\" text-anchor=\"end\">"
      << format_double(r_max) << "</text>\n";
  out << "<text x=\"" << kLeft - 8 << "\" y=\"" << y_of(r_min) + 4 << "\" font-size=\"10\" text-anchor=\"end\">"
      << format_double(r_min) << "</text>\n";

  for (std::size_t k = 0; k < curves.size(); ++k) {
    const char* color = kColors[k % kColors.size()];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& row : curves[k].rows) out << format_double(x_of(row.q)) << ',' << format_double(y_of(row.r)) << ' ';
    out << "\"/>\n";
    const double ly = kTop + 16.0 * static_cast<double>(k);
    out << "<line x1=\"" << kWidth - kRight + 10 << "\" y1=\"" << ly << "\" x2=\"" << kWidth - kRight + 30
        << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kWidth - kRight + 35 << "\" y=\"" << ly + 4 << "\" font-size=\"11\">"
        << curves[k].label << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace sqkd
