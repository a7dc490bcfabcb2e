/*
 * Copyright 2026 The eeval Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <algorithm>
#include <cstdio>
#include <string>

#include "cli.hpp"

namespace eeval::cli {
namespace {

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  double lo, hi;
  double pixel_lo, pixel_hi;
  double operator()(double v) const { return pixel_lo + (v - lo) / (hi - lo) * (pixel_hi - pixel_lo); }
};

Axis make_axis(const std::vector<double>& v, double pixel_lo, double pixel_hi) {
  double lo = *std::min_element(v.begin(), v.end());
  double hi = *std::max_element(v.begin(), v.end());
  const double pad = hi > lo ? 0.08 * (hi - lo) : 1.0;
  return {lo - pad, hi + pad, pixel_lo, pixel_hi};
}

}  // namespace

std::string scatter_svg(const std::string& title, const std::string& x_label, const std::string& y_label,
                        const std::vector<std::string>& labels, const std::vector<double>& x,
                        const std::vector<double>& y, double r, double rho) {
  constexpr double W = 640, H = 480, L = 70, R = 30, T = 50, B = 60;
  const Axis ax = make_axis(x, L, W - R);
  const Axis ay = make_axis(y, H - B, T);

  // Least-squares line y = a + b x.
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  const double b = sxx > 0 ? sxy / sxx : 0.0;
  const double a = my - b * mx;

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" viewBox=\"0 0 640 480\">\n";
  s += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  s += "<text x=\"320\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" + escape(title) +
       "</text>\n";
  s += "<line x1=\"" + fmt("%.2f", L) + "\" y1=\"" + fmt("%.2f", H - B) + "\" x2=\"" + fmt("%.2f", W - R) + "\" y2=\"" +
       fmt("%.2f", H - B) + "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + fmt("%.2f", L) + "\" y1=\"" + fmt("%.2f", T) + "\" x2=\"" + fmt("%.2f", L) + "\" y2=\"" +
       fmt("%.2f", H - B) + "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = ax.lo + (ax.hi - ax.lo) * k / 4.0;
    const double yv = ay.lo + (ay.hi - ay.lo) * k / 4.0;
    s += "<text x=\"" + fmt("%.2f", ax(xv)) + "\" y=\"" + fmt("%.2f", H - B + 18) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + fmt("%.2f", xv) + "</text>\n";
    s += "<text x=\"" + fmt("%.2f", L - 6) + "\" y=\"" + fmt("%.2f", ay(yv) + 4) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + fmt("%.2f", yv) + "</text>\n";
  }
  s += "<text x=\"" + fmt("%.2f", (L + W - R) / 2) + "\" y=\"" + fmt("%.2f", H - 18) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" + escape(x_label) + "</text>\n";
  s += "<text x=\"18\" y=\"" + fmt("%.2f", (T + H - B) / 2) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" " +
       "font-size=\"13\" transform=\"rotate(-90 18 " + fmt("%.2f", (T + H - B) / 2) + ")\">" + escape(y_label) +
       "</text>\n";
  s += "<line x1=\"" + fmt("%.2f", ax(ax.lo)) + "\" y1=\"" + fmt("%.2f", ay(a + b * ax.lo)) + "\" x2=\"" +
       fmt("%.2f", ax(ax.hi)) + "\" y2=\"" + fmt("%.2f", ay(a + b * ax.hi)) +
       "\" stroke=\"#c0392b\" stroke-width=\"1.5\"/>\n";
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += "<circle cx=\"" + fmt("%.2f", ax(x[i])) + "\" cy=\"" + fmt("%.2f", ay(y[i])) +
         "\" r=\"4\" fill=\"#2c3e50\"/>\n";
    s += "<text x=\"" + fmt("%.2f", ax(x[i]) + 6) + "\" y=\"" + fmt("%.2f", ay(y[i]) - 6) +
         "\" font-family=\"sans-serif\" font-size=\"10\">" + escape(labels[i]) + "</text>\n";
  }
  s += "<text x=\"" + fmt("%.2f", L + 10) + "\" y=\"" + fmt("%.2f", T + 16) +
       "\" font-family=\"sans-serif\" font-size=\"13\">r = " + fmt("%.3f", r) + ", ρ = " + fmt("%.3f", rho) +
       "</text>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace eeval::cli
