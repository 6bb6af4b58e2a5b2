#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "bernlab/experiments.hpp"

namespace bernlab {

// Minimal log-log scatter plot with an optional fitted-model overlay.
// Deterministic text output; no drawing dependency.
inline std::string loglog_svg(const std::string& title,
                              const std::vector<std::pair<double, double>>& pts,
                              const GrowthFit* fit) {
  const int W = 640, H = 480, ML = 64, MR = 16, MT = 40, MB = 48;
  std::string out;
  char buf[256];
  auto put = [&](const char* fmt, auto... args) {
    std::snprintf(buf, sizeof(buf), fmt, args...);
    out += buf;
  };

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& [x, y] : pts) {
    if (!(x > 0.0 && y > 0.0)) continue;
    xmin = std::min(xmin, std::log10(x));
    xmax = std::max(xmax, std::log10(x));
    ymin = std::min(ymin, std::log10(y));
    ymax = std::max(ymax, std::log10(y));
  }
  if (xmax <= xmin) xmax = xmin + 1.0;
  if (ymax <= ymin + 1e-3) ymax = ymin + 1.0;
  const double padx = 0.05 * (xmax - xmin), pady = 0.08 * (ymax - ymin);
  xmin -= padx;
  xmax += padx;
  ymin -= pady;
  ymax += pady;
  auto sx = [&](double lx) { return ML + (lx - xmin) / (xmax - xmin) * (W - ML - MR); };
  auto sy = [&](double ly) { return H - MB - (ly - ymin) / (ymax - ymin) * (H - MT - MB); };

  put("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
      "viewBox=\"0 0 %d %d\">\n",
      W, H, W, H);
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  put("<text x=\"%d\" y=\"24\" font-family=\"monospace\" font-size=\"14\">%s</text>\n", ML,
      title.c_str());
  put("<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" fill=\"none\" stroke=\"#444\"/>\n", ML,
      MT, W - ML - MR, H - MT - MB);

  for (int d = static_cast<int>(std::ceil(xmin)); d <= static_cast<int>(std::floor(xmax)); ++d) {
    put("<line x1=\"%.1f\" y1=\"%d\" x2=\"%.1f\" y2=\"%d\" stroke=\"#ccc\"/>\n", sx(d), MT, sx(d),
        H - MB);
    put("<text x=\"%.1f\" y=\"%d\" font-family=\"monospace\" font-size=\"11\" "
        "text-anchor=\"middle\">1e%d</text>\n",
        sx(d), H - MB + 16, d);
  }
  for (int d = static_cast<int>(std::ceil(ymin)); d <= static_cast<int>(std::floor(ymax)); ++d) {
    put("<line x1=\"%d\" y1=\"%.1f\" x2=\"%d\" y2=\"%.1f\" stroke=\"#ccc\"/>\n", ML, sy(d),
        W - MR, sy(d));
    put("<text x=\"%d\" y=\"%.1f\" font-family=\"monospace\" font-size=\"11\" "
        "text-anchor=\"end\">1e%d</text>\n",
        ML - 6, sy(d) + 4, d);
  }

  if (fit) {
    out += "<path d=\"";
    for (int i = 0; i <= 64; ++i) {
      const double lx = xmin + (xmax - xmin) * i / 64.0;
      const double n = std::pow(10.0, lx);
      if (!(n > 1.0)) continue;
      const double y = fit->c * std::pow(n, fit->beta) * std::pow(std::log(n), fit->gamma);
      if (!(y > 0.0) || !std::isfinite(y)) continue;
      put("%c%.1f %.1f ", out.back() == '\"' ? 'M' : 'L', sx(lx),
          std::clamp(sy(std::log10(y)), 0.0, static_cast<double>(H)));
    }
    out += "\" fill=\"none\" stroke=\"#c33\" stroke-width=\"1.5\"/>\n";
  }
  for (const auto& [x, y] : pts) {
    if (!(x > 0.0 && y > 0.0)) continue;
    put("<circle cx=\"%.1f\" cy=\"%.1f\" r=\"3.5\" fill=\"#2266aa\"/>\n", sx(std::log10(x)),
        sy(std::log10(y)));
  }
  out += "</svg>\n";
  return out;
}

}  // namespace bernlab
