#include "graphon/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "graphon/io.hpp"

namespace graphon::plot {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kMargin = 48.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

const report::Json* find_series(const report::Json& node, const std::string& key) {
  if (node.is_object()) {
    auto it = node.find(key);
    if (it != node.end() && it->is_object()) return &*it;
    for (const auto& [k, child] : node.items())
      if (const auto* hit = find_series(child, key)) return hit;
  } else if (node.is_array()) {
    for (const auto& child : node)
      if (const auto* hit = find_series(child, key)) return hit;
  }
  return nullptr;
}

const report::Json& require_series(const report::Json& doc, PlotKind kind,
                                   std::initializer_list<const char*> fields) {
  const auto* s = find_series(doc, to_string(kind));
  if (!s) throw Error(ErrorCode::InvalidArgument, std::string("report has no ") + to_string(kind) +
                                                      " series");
  for (const char* f : fields) {
    if (!s->contains(f) || !(*s)[f].is_array()) {
      throw Error(ErrorCode::InvalidArgument,
                  std::string(to_string(kind)) + " series lacks array '" + f + "'");
    }
  }
  return *s;
}

class Canvas {
 public:
  Canvas(const std::string& title) {
    out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
         << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
         << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
         << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         << "font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
  }
  std::ostringstream& raw() { return out_; }
  void line(double x1, double y1, double x2, double y2, const std::string& cls,
            const std::string& style) {
    out_ << "<line class=\"" << cls << "\" x1=\"" << num(x1) << "\" y1=\"" << num(y1)
         << "\" x2=\"" << num(x2) << "\" y2=\"" << num(y2) << "\" " << style << "/>\n";
  }
  void rect(double x, double y, double w, double h, const std::string& cls,
            const std::string& style) {
    out_ << "<rect class=\"" << cls << "\" x=\"" << num(x) << "\" y=\"" << num(y)
         << "\" width=\"" << num(w) << "\" height=\"" << num(h) << "\" " << style << "/>\n";
  }
  void label(double x, double y, const std::string& text, const char* anchor = "middle") {
    out_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" text-anchor=\"" << anchor
         << "\" font-family=\"sans-serif\" font-size=\"10\">" << text << "</text>\n";
  }
  std::string finish() {
    out_ << "</svg>\n";
    return out_.str();
  }

 private:
  std::ostringstream out_;
};

// Maps [lo, hi] onto the vertical plot area.
struct YAxis {
  double lo, hi;
  double operator()(double v) const {
    return kHeight - kMargin - (v - lo) / (hi - lo) * (kHeight - 2 * kMargin);
  }
};

YAxis padded_axis(double lo, double hi) {
  lo = std::min(lo, 0.0);
  hi = std::max(hi, 0.0);
  if (hi - lo < 1e-12) hi = lo + 1.0;
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

void y_ticks(Canvas& c, const YAxis& y) {
  for (int t = 0; t <= 4; ++t) {
    const double v = y.lo + (y.hi - y.lo) * t / 4.0;
    c.label(kMargin - 6, y(v) + 3, num(v), "end");
  }
}

std::string render_spectrum(const report::Json& s) {
  const auto& eig = s["eigenvalues"];
  std::vector<int> shown;
  std::vector<bool> zero(eig.size(), false);
  if (s.contains("clusters")) {
    for (const auto& c : s["clusters"]) {
      if (c.value("zero", false))
        for (int i = c["begin"].get<int>(); i < c["end"].get<int>(); ++i) zero[i] = true;
    }
  }
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < eig.size(); ++i) {
    if (zero[i]) continue;
    shown.push_back(static_cast<int>(i));
    lo = std::min(lo, eig[i].get<double>());
    hi = std::max(hi, eig[i].get<double>());
  }
  const YAxis y = padded_axis(lo, hi);
  const int count = std::max<int>(1, static_cast<int>(shown.size()));
  const double step = (kWidth - 2 * kMargin) / count;
  auto x_of = [&](int slot) { return kMargin + (slot + 0.5) * step; };

  Canvas c("spectrum");
  // Cluster shading over the displayed slots.
  if (s.contains("clusters")) {
    int slot = 0, shade = 0;
    for (const auto& cl : s["clusters"]) {
      if (cl.value("zero", false)) continue;
      const int dim = cl["end"].get<int>() - cl["begin"].get<int>();
      c.rect(kMargin + slot * step, kMargin, dim * step, kHeight - 2 * kMargin, "cluster",
             shade++ % 2 ? "fill=\"#dde8f5\"" : "fill=\"#eef3fa\"");
      slot += dim;
    }
  }
  c.line(kMargin, y(0), kWidth - kMargin, y(0), "axis", "stroke=\"black\"");
  y_ticks(c, y);
  for (std::size_t slot = 0; slot < shown.size(); ++slot) {
    const double v = eig[shown[slot]].get<double>();
    c.line(x_of(slot), y(0), x_of(slot), y(v), "stem", "stroke=\"#1f4e9c\" stroke-width=\"1.5\"");
    c.raw() << "<circle class=\"head\" cx=\"" << num(x_of(slot)) << "\" cy=\"" << num(y(v))
            << "\" r=\"3\" fill=\"#1f4e9c\"/>\n";
  }
  return c.finish();
}

std::string color_for(double v, double scale) {
  const double t = scale > 0 ? std::clamp(v / scale, -1.0, 1.0) : 0.0;
  const int fade = static_cast<int>(std::lround(255 * (1.0 - std::abs(t))));
  char buf[16];
  if (t >= 0)
    std::snprintf(buf, sizeof buf, "#ff%02x%02x", fade, fade);
  else
    std::snprintf(buf, sizeof buf, "#%02x%02xff", fade, fade);
  return buf;
}

std::string render_partition(const report::Json& s) {
  const auto& block = s["block"];
  const auto& weights = s["part_weights"];
  const std::size_t parts = block.size();
  if (weights.size() != parts) throw Error(ErrorCode::InvalidArgument, "partition size mismatch");
  double scale = 0.0;
  for (const auto& row : block)
    for (const auto& v : row) scale = std::max(scale, std::abs(v.get<double>()));
  const double side = std::min(kWidth, kHeight) - 2 * kMargin;
  const double x0 = (kWidth - side) / 2, y0 = kMargin;
  Canvas c("partition");
  double py = y0;
  for (std::size_t p = 0; p < parts; ++p) {
    const double hp = weights[p].get<double>() * side;
    double px = x0;
    for (std::size_t q = 0; q < parts; ++q) {
      const double wq = weights[q].get<double>() * side;
      c.rect(px, py, wq, hp, "cell",
             "fill=\"" + color_for(block[p][q].get<double>(), scale) +
                 "\" stroke=\"#444\" stroke-width=\"0.5\"");
      px += wq;
    }
    py += hp;
  }
  c.label(kWidth / 2, kHeight - kMargin / 2, "max |value| " + num(scale));
  return c.finish();
}

std::string render_trajectory(const report::Json& s) {
  const auto& ns = s["N"];
  const auto& eig = s["eigenvalues"];
  if (ns.size() != eig.size() || ns.empty()) {
    throw Error(ErrorCode::InvalidArgument, "trajectory needs one eigenvalue row per N");
  }
  std::size_t tracks = eig[0].size();
  double lo = 0.0, hi = 0.0, nmin = ns[0].get<double>(), nmax = nmin;
  for (std::size_t t = 0; t < ns.size(); ++t) {
    tracks = std::min(tracks, eig[t].size());
    nmin = std::min(nmin, ns[t].get<double>());
    nmax = std::max(nmax, ns[t].get<double>());
    for (const auto& v : eig[t]) {
      lo = std::min(lo, v.get<double>());
      hi = std::max(hi, v.get<double>());
    }
  }
  if (s.contains("reference"))
    for (const auto& v : s["reference"]) {
      lo = std::min(lo, v.get<double>());
      hi = std::max(hi, v.get<double>());
    }
  const YAxis y = padded_axis(lo, hi);
  const bool logx = nmin > 0 && nmax > nmin;
  auto x_of = [&](double n) {
    const double u = logx ? (std::log(n) - std::log(nmin)) / (std::log(nmax) - std::log(nmin)) : 0.5;
    return kMargin + u * (kWidth - 2 * kMargin);
  };
  Canvas c("eigenvalue trajectories");
  c.line(kMargin, y(0), kWidth - kMargin, y(0), "axis", "stroke=\"black\"");
  y_ticks(c, y);
  if (s.contains("reference")) {
    for (const auto& v : s["reference"])
      c.line(kMargin, y(v.get<double>()), kWidth - kMargin, y(v.get<double>()), "reference",
             "stroke=\"#999\" stroke-dasharray=\"4 3\"");
  }
  for (std::size_t r = 0; r < tracks; ++r) {
    c.raw() << "<polyline class=\"track\" fill=\"none\" stroke=\"#b8372b\" points=\"";
    for (std::size_t t = 0; t < ns.size(); ++t) {
      c.raw() << (t ? " " : "") << num(x_of(ns[t].get<double>())) << ','
              << num(y(eig[t][r].get<double>()));
    }
    c.raw() << "\"/>\n";
  }
  for (const auto& n : ns) c.label(x_of(n.get<double>()), kHeight - kMargin + 14, n.dump());
  return c.finish();
}

}  // namespace

PlotKind parse_plot_kind(const std::string& name) {
  if (name == "spectrum") return PlotKind::Spectrum;
  if (name == "partition") return PlotKind::Partition;
  if (name == "trajectory") return PlotKind::Trajectory;
  throw Error(ErrorCode::InvalidArgument, "unknown plot kind '" + name + "'");
}

const char* to_string(PlotKind kind) {
  switch (kind) {
    case PlotKind::Spectrum: return "spectrum";
    case PlotKind::Partition: return "partition";
    case PlotKind::Trajectory: return "trajectory";
  }
  return "?";
}

std::string render_svg(const report::Json& doc, PlotKind kind) {
  switch (kind) {
    case PlotKind::Spectrum:
      return render_spectrum(require_series(doc, kind, {"eigenvalues"}));
    case PlotKind::Partition:
      return render_partition(require_series(doc, kind, {"block", "part_weights"}));
    case PlotKind::Trajectory:
      return render_trajectory(require_series(doc, kind, {"N", "eigenvalues"}));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown plot kind");
}

void emit_plot(const report::Json& doc, PlotKind kind, const std::filesystem::path& path) {
  io::write_file_atomic(path, render_svg(doc, kind));
}

}  // namespace graphon::plot
