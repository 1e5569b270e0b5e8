#include "zonoid/svg.hpp"

#include <sstream>

namespace zonoid::svg {

namespace {
constexpr double kMargin = 48.0;
}

Canvas::Canvas(double x_min, double x_max, double y_min, double y_max, int width, int height)
    : x_min_(x_min), x_max_(x_max), y_min_(y_min), y_max_(y_max), width_(width), height_(height) {}

double Canvas::px(double x) const {
    return kMargin + (x - x_min_) / (x_max_ - x_min_) * (width_ - 2 * kMargin);
}

double Canvas::py(double y) const {
    return height_ - kMargin - (y - y_min_) / (y_max_ - y_min_) * (height_ - 2 * kMargin);
}

void Canvas::polyline(const std::vector<std::pair<double, double>>& points,
                      const std::string& color, const std::string& label) {
    std::ostringstream s;
    s.precision(6);
    s << "  <polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : points) s << px(x) << ',' << py(y) << ' ';
    s << "\"/>\n";
    if (!label.empty()) {
        s << "  <text x=\"" << (width_ - kMargin - 150) << "\" y=\""
          << (kMargin + 16 * label_row_++) << "\" fill=\"" << color
          << "\" font-size=\"12\" font-family=\"sans-serif\">" << label << "</text>\n";
    }
    body_ += s.str();
}

void Canvas::arrow(double x, double y_top, const std::string& color, const std::string& label) {
    std::ostringstream s;
    s.precision(6);
    const double x0 = px(x), y0 = py(0.0), y1 = py(y_top);
    s << "  <line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 << "\" y2=\"" << y1
      << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    s << "  <path d=\"M" << (x0 - 4) << ' ' << (y1 + 8) << " L" << x0 << ' ' << y1 << " L"
      << (x0 + 4) << ' ' << (y1 + 8) << " Z\" fill=\"" << color << "\"/>\n";
    if (!label.empty())
        s << "  <text x=\"" << (x0 + 6) << "\" y=\"" << (y1 + 4) << "\" fill=\"" << color
          << "\" font-size=\"11\" font-family=\"sans-serif\">" << label << "</text>\n";
    body_ += s.str();
}

std::string Canvas::str() const {
    std::ostringstream s;
    s.precision(6);
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\""
      << height_ << "\" viewBox=\"0 0 " << width_ << ' ' << height_ << "\">\n";
    s << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // axes through the data origin when visible, else along the frame
    const double ax = (x_min_ <= 0.0 && 0.0 <= x_max_) ? px(0.0) : kMargin;
    const double ay = (y_min_ <= 0.0 && 0.0 <= y_max_) ? py(0.0) : height_ - kMargin;
    s << "  <line x1=\"" << kMargin << "\" y1=\"" << ay << "\" x2=\"" << (width_ - kMargin)
      << "\" y2=\"" << ay << "\" stroke=\"#888\" stroke-width=\"1\"/>\n";
    s << "  <line x1=\"" << ax << "\" y1=\"" << kMargin << "\" x2=\"" << ax << "\" y2=\""
      << (height_ - kMargin) << "\" stroke=\"#888\" stroke-width=\"1\"/>\n";
    s << body_;
    s << "</svg>\n";
    return s.str();
}

}  // namespace zonoid::svg
