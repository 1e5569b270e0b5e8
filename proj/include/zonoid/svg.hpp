#pragma once

#include <string>
#include <utility>
#include <vector>

namespace zonoid::svg {

/** Minimal hand-rolled vector output: axes, labeled polylines, and vertical
    arrows marking point masses. Data coordinates are mapped into a fixed
    viewport with equal margins; no plotting dependency. */
class Canvas {
public:
    Canvas(double x_min, double x_max, double y_min, double y_max, int width = 640,
           int height = 480);

    void polyline(const std::vector<std::pair<double, double>>& points,
                  const std::string& color, const std::string& label = "");
    void arrow(double x, double y_top, const std::string& color,
               const std::string& label = "");
    std::string str() const;

private:
    double px(double x) const;
    double py(double y) const;

    double x_min_, x_max_, y_min_, y_max_;
    int width_, height_;
    std::string body_;
    int label_row_ = 0;
};

}  // namespace zonoid::svg
