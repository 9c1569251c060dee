#pragma once

#include <sstream>
#include <string>
#include <vector>

// Small SVG builder for the report plots. Only what the harness needs:
// polylines, filled bands, circles, text and straight lines, with numeric
// formatting that is stable across runs.

namespace banditlab {

class SvgWriter {
public:
    SvgWriter(double width, double height);

    void open_group(const std::string& attrs = "");
    void close_group();
    void line(double x1, double y1, double x2, double y2,
              const std::string& style);
    void polyline(const std::vector<std::pair<double, double>>& pts,
                  const std::string& style);
    void polygon(const std::vector<std::pair<double, double>>& pts,
                 const std::string& style);
    void circle(double cx, double cy, double r, const std::string& style);
    void text(double x, double y, const std::string& content,
              const std::string& style = "");
    void rect(double x, double y, double w, double h, const std::string& style);

    std::string str() const;
    void save(const std::string& path) const;

    static std::string escape(const std::string& raw);

private:
    static std::string num(double v);
    double width_, height_;
    std::ostringstream body_;
    int open_groups_ = 0;
};

}  // namespace banditlab
