#include "banditlab/svg.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace banditlab {

SvgWriter::SvgWriter(double width, double height)
    : width_(width), height_(height) {}

std::string SvgWriter::num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

std::string SvgWriter::escape(const std::string& raw) {
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
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

void SvgWriter::open_group(const std::string& attrs) {
    body_ << "<g" << (attrs.empty() ? "" : " " + attrs) << ">\n";
    ++open_groups_;
}

void SvgWriter::close_group() {
    if (open_groups_ <= 0) throw std::logic_error("no group to close");
    body_ << "</g>\n";
    --open_groups_;
}

void SvgWriter::line(double x1, double y1, double x2, double y2,
                     const std::string& style) {
    body_ << "<line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\""
          << num(x2) << "\" y2=\"" << num(y2) << "\" style=\"" << style
          << "\"/>\n";
}

void SvgWriter::polyline(const std::vector<std::pair<double, double>>& pts,
                         const std::string& style) {
    body_ << "<polyline fill=\"none\" points=\"";
    for (const auto& [x, y] : pts) body_ << num(x) << "," << num(y) << " ";
    body_ << "\" style=\"" << style << "\"/>\n";
}

void SvgWriter::polygon(const std::vector<std::pair<double, double>>& pts,
                        const std::string& style) {
    body_ << "<polygon points=\"";
    for (const auto& [x, y] : pts) body_ << num(x) << "," << num(y) << " ";
    body_ << "\" style=\"" << style << "\"/>\n";
}

void SvgWriter::circle(double cx, double cy, double r, const std::string& style) {
    body_ << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\""
          << num(r) << "\" style=\"" << style << "\"/>\n";
}

void SvgWriter::text(double x, double y, const std::string& content,
                     const std::string& style) {
    body_ << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\"";
    if (!style.empty()) body_ << " style=\"" << style << "\"";
    body_ << ">" << escape(content) << "</text>\n";
}

void SvgWriter::rect(double x, double y, double w, double h,
                     const std::string& style) {
    body_ << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\""
          << num(w) << "\" height=\"" << num(h) << "\" style=\"" << style
          << "\"/>\n";
}

std::string SvgWriter::str() const {
    if (open_groups_ != 0) throw std::logic_error("unclosed svg group");
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width_)
        << "\" height=\"" << num(height_) << "\" viewBox=\"0 0 " << num(width_)
        << " " << num(height_) << "\">\n"
        << body_.str() << "</svg>\n";
    return out.str();
}

void SvgWriter::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << str();
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace banditlab
