#include "revolt/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string_view>
#include <vector>

namespace revolt {
namespace {

constexpr int kCell = 10;
constexpr int kLeft = 70;
constexpr int kTop = 40;
constexpr int kBottom = 50;
constexpr int kLegend = 160;

std::string label_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string_view outcome_color(CellTag tag) {
  switch (tag) {
    case CellTag::BlueVictory:
      return "#2f62c8";
    case CellTag::RedVictory:
      return "#d0352b";
    case CellTag::Stalemate:
      return "#9b9b9b";
    case CellTag::Marginal:
      return "#f0b429";
    case CellTag::Excluded:
      return "#ffffff";
    default:
      return "#000000";
  }
}

std::string_view basin_color(BasinTag tag) {
  switch (tag) {
    case BasinTag::BlueVictory:
      return "#2f62c8";
    case BasinTag::RedVictory:
      return "#d0352b";
    case BasinTag::Saddle:
      return "#f0b429";
    case BasinTag::Inconclusive:
      return "#000000";
    default:
      return "#ffffff";
  }
}

// Linear blend from red (0) to blue (1); white for NaN.
std::string surface_color(double fraction) {
  if (std::isnan(fraction)) return "#ffffff";
  const double u = std::clamp(fraction, 0.0, 1.0);
  auto mix = [u](int red_end, int blue_end) {
    return static_cast<int>(std::lround(red_end + u * (blue_end - red_end)));
  };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", mix(0xd0, 0x2f), mix(0x35, 0x62), mix(0x2b, 0xc8));
  return buf;
}

struct Frame {
  std::size_t cols, rows;
  std::string title, x_label, y_label;
  double x_min, x_max, y_min, y_max;
};

class SvgWriter {
 public:
  SvgWriter(std::ostream& out, const Frame& f) : out_(out), f_(f) {
    const int w = kLeft + static_cast<int>(f.cols) * kCell + kLegend;
    const int h = kTop + static_cast<int>(f.rows) * kCell + kBottom;
    out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w
         << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n"
         << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h
         << "\" fill=\"#ffffff\"/>\n"
         << "<text x=\"" << kLeft << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\">"
         << f.title << "</text>\n"
         << "<g shape-rendering=\"crispEdges\">\n";
  }

  // Cell (i, j) with j = 0 at the bottom.
  void cell(std::size_t i, std::size_t j, std::string_view color) {
    out_ << "<rect x=\"" << px(i) << "\" y=\"" << py(j) << "\" width=\"" << kCell
         << "\" height=\"" << kCell << "\" fill=\"" << color << "\"/>\n";
  }

  void dot(double x, double y, std::string_view color) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"1.6\" fill=\"%s\"/>\n", x, y,
                  std::string(color).c_str());
    out_ << buf;
  }

  // Maps a data coordinate onto the plot area.
  double map_x(double x) const {
    return kLeft + (x - f_.x_min) / (f_.x_max - f_.x_min) * static_cast<double>(f_.cols * kCell);
  }
  double map_y(double y) const {
    return kTop + (1.0 - (y - f_.y_min) / (f_.y_max - f_.y_min)) *
                      static_cast<double>(f_.rows * kCell);
  }

  void end_cells() { out_ << "</g>\n"; }

  void legend(const std::vector<std::pair<std::string, std::string>>& entries) {
    const int x = kLeft + static_cast<int>(f_.cols) * kCell + 16;
    int y = kTop;
    for (const auto& [color, text] : entries) {
      out_ << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"12\" height=\"12\" fill=\""
           << color << "\" stroke=\"#333333\" stroke-width=\"0.5\"/>\n"
           << "<text x=\"" << x + 18 << "\" y=\"" << y + 10
           << "\" font-family=\"sans-serif\" font-size=\"11\">" << text << "</text>\n";
      y += 18;
    }
  }

  void finish() {
    const int x0 = kLeft, y0 = kTop;
    const int w = static_cast<int>(f_.cols) * kCell, h = static_cast<int>(f_.rows) * kCell;
    out_ << "<rect x=\"" << x0 << "\" y=\"" << y0 << "\" width=\"" << w << "\" height=\"" << h
         << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    auto text = [&](int x, int y, std::string_view anchor, const std::string& s) {
      out_ << "<text x=\"" << x << "\" y=\"" << y << "\" text-anchor=\"" << anchor
           << "\" font-family=\"sans-serif\" font-size=\"11\">" << s << "</text>\n";
    };
    text(x0, y0 + h + 14, "start", label_number(f_.x_min));
    text(x0 + w, y0 + h + 14, "end", label_number(f_.x_max));
    text(x0 + w / 2, y0 + h + 32, "middle", f_.x_label);
    text(x0 - 6, y0 + h, "end", label_number(f_.y_min));
    text(x0 - 6, y0 + 10, "end", label_number(f_.y_max));
    text(x0 - 6, y0 + h / 2, "end", f_.y_label);
    out_ << "</svg>\n";
  }

 private:
  int px(std::size_t i) const { return kLeft + static_cast<int>(i) * kCell; }
  int py(std::size_t j) const { return kTop + static_cast<int>(f_.rows - 1 - j) * kCell; }

  std::ostream& out_;
  Frame f_;
};

std::string axis_comment(std::string_view x, std::string_view y) {
  return "# axis1=" + std::string(x) + " axis2=" + std::string(y) + "\n";
}

Frame grid_frame(const SweepGrid& grid, std::string title) {
  return {grid.x.count,
          grid.y.count,
          std::move(title),
          std::string(parameter_name(grid.x.parameter)),
          std::string(parameter_name(grid.y.parameter)),
          grid.x.min,
          grid.x.max,
          grid.y.min,
          grid.y.max};
}

std::pair<std::string_view, std::string_view> basin_axes(const BasinSlice& slice) {
  switch (slice.fixed) {
    case BasinCoordinate::S0:
      return {"SB0", "CR0"};
    case BasinCoordinate::SB0:
      return {"CR0", "S0"};
    default:
      return {"SB0", "S0"};
  }
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  const bool with_s = traj.dimension == 3;
  out << "t,SB,SR,CR,CB" << (with_s ? ",S" : "") << '\n';
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const BasicState& st = traj.states[k];
    out << format_number(traj.times[k]) << ',' << format_number(st.sb()) << ','
        << format_number(st.sr()) << ',' << format_number(st.cr()) << ','
        << format_number(st.cb());
    if (with_s) out << ',' << format_number(traj.coords[k][2]);
    out << '\n';
  }
  if (traj.converged()) {
    out << "# terminal: converged_to_equilibrium " << traj.terminal.equilibrium << '\n';
  } else {
    out << "# terminal: horizon_reached\n";
  }
}

void write_grid_csv(std::ostream& out, const SweepGrid& grid) {
  const auto xs = grid.x.values();
  const auto ys = grid.y.values();
  out << "axis1,axis2,outcome_tag,blue_fraction\n";
  for (std::size_t j = 0; j < ys.size(); ++j) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const SweepCell& c = grid.at(i, j);
      out << format_number(xs[i]) << ',' << format_number(ys[j]) << ',' << cell_tag_name(c.tag)
          << ',' << format_number(c.blue_fraction) << '\n';
    }
  }
  out << axis_comment(parameter_name(grid.x.parameter), parameter_name(grid.y.parameter));
}

void write_basin_csv(std::ostream& out, const BasinMap& map) {
  out << "axis1,axis2,attractor\n";
  for (std::size_t j = 0; j < map.y_values.size(); ++j) {
    for (std::size_t i = 0; i < map.x_values.size(); ++i) {
      out << format_number(map.x_values[i]) << ',' << format_number(map.y_values[j]) << ','
          << basin_tag_name(map.at(i, j)) << '\n';
    }
  }
  const auto [x, y] = basin_axes(map.slice);
  out << axis_comment(x, y) << "# fixed " << basin_coordinate_name(map.slice.fixed) << '='
      << format_number(map.slice.fixed_value) << '\n';
}

void write_separatrix_csv(std::ostream& out, const BasinMap& map) {
  out << "SB0,CR0,S0,bracket_width,row\n";
  for (const auto& s : map.separatrix) {
    out << format_number(s.point.sb) << ',' << format_number(s.point.cr) << ','
        << format_number(s.point.s) << ',' << format_number(s.bracket_width) << ',' << s.row
        << '\n';
  }
}

void write_outcome_svg(std::ostream& out, const SweepGrid& grid) {
  SvgWriter svg(out, grid_frame(grid, "Outcome map (" + std::string(variant_name(grid.base.variant)) +
                                          ")"));
  for (std::size_t j = 0; j < grid.y.count; ++j) {
    for (std::size_t i = 0; i < grid.x.count; ++i) svg.cell(i, j, outcome_color(grid.at(i, j).tag));
  }
  svg.end_cells();
  std::vector<std::pair<std::string, std::string>> legend;
  for (CellTag t : {CellTag::BlueVictory, CellTag::RedVictory, CellTag::Stalemate,
                    CellTag::Marginal, CellTag::Excluded, CellTag::Inconclusive}) {
    legend.emplace_back(std::string(outcome_color(t)), std::string(cell_tag_name(t)));
  }
  svg.legend(legend);
  svg.finish();
}

void write_surface_svg(std::ostream& out, const SweepGrid& grid) {
  SvgWriter svg(out, grid_frame(grid, "Blue-controlled fraction"));
  for (std::size_t j = 0; j < grid.y.count; ++j) {
    for (std::size_t i = 0; i < grid.x.count; ++i) {
      svg.cell(i, j, surface_color(grid.at(i, j).blue_fraction));
    }
  }
  svg.end_cells();
  svg.legend({{surface_color(1.0), "1"},
              {surface_color(0.5), "0.5"},
              {surface_color(0.0), "0"},
              {"#ffffff", "excluded"}});
  svg.finish();
}

void write_basin_svg(std::ostream& out, const BasinMap& map) {
  const auto [x_name, y_name] = basin_axes(map.slice);
  const std::size_t cols = map.slice.cols, rows = map.slice.rows;
  // Cell centers sit half a cell inside the sampled interval.
  const double dx = map.x_values[1] - map.x_values[0];
  const double dy = map.y_values[1] - map.y_values[0];
  const Frame frame{cols,
                    rows,
                    "Basins at fixed " + std::string(basin_coordinate_name(map.slice.fixed)) + " = " +
                        label_number(map.slice.fixed_value),
                    std::string(x_name),
                    std::string(y_name),
                    map.x_values.front() - 0.5 * dx,
                    map.x_values.back() + 0.5 * dx,
                    map.y_values.front() - 0.5 * dy,
                    map.y_values.back() + 0.5 * dy};
  SvgWriter svg(out, frame);
  for (std::size_t j = 0; j < rows; ++j) {
    for (std::size_t i = 0; i < cols; ++i) svg.cell(i, j, basin_color(map.at(i, j)));
  }
  svg.end_cells();
  for (const auto& s : map.separatrix) {
    double x = s.point.sb, y = s.point.cr;
    if (map.slice.fixed == BasinCoordinate::SB0) {
      x = s.point.cr;
      y = s.point.s;
    } else if (map.slice.fixed == BasinCoordinate::CR0) {
      y = s.point.s;
    }
    svg.dot(svg.map_x(x), svg.map_y(y), "#f0b429");
  }
  std::vector<std::pair<std::string, std::string>> legend;
  for (BasinTag t : {BasinTag::BlueVictory, BasinTag::RedVictory, BasinTag::Saddle,
                     BasinTag::Inconclusive, BasinTag::OutsideBox}) {
    legend.emplace_back(std::string(basin_color(t)), std::string(basin_tag_name(t)));
  }
  svg.legend(legend);
  svg.finish();
}

}  // namespace revolt
