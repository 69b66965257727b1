#include "catena/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace catena {

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string trajectory_csv(const std::vector<StringState>& states) {
    std::ostringstream out;
    out << "s,alpha,T,x,y\n";
    for (const StringState& st : states) {
        out << format_full(st.s) << ',' << format_full(st.alpha) << ','
            << format_full(st.tension) << ',' << format_full(st.x) << ','
            << format_full(st.y) << '\n';
    }
    return out.str();
}

std::string roots_csv(const CriticalSet& cs) {
    std::ostringstream out;
    out << "index,alpha_star,multiplicity\n";
    for (std::size_t i = 0; i < cs.roots.size(); ++i) {
        out << i << ',' << format_full(cs.roots[i]) << ','
            << (cs.multiplicity[i] == Multiplicity::Double ? 2 : 1) << '\n';
    }
    return out.str();
}

std::string bifurcation_csv(const std::vector<BifurcationPoint>& table) {
    std::ostringstream out;
    out << "ratio,root_index,alpha_star,multiplicity\n";
    for (const BifurcationPoint& bp : table) {
        for (std::size_t i = 0; i < bp.critical.roots.size(); ++i) {
            out << format_full(bp.ratio) << ',' << i << ','
                << format_full(bp.critical.roots[i]) << ','
                << (bp.critical.multiplicity[i] == Multiplicity::Double ? 2 : 1) << '\n';
        }
    }
    return out.str();
}

namespace {

void snapshot_rows(std::ostringstream& out, double ratio, const ChainState& state,
                   bool converged) {
    for (int i = 0; i < state.size(); ++i) {
        out << format_full(ratio) << ',' << i << ',' << format_full(state.positions[i].x)
            << ',' << format_full(state.positions[i].y) << ','
            << format_full(state.velocities[i].x) << ',' << format_full(state.velocities[i].y)
            << ',' << (converged ? 1 : 0) << '\n';
    }
}

}  // namespace

std::string sweep_csv(const SweepRecord& record) {
    std::ostringstream out;
    out << "ratio,bead_index,x,y,vx,vy,converged\n";
    for (const SweepSnapshot& snap : record.snapshots) {
        snapshot_rows(out, snap.ratio, snap.state, snap.converged);
    }
    return out.str();
}

std::string snapshot_csv(double ratio, const ChainState& state, bool converged) {
    std::ostringstream out;
    out << "ratio,bead_index,x,y,vx,vy,converged\n";
    snapshot_rows(out, ratio, state, converged);
    return out.str();
}

std::string polyline_csv(const std::vector<Vec2>& points) {
    std::ostringstream out;
    out << "x,y\n";
    for (const Vec2& p : points) {
        out << format_full(p.x) << ',' << format_full(p.y) << '\n';
    }
    return out.str();
}

const char* to_string(BvpStatus status) {
    switch (status) {
        case BvpStatus::Smooth: return "Smooth";
        case BvpStatus::SelfIntersecting: return "SelfIntersecting";
        case BvpStatus::NotFound: return "NotFound";
    }
    return "NotFound";
}

std::string bvp_status_json(const BvpSolution& solution) {
    std::ostringstream out;
    out << "{\"status\": \"" << to_string(solution.status) << "\", \"alpha0_init\": "
        << format_full(solution.unknowns.alpha0) << ", \"T0\": "
        << format_full(solution.unknowns.tension0) << ", \"residual\": "
        << format_full(solution.residual) << "}";
    return out.str();
}

namespace {

struct Box {
    double xlo = 0.0, xhi = 1.0, ylo = 0.0, yhi = 1.0;

    void grow(const Vec2& p) {
        xlo = std::min(xlo, p.x);
        xhi = std::max(xhi, p.x);
        ylo = std::min(ylo, p.y);
        yhi = std::max(yhi, p.y);
    }
};

Box bounds(const std::vector<Vec2>& pts) {
    Box b;
    if (pts.empty()) return b;
    b = {pts[0].x, pts[0].x, pts[0].y, pts[0].y};
    for (const Vec2& p : pts) b.grow(p);
    // Avoid degenerate scale for flat data.
    if (b.xhi - b.xlo < 1e-12) b.xhi = b.xlo + 1.0;
    if (b.yhi - b.ylo < 1e-12) b.yhi = b.ylo + 1.0;
    return b;
}

// SVG y runs downward; flip the physical y axis.
void emit_polyline(std::ostringstream& out, const std::vector<Vec2>& pts, const Box& b,
                   double width, double height, double margin, double x_off, double y_off) {
    const double sx = (width - 2 * margin) / (b.xhi - b.xlo);
    const double sy = (height - 2 * margin) / (b.yhi - b.ylo);
    const double scale = std::min(sx, sy);
    out << "<polyline fill=\"none\" stroke=\"#1f4e79\" stroke-width=\"1.5\" points=\"";
    for (const Vec2& p : pts) {
        const double px = x_off + margin + (p.x - b.xlo) * scale;
        const double py = y_off + height - margin - (p.y - b.ylo) * scale;
        out << px << ',' << py << ' ';
    }
    out << "\"/>\n";
}

}  // namespace

std::string polyline_svg(const std::vector<Vec2>& points, double width) {
    const Box b = bounds(points);
    const double margin = 20.0;
    const double aspect = (b.yhi - b.ylo) / (b.xhi - b.xlo);
    const double height = std::clamp(width * aspect, 80.0, 4.0 * width) + 2 * margin;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    emit_polyline(out, points, b, width, height, margin, 0.0, 0.0);
    out << "</svg>\n";
    return out.str();
}

std::string filmstrip_svg(const SweepRecord& record, double frame_width) {
    // Common bounding box so the frames are comparable.
    Box b;
    bool first = true;
    for (const SweepSnapshot& snap : record.snapshots) {
        for (const Vec2& p : snap.state.positions) {
            if (first) {
                b = {p.x, p.x, p.y, p.y};
                first = false;
            } else {
                b.grow(p);
            }
        }
    }
    if (first) return "<svg xmlns=\"http://www.w3.org/2000/svg\"/>\n";
    if (b.xhi - b.xlo < 1e-12) b.xhi = b.xlo + 1.0;
    if (b.yhi - b.ylo < 1e-12) b.yhi = b.ylo + 1.0;

    const double margin = 8.0;
    const double frame_height =
        std::clamp(frame_width * (b.yhi - b.ylo) / (b.xhi - b.xlo), 40.0, 3.0 * frame_width) +
        2 * margin;
    const double label_width = 70.0;
    const double total_w = frame_width + label_width;
    const double total_h = frame_height * record.snapshots.size();

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << total_w << "\" height=\""
        << total_h << "\" viewBox=\"0 0 " << total_w << ' ' << total_h << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t i = 0; i < record.snapshots.size(); ++i) {
        const SweepSnapshot& snap = record.snapshots[i];
        const double y_off = frame_height * i;
        std::vector<Vec2> pts(snap.state.positions.begin(), snap.state.positions.end());
        emit_polyline(out, pts, b, frame_width, frame_height, margin, label_width, y_off);
        char label[64];
        std::snprintf(label, sizeof(label), "r=%.3g%s", snap.ratio,
                      snap.converged ? "" : " *");
        out << "<text x=\"4\" y=\"" << y_off + 0.5 * frame_height
            << "\" font-family=\"monospace\" font-size=\"11\">" << label << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

}  // namespace catena
