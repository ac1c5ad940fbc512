#include "srug/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <cstdlib>
#include <random>
#include <sstream>
#include <unordered_map>

namespace srug {

bool Dataset::has_feature(const std::string& name) const {
    if (frames.empty()) return false;
    for (const auto& f : frames) {
        if (!f.features.count(name)) return false;
    }
    return true;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cell);
            cell.clear();
        } else if (c != '\r') {
            cell += c;
        }
    }
    out.push_back(cell);
    return out;
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw Error("cannot parse " + what + " value '" + s + "'");
    }
}

std::string fmt_g9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

struct RawRecord {
    double x, y;
    std::vector<double> features;
    bool present = false;
};

}  // namespace

Dataset parse_csv(std::istream& in, const CsvOptions& opts) {
    std::string header_line;
    if (!std::getline(in, header_line)) throw EmptyInput("empty CSV input");
    const auto header = split_csv_line(header_line);

    auto find_col = [&](const std::string& name) -> int {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw MissingColumn("missing column '" + name + "'");
        return int(it - header.begin());
    };
    const int col_frame = find_col(opts.schema.frame);
    const int col_id = find_col(opts.schema.id);
    const int col_x = find_col(opts.schema.x);
    const int col_y = find_col(opts.schema.y);

    std::vector<std::string> feature_names;
    std::vector<int> feature_cols;
    if (!opts.schema.feature_columns.empty()) {
        for (const auto& name : opts.schema.feature_columns) {
            feature_cols.push_back(find_col(name));
            feature_names.push_back(name);
        }
    } else {
        for (int c = 0; c < int(header.size()); ++c) {
            if (c == col_frame || c == col_id || c == col_x || c == col_y)
                continue;
            if (header[c].empty()) continue;
            feature_cols.push_back(c);
            feature_names.push_back(header[c]);
        }
    }

    // frame value -> mover id -> record; ids kept in first-appearance order.
    std::map<std::int64_t, std::unordered_map<std::string, RawRecord>> rows;
    std::vector<std::string> ids;
    std::unordered_map<std::string, std::size_t> id_index;

    std::string line;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto cells = split_csv_line(line);
        if (cells.size() < header.size())
            throw Error("line " + std::to_string(line_no) + ": expected " +
                        std::to_string(header.size()) + " cells, got " +
                        std::to_string(cells.size()));
        std::int64_t frame =
            std::int64_t(parse_double(cells[col_frame], "frame"));
        const std::string& id = cells[col_id];
        RawRecord rec;
        rec.x = parse_double(cells[col_x], "x");
        rec.y = parse_double(cells[col_y], "y");
        if (opts.flip_y) rec.y = -rec.y;
        if (!std::isfinite(rec.x) || !std::isfinite(rec.y))
            throw NonFiniteCoordinate("non-finite coordinate at line " +
                                      std::to_string(line_no));
        for (int c : feature_cols)
            rec.features.push_back(parse_double(cells[c], header[c]));
        rec.present = true;
        if (!id_index.count(id)) {
            id_index.emplace(id, ids.size());
            ids.push_back(id);
        }
        rows[frame][id] = std::move(rec);
    }
    if (rows.empty()) throw EmptyInput("CSV has a header but no data rows");

    Dataset d;
    d.mover_ids = ids;
    d.frame_rate_hz = opts.frame_rate_hz;
    d.frames.resize(rows.size());

    // Dense panel check / fill bookkeeping: per mover, per compact frame.
    const std::size_t n_frames = rows.size();
    const std::size_t n_movers = ids.size();
    std::vector<std::vector<RawRecord>> panel(
        n_movers, std::vector<RawRecord>(n_frames));
    {
        std::size_t t = 0;
        for (auto& [frame_value, frame_rows] : rows) {
            for (auto& [id, rec] : frame_rows)
                panel[id_index[id]][t] = std::move(rec);
            ++t;
        }
    }

    if (opts.fill == FillPolicy::None) {
        for (std::size_t k = 0; k < n_movers; ++k)
            for (std::size_t t = 0; t < n_frames; ++t)
                if (!panel[k][t].present)
                    throw RaggedPanel("mover '" + ids[k] +
                                      "' missing from frame " +
                                      std::to_string(t));
    } else {
        for (std::size_t k = 0; k < n_movers; ++k) {
            auto& track = panel[k];
            std::vector<std::size_t> known;
            for (std::size_t t = 0; t < n_frames; ++t)
                if (track[t].present) known.push_back(t);
            for (std::size_t t = 0; t < n_frames; ++t) {
                if (track[t].present) continue;
                auto hi = std::lower_bound(known.begin(), known.end(), t);
                if (hi == known.begin()) {
                    track[t] = track[known.front()];
                } else if (hi == known.end()) {
                    track[t] = track[known.back()];
                } else {
                    std::size_t t1 = *hi, t0 = *(hi - 1);
                    double w = double(t - t0) / double(t1 - t0);
                    RawRecord r;
                    r.x = track[t0].x + w * (track[t1].x - track[t0].x);
                    r.y = track[t0].y + w * (track[t1].y - track[t0].y);
                    r.features.resize(track[t0].features.size());
                    for (std::size_t f = 0; f < r.features.size(); ++f)
                        r.features[f] = track[t0].features[f] +
                                        w * (track[t1].features[f] -
                                             track[t0].features[f]);
                    r.present = true;
                    track[t] = r;
                }
            }
        }
    }

    for (std::size_t t = 0; t < n_frames; ++t) {
        auto& fr = d.frames[t];
        fr.x.resize(n_movers);
        fr.y.resize(n_movers);
        for (const auto& name : feature_names)
            fr.features[name].resize(n_movers);
        for (std::size_t k = 0; k < n_movers; ++k) {
            fr.x[k] = panel[k][t].x;
            fr.y[k] = panel[k][t].y;
            for (std::size_t f = 0; f < feature_names.size(); ++f)
                fr.features[feature_names[f]][k] = panel[k][t].features[f];
        }
    }

    d.extent = compute_extent(d);
    return d;
}

Dataset parse_csv_string(const std::string& text, const CsvOptions& opts) {
    std::istringstream in(text);
    return parse_csv(in, opts);
}

Dataset parse_csv_file(const std::string& path, const CsvOptions& opts) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    return parse_csv(in, opts);
}

void serialize_csv(const Dataset& d, std::ostream& out) {
    std::vector<std::string> feature_names;
    if (!d.frames.empty())
        for (const auto& [name, _] : d.frames.front().features)
            feature_names.push_back(name);

    out << "frame,id,x,y";
    for (const auto& name : feature_names) out << ',' << name;
    out << '\n';
    for (std::size_t t = 0; t < d.frame_count(); ++t) {
        const auto& fr = d.frames[t];
        for (std::size_t k = 0; k < d.mover_count(); ++k) {
            out << t << ',' << d.mover_ids[k] << ',' << fmt_g9(fr.x[k]) << ','
                << fmt_g9(fr.y[k]);
            for (const auto& name : feature_names)
                out << ',' << fmt_g9(fr.features.at(name)[k]);
            out << '\n';
        }
    }
}

std::string serialize_csv_string(const Dataset& d) {
    std::ostringstream out;
    serialize_csv(d, out);
    return out.str();
}

BoundingBox compute_extent(const Dataset& d) {
    if (d.frames.empty() || d.mover_ids.empty())
        throw EmptyInput("cannot compute extent of an empty dataset");
    BoundingBox box;
    box.min_x = box.min_y = std::numeric_limits<double>::infinity();
    box.max_x = box.max_y = -std::numeric_limits<double>::infinity();
    for (const auto& fr : d.frames) {
        for (std::size_t k = 0; k < d.mover_count(); ++k) {
            box.min_x = std::min(box.min_x, fr.x[k]);
            box.max_x = std::max(box.max_x, fr.x[k]);
            box.min_y = std::min(box.min_y, fr.y[k]);
            box.max_y = std::max(box.max_y, fr.y[k]);
        }
    }
    if (box.max_x == box.min_x) {
        box.min_x -= 0.5;
        box.max_x += 0.5;
    }
    if (box.max_y == box.min_y) {
        box.min_y -= 0.5;
        box.max_y += 0.5;
    }
    return box;
}

void BoidsParams::validate() const {
    if (mover_count == 0) throw ConfigError("mover_count must be positive");
    if (frame_count == 0) throw ConfigError("frame_count must be positive");
    if (!(world_width > 0) || !(world_height > 0))
        throw ConfigError("world dimensions must be positive");
    if (!(perception_radius > 0))
        throw ConfigError("perception_radius must be positive");
    if (!(max_speed > 0)) throw ConfigError("max_speed must be positive");
    if (!std::isfinite(cohesion_weight) || !std::isfinite(separation_weight) ||
        !std::isfinite(alignment_weight))
        throw ConfigError("rule weights must be finite");
}

namespace {

// Canonical uniform doubles from raw engine output; avoids the
// implementation-defined std::uniform_real_distribution so that a seed
// produces the same dataset on every standard library.
class SeededUniform {
public:
    explicit SeededUniform(std::uint64_t seed) : engine_(seed) {}
    double next() {  // [0, 1)
        return double(engine_() >> 11) * 0x1.0p-53;
    }
    double next_signed() { return 2.0 * next() - 1.0; }

private:
    std::mt19937_64 engine_;
};

}  // namespace

Dataset generate_boids(const BoidsParams& p) {
    p.validate();
    SeededUniform rng(p.rng_seed);

    const std::size_t n = p.mover_count;
    std::vector<double> px(n), py(n), vx(n), vy(n);
    for (std::size_t i = 0; i < n; ++i) {
        px[i] = rng.next() * p.world_width;
        py[i] = rng.next() * p.world_height;
        const double angle = rng.next() * 2.0 * M_PI;
        const double speed = 0.5 * p.max_speed;
        vx[i] = speed * std::cos(angle);
        vy[i] = speed * std::sin(angle);
    }

    Dataset d;
    d.mover_ids.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "m%03zu", i);
        d.mover_ids[i] = buf;
    }
    d.frames.resize(p.frame_count);

    const double jitter = 0.005 * p.max_speed;
    const double r2 = p.perception_radius * p.perception_radius;

    for (std::size_t t = 0; t < p.frame_count; ++t) {
        auto& fr = d.frames[t];
        fr.x = px;
        fr.y = py;
        if (t + 1 == p.frame_count) break;

        std::vector<double> ax(n, 0.0), ay(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double cx = 0, cy = 0;       // neighbor centroid
            double sx = 0, sy = 0;       // separation push
            double avx = 0, avy = 0;     // neighbor mean velocity
            std::size_t neighbors = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                const double dx = px[j] - px[i];
                const double dy = py[j] - py[i];
                const double dist2 = dx * dx + dy * dy;
                if (dist2 > r2) continue;
                ++neighbors;
                cx += px[j];
                cy += py[j];
                avx += vx[j];
                avy += vy[j];
                const double inv = 1.0 / std::max(dist2, 1e-6);
                sx -= dx * inv;
                sy -= dy * inv;
            }
            if (neighbors > 0) {
                const double inv_n = 1.0 / double(neighbors);
                ax[i] += p.cohesion_weight * (cx * inv_n - px[i]);
                ay[i] += p.cohesion_weight * (cy * inv_n - py[i]);
                ax[i] += p.separation_weight * sx;
                ay[i] += p.separation_weight * sy;
                ax[i] += p.alignment_weight * (avx * inv_n - vx[i]);
                ay[i] += p.alignment_weight * (avy * inv_n - vy[i]);
            }
            ax[i] += jitter * rng.next_signed();
            ay[i] += jitter * rng.next_signed();
        }

        for (std::size_t i = 0; i < n; ++i) {
            vx[i] += ax[i];
            vy[i] += ay[i];
            const double speed = std::hypot(vx[i], vy[i]);
            if (speed > p.max_speed) {
                const double scale = p.max_speed / speed;
                vx[i] *= scale;
                vy[i] *= scale;
            }
            px[i] += vx[i];
            py[i] += vy[i];
            // Reflective walls.
            if (px[i] < 0) {
                px[i] = -px[i];
                vx[i] = -vx[i];
            }
            if (px[i] > p.world_width) {
                px[i] = 2 * p.world_width - px[i];
                vx[i] = -vx[i];
            }
            if (py[i] < 0) {
                py[i] = -py[i];
                vy[i] = -vy[i];
            }
            if (py[i] > p.world_height) {
                py[i] = 2 * p.world_height - py[i];
                vy[i] = -vy[i];
            }
            px[i] = std::clamp(px[i], 0.0, p.world_width);
            py[i] = std::clamp(py[i], 0.0, p.world_height);
        }
    }

    d.extent = compute_extent(d);
    return d;
}

Dataset derive_speed(const Dataset& d) {
    if (d.frame_count() < 2)
        throw SingleFrame("speed is undefined for a single-frame dataset");
    Dataset out = d;
    const std::size_t n = d.mover_count();
    for (std::size_t t = 1; t < d.frame_count(); ++t) {
        auto& speed = out.frames[t].features["speed"];
        speed.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double dx = d.frames[t].x[k] - d.frames[t - 1].x[k];
            const double dy = d.frames[t].y[k] - d.frames[t - 1].y[k];
            speed[k] = std::hypot(dx, dy) * d.frame_rate_hz;
        }
    }
    out.frames[0].features["speed"] = out.frames[1].features.at("speed");
    return out;
}

}  // namespace srug
