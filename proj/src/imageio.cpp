#include "flownav/imageio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "flownav/errors.hpp"

namespace flownav::imageio {

namespace {

std::uint8_t to_byte(double v) {
    return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

void put_f32le(std::ofstream& out, float f) {
    std::uint32_t bits;
    std::memcpy(&bits, &f, 4);
    char b[4] = {static_cast<char>(bits & 0xff), static_cast<char>((bits >> 8) & 0xff),
                 static_cast<char>((bits >> 16) & 0xff), static_cast<char>((bits >> 24) & 0xff)};
    out.write(b, 4);
}

float get_f32le(std::ifstream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t bits = static_cast<std::uint32_t>(b[0]) |
                         (static_cast<std::uint32_t>(b[1]) << 8) |
                         (static_cast<std::uint32_t>(b[2]) << 16) |
                         (static_cast<std::uint32_t>(b[3]) << 24);
    float f;
    std::memcpy(&f, &bits, 4);
    return f;
}

}  // namespace

void write_pgm(const std::string& path, const Grid& g) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << "P5\n" << g.width << " " << g.height << "\n255\n";
    for (int y = 0; y < g.height; ++y)
        for (int x = 0; x < g.width; ++x)
            out.put(static_cast<char>(to_byte(g.at(x, y))));
    if (!out) throw IoError("write failed for '" + path + "'");
}

void write_ppm(const std::string& path, const render::ColorFrame& frame) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << "P6\n" << frame.r.width << " " << frame.r.height << "\n255\n";
    for (int y = 0; y < frame.r.height; ++y) {
        for (int x = 0; x < frame.r.width; ++x) {
            out.put(static_cast<char>(to_byte(frame.r.at(x, y))));
            out.put(static_cast<char>(to_byte(frame.g.at(x, y))));
            out.put(static_cast<char>(to_byte(frame.b.at(x, y))));
        }
    }
    if (!out) throw IoError("write failed for '" + path + "'");
}

void write_flo2(const std::string& path, const flow::FlowField& field) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << "FLO2\n" << field.u.width << " " << field.u.height << "\n";
    for (double v : field.u.data) put_f32le(out, static_cast<float>(v));
    for (double v : field.v.data) put_f32le(out, static_cast<float>(v));
    if (!out) throw IoError("write failed for '" + path + "'");
}

flow::FlowField read_flo2(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::string magic;
    int w = 0, h = 0;
    in >> magic >> w >> h;
    if (magic != "FLO2" || w <= 0 || h <= 0)
        throw ParseError("not a FLO2 file: '" + path + "'", 1);
    in.get();  // newline after the header
    flow::FlowField field{Grid(w, h), Grid(w, h)};
    for (double& v : field.u.data) v = get_f32le(in);
    for (double& v : field.v.data) v = get_f32le(in);
    if (!in) throw IoError("truncated FLO2 file: '" + path + "'");
    return field;
}

}  // namespace flownav::imageio
