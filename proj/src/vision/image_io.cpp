#include "msf/vision/image_io.hpp"

#include "msf/core/error.hpp"

#include <png.h>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

namespace msf::vision {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::string& path, const char* mode) {
    FilePtr f(std::fopen(path.c_str(), mode));
    if (!f) throw Error("cannot open '" + path + "'");
    return f;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Skips whitespace and '#' comments in a PGM header.
void skip_header_space(std::istream& in) {
    while (in) {
        const int c = in.peek();
        if (c == '#') {
            std::string line;
            std::getline(in, line);
        } else if (std::isspace(c)) {
            in.get();
        } else {
            break;
        }
    }
}

ContourRaster read_pgm(const std::string& path, double scale) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::string magic;
    in >> magic;
    if (magic != "P5" && magic != "P2") throw ConfigError("'" + path + "' is not a PGM file");
    int w = 0, h = 0, maxval = 0;
    skip_header_space(in);
    in >> w;
    skip_header_space(in);
    in >> h;
    skip_header_space(in);
    in >> maxval;
    if (!in || w <= 0 || h <= 0 || maxval <= 0 || maxval > 65535) throw ConfigError("bad PGM header in '" + path + "'");
    GridFrame frame{w, h, scale, 0.0, 0.0};
    ContourRaster r(frame, 0);
    auto store = [&](int x, int row, int v) {
        r.at(x, h - 1 - row) = static_cast<std::uint8_t>(std::lround(255.0 * v / maxval));
    };
    if (magic == "P5") {
        in.get();
        const int bytes = maxval > 255 ? 2 : 1;
        std::vector<unsigned char> buf(static_cast<std::size_t>(w) * h * bytes);
        in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
        if (!in) throw ConfigError("truncated PGM data in '" + path + "'");
        for (int row = 0; row < h; ++row)
            for (int x = 0; x < w; ++x) {
                const std::size_t k = (static_cast<std::size_t>(row) * w + x) * bytes;
                store(x, row, bytes == 2 ? (buf[k] << 8) | buf[k + 1] : buf[k]);
            }
    } else {
        for (int row = 0; row < h; ++row)
            for (int x = 0; x < w; ++x) {
                int v = 0;
                if (!(in >> v)) throw ConfigError("truncated PGM data in '" + path + "'");
                store(x, row, v);
            }
    }
    return r;
}

ContourRaster read_png(const std::string& path, double scale) {
    auto f = open_file(path, "rb");
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw Error("libpng initialisation failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw ConfigError("cannot decode PNG '" + path + "'");
    }
    png_init_io(png, f.get());
    png_read_info(png, info);
    png_set_strip_16(png);
    png_set_strip_alpha(png);
    png_set_expand(png);
    png_set_packing(png);
    png_read_update_info(png, info);
    const int w = static_cast<int>(png_get_image_width(png, info));
    const int h = static_cast<int>(png_get_image_height(png, info));
    const int channels = png_get_channels(png, info);
    std::vector<png_byte> buf(static_cast<std::size_t>(w) * h * channels);
    std::vector<png_bytep> rows(h);
    for (int row = 0; row < h; ++row) rows[row] = buf.data() + static_cast<std::size_t>(row) * w * channels;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    ContourRaster r(GridFrame{w, h, scale, 0.0, 0.0}, 0);
    for (int row = 0; row < h; ++row)
        for (int x = 0; x < w; ++x) {
            int sum = 0;
            for (int c = 0; c < channels; ++c) sum += rows[row][x * channels + c];
            r.at(x, h - 1 - row) = static_cast<std::uint8_t>((sum + channels / 2) / channels);
        }
    return r;
}

void write_png_rows(const std::string& path, int w, int h, int colour_type, int channels,
                    const std::vector<png_byte>& buf, const std::string& comment) {
    auto f = open_file(path, "wb");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw Error("libpng initialisation failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw Error("cannot encode PNG '" + path + "'");
    }
    png_init_io(png, f.get());
    png_set_IHDR(png, info, w, h, 8, colour_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_text text{};
    std::string key = "Comment", value = comment;
    if (!comment.empty()) {
        text.compression = PNG_TEXT_COMPRESSION_NONE;
        text.key = key.data();
        text.text = value.data();
        png_set_text(png, info, &text, 1);
    }
    png_write_info(png, info);
    for (int row = 0; row < h; ++row) {
        png_write_row(png, const_cast<png_bytep>(buf.data() + static_cast<std::size_t>(row) * w * channels));
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

}  // namespace

ContourRaster read_image(const std::string& path, double scale) {
    MSF_REQUIRE(scale > 0, "image scale must be positive");
    std::ifstream probe(path, std::ios::binary);
    if (!probe) throw Error("cannot open '" + path + "'");
    unsigned char sig[8] = {};
    probe.read(reinterpret_cast<char*>(sig), 8);
    probe.close();
    if (png_sig_cmp(sig, 0, 8) == 0) return read_png(path, scale);
    return read_pgm(path, scale);
}

void write_pgm(const std::string& path, const ContourRaster& raster, const std::string& comment) {
    raster.validate();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << "P5\n";
    if (!comment.empty()) out << "# " << comment << '\n';
    out << raster.width << ' ' << raster.height << "\n255\n";
    for (int row = raster.height - 1; row >= 0; --row) {
        out.write(reinterpret_cast<const char*>(&raster.intensity[raster.index(0, row)]), raster.width);
    }
    if (!out) throw Error("failed writing '" + path + "'");
}

void write_png(const std::string& path, const ContourRaster& raster, const std::string& comment) {
    raster.validate();
    std::vector<png_byte> buf(raster.pixel_count());
    for (int row = 0; row < raster.height; ++row)
        for (int x = 0; x < raster.width; ++x) {
            buf[static_cast<std::size_t>(row) * raster.width + x] = raster.at(x, raster.height - 1 - row);
        }
    write_png_rows(path, raster.width, raster.height, PNG_COLOR_TYPE_GRAY, 1, buf, comment);
}

void write_image(const std::string& path, const ContourRaster& raster, const std::string& comment) {
    if (ends_with(path, ".png")) {
        write_png(path, raster, comment);
    } else {
        write_pgm(path, raster, comment);
    }
}

void write_overlay_png(const std::string& path, const ContourRaster& raster, const CrackSkeleton& skeleton,
                       const std::string& comment) {
    raster.validate();
    MSF_REQUIRE(skeleton.width == raster.width && skeleton.height == raster.height,
                "skeleton and raster sizes differ");
    const int w = raster.width, h = raster.height;
    std::vector<png_byte> buf(static_cast<std::size_t>(w) * h * 3);
    auto put = [&](int x, int y, png_byte r, png_byte g, png_byte b) {
        const std::size_t k = (static_cast<std::size_t>(h - 1 - y) * w + x) * 3;
        buf[k] = r;
        buf[k + 1] = g;
        buf[k + 2] = b;
    };
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const png_byte v = static_cast<png_byte>(raster.at(x, y) / 2);
            put(x, y, v, v, v);
        }
    for (const auto& p : skeleton.path) put(p.x, p.y, 255, 0, 0);
    if (!skeleton.path.empty()) {
        const auto& t = skeleton.path.back();
        put(t.x, t.y, 0, 255, 0);
    }
    write_png_rows(path, w, h, PNG_COLOR_TYPE_RGB, 3, buf, comment);
}

}  // namespace msf::vision
