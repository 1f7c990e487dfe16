#include "morphoseg/io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace morphoseg {

namespace {

std::string path_str(const std::filesystem::path& p) { return p.string(); }

[[noreturn]] void fail_io(const std::filesystem::path& p, const std::string& why) {
    throw IoError(path_str(p) + ": " + why);
}

[[noreturn]] void fail_format(const std::filesystem::path& p, const std::string& why) {
    throw FormatError(path_str(p) + ": " + why);
}

// ---------------------------------------------------------------- netpbm --

// Netpbm token scanner: skips whitespace and '#' comment lines.
int pnm_next_int(std::istream& in, const std::filesystem::path& p) {
    int c = in.get();
    while (c != EOF) {
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (std::isspace(c)) {
            c = in.get();
        } else {
            break;
        }
    }
    if (c == EOF) fail_format(p, "truncated header");
    std::string tok;
    while (c != EOF && !std::isspace(c)) {
        tok.push_back(static_cast<char>(c));
        c = in.get();
    }
    try {
        return std::stoi(tok);
    } catch (...) {
        fail_format(p, "bad header token '" + tok + "'");
    }
}

struct PnmHeader {
    int width = 0, height = 0, maxval = 0;
    bool color = false;
};

PnmHeader read_pnm_header(std::istream& in, const std::filesystem::path& p, char kind) {
    PnmHeader h;
    h.color = kind == '6';
    h.width = pnm_next_int(in, p);
    h.height = pnm_next_int(in, p);
    h.maxval = pnm_next_int(in, p);
    if (h.width <= 0 || h.height <= 0) fail_format(p, "non-positive dimensions");
    if (h.maxval <= 0 || h.maxval > 65535) fail_format(p, "maxval out of range");
    return h;
}

std::vector<uint16_t> read_pnm_samples(std::istream& in, const std::filesystem::path& p,
                                       const PnmHeader& h) {
    const size_t count = static_cast<size_t>(h.width) * h.height * (h.color ? 3 : 1);
    std::vector<uint16_t> samples(count);
    if (h.maxval < 256) {
        std::vector<uint8_t> raw(count);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(count));
        if (static_cast<size_t>(in.gcount()) != count) fail_format(p, "truncated pixel data");
        std::copy(raw.begin(), raw.end(), samples.begin());
    } else {
        std::vector<uint8_t> raw(count * 2);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
        if (static_cast<size_t>(in.gcount()) != raw.size()) fail_format(p, "truncated pixel data");
        for (size_t i = 0; i < count; ++i)
            samples[i] = static_cast<uint16_t>((raw[2 * i] << 8) | raw[2 * i + 1]); // MSB first
    }
    return samples;
}

LoadedImage load_pnm(std::ifstream& in, const std::filesystem::path& p, char kind) {
    const PnmHeader h = read_pnm_header(in, p, kind);
    const auto samples = read_pnm_samples(in, p, h);
    const float scale = 1.0f / static_cast<float>(h.maxval);
    if (h.color) {
        ColorImage img(h.width, h.height);
        for (size_t i = 0; i < img.data.size(); ++i)
            img.data[i] = {samples[3 * i] * scale, samples[3 * i + 1] * scale,
                           samples[3 * i + 2] * scale};
        return img;
    }
    GrayImage img(h.width, h.height);
    for (size_t i = 0; i < img.data.size(); ++i) img.data[i] = samples[i] * scale;
    return img;
}

// ------------------------------------------------------------------- png --

struct PngReader {
    png_structp png = nullptr;
    png_infop info = nullptr;
    FILE* fp = nullptr;

    ~PngReader() {
        if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
        if (fp) std::fclose(fp);
    }
};

struct PngWriter {
    png_structp png = nullptr;
    png_infop info = nullptr;
    FILE* fp = nullptr;

    ~PngWriter() {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
        if (fp) std::fclose(fp);
    }
};

struct DecodedPng {
    int width = 0, height = 0;
    int bit_depth = 0, color_type = 0;
    std::vector<std::vector<uint8_t>> rows;
};

DecodedPng decode_png(const std::filesystem::path& path) {
    PngReader r;
    r.fp = std::fopen(path_str(path).c_str(), "rb");
    if (!r.fp) fail_io(path, "cannot open for reading");

    uint8_t sig[8];
    if (std::fread(sig, 1, 8, r.fp) != 8 || png_sig_cmp(sig, 0, 8))
        fail_format(path, "not a PNG stream");

    r.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!r.png) fail_io(path, "libpng init failed");
    r.info = png_create_info_struct(r.png);
    if (!r.info) fail_io(path, "libpng init failed");
    if (setjmp(png_jmpbuf(r.png))) fail_format(path, "corrupt PNG data");

    png_init_io(r.png, r.fp);
    png_set_sig_bytes(r.png, 8);
    png_read_info(r.png, r.info);

    DecodedPng out;
    out.width = static_cast<int>(png_get_image_width(r.png, r.info));
    out.height = static_cast<int>(png_get_image_height(r.png, r.info));
    out.bit_depth = png_get_bit_depth(r.png, r.info);
    out.color_type = png_get_color_type(r.png, r.info);

    const size_t rowbytes = png_get_rowbytes(r.png, r.info);
    out.rows.assign(static_cast<size_t>(out.height), std::vector<uint8_t>(rowbytes));
    std::vector<png_bytep> ptrs(out.rows.size());
    for (size_t y = 0; y < out.rows.size(); ++y) ptrs[y] = out.rows[y].data();
    png_read_image(r.png, ptrs.data());
    png_read_end(r.png, nullptr);
    return out;
}

void encode_png(const std::filesystem::path& path, int width, int height, int bit_depth,
                int color_type, const std::vector<std::vector<uint8_t>>& rows) {
    PngWriter w;
    w.fp = std::fopen(path_str(path).c_str(), "wb");
    if (!w.fp) fail_io(path, "cannot open for writing");

    w.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    if (!w.png) fail_io(path, "libpng init failed");
    w.info = png_create_info_struct(w.png);
    if (!w.info) fail_io(path, "libpng init failed");
    if (setjmp(png_jmpbuf(w.png))) fail_io(path, "PNG write failed");

    png_init_io(w.png, w.fp);
    png_set_IHDR(w.png, w.info, static_cast<png_uint_32>(width),
                 static_cast<png_uint_32>(height), bit_depth, color_type, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(w.png, w.info);
    for (const auto& row : rows)
        png_write_row(w.png, const_cast<png_bytep>(row.data()));
    png_write_end(w.png, nullptr);
}

LoadedImage load_png_image(const std::filesystem::path& path) {
    const DecodedPng d = decode_png(path);
    if (d.bit_depth != 8)
        fail_format(path, "unsupported PNG bit depth " + std::to_string(d.bit_depth) +
                              " (expected 8-bit gray or RGB)");
    const float scale = 1.0f / 255.0f;
    if (d.color_type == PNG_COLOR_TYPE_GRAY) {
        GrayImage img(d.width, d.height);
        for (int y = 0; y < d.height; ++y)
            for (int x = 0; x < d.width; ++x) img.at(x, y) = d.rows[y][x] * scale;
        return img;
    }
    if (d.color_type == PNG_COLOR_TYPE_RGB) {
        ColorImage img(d.width, d.height);
        for (int y = 0; y < d.height; ++y)
            for (int x = 0; x < d.width; ++x)
                img.at(x, y) = {d.rows[y][3 * x] * scale, d.rows[y][3 * x + 1] * scale,
                                d.rows[y][3 * x + 2] * scale};
        return img;
    }
    fail_format(path, "unsupported PNG color type " + std::to_string(d.color_type));
}

} // namespace

LoadedImage load_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail_io(path, "cannot open for reading");
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (in.gcount() != 2) fail_format(path, "file too short to identify format");

    if (magic[0] == 'P' && (magic[1] == '5' || magic[1] == '6')) return load_pnm(in, path, magic[1]);
    if (static_cast<uint8_t>(magic[0]) == 0x89 && magic[1] == 'P') {
        in.close();
        return load_png_image(path);
    }
    std::ostringstream msg;
    msg << "unsupported format, magic bytes 0x" << std::hex << std::uppercase
        << static_cast<int>(static_cast<uint8_t>(magic[0])) << " 0x"
        << static_cast<int>(static_cast<uint8_t>(magic[1]));
    fail_format(path, msg.str());
}

void save_labels(const LabelImage& labels, const std::filesystem::path& path) {
    for (int32_t v : labels.labels)
        if (v < 0 || v > 65535)
            throw RangeError(path_str(path) + ": label " + std::to_string(v) +
                             " does not fit a 16-bit container");
    if (labels.num_labels > 65535)
        throw RangeError(path_str(path) + ": " + std::to_string(labels.num_labels) +
                         " labels exceed the 16-bit container");

    std::vector<std::vector<uint8_t>> rows(static_cast<size_t>(labels.height),
                                           std::vector<uint8_t>(static_cast<size_t>(labels.width) * 2));
    for (int y = 0; y < labels.height; ++y)
        for (int x = 0; x < labels.width; ++x) {
            const auto v = static_cast<uint16_t>(labels.at(x, y));
            rows[y][2 * x] = static_cast<uint8_t>(v >> 8); // network byte order
            rows[y][2 * x + 1] = static_cast<uint8_t>(v & 0xff);
        }
    encode_png(path, labels.width, labels.height, 16, PNG_COLOR_TYPE_GRAY, rows);
}

LabelImage load_labels(const std::filesystem::path& path) {
    const DecodedPng d = decode_png(path);
    if (d.color_type != PNG_COLOR_TYPE_GRAY)
        fail_format(path, "label image must be grayscale PNG");
    LabelImage out(d.width, d.height);
    if (d.bit_depth == 16) {
        for (int y = 0; y < d.height; ++y)
            for (int x = 0; x < d.width; ++x)
                out.at(x, y) = static_cast<int32_t>((d.rows[y][2 * x] << 8) | d.rows[y][2 * x + 1]);
    } else if (d.bit_depth == 8) {
        for (int y = 0; y < d.height; ++y)
            for (int x = 0; x < d.width; ++x) out.at(x, y) = d.rows[y][x];
    } else {
        fail_format(path, "unsupported label bit depth " + std::to_string(d.bit_depth));
    }
    out.recount_labels();
    return out;
}

void write_pfm(const GrayImage& img, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail_io(path, "cannot open for writing");
    out << "Pf\n" << img.width << " " << img.height << "\n-1.0\n";
    // negative scale = little-endian samples, rows bottom-to-top
    for (int y = img.height - 1; y >= 0; --y)
        out.write(reinterpret_cast<const char*>(&img.data[static_cast<size_t>(y) * img.width]),
                  static_cast<std::streamsize>(sizeof(float) * img.width));
    if (!out) fail_io(path, "write failed");
}

GrayImage read_pfm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail_io(path, "cannot open for reading");
    std::string magic;
    in >> magic;
    if (magic != "Pf") fail_format(path, "expected grayscale PFM magic 'Pf', got '" + magic + "'");
    int w = 0, h = 0;
    double scale = 0;
    in >> w >> h >> scale;
    if (!in || w <= 0 || h <= 0 || scale == 0) fail_format(path, "bad PFM header");
    in.get(); // single whitespace byte after the scale

    GrayImage img(w, h);
    std::vector<float> row(static_cast<size_t>(w));
    const bool little_endian = scale < 0;
    for (int yy = 0; yy < h; ++yy) {
        const int y = h - 1 - yy; // stored bottom-to-top
        in.read(reinterpret_cast<char*>(row.data()),
                static_cast<std::streamsize>(sizeof(float) * w));
        if (static_cast<size_t>(in.gcount()) != sizeof(float) * static_cast<size_t>(w))
            fail_format(path, "truncated PFM data");
        if (!little_endian) {
            for (float& v : row) {
                uint32_t bits;
                std::memcpy(&bits, &v, 4);
                bits = __builtin_bswap32(bits);
                std::memcpy(&v, &bits, 4);
            }
        }
        std::copy(row.begin(), row.end(), img.data.begin() + static_cast<size_t>(y) * w);
    }
    for (float v : img.data)
        if (!std::isfinite(v)) fail_format(path, "non-finite sample in PFM data");
    return img;
}

void write_png_gray8(const GrayImage& img, const std::filesystem::path& path) {
    std::vector<std::vector<uint8_t>> rows(static_cast<size_t>(img.height),
                                           std::vector<uint8_t>(static_cast<size_t>(img.width)));
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            rows[y][x] = static_cast<uint8_t>(std::lround(std::clamp(img.at(x, y), 0.0f, 1.0f) * 255.0f));
    encode_png(path, img.width, img.height, 8, PNG_COLOR_TYPE_GRAY, rows);
}

void write_png_rgb8(const ColorImage& img, const std::filesystem::path& path) {
    std::vector<std::vector<uint8_t>> rows(static_cast<size_t>(img.height),
                                           std::vector<uint8_t>(static_cast<size_t>(img.width) * 3));
    for (int y = 0; y < img.height; ++y)
        for (int x = 0; x < img.width; ++x)
            for (int c = 0; c < 3; ++c)
                rows[y][3 * x + c] =
                    static_cast<uint8_t>(std::lround(std::clamp(img.at(x, y)[c], 0.0f, 1.0f) * 255.0f));
    encode_png(path, img.width, img.height, 8, PNG_COLOR_TYPE_RGB, rows);
}

void write_pgm16(const GrayImage& img, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail_io(path, "cannot open for writing");
    out << "P5\n" << img.width << " " << img.height << "\n65535\n";
    for (float v : img.data) {
        const auto s = static_cast<uint16_t>(std::lround(std::clamp(v, 0.0f, 1.0f) * 65535.0f));
        out.put(static_cast<char>(s >> 8));
        out.put(static_cast<char>(s & 0xff));
    }
    if (!out) fail_io(path, "write failed");
}

} // namespace morphoseg
