#include "polsar/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>

#include <png.h>

namespace polsar {
namespace {

struct Stretch {
    double lo = 0.0;
    double hi = 0.0;

    std::uint8_t apply(double v) const {
        v = std::max(v, 0.0);
        if (!(hi > lo)) {
            return v > 0.0 ? 255 : 0;
        }
        const double x = std::clamp((v - lo) / (hi - lo), 0.0, 1.0);
        return static_cast<std::uint8_t>(std::lround(255.0 * std::sqrt(x)));
    }
};

Stretch percentile_stretch(const std::vector<float>& plane, const std::vector<std::size_t>& valid) {
    if (valid.empty()) {
        return {};
    }
    std::vector<double> v;
    v.reserve(valid.size());
    for (std::size_t i : valid) {
        v.push_back(std::max(static_cast<double>(plane[i]), 0.0));
    }
    const auto rank = [&](double p) {
        const auto k = static_cast<std::size_t>(std::floor(p * static_cast<double>(v.size() - 1)));
        std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
        return v[k];
    };
    const double lo = rank(0.01);
    const double hi = rank(0.99);
    return {lo, hi};
}

struct FileCloser {
    void operator()(std::FILE* f) const { std::fclose(f); }
};

}  // namespace

RgbaImage render_composite(const PowerRaster& raster) {
    RgbaImage img;
    img.width = raster.cols;
    img.height = raster.rows;
    img.rgba.assign(raster.pixels() * 4, 0);

    std::vector<std::size_t> valid;
    for (std::size_t i = 0; i < raster.pixels(); ++i) {
        if (raster.valid(i)) {
            valid.push_back(i);
        }
    }
    const Stretch r = percentile_stretch(raster.pd, valid);
    const Stretch g = percentile_stretch(raster.pv, valid);
    const Stretch b = percentile_stretch(raster.ps, valid);
    for (std::size_t i : valid) {
        std::uint8_t* px = img.rgba.data() + 4 * i;
        px[0] = r.apply(raster.pd[i]);
        px[1] = g.apply(raster.pv[i]);
        px[2] = b.apply(raster.ps[i]);
        px[3] = 255;
    }
    return img;
}

void write_png(const std::filesystem::path& file, const RgbaImage& image) {
    if (image.width <= 0 || image.height <= 0) {
        throw Error(ErrorCode::EmptyRaster, "cannot write an empty image");
    }
    std::unique_ptr<std::FILE, FileCloser> fp(std::fopen(file.string().c_str(), "wb"));
    if (!fp) {
        throw Error(ErrorCode::Io, "cannot open " + file.string() + " for writing");
    }
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw Error(ErrorCode::Io, "libpng initialisation failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw Error(ErrorCode::Io, "libpng failed writing " + file.string());
    }
    png_init_io(png, fp.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(image.width), static_cast<png_uint_32>(image.height), 8,
                 PNG_COLOR_TYPE_RGBA, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int row = 0; row < image.height; ++row) {
        png_write_row(png, const_cast<png_bytep>(image.pixel(row, 0)));
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

RgbaImage read_png(const std::filesystem::path& file) {
    png_image img{};
    img.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&img, file.string().c_str())) {
        throw Error(ErrorCode::Io, "cannot read PNG " + file.string() + ": " + img.message);
    }
    img.format = PNG_FORMAT_RGBA;
    RgbaImage out;
    out.width = static_cast<int>(img.width);
    out.height = static_cast<int>(img.height);
    out.rgba.resize(PNG_IMAGE_SIZE(img));
    if (!png_image_finish_read(&img, nullptr, out.rgba.data(), 0, nullptr)) {
        png_image_free(&img);
        throw Error(ErrorCode::Io, "cannot decode PNG " + file.string() + ": " + img.message);
    }
    return out;
}

}  // namespace polsar
