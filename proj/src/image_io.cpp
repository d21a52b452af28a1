#include "retcc/image_io.hpp"

#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <png.h>

namespace retcc {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

struct PngErrorState {
    std::string message;
};

// libpng error handling is longjmp-based; the handler records the message
// and jumps back to the setjmp point in the caller.
void png_error_handler(png_structp png, png_const_charp msg) {
    auto* state = static_cast<PngErrorState*>(png_get_error_ptr(png));
    if (state) state->message = msg ? msg : "unknown error";
    png_longjmp(png, 1);
}

void png_warning_sink(png_structp, png_const_charp) {}

std::string lower_ext(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return ext;
}

} // namespace

Raster load_png(const std::filesystem::path& path) {
    FilePtr file(std::fopen(path.string().c_str(), "rb"));
    if (!file) throw Error(Errc::missing_file, "cannot open '" + path.string() + "'");

    png_byte sig[8] = {};
    if (std::fread(sig, 1, 8, file.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0)
        throw Error(Errc::bad_format, "'" + path.string() + "' is not a PNG file");

    PngErrorState err;
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &err,
                                             png_error_handler, png_warning_sink);
    if (!png) throw Error(Errc::io_error, "png_create_read_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw Error(Errc::io_error, "png_create_info_struct failed");
    }

    // Raster and row pointers live outside the setjmp region so the throw
    // below unwinds them normally.
    Raster out;
    std::vector<png_bytep> rows;
    int channels = 0;

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw Error(Errc::bad_format, "'" + path.string() + "': libpng: " + err.message);
    }

    png_init_io(png, file.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    png_set_expand(png);
    png_set_strip_16(png);
    png_set_gray_to_rgb(png);
    png_set_strip_alpha(png);
    png_read_update_info(png, info);

    channels = png_get_channels(png, info);
    if (channels != 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw Error(Errc::bad_format, "'" + path.string() + "': unsupported channel layout");
    }

    out = Raster(static_cast<int>(png_get_image_width(png, info)),
                 static_cast<int>(png_get_image_height(png, info)));
    rows.resize(out.height());
    for (int y = 0; y < out.height(); ++y)
        rows[y] = reinterpret_cast<png_bytep>(&out.at(0, y));
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return out;
}

void save_png(const Raster& img, const std::filesystem::path& path) {
    if (img.empty()) throw Error(Errc::empty_input, "refusing to write an empty raster");

    FilePtr file(std::fopen(path.string().c_str(), "wb"));
    if (!file) throw Error(Errc::io_error, "cannot write '" + path.string() + "'");

    PngErrorState err;
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &err,
                                              png_error_handler, png_warning_sink);
    if (!png) throw Error(Errc::io_error, "png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        throw Error(Errc::io_error, "png_create_info_struct failed");
    }

    std::vector<png_bytep> rows(img.height());
    for (int y = 0; y < img.height(); ++y)
        rows[y] = reinterpret_cast<png_bytep>(const_cast<Pixel*>(&img.at(0, y)));

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw Error(Errc::io_error, "'" + path.string() + "': libpng: " + err.message);
    }

    png_init_io(png, file.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(img.width()),
                 static_cast<png_uint_32>(img.height()), 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

Raster load_image(const std::filesystem::path& path) {
    if (lower_ext(path) == ".png") return load_png(path);
    throw Error(Errc::bad_format, "unsupported image format '" + path.string() +
                                      "' (only .png is supported)");
}

} // namespace retcc
