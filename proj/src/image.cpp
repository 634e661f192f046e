#include "sceneloom/image.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <png.h>

#include "sceneloom/error.hpp"

namespace sceneloom {

Image::Image(int width, int height, Rgba fill)
    : width_(width), height_(height), pixels_(static_cast<std::size_t>(width) * height * 4)
{
    for (std::size_t i = 0; i < pixels_.size(); i += 4) {
        pixels_[i] = fill.r;
        pixels_[i + 1] = fill.g;
        pixels_[i + 2] = fill.b;
        pixels_[i + 3] = fill.a;
    }
}

Rgba Image::at(int x, int y) const
{
    const auto i = (static_cast<std::size_t>(y) * width_ + x) * 4;
    return {pixels_[i], pixels_[i + 1], pixels_[i + 2], pixels_[i + 3]};
}

void Image::set(int x, int y, Rgba c)
{
    const auto i = (static_cast<std::size_t>(y) * width_ + x) * 4;
    pixels_[i] = c.r;
    pixels_[i + 1] = c.g;
    pixels_[i + 2] = c.b;
    pixels_[i + 3] = c.a;
}

void Image::blend(int x, int y, Rgba c)
{
    const Rgba d = at(x, y);
    auto mix = [&](std::uint8_t s, std::uint8_t t) {
        return static_cast<std::uint8_t>((s * c.a + t * (255 - c.a) + 127) / 255);
    };
    set(x, y, {mix(c.r, d.r), mix(c.g, d.g), mix(c.b, d.b), 255});
}

std::vector<std::uint8_t> encode_png(const Image& image)
{
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    png.width = static_cast<png_uint_32>(image.width());
    png.height = static_cast<png_uint_32>(image.height());
    png.format = PNG_FORMAT_RGBA;

    png_alloc_size_t size = 0;
    if (!png_image_write_to_memory(&png, nullptr, &size, 0, image.bytes().data(), 0, nullptr))
        throw Error(ErrorCode::Io, std::string("png sizing failed: ") + png.message);
    std::vector<std::uint8_t> out(size);
    if (!png_image_write_to_memory(&png, out.data(), &size, 0, image.bytes().data(), 0, nullptr))
        throw Error(ErrorCode::Io, std::string("png encode failed: ") + png.message);
    out.resize(size);
    return out;
}

Image decode_png(std::span<const std::uint8_t> bytes)
{
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&png, bytes.data(), bytes.size()))
        throw Error(ErrorCode::Io, std::string("png decode failed: ") + png.message);
    png.format = PNG_FORMAT_RGBA;
    Image image(static_cast<int>(png.width), static_cast<int>(png.height));
    if (!png_image_finish_read(&png, nullptr, image.bytes().data(), 0, nullptr)) {
        png_image_free(&png);
        throw Error(ErrorCode::Io, std::string("png decode failed: ") + png.message);
    }
    return image;
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes)
{
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty())
        std::filesystem::create_directories(parent);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::Io, "cannot write " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

void write_file(const std::string& path, const std::string& text)
{
    write_file(path, std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::vector<std::uint8_t> read_file_bytes(const std::string& path)
{
    const auto text = read_file_text(path);
    return {text.begin(), text.end()};
}

std::string read_file_text(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::Io, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace sceneloom
