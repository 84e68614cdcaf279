#include "tfi/stack_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <vector>

namespace tfi {

namespace {

constexpr char kMagic[4] = {'T', 'F', 'I', 'S'};
constexpr uint16_t kVersion = 1;

void put_u16(std::ostream& os, uint16_t v) {
  const unsigned char b[2] = {(unsigned char)(v & 0xFF),
                              (unsigned char)(v >> 8)};
  os.write(reinterpret_cast<const char*>(b), 2);
}

void put_u32(std::ostream& os, uint32_t v) {
  const unsigned char b[4] = {
      (unsigned char)(v & 0xFF), (unsigned char)((v >> 8) & 0xFF),
      (unsigned char)((v >> 16) & 0xFF), (unsigned char)(v >> 24)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

uint16_t get_u16(const unsigned char* p) {
  return uint16_t(p[0]) | (uint16_t(p[1]) << 8);
}

uint32_t get_u32(const unsigned char* p) {
  return uint32_t(p[0]) | (uint32_t(p[1]) << 8) | (uint32_t(p[2]) << 16) |
         (uint32_t(p[3]) << 24);
}

std::string lower_ext(const std::string& path) {
  std::string ext = std::filesystem::path(path).extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return char(std::tolower(c)); });
  return ext;
}

// --- PGM (binary P5) ---

int pgm_token(std::istream& in) {
  // next integer token, skipping whitespace and '#' comments
  int c = in.get();
  for (;;) {
    while (c != EOF && std::isspace(c)) c = in.get();
    if (c == '#') {
      while (c != EOF && c != '\n') c = in.get();
      continue;
    }
    break;
  }
  int value = 0;
  bool any = false;
  while (c != EOF && std::isdigit(c)) {
    value = value * 10 + (c - '0');
    any = true;
    c = in.get();
  }
  if (!any) throw Error(Err::UnsupportedFormat, "malformed PGM header");
  return value;
}

Frame read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Err::IoError, "cannot open " + path);
  char p, five;
  in.get(p);
  in.get(five);
  if (p != 'P' || five != '5')
    throw Error(Err::UnsupportedFormat, path + ": not a binary PGM");
  const int w = pgm_token(in);
  const int h = pgm_token(in);
  const int maxval = pgm_token(in);
  if (w < 1 || h < 1) throw Error(Err::BadDimensions, path + ": empty image");
  if (maxval < 1 || maxval > 65535)
    throw Error(Err::UnsupportedFormat, path + ": bad maxval");

  Frame f;
  f.width = uint32_t(w);
  f.height = uint32_t(h);
  f.channels = 1;
  f.bit_depth = maxval > 255 ? 16 : 8;
  f.counts.resize(f.samples());
  const size_t bytes = f.samples() * (f.bit_depth / 8);
  std::vector<unsigned char> buf(bytes);
  in.read(reinterpret_cast<char*>(buf.data()), std::streamsize(bytes));
  if (size_t(in.gcount()) != bytes)
    throw Error(Err::TruncatedPayload, path + ": truncated PGM payload");
  if (f.bit_depth == 8) {
    for (size_t i = 0; i < f.counts.size(); ++i) f.counts[i] = buf[i];
  } else {
    for (size_t i = 0; i < f.counts.size(); ++i)
      f.counts[i] = uint16_t((buf[2 * i] << 8) | buf[2 * i + 1]);  // big-endian
  }
  return f;
}

void write_pgm(const Frame& f, const std::string& path) {
  if (f.channels != 1)
    throw Error(Err::UnsupportedFormat, "PGM is grayscale only");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(Err::IoError, "cannot write " + path);
  os << "P5\n" << f.width << " " << f.height << "\n"
     << (f.bit_depth == 8 ? 255 : 65535) << "\n";
  if (f.bit_depth == 8) {
    std::vector<unsigned char> buf(f.counts.size());
    for (size_t i = 0; i < f.counts.size(); ++i)
      buf[i] = (unsigned char)f.counts[i];
    os.write(reinterpret_cast<const char*>(buf.data()),
             std::streamsize(buf.size()));
  } else {
    std::vector<unsigned char> buf(f.counts.size() * 2);
    for (size_t i = 0; i < f.counts.size(); ++i) {
      buf[2 * i] = (unsigned char)(f.counts[i] >> 8);
      buf[2 * i + 1] = (unsigned char)(f.counts[i] & 0xFF);
    }
    os.write(reinterpret_cast<const char*>(buf.data()),
             std::streamsize(buf.size()));
  }
  if (!os) throw Error(Err::IoError, "write failed: " + path);
}

// --- PNG via libpng ---

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

Frame read_png(const std::string& path) {
  PngReader r;
  r.fp = std::fopen(path.c_str(), "rb");
  if (!r.fp) throw Error(Err::IoError, "cannot open " + path);
  unsigned char sig[8];
  if (std::fread(sig, 1, 8, r.fp) != 8 || png_sig_cmp(sig, 0, 8) != 0)
    throw Error(Err::UnsupportedFormat, path + ": not a PNG file");
  std::rewind(r.fp);

  r.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                 nullptr);
  if (!r.png) throw Error(Err::IoError, "libpng init failed");
  r.info = png_create_info_struct(r.png);
  if (!r.info) throw Error(Err::IoError, "libpng init failed");
  if (setjmp(png_jmpbuf(r.png)))
    throw Error(Err::IoError, path + ": PNG decode error");

  png_init_io(r.png, r.fp);
  png_read_png(r.png, r.info,
               PNG_TRANSFORM_EXPAND | PNG_TRANSFORM_SWAP_ENDIAN, nullptr);

  const png_uint_32 w = png_get_image_width(r.png, r.info);
  const png_uint_32 h = png_get_image_height(r.png, r.info);
  const int depth = png_get_bit_depth(r.png, r.info);
  const int color = png_get_color_type(r.png, r.info);

  int channels;
  if (color == PNG_COLOR_TYPE_GRAY)
    channels = 1;
  else if (color == PNG_COLOR_TYPE_RGB)
    channels = 3;
  else
    throw Error(Err::UnsupportedFormat,
                path + ": only grayscale and RGB PNG without alpha");
  if (depth != 8 && depth != 16)
    throw Error(Err::UnsupportedBitDepth,
                path + ": PNG bit depth must be 8 or 16");

  Frame f;
  f.width = w;
  f.height = h;
  f.channels = uint8_t(channels);
  f.bit_depth = uint8_t(depth);
  f.counts.resize(f.samples());

  png_bytepp rows = png_get_rows(r.png, r.info);
  const size_t row_samples = size_t(w) * channels;
  for (png_uint_32 y = 0; y < h; ++y) {
    if (depth == 8) {
      for (size_t i = 0; i < row_samples; ++i)
        f.counts[size_t(y) * row_samples + i] = rows[y][i];
    } else {
      const uint16_t* src = reinterpret_cast<const uint16_t*>(rows[y]);
      for (size_t i = 0; i < row_samples; ++i)
        f.counts[size_t(y) * row_samples + i] = src[i];
    }
  }
  return f;
}

void write_png(const Frame& f, const std::string& path) {
  PngWriter wtr;
  wtr.fp = std::fopen(path.c_str(), "wb");
  if (!wtr.fp) throw Error(Err::IoError, "cannot write " + path);
  wtr.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                    nullptr);
  if (!wtr.png) throw Error(Err::IoError, "libpng init failed");
  wtr.info = png_create_info_struct(wtr.png);
  if (!wtr.info) throw Error(Err::IoError, "libpng init failed");
  if (setjmp(png_jmpbuf(wtr.png)))
    throw Error(Err::IoError, path + ": PNG encode error");

  png_init_io(wtr.png, wtr.fp);
  png_set_IHDR(wtr.png, wtr.info, f.width, f.height, f.bit_depth,
               f.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);

  const size_t row_samples = size_t(f.width) * f.channels;
  std::vector<png_bytep> rows(f.height);
  std::vector<unsigned char> data;
  if (f.bit_depth == 8) {
    data.resize(f.counts.size());
    for (size_t i = 0; i < f.counts.size(); ++i)
      data[i] = (unsigned char)f.counts[i];
    for (size_t y = 0; y < f.height; ++y)
      rows[y] = data.data() + y * row_samples;
  } else {
    data.resize(f.counts.size() * 2);
    std::memcpy(data.data(), f.counts.data(), data.size());
    for (size_t y = 0; y < f.height; ++y)
      rows[y] = data.data() + y * row_samples * 2;
  }
  png_set_rows(wtr.png, wtr.info, rows.data());
  png_write_png(wtr.png, wtr.info,
                f.bit_depth == 16 ? PNG_TRANSFORM_SWAP_ENDIAN
                                  : PNG_TRANSFORM_IDENTITY,
                nullptr);
}

bool glob_match(const char* pattern, const char* name) {
  // '*' and '?' wildcards
  if (*pattern == '\0') return *name == '\0';
  if (*pattern == '*')
    return glob_match(pattern + 1, name) ||
           (*name != '\0' && glob_match(pattern, name + 1));
  if (*name != '\0' && (*pattern == '?' || *pattern == *name))
    return glob_match(pattern + 1, name + 1);
  return false;
}

}  // namespace

void write_stack(const FrameStack& stack, const std::string& path) {
  require_valid(stack);
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(Err::IoError, "cannot write " + path);

  os.write(kMagic, 4);
  put_u16(os, kVersion);
  put_u32(os, stack.width());
  put_u32(os, stack.height());
  put_u32(os, uint32_t(stack.m()));
  os.put(char(stack.channels()));
  os.put(char(stack.bit_depth()));
  os.put(0);
  os.put(0);

  const bool wide = stack.bit_depth() == 16;
  std::vector<unsigned char> buf;
  for (const Frame& f : stack.frames) {
    buf.resize(f.counts.size() * (wide ? 2 : 1));
    if (wide) {
      for (size_t i = 0; i < f.counts.size(); ++i) {
        buf[2 * i] = (unsigned char)(f.counts[i] & 0xFF);
        buf[2 * i + 1] = (unsigned char)(f.counts[i] >> 8);
      }
    } else {
      for (size_t i = 0; i < f.counts.size(); ++i)
        buf[i] = (unsigned char)f.counts[i];
    }
    os.write(reinterpret_cast<const char*>(buf.data()),
             std::streamsize(buf.size()));
  }
  if (!os) throw Error(Err::IoError, "write failed: " + path);
}

FrameStack read_stack(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Err::IoError, "cannot open " + path);

  unsigned char header[22];
  in.read(reinterpret_cast<char*>(header), sizeof header);
  if (size_t(in.gcount()) != sizeof header)
    throw Error(Err::BadMagic, path + ": file too short for a stack header");
  if (std::memcmp(header, kMagic, 4) != 0)
    throw Error(Err::BadMagic, path + ": bad magic");
  if (get_u16(header + 4) != kVersion)
    throw Error(Err::UnsupportedFormat, path + ": unsupported version");

  const uint32_t width = get_u32(header + 6);
  const uint32_t height = get_u32(header + 10);
  const uint32_t frames = get_u32(header + 14);
  const uint8_t channels = header[18];
  const uint8_t depth = header[19];

  if (depth != 8 && depth != 16)
    throw Error(Err::UnsupportedBitDepth,
                path + ": bit depth " + std::to_string(depth));
  if (channels != 1 && channels != 3)
    throw Error(Err::UnsupportedFormat,
                path + ": channel count " + std::to_string(channels));
  if (frames == 0) throw Error(Err::EmptyStack, path + ": zero frames");
  if (width == 0 || height == 0)
    throw Error(Err::BadDimensions, path + ": zero width or height");

  in.seekg(0, std::ios::end);
  const auto file_size = uint64_t(in.tellg());
  const uint64_t frame_samples = uint64_t(width) * height * channels;
  const uint64_t expect =
      sizeof header + frame_samples * frames * (depth / 8);
  if (file_size != expect)
    throw Error(Err::TruncatedPayload,
                path + ": payload is " + std::to_string(file_size) +
                    " bytes, header declares " + std::to_string(expect));
  in.seekg(sizeof header, std::ios::beg);

  FrameStack stack;
  stack.frames.resize(frames);
  std::vector<unsigned char> buf(frame_samples * (depth / 8));
  for (uint32_t a = 0; a < frames; ++a) {
    Frame& f = stack.frames[a];
    f.width = width;
    f.height = height;
    f.channels = channels;
    f.bit_depth = depth;
    f.counts.resize(frame_samples);
    in.read(reinterpret_cast<char*>(buf.data()), std::streamsize(buf.size()));
    if (size_t(in.gcount()) != buf.size())
      throw Error(Err::TruncatedPayload, path + ": short read");
    if (depth == 8) {
      for (size_t i = 0; i < frame_samples; ++i) f.counts[i] = buf[i];
    } else {
      for (size_t i = 0; i < frame_samples; ++i)
        f.counts[i] = uint16_t(buf[2 * i] | (buf[2 * i + 1] << 8));
    }
  }
  return stack;
}

Frame read_image(const std::string& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw Error(Err::IoError, "cannot open " + path);
  unsigned char sig[8] = {};
  probe.read(reinterpret_cast<char*>(sig), sizeof sig);
  probe.close();
  if (sig[0] == 'P' && sig[1] == '5') return read_pgm(path);
  if (png_sig_cmp(sig, 0, 8) == 0) return read_png(path);
  throw Error(Err::UnsupportedFormat, path + ": not a PGM or PNG file");
}

void write_image(const Frame& frame, const std::string& path) {
  const std::string ext = lower_ext(path);
  if (ext == ".pgm")
    write_pgm(frame, path);
  else if (ext == ".png")
    write_png(frame, path);
  else
    throw Error(Err::UnsupportedFormat,
                path + ": output extension must be .png or .pgm");
}

FrameStack import_frames(const std::string& dir, const std::string& pattern) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir))
    throw Error(Err::IoError, dir + " is not a directory");

  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (glob_match(pattern.c_str(), name.c_str())) names.push_back(name);
  }
  if (names.empty())
    throw Error(Err::NoFrames,
                dir + ": no files match pattern '" + pattern + "'");
  std::sort(names.begin(), names.end());

  FrameStack stack;
  stack.frames.reserve(names.size());
  for (const std::string& name : names) {
    Frame f = read_image((fs::path(dir) / name).string());
    if (!stack.frames.empty()) {
      const Frame& first = stack.frames[0];
      if (f.bit_depth != first.bit_depth)
        throw Error(Err::UnsupportedFormat,
                    name + ": bit depth differs from first frame");
      if (f.width != first.width || f.height != first.height ||
          f.channels != first.channels)
        throw Error(Err::ShapeMismatch,
                    name + ": shape differs from first frame");
    }
    stack.frames.push_back(std::move(f));
  }
  return stack;
}

}  // namespace tfi
