#pragma once

#include <string>

#include "tfi/types.hpp"

namespace tfi {

/// Binary stack file, version 1.
///
/// Header (22 bytes, little-endian):
///   magic    4 bytes  "TFIS"
///   version  u16      1
///   width    u32
///   height   u32
///   frames   u32
///   channels u8       1 or 3
///   depth    u8       8 or 16
///   reserved 2 bytes  zero
/// Payload: frames * width * height * channels samples, u8 or u16 LE,
/// frame-major, then row-major, channels interleaved. The declared sizes
/// must match the payload length exactly.
void write_stack(const FrameStack& stack, const std::string& path);
FrameStack read_stack(const std::string& path);

/// Image file IO. Format chosen by extension on write (.png, .pgm);
/// detected by content on read. PGM is binary P5 grayscale (16-bit
/// big-endian per the format); PNG supports grayscale and RGB at 8 or 16
/// bits.
Frame read_image(const std::string& path);
void write_image(const Frame& frame, const std::string& path);

/// Loads all files in `dir` whose name matches `pattern` (shell-style
/// * and ? wildcards), in lexicographic filename order, as one stack.
/// All frames must agree in size, channels and bit depth.
FrameStack import_frames(const std::string& dir, const std::string& pattern);

}  // namespace tfi
