#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "relsamp/tfcore.hpp"

namespace relsamp::cli {

// "TFRS", u32 version, u32 L, then 2L float64 (re, im interleaved), all
// little-endian.
inline constexpr std::uint32_t kSignalFormatVersion = 1;

void write_signal(std::ostream& out, const Signal& f);
Signal read_signal(std::istream& in);
void write_signal_file(const std::filesystem::path& path, const Signal& f);
Signal read_signal_file(const std::filesystem::path& path);

}  // namespace relsamp::cli
