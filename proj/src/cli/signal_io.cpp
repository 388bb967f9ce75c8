#include "relsamp/cli/signal_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "relsamp/error.hpp"

namespace relsamp::cli {

namespace {

constexpr std::array<char, 4> kMagic{'T', 'F', 'R', 'S'};

template <typename U>
U to_little(U v) {
  if constexpr (std::endian::native == std::endian::big) {
    U out = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) {
      out = static_cast<U>((out << 8) | (v & 0xFF));
      v >>= 8;
    }
    return out;
  } else {
    return v;
  }
}

void put_u32(std::ostream& out, std::uint32_t v) {
  v = to_little(v);
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_f64(std::ostream& out, double x) {
  const std::uint64_t v = to_little(std::bit_cast<std::uint64_t>(x));
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename U>
U get(std::istream& in, const char* what) {
  U v = 0;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) {
    throw Error(ErrorKind::Io, std::string("signal file truncated while reading ") + what);
  }
  return to_little(v);
}

}  // namespace

void write_signal(std::ostream& out, const Signal& f) {
  out.write(kMagic.data(), kMagic.size());
  put_u32(out, kSignalFormatVersion);
  put_u32(out, static_cast<std::uint32_t>(f.dim()));
  for (int t = 0; t < f.dim(); ++t) {
    put_f64(out, f[t].real());
    put_f64(out, f[t].imag());
  }
  if (!out) throw Error(ErrorKind::Io, "failed to write signal");
}

Signal read_signal(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw Error(ErrorKind::Io, "not a TFRS signal file (bad magic)");
  }
  const auto version = get<std::uint32_t>(in, "version");
  if (version != kSignalFormatVersion) {
    throw Error(ErrorKind::Io, "unsupported TFRS version " + std::to_string(version));
  }
  const auto L = get<std::uint32_t>(in, "length");
  if (L == 0 || L > (1u << 24)) {
    throw Error(ErrorKind::Io, "invalid TFRS length " + std::to_string(L));
  }
  CVector values(L);
  for (std::uint32_t t = 0; t < L; ++t) {
    const double re = std::bit_cast<double>(get<std::uint64_t>(in, "samples"));
    const double im = std::bit_cast<double>(get<std::uint64_t>(in, "samples"));
    values[t] = Complex(re, im);
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw Error(ErrorKind::Io, "trailing bytes after TFRS payload");
  }
  return Signal(std::move(values));
}

void write_signal_file(const std::filesystem::path& path, const Signal& f) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  write_signal(out, f);
}

Signal read_signal_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return read_signal(in);
}

}  // namespace relsamp::cli
