#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "vcv/acoustics.hpp"
#include "vcv/error.hpp"

namespace vcv::acoustics {

namespace {

void put_u32(std::vector<std::uint8_t>& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xffu));
}

void put_u16(std::vector<std::uint8_t>& b, std::uint16_t v) {
  b.push_back(static_cast<std::uint8_t>(v & 0xffu));
  b.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_tag(std::vector<std::uint8_t>& b, const char* tag) { b.insert(b.end(), tag, tag + 4); }

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) | (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

std::uint16_t get_u16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

}  // namespace

std::vector<std::uint8_t> encode_wav(std::span<const double> samples, double sample_rate) {
  const auto rate = static_cast<std::uint32_t>(std::lround(sample_rate));
  const auto data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
  std::vector<std::uint8_t> b;
  b.reserve(44 + data_bytes);
  put_tag(b, "RIFF");
  put_u32(b, 36 + data_bytes);
  put_tag(b, "WAVE");
  put_tag(b, "fmt ");
  put_u32(b, 16);
  put_u16(b, 1);  // PCM
  put_u16(b, 1);  // mono
  put_u32(b, rate);
  put_u32(b, rate * 2);
  put_u16(b, 2);
  put_u16(b, 16);
  put_tag(b, "data");
  put_u32(b, data_bytes);
  for (double s : samples) {
    const auto q = static_cast<std::int16_t>(std::lround(std::clamp(s, -1.0, 1.0) * 32767.0));
    put_u16(b, static_cast<std::uint16_t>(q));
  }
  return b;
}

void write_wav(const std::string& path, std::span<const double> samples, double sample_rate) {
  const auto bytes = encode_wav(samples, sample_rate);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("wav: cannot open '" + path + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("wav: write failed for '" + path + "'");
}

std::vector<double> decode_wav(std::span<const std::uint8_t> bytes, double* sample_rate) {
  if (bytes.size() < 44 || std::memcmp(bytes.data(), "RIFF", 4) != 0 || std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw Error("wav: not a RIFF/WAVE stream");
  }
  if (get_u16(bytes, 20) != 1 || get_u16(bytes, 22) != 1 || get_u16(bytes, 34) != 16) {
    throw Error("wav: expected mono 16-bit PCM");
  }
  if (sample_rate != nullptr) *sample_rate = get_u32(bytes, 24);
  const auto n = get_u32(bytes, 40) / 2;
  if (44 + static_cast<std::size_t>(n) * 2 > bytes.size()) throw Error("wav: truncated data chunk");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = static_cast<std::int16_t>(get_u16(bytes, 44 + 2 * i)) / 32767.0;
  }
  return out;
}

}  // namespace vcv::acoustics
