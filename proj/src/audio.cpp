// Copyright 2026 The edcrir Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "edcrir/audio.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "edcrir/error.hpp"
#include "edcrir/fft.hpp"
#include "edcrir/io.hpp"

namespace edcrir {

static_assert(std::endian::native == std::endian::little, "WAV I/O assumes a little-endian host");

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

template <typename T>
T read_le(const unsigned char* p) {
  T v;
  std::memcpy(&v, p, sizeof(T));
  return v;
}

template <typename T>
void put_le(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

std::uint32_t read_u32(std::istream& in) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) throw ValidationError("WAV: truncated header");
  return read_le<std::uint32_t>(b);
}

std::string read_tag(std::istream& in) {
  char b[4];
  if (!in.read(b, 4)) throw ValidationError("WAV: truncated header");
  return std::string(b, 4);
}

double decode_sample(const unsigned char* p, std::uint16_t format, std::uint16_t bits) {
  if (format == kFormatFloat) {
    if (bits == 32) return read_le<float>(p);
    return read_le<double>(p);
  }
  switch (bits) {
    case 16:
      return read_le<std::int16_t>(p) / 32768.0;
    case 24: {
      std::int32_t v = p[0] | (p[1] << 8) | (p[2] << 16);
      if (v & 0x800000) v |= ~0xFFFFFF;
      return v / 8388608.0;
    }
    case 32:
      return read_le<std::int32_t>(p) / 2147483648.0;
    default:
      throw ValidationError("WAV: unsupported bit depth");
  }
}

}  // namespace

AudioBuffer read_wav(std::istream& in) {
  if (read_tag(in) != "RIFF") throw ValidationError("WAV: missing RIFF header");
  read_u32(in);
  if (read_tag(in) != "WAVE") throw ValidationError("WAV: missing WAVE tag");

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  bool have_fmt = false;
  while (true) {
    const std::string tag = read_tag(in);
    const std::uint32_t size = read_u32(in);
    if (tag == "fmt ") {
      std::vector<unsigned char> fmt(size);
      if (size < 16 || !in.read(reinterpret_cast<char*>(fmt.data()), size)) {
        throw ValidationError("WAV: bad fmt chunk");
      }
      format = read_le<std::uint16_t>(&fmt[0]);
      channels = read_le<std::uint16_t>(&fmt[2]);
      rate = read_le<std::uint32_t>(&fmt[4]);
      bits = read_le<std::uint16_t>(&fmt[14]);
      if (format == kFormatExtensible) {
        if (size < 26) throw ValidationError("WAV: bad extensible fmt chunk");
        format = read_le<std::uint16_t>(&fmt[24]);
      }
      have_fmt = true;
      if (size % 2) in.ignore(1);
    } else if (tag == "data") {
      if (!have_fmt) throw ValidationError("WAV: data chunk before fmt chunk");
      const bool ok_pcm = format == kFormatPcm && (bits == 16 || bits == 24 || bits == 32);
      const bool ok_float = format == kFormatFloat && (bits == 32 || bits == 64);
      if (!ok_pcm && !ok_float) throw ValidationError("WAV: unsupported sample format");
      if (channels == 0 || rate == 0) throw ValidationError("WAV: invalid channel count or rate");
      std::vector<unsigned char> data(size);
      in.read(reinterpret_cast<char*>(data.data()), size);
      const std::size_t got = static_cast<std::size_t>(in.gcount());
      const std::size_t bytes = bits / 8;
      const std::size_t frames = got / (bytes * channels);
      AudioBuffer buf;
      buf.sample_rate = rate;
      buf.source_channels = channels;
      buf.samples.resize(frames);
      for (std::size_t f = 0; f < frames; ++f) {
        double acc = 0.0;
        for (std::size_t c = 0; c < channels; ++c) {
          acc += decode_sample(&data[(f * channels + c) * bytes], format, bits);
        }
        buf.samples[f] = acc / channels;
      }
      return buf;
    } else {
      in.ignore(size + (size % 2));
      if (!in) throw ValidationError("WAV: no data chunk");
    }
  }
}

AudioBuffer read_wav(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return read_wav(in);
}

void write_wav(std::ostream& out, std::span<const double> samples, double sample_rate) {
  if (!(sample_rate > 0.0) || sample_rate != std::round(sample_rate)) {
    throw ValidationError("WAV: sample rate must be a positive integer");
  }
  const auto rate = static_cast<std::uint32_t>(sample_rate);
  const auto data_bytes = static_cast<std::uint32_t>(samples.size() * 4);
  out.write("RIFF", 4);
  put_le<std::uint32_t>(out, 36 + data_bytes);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  put_le<std::uint32_t>(out, 16);
  put_le<std::uint16_t>(out, kFormatFloat);
  put_le<std::uint16_t>(out, 1);
  put_le<std::uint32_t>(out, rate);
  put_le<std::uint32_t>(out, rate * 4);
  put_le<std::uint16_t>(out, 4);
  put_le<std::uint16_t>(out, 32);
  out.write("data", 4);
  put_le<std::uint32_t>(out, data_bytes);
  for (double s : samples) put_le<float>(out, static_cast<float>(s));
  if (!out) throw ValidationError("WAV: write failed");
}

void write_wav(const std::filesystem::path& path, std::span<const double> samples,
               double sample_rate) {
  std::ofstream out = open_output(path);
  write_wav(out, samples, sample_rate);
}

Rir read_rir_wav(const std::filesystem::path& path) {
  AudioBuffer buf = read_wav(path);
  Rir rir;
  rir.samples = std::move(buf.samples);
  rir.sample_rate = buf.sample_rate;
  validate_rir(rir);
  return rir;
}

void write_rir_wav(const std::filesystem::path& path, const Rir& rir) {
  write_wav(path, rir.samples, rir.sample_rate);
}

AudioBuffer convolve(const AudioBuffer& audio, const Rir& rir) {
  validate_rir(rir);
  if (audio.samples.empty()) throw ValidationError("audio is empty");
  if (audio.sample_rate != rir.sample_rate) {
    throw ValidationError("audio and RIR sample rates differ (resampling is not supported)");
  }
  AudioBuffer out;
  out.sample_rate = audio.sample_rate;
  out.samples = fft_convolve(audio.samples, rir.samples);
  peak_normalize(out.samples, std::pow(10.0, kConvolvePeakDbfs / 20.0));
  return out;
}

}  // namespace edcrir
