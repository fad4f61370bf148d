// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

#include "paf/paft_io.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "paf/errors.hpp"

namespace paf {

namespace {

constexpr std::array<char, 4> kMagic = {'P', 'A', 'F', 'T'};
constexpr std::uint16_t kVersion = 1;
constexpr std::uint8_t kDtypeF32 = 1;
constexpr std::uint8_t kMaxRank = 8;

void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint16_t get_u16(const unsigned char* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t get_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

static_assert(std::numeric_limits<float>::is_iec559 && sizeof(float) == 4,
              "paft payload assumes IEC 559 f32");

}  // namespace

void write_tensor(const std::filesystem::path& path, std::span<const std::uint32_t> dims,
                  std::span<const float> data) {
    if (dims.empty() || dims.size() > kMaxRank) {
        throw std::invalid_argument("tensor rank must be in [1, 8]");
    }
    std::size_t count = 1;
    for (std::uint32_t d : dims) {
        if (d == 0) throw std::invalid_argument("tensor dimensions must be positive");
        count *= d;
    }
    if (count != data.size()) {
        throw std::invalid_argument("tensor payload size does not match dims");
    }

    std::string header;
    header.append(kMagic.data(), kMagic.size());
    put_u16(header, kVersion);
    header.push_back(static_cast<char>(kDtypeF32));
    header.push_back(static_cast<char>(dims.size()));
    for (std::uint32_t d : dims) put_u32(header, d);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    // Little-endian payload; this code targets little-endian hosts.
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size() * sizeof(float)));
    if (!out) throw IoError("write failed: " + path.string());
}

Tensor read_tensor(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed: " + path.string());

    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    if (bytes.size() < 8) throw TruncatedPayloadError("file shorter than header: " + path.string());
    if (std::memcmp(p, kMagic.data(), kMagic.size()) != 0) {
        throw BadMagicError("bad magic: " + path.string());
    }
    const std::uint16_t version = get_u16(p + 4);
    if (version != kVersion) {
        throw VersionMismatchError("unsupported version " + std::to_string(version) + ": " +
                                   path.string());
    }
    const std::uint8_t dtype = p[6];
    if (dtype != kDtypeF32) {
        throw FormatError("unsupported dtype " + std::to_string(dtype) + ": " + path.string());
    }
    const std::uint8_t rank = p[7];
    if (rank == 0 || rank > kMaxRank) {
        throw FormatError("unsupported rank " + std::to_string(rank) + ": " + path.string());
    }
    const std::size_t header_size = 8 + 4 * static_cast<std::size_t>(rank);
    if (bytes.size() < header_size) {
        throw TruncatedPayloadError("file shorter than dims: " + path.string());
    }

    Tensor t;
    std::size_t count = 1;
    for (int i = 0; i < rank; ++i) {
        std::uint32_t d = get_u32(p + 8 + 4 * i);
        if (d == 0) throw FormatError("zero dimension: " + path.string());
        t.dims.push_back(d);
        count *= d;
    }
    const std::size_t expected = header_size + count * sizeof(float);
    if (bytes.size() < expected) {
        throw TruncatedPayloadError("payload truncated: " + path.string());
    }
    if (bytes.size() > expected) {
        throw FormatError("trailing bytes after payload: " + path.string());
    }
    t.data.resize(count);
    std::memcpy(t.data.data(), bytes.data() + header_size, count * sizeof(float));
    return t;
}

void write_grids(const std::filesystem::path& path, std::span<const ScalarGrid> grids) {
    if (grids.empty()) throw std::invalid_argument("cannot write an empty grid stack");
    const int w = grids[0].width();
    const int h = grids[0].height();
    std::vector<float> payload;
    payload.reserve(grids.size() * static_cast<std::size_t>(w) * h);
    for (const ScalarGrid& g : grids) {
        if (g.width() != w || g.height() != h) {
            throw std::invalid_argument("grid stack dimensions disagree");
        }
        payload.insert(payload.end(), g.data(), g.data() + g.size());
    }
    const std::uint32_t dims[3] = {static_cast<std::uint32_t>(grids.size()),
                                   static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(w)};
    write_tensor(path, dims, payload);
}

std::vector<ScalarGrid> read_grids(const std::filesystem::path& path) {
    Tensor t = read_tensor(path);
    if (t.dims.size() != 3) throw FormatError("expected rank-3 tensor: " + path.string());
    const int channels = static_cast<int>(t.dims[0]);
    const int h = static_cast<int>(t.dims[1]);
    const int w = static_cast<int>(t.dims[2]);
    std::vector<ScalarGrid> grids;
    grids.reserve(channels);
    const std::size_t plane = static_cast<std::size_t>(w) * h;
    for (int c = 0; c < channels; ++c) {
        ScalarGrid g(w, h);
        std::memcpy(g.data(), t.data.data() + c * plane, plane * sizeof(float));
        grids.push_back(std::move(g));
    }
    return grids;
}

void write_vector_grids(const std::filesystem::path& path, std::span<const VectorGrid> grids) {
    if (grids.empty()) throw std::invalid_argument("cannot write an empty grid stack");
    const int w = grids[0].width();
    const int h = grids[0].height();
    std::vector<float> payload;
    payload.reserve(grids.size() * 2 * static_cast<std::size_t>(w) * h);
    for (const VectorGrid& g : grids) {
        if (g.width() != w || g.height() != h) {
            throw std::invalid_argument("grid stack dimensions disagree");
        }
        // De-interleave into a u plane followed by a v plane.
        for (int ch = 0; ch < 2; ++ch) {
            const float* d = g.data();
            for (std::size_t i = 0; i < static_cast<std::size_t>(w) * h; ++i) {
                payload.push_back(d[2 * i + ch]);
            }
        }
    }
    const std::uint32_t dims[3] = {static_cast<std::uint32_t>(2 * grids.size()),
                                   static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(w)};
    write_tensor(path, dims, payload);
}

std::vector<VectorGrid> read_vector_grids(const std::filesystem::path& path) {
    Tensor t = read_tensor(path);
    if (t.dims.size() != 3) throw FormatError("expected rank-3 tensor: " + path.string());
    if (t.dims[0] % 2 != 0) throw FormatError("vector grid channel count must be even: " + path.string());
    const int count = static_cast<int>(t.dims[0] / 2);
    const int h = static_cast<int>(t.dims[1]);
    const int w = static_cast<int>(t.dims[2]);
    const std::size_t plane = static_cast<std::size_t>(w) * h;
    std::vector<VectorGrid> grids;
    grids.reserve(count);
    for (int c = 0; c < count; ++c) {
        VectorGrid g(w, h);
        const float* u = t.data.data() + (2 * c) * plane;
        const float* v = t.data.data() + (2 * c + 1) * plane;
        float* d = g.data();
        for (std::size_t i = 0; i < plane; ++i) {
            d[2 * i] = u[i];
            d[2 * i + 1] = v[i];
        }
        grids.push_back(std::move(g));
    }
    return grids;
}

}  // namespace paf
