// Copyright (C) 2026 the paftool authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

#include "paf/errors.hpp"
#include "paf/paft_io.hpp"

using namespace paf;

namespace {

std::filesystem::path temp_file(const char* name) {
    return std::filesystem::temp_directory_path() / name;
}

std::string read_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_bytes(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

TEST_CASE("tensor round trip is bit exact for random tensors") {
    std::mt19937 gen(11);
    std::uniform_real_distribution<float> value(-1e6f, 1e6f);
    const auto path = temp_file("paft_roundtrip.paft");
    for (int trial = 0; trial < 60; ++trial) {
        const int rank = 1 + static_cast<int>(gen() % 4);
        std::vector<std::uint32_t> dims;
        std::size_t count = 1;
        for (int r = 0; r < rank; ++r) {
            const std::uint32_t d = 1 + gen() % 9;
            dims.push_back(d);
            count *= d;
        }
        std::vector<float> data(count);
        for (float& v : data) v = value(gen);

        write_tensor(path, dims, data);
        const Tensor back = read_tensor(path);
        REQUIRE(back.dims == dims);
        REQUIRE(back.data.size() == data.size());
        CHECK(std::memcmp(back.data.data(), data.data(), data.size() * sizeof(float)) == 0);
    }
}

TEST_CASE("a 2x2 grid serializes to exactly 32 bytes") {
    const auto path = temp_file("paft_size.paft");
    const std::uint32_t dims[2] = {2, 2};
    const float data[4] = {1.0f, 2.0f, 3.0f, 4.0f};
    write_tensor(path, dims, data);
    CHECK(std::filesystem::file_size(path) == 32);
}

TEST_CASE("corrupt files raise distinct errors") {
    const auto path = temp_file("paft_bad.paft");
    const std::uint32_t dims[1] = {2};
    const float data[2] = {1.0f, 2.0f};
    write_tensor(path, dims, data);
    const std::string good = read_bytes(path);

    SUBCASE("bad magic") {
        std::string bytes = good;
        bytes[0] = 'X';
        write_bytes(path, bytes);
        CHECK_THROWS_AS(read_tensor(path), BadMagicError);
    }
    SUBCASE("version mismatch") {
        std::string bytes = good;
        bytes[4] = 2;
        write_bytes(path, bytes);
        CHECK_THROWS_AS(read_tensor(path), VersionMismatchError);
    }
    SUBCASE("truncated payload") {
        write_bytes(path, good.substr(0, good.size() - 3));
        CHECK_THROWS_AS(read_tensor(path), TruncatedPayloadError);
    }
    SUBCASE("trailing bytes") {
        write_bytes(path, good + "zz");
        CHECK_THROWS_AS(read_tensor(path), FormatError);
    }
    SUBCASE("unsupported dtype") {
        std::string bytes = good;
        bytes[6] = 9;
        write_bytes(path, bytes);
        CHECK_THROWS_AS(read_tensor(path), FormatError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(read_tensor(temp_file("paft_does_not_exist.paft")), IoError);
    }
}

TEST_CASE("grid stacks round trip through rank-3 tensors") {
    std::mt19937 gen(13);
    std::uniform_real_distribution<float> value(-3.0f, 3.0f);

    std::vector<ScalarGrid> grids;
    for (int c = 0; c < 3; ++c) {
        ScalarGrid g(7, 5, 0.0f);
        for (int y = 0; y < 5; ++y) {
            for (int x = 0; x < 7; ++x) g.at(x, y) = value(gen);
        }
        grids.push_back(std::move(g));
    }
    const auto spath = temp_file("paft_grids.paft");
    write_grids(spath, grids);
    const std::vector<ScalarGrid> sback = read_grids(spath);
    REQUIRE(sback.size() == grids.size());
    for (std::size_t c = 0; c < grids.size(); ++c) {
        CHECK(std::memcmp(sback[c].data(), grids[c].data(), grids[c].size() * sizeof(float)) == 0);
    }

    std::vector<VectorGrid> vgrids;
    for (int c = 0; c < 2; ++c) {
        VectorGrid g(4, 6);
        for (int y = 0; y < 6; ++y) {
            for (int x = 0; x < 4; ++x) g.set(x, y, value(gen), value(gen));
        }
        vgrids.push_back(std::move(g));
    }
    const auto vpath = temp_file("paft_vgrids.paft");
    write_vector_grids(vpath, vgrids);
    const std::vector<VectorGrid> vback = read_vector_grids(vpath);
    REQUIRE(vback.size() == vgrids.size());
    for (std::size_t c = 0; c < vgrids.size(); ++c) {
        CHECK(std::memcmp(vback[c].data(), vgrids[c].data(),
                          vgrids[c].size() * sizeof(float)) == 0);
    }
}
