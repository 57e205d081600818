#include "msets/cache.hpp"

#include <array>
#include <cstring>
#include <fstream>

namespace msets {

namespace {

constexpr std::uint64_t kCharMagic = 0x4d534554434852ULL; // "MSETCHR"
constexpr std::uint64_t kTauMagic = 0x4d534554544155ULL;  // "MSETTAU"
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
    std::array<unsigned char, 4> b{};
    for (int i = 0; i < 4; ++i) b[static_cast<size_t>(i)] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b.data()), 4);
}

void put_u64(std::ostream& os, std::uint64_t v) {
    std::array<unsigned char, 8> b{};
    for (int i = 0; i < 8; ++i) b[static_cast<size_t>(i)] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b.data()), 8);
}

bool get_u32(std::istream& is, std::uint32_t& v) {
    std::array<unsigned char, 4> b{};
    if (!is.read(reinterpret_cast<char*>(b.data()), 4)) return false;
    v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[static_cast<size_t>(i)];
    return true;
}

bool get_u64(std::istream& is, std::uint64_t& v) {
    std::array<unsigned char, 8> b{};
    if (!is.read(reinterpret_cast<char*>(b.data()), 8)) return false;
    v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[static_cast<size_t>(i)];
    return true;
}

} // namespace

std::string char_cache_filename(std::uint64_t desc_hash, std::uint64_t N) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "chr_%016llx_%llu.bin", static_cast<unsigned long long>(desc_hash),
                  static_cast<unsigned long long>(N));
    return buf;
}

std::string tau_cache_filename(std::uint64_t q, std::uint64_t N) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "tau_%llu_%llu.bin", static_cast<unsigned long long>(q),
                  static_cast<unsigned long long>(N));
    return buf;
}

bool save_char_table(const std::string& path, const CharTable& table) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) return false;
    put_u64(os, kCharMagic);
    put_u32(os, kVersion);
    put_u64(os, table.descriptor_hash());
    put_u64(os, table.bound());
    for (std::uint64_t w : table.words()) put_u64(os, w);
    return static_cast<bool>(os);
}

std::optional<CharTable> load_char_table(const std::string& path, const std::string& set_name,
                                         std::uint64_t desc_hash, std::uint64_t N) {
    std::ifstream is(path, std::ios::binary);
    if (!is) return std::nullopt;
    std::uint64_t magic = 0, hash = 0, bound = 0;
    std::uint32_t version = 0;
    if (!get_u64(is, magic) || magic != kCharMagic) return std::nullopt;
    if (!get_u32(is, version) || version != kVersion) return std::nullopt;
    if (!get_u64(is, hash) || hash != desc_hash) return std::nullopt;
    if (!get_u64(is, bound) || bound != N) return std::nullopt;
    CharTable t(set_name, desc_hash, N);
    for (std::uint64_t& w : t.words())
        if (!get_u64(is, w)) return std::nullopt;
    return t;
}

bool save_tau_table(const std::string& path, const TauTable& table) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) return false;
    put_u64(os, kTauMagic);
    put_u32(os, kVersion);
    put_u64(os, table.q());
    put_u64(os, table.bound());
    for (std::uint32_t r : table.residues()) put_u32(os, r);
    return static_cast<bool>(os);
}

std::optional<TauTable> load_tau_table(const std::string& path, std::uint64_t q, std::uint64_t N) {
    std::ifstream is(path, std::ios::binary);
    if (!is) return std::nullopt;
    std::uint64_t magic = 0, fq = 0, bound = 0;
    std::uint32_t version = 0;
    if (!get_u64(is, magic) || magic != kTauMagic) return std::nullopt;
    if (!get_u32(is, version) || version != kVersion) return std::nullopt;
    if (!get_u64(is, fq) || fq != q) return std::nullopt;
    if (!get_u64(is, bound) || bound != N) return std::nullopt;
    std::vector<std::uint32_t> res(N + 1);
    for (std::uint32_t& r : res)
        if (!get_u32(is, r)) return std::nullopt;
    return TauTable(q, N, std::move(res));
}

} // namespace msets
