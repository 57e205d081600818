// Binary on-disk caches for characteristic and tau tables.  Little-endian
// envelope: magic, version, content key (descriptor hash or modulus), bound,
// payload.  A key or bound mismatch invalidates the file.

#ifndef MSETS_CACHE_HPP
#define MSETS_CACHE_HPP

#include <optional>
#include <string>

#include "msets/sieve.hpp"
#include "msets/tau.hpp"

namespace msets {

bool save_char_table(const std::string& path, const CharTable& table);
std::optional<CharTable> load_char_table(const std::string& path, const std::string& set_name,
                                         std::uint64_t desc_hash, std::uint64_t N);

bool save_tau_table(const std::string& path, const TauTable& table);
std::optional<TauTable> load_tau_table(const std::string& path, std::uint64_t q, std::uint64_t N);

std::string char_cache_filename(std::uint64_t desc_hash, std::uint64_t N);
std::string tau_cache_filename(std::uint64_t q, std::uint64_t N);

} // namespace msets

#endif
