#include "qgrass/cache.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace qgrass {

uint64_t fnv1a64(const uint8_t* data, std::size_t len) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= data[i];
    h *= 0x100000001b3ull;
  }
  return h;
}

namespace {

std::vector<uint8_t> words_to_bytes(const std::vector<uint64_t>& words) {
  std::vector<uint8_t> bytes(words.size() * 8);
  for (std::size_t i = 0; i < words.size(); ++i)
    for (int b = 0; b < 8; ++b) bytes[i * 8 + b] = static_cast<uint8_t>(words[i] >> (8 * b));
  return bytes;
}

std::vector<uint64_t> bytes_to_words(const std::vector<uint8_t>& bytes) {
  std::vector<uint64_t> words(bytes.size() / 8, 0);
  for (std::size_t i = 0; i < words.size(); ++i)
    for (int b = 0; b < 8; ++b) words[i] |= static_cast<uint64_t>(bytes[i * 8 + b]) << (8 * b);
  return words;
}

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

std::optional<std::vector<uint64_t>> cache_load_words(const std::string& dir,
                                                      const std::string& key) {
  if (dir.empty()) return std::nullopt;
  std::ifstream in(std::filesystem::path(dir) / (key + ".bin"), std::ios::binary);
  if (!in) return std::nullopt;
  std::string header;
  if (!std::getline(in, header)) return std::nullopt;
  std::istringstream hs(header);
  std::string magic, version, hkey, nfield, fnvfield;
  hs >> magic >> version >> hkey >> nfield >> fnvfield;
  if (magic != "qgrass-cache" || version != "1" || hkey != key) return std::nullopt;
  if (nfield.rfind("n=", 0) != 0 || fnvfield.rfind("fnv=", 0) != 0) return std::nullopt;
  std::size_t nwords = 0;
  try {
    nwords = std::stoull(nfield.substr(2));
  } catch (...) {
    return std::nullopt;
  }
  std::vector<uint8_t> bytes(nwords * 8);
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (static_cast<std::size_t>(in.gcount()) != bytes.size()) return std::nullopt;
  if (hex64(fnv1a64(bytes.data(), bytes.size())) != fnvfield.substr(4)) return std::nullopt;
  return bytes_to_words(bytes);
}

bool cache_store_words(const std::string& dir, const std::string& key,
                       const std::vector<uint64_t>& words) {
  if (dir.empty()) return false;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  auto bytes = words_to_bytes(words);
  auto path = std::filesystem::path(dir) / (key + ".bin");
  auto tmp = std::filesystem::path(dir) / (key + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out << "qgrass-cache 1 " << key << " n=" << words.size() << " fnv="
        << hex64(fnv1a64(bytes.data(), bytes.size())) << "\n";
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) return false;
  }
  std::filesystem::rename(tmp, path, ec);
  return !ec;
}

SubspaceStream load_or_enumerate_grassmannian(const std::string& cache_dir, const Field& f, int n,
                                              int k) {
  std::string key = "grass-v1-q" + std::to_string(f.q()) + "-n" + std::to_string(n) + "-k" +
                    std::to_string(k);
  if (auto words = cache_load_words(cache_dir, key)) {
    if (k == 0 ? words->empty() : words->size() % k == 0) {
      std::vector<Subspace> items;
      items.reserve(k == 0 ? 1 : words->size() / k);
      bool ok = true;
      try {
        if (k == 0) {
          items.push_back(Subspace::zero(f, n));
        } else {
          for (std::size_t off = 0; off < words->size(); off += k) {
            PackedRows rows(words->begin() + off, words->begin() + off + k);
            items.push_back(Subspace::from_canonical(f, n, std::move(rows)));
          }
        }
      } catch (...) {
        ok = false;
      }
      if (ok && QInt(items.size()) == gauss_binom(n, k, f.q()) &&
          std::is_sorted(items.begin(), items.end()))
        return SubspaceStream(std::move(items));
    }
    // digest matched but contents inconsistent: fall through to recompute
  }
  SubspaceStream stream = enumerate_k_subspaces(f, n, k);
  std::vector<uint64_t> words;
  words.reserve(stream.size() * k);
  for (const Subspace& s : stream)
    for (int r = 0; r < k; ++r) words.push_back(s.row_word(r));
  cache_store_words(cache_dir, key, words);
  return stream;
}

}  // namespace qgrass
