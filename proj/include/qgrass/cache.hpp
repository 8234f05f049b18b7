#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qgrass/enumerate.hpp"

namespace qgrass {

uint64_t fnv1a64(const uint8_t* data, std::size_t len);

// Word-blob cache files carry a header with a content digest; any mismatch
// (missing file, bad header, wrong digest) reads as "not cached" and the
// caller recomputes. An empty dir disables caching.
std::optional<std::vector<uint64_t>> cache_load_words(const std::string& dir,
                                                      const std::string& key);
bool cache_store_words(const std::string& dir, const std::string& key,
                       const std::vector<uint64_t>& words);

// Grassmannian stream backed by the cache: key grass-v1-q<q>-n<n>-k<k>,
// payload is k packed row words per subspace in stream order, so a reload is
// byte-identical to the enumeration.
SubspaceStream load_or_enumerate_grassmannian(const std::string& cache_dir, const Field& f, int n,
                                              int k);

}  // namespace qgrass
