#include "mbur/rng.hpp"

namespace mbur {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t derive_substream_seed(std::uint64_t master,
                                    std::initializer_list<std::uint64_t> labels) {
  std::uint64_t s = splitmix64(master);
  for (std::uint64_t label : labels) s = splitmix64(s ^ splitmix64(label));
  return s;
}

std::uint64_t derive_substream_seed(std::uint64_t master,
                                    const std::vector<std::uint64_t>& labels) {
  std::uint64_t s = splitmix64(master);
  for (std::uint64_t label : labels) s = splitmix64(s ^ splitmix64(label));
  return s;
}

}  // namespace mbur
