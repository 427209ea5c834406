#include "pgcache/delivery.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>

#include <fmt/format.h>

#include "pgcache/errors.hpp"

namespace pgcache {

namespace {

void xor_into(std::span<std::uint8_t> acc, std::span<const std::uint8_t> src) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] ^= src[i];
}

void check_demands(std::size_t users, std::size_t files, std::span<const std::uint32_t> demands) {
  if (demands.size() != users) {
    throw InvalidArgument(fmt::format("demand vector has {} entries for {} users", demands.size(), users));
  }
  for (std::size_t k = 0; k < demands.size(); ++k) {
    if (demands[k] >= files) {
      throw InvalidArgument(fmt::format("user {} demands file {} but only {} files exist", k, demands[k], files));
    }
  }
}

void put_u32(std::ostream& out, std::uint32_t v) {
  std::array<char, 4> b{};
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFFU);
  out.write(b.data(), 4);
}

std::uint32_t get_u32(std::istream& in) {
  std::array<unsigned char, 4> b{};
  if (!in.read(reinterpret_cast<char*>(b.data()), 4)) throw IoError("packet trace truncated");
  return std::uint32_t{b[0]} | std::uint32_t{b[1]} << 8 | std::uint32_t{b[2]} << 16 | std::uint32_t{b[3]} << 24;
}

constexpr std::array<char, 4> kTraceMagic{'P', 'G', 'P', 'T'};
constexpr std::uint32_t kTraceVersion = 1;

}  // namespace

FileStore::FileStore(std::size_t files, std::size_t subfiles, std::size_t subfile_bytes)
    : files_(files), subfiles_(subfiles), subfile_bytes_(subfile_bytes), data_(files * subfiles * subfile_bytes, 0) {
  if (subfile_bytes == 0) throw InvalidArgument("subfiles must hold at least one byte");
}

std::span<const std::uint8_t> FileStore::subfile(std::size_t file, std::size_t subfile) const {
  return {data_.data() + (file * subfiles_ + subfile) * subfile_bytes_, subfile_bytes_};
}

std::span<std::uint8_t> FileStore::subfile(std::size_t file, std::size_t subfile) {
  return {data_.data() + (file * subfiles_ + subfile) * subfile_bytes_, subfile_bytes_};
}

std::span<const std::uint8_t> FileStore::file(std::size_t file) const {
  return {data_.data() + file * subfiles_ * subfile_bytes_, subfiles_ * subfile_bytes_};
}

std::vector<CodedPacket> encode(const DeliveryPlan& plan, const FileStore& store,
                                std::span<const std::uint32_t> demands) {
  check_demands(plan.users(), store.files(), demands);
  if (store.subfiles() != plan.subfiles()) {
    throw InvalidArgument(fmt::format("store has {} subfiles per file, scheme needs {}", store.subfiles(),
                                      plan.subfiles()));
  }
  std::vector<CodedPacket> packets;
  packets.reserve(plan.size());
  for (std::size_t ci = 0; ci < plan.size(); ++ci) {
    CodedPacket p{static_cast<std::uint32_t>(ci), std::vector<std::uint8_t>(store.subfile_bytes(), 0)};
    for (const auto& v : plan.cliques()[ci]) xor_into(p.payload, store.subfile(demands[v.user], v.subfile));
    packets.push_back(std::move(p));
  }
  return packets;
}

CacheView::CacheView(const FileStore& store, const PlacementMap& placement, std::uint32_t user)
    : store_(&store), placement_(&placement), user_(user) {
  if (user >= placement.users()) throw InvalidArgument(fmt::format("no user {}", user));
  if (store.subfiles() != placement.subfiles()) throw InvalidArgument("store and placement disagree on F");
}

std::optional<std::span<const std::uint8_t>> CacheView::find(std::size_t file, std::size_t subfile) const {
  if (file >= store_->files() || subfile >= store_->subfiles() || placement_->uncached(user_, subfile)) {
    return std::nullopt;
  }
  return store_->subfile(file, subfile);
}

std::vector<std::uint8_t> decode(std::uint32_t user, std::span<const CodedPacket> packets,
                                 const DeliveryPlan& plan, const PlacementMap& placement,
                                 const CacheView& cache, std::span<const std::uint32_t> demands) {
  if (cache.user() != user) throw InvalidArgument("cache view belongs to another user");
  if (demands.size() != plan.users() || user >= demands.size()) {
    throw InvalidArgument("demand vector does not match the delivery plan");
  }
  const bool sorted = std::is_sorted(packets.begin(), packets.end(),
                                     [](const CodedPacket& a, const CodedPacket& b) { return a.clique < b.clique; });
  auto packet_for = [&](std::uint32_t clique) -> const CodedPacket* {
    if (sorted) {
      auto it = std::lower_bound(packets.begin(), packets.end(), clique,
                                 [](const CodedPacket& p, std::uint32_t c) { return p.clique < c; });
      return it != packets.end() && it->clique == clique ? &*it : nullptr;
    }
    auto it = std::find_if(packets.begin(), packets.end(), [&](const CodedPacket& p) { return p.clique == clique; });
    return it != packets.end() ? &*it : nullptr;
  };

  const std::uint32_t wanted = demands[user];
  const std::size_t F = placement.subfiles();
  std::size_t bytes = 0;
  std::vector<std::uint8_t> out;
  for (std::size_t f = 0; f < F; ++f) {
    if (auto hit = cache.find(wanted, f)) {
      bytes = hit->size();
      out.insert(out.end(), hit->begin(), hit->end());
      continue;
    }
    auto clique = plan.clique_of(Vertex{user, static_cast<std::uint32_t>(f)});
    if (!clique) throw DecodeError(fmt::format("no transmission clique carries subfile {} for user {}", f, user));
    const CodedPacket* packet = packet_for(*clique);
    if (!packet) throw DecodeError(fmt::format("packet for clique {} is missing", *clique));
    if (bytes != 0 && packet->payload.size() != bytes) throw DecodeError("packet length differs from subfile length");
    std::vector<std::uint8_t> piece = packet->payload;
    for (const auto& other : plan.cliques()[*clique]) {
      if (other.user == user) continue;
      auto side = cache.find(demands[other.user], other.subfile);
      if (!side || side->size() != piece.size()) {
        throw DecodeError(fmt::format("user {} lacks subfile ({}, {}) needed to decode clique {}", user,
                                      demands[other.user], other.subfile, *clique));
      }
      xor_into(piece, *side);
    }
    bytes = piece.size();
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return out;
}

void write_packet_trace(std::ostream& out, std::span<const CodedPacket> packets) {
  out.write(kTraceMagic.data(), kTraceMagic.size());
  put_u32(out, kTraceVersion);
  put_u32(out, static_cast<std::uint32_t>(packets.size()));
  for (const auto& p : packets) {
    put_u32(out, p.clique);
    put_u32(out, static_cast<std::uint32_t>(p.payload.size()));
    out.write(reinterpret_cast<const char*>(p.payload.data()), static_cast<std::streamsize>(p.payload.size()));
  }
  if (!out) throw IoError("failed to write packet trace");
}

std::vector<CodedPacket> read_packet_trace(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kTraceMagic) throw IoError("not a packet trace");
  if (get_u32(in) != kTraceVersion) throw IoError("unsupported packet trace version");
  const std::uint32_t count = get_u32(in);
  std::vector<CodedPacket> packets;
  for (std::uint32_t i = 0; i < count; ++i) {
    CodedPacket p;
    p.clique = get_u32(in);
    p.payload.resize(get_u32(in));
    if (!in.read(reinterpret_cast<char*>(p.payload.data()), static_cast<std::streamsize>(p.payload.size()))) {
      throw IoError("packet trace truncated");
    }
    packets.push_back(std::move(p));
  }
  return packets;
}

}  // namespace pgcache
