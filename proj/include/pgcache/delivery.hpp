#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "pgcache/scheme.hpp"

namespace pgcache {

inline constexpr std::size_t kDefaultSubfileBytes = 64;

// N files of F equal-length subfiles each, stored contiguously.
class FileStore {
 public:
  FileStore(std::size_t files, std::size_t subfiles, std::size_t subfile_bytes = kDefaultSubfileBytes);

  std::size_t files() const { return files_; }
  std::size_t subfiles() const { return subfiles_; }
  std::size_t subfile_bytes() const { return subfile_bytes_; }

  std::span<const std::uint8_t> subfile(std::size_t file, std::size_t subfile) const;
  std::span<std::uint8_t> subfile(std::size_t file, std::size_t subfile);
  // The whole file, subfiles concatenated in index order.
  std::span<const std::uint8_t> file(std::size_t file) const;

 private:
  std::size_t files_;
  std::size_t subfiles_;
  std::size_t subfile_bytes_;
  std::vector<std::uint8_t> data_;
};

struct CodedPacket {
  std::uint32_t clique = 0;  // index into DeliveryPlan::cliques()
  std::vector<std::uint8_t> payload;

  friend bool operator==(const CodedPacket&, const CodedPacket&) = default;
};

// One packet per clique, the XOR of the demanded subfiles of its members, in clique order.
// demands[k] is the file requested by user k. Throws InvalidArgument on a malformed demand vector.
std::vector<CodedPacket> encode(const DeliveryPlan& plan, const FileStore& store,
                                std::span<const std::uint32_t> demands);

// What one user holds after placement: every subfile, of every file, whose placement bit is 0.
class CacheView {
 public:
  CacheView(const FileStore& store, const PlacementMap& placement, std::uint32_t user);

  std::uint32_t user() const { return user_; }
  std::optional<std::span<const std::uint8_t>> find(std::size_t file, std::size_t subfile) const;

 private:
  const FileStore* store_;
  const PlacementMap* placement_;
  std::uint32_t user_;
};

// Rebuilds the file demanded by `user`. Cached subfiles come from the cache; each missing one is
// the packet of its clique XOR the other members' subfiles, which the user must hold.
// Throws DecodeError on a missing packet or an undecodable clique.
std::vector<std::uint8_t> decode(std::uint32_t user, std::span<const CodedPacket> packets,
                                 const DeliveryPlan& plan, const PlacementMap& placement,
                                 const CacheView& cache, std::span<const std::uint32_t> demands);

// Binary packet trace: "PGPT", u32 version (1), u32 count, then per packet u32 clique,
// u32 length and the payload. Integers little-endian.
void write_packet_trace(std::ostream& out, std::span<const CodedPacket> packets);
std::vector<CodedPacket> read_packet_trace(std::istream& in);

}  // namespace pgcache
