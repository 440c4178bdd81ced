#include "relcomm/wire.hpp"

#include <algorithm>

namespace relcomm {

void append_u32(std::string& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8)
    out.push_back(static_cast<char>((v >> shift) & 0xff));
}

void append_u64(std::string& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8)
    out.push_back(static_cast<char>((v >> shift) & 0xff));
}

namespace {

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  bool u32(std::uint32_t& v) {
    if (bytes_.size() - pos_ < 4) return false;
    v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | static_cast<unsigned char>(bytes_[pos_++]);
    return true;
  }

  bool u64(std::uint64_t& v) {
    if (bytes_.size() - pos_ < 8) return false;
    v = 0;
    for (int i = 0; i < 8; ++i) v = (v << 8) | static_cast<unsigned char>(bytes_[pos_++]);
    return true;
  }

  bool blob(std::size_t len, std::string& out) {
    if (bytes_.size() - pos_ < len) return false;
    out.assign(bytes_.substr(pos_, len));
    pos_ += len;
    return true;
  }

  bool done() const { return pos_ == bytes_.size(); }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string encode_message(std::span<const TupleRecord> records) {
  std::string out;
  append_u32(out, static_cast<std::uint32_t>(records.size()));
  for (const TupleRecord& r : records) {
    append_u64(out, r.source.value);
    append_u32(out, static_cast<std::uint32_t>(r.payload.size()));
    out += r.payload;
    append_u32(out, static_cast<std::uint32_t>(r.visited.size()));
    for (NodeId u : r.visited) append_u64(out, u.value);
  }
  return out;
}

std::string encode_message(std::span<const SignedRecord> records) {
  std::string out;
  append_u32(out, static_cast<std::uint32_t>(records.size()));
  for (const SignedRecord& r : records) {
    append_u64(out, r.source.value);
    append_u32(out, static_cast<std::uint32_t>(r.blob.size()));
    out += r.blob;
  }
  return out;
}

DecodedMessage<TupleRecord> decode_tuple_message(std::string_view bytes) {
  DecodedMessage<TupleRecord> out;
  Reader r(bytes);
  std::uint32_t count = 0;
  if (!r.u32(count)) {
    out.malformed = 1;
    return out;
  }
  for (std::uint32_t i = 0; i < count; ++i) {
    TupleRecord rec;
    std::uint64_t source = 0;
    std::uint32_t payload_len = 0, visited_count = 0;
    if (!r.u64(source) || !r.u32(payload_len) || !r.blob(payload_len, rec.payload) ||
        !r.u32(visited_count)) {
      out.malformed = 1;
      return out;
    }
    rec.source = NodeId(source);
    rec.visited.reserve(visited_count);
    for (std::uint32_t j = 0; j < visited_count; ++j) {
      std::uint64_t id = 0;
      if (!r.u64(id)) {
        out.malformed = 1;
        return out;
      }
      rec.visited.push_back(NodeId(id));
    }
    // Tolerate unsorted or duplicated ids from hostile senders.
    std::sort(rec.visited.begin(), rec.visited.end());
    rec.visited.erase(std::unique(rec.visited.begin(), rec.visited.end()), rec.visited.end());
    out.records.push_back(std::move(rec));
  }
  if (!r.done()) out.malformed += 1;  // trailing garbage
  return out;
}

DecodedMessage<SignedRecord> decode_signed_message(std::string_view bytes) {
  DecodedMessage<SignedRecord> out;
  Reader r(bytes);
  std::uint32_t count = 0;
  if (!r.u32(count)) {
    out.malformed = 1;
    return out;
  }
  for (std::uint32_t i = 0; i < count; ++i) {
    SignedRecord rec;
    std::uint64_t source = 0;
    std::uint32_t blob_len = 0;
    if (!r.u64(source) || !r.u32(blob_len) || !r.blob(blob_len, rec.blob)) {
      out.malformed = 1;
      return out;
    }
    rec.source = NodeId(source);
    out.records.push_back(std::move(rec));
  }
  if (!r.done()) out.malformed += 1;
  return out;
}

}  // namespace relcomm
