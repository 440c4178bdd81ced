#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relcomm/tvg.hpp"

namespace relcomm {

// Record of the relay-tracking broadcast: source s, payload m, and the set of
// nodes the record has visited. Anything a peer sends is representable here;
// validity is never assumed on receipt.
struct TupleRecord {
  NodeId source;
  std::string payload;
  std::vector<NodeId> visited;  // sorted, deduplicated

  auto operator<=>(const TupleRecord&) const = default;
};

// Record of the signature-based broadcast: claimed source plus an opaque
// signed blob. Verification is total — it yields a payload or nothing.
struct SignedRecord {
  NodeId source;
  std::string blob;

  auto operator<=>(const SignedRecord&) const = default;
};

// Binary wire encoding, bit-exact for golden tests and transcript comparison.
// All integers big-endian. A message is a u32 record count followed by the
// records:
//   tuple record:  source u64 | payload length u32 | payload bytes |
//                  visited count u32 | visited ids u64 each, ascending
//   signed record: source u64 | blob length u32 | blob bytes
std::string encode_message(std::span<const TupleRecord> records);
std::string encode_message(std::span<const SignedRecord> records);

template <typename Record>
struct DecodedMessage {
  std::vector<Record> records;
  // Count of records that could not be parsed. Framing cannot be resynced
  // after a bad length field, so at most one per message.
  std::size_t malformed = 0;
};

DecodedMessage<TupleRecord> decode_tuple_message(std::string_view bytes);
DecodedMessage<SignedRecord> decode_signed_message(std::string_view bytes);

void append_u32(std::string& out, std::uint32_t v);
void append_u64(std::string& out, std::uint64_t v);

}  // namespace relcomm
