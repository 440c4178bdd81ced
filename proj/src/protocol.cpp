#include "relcomm/protocol.hpp"

#include <algorithm>

#include "relcomm/cut.hpp"

namespace relcomm {

ProtocolNode::ProtocolNode(NodeId self, std::size_t k, ProtocolMode mode, AuthProvider* auth)
    : self_(self), k_(k), mode_(mode), auth_(auth) {
  if (mode_ == ProtocolMode::crypto && auth_ == nullptr)
    throw std::invalid_argument("crypto mode requires an auth provider");
  refresh_omega_bytes();
}

bool ProtocolNode::seed_broadcast(const std::string& payload) {
  if (seeded_) {
    if (payload != own_payload_)
      throw std::invalid_argument("node already broadcasts a different payload");
    return false;
  }
  seeded_ = true;
  own_payload_ = payload;
  if (mode_ == ProtocolMode::noncrypto) {
    tuple_omega_.insert(TupleRecord{self_, payload, {}});
  } else {
    signed_omega_.insert(SignedRecord{self_, auth_->sign(self_, payload)});
  }
  acc_.emplace(self_, payload);
  refresh_omega_bytes();
  return true;
}

std::size_t ProtocolNode::record_count() const {
  return mode_ == ProtocolMode::noncrypto ? tuple_omega_.size() : signed_omega_.size();
}

bool ProtocolNode::has_accepted(NodeId source, const std::string& payload) const {
  return acc_.count({source, payload}) != 0;
}

void ProtocolNode::refresh_omega_bytes() {
  if (mode_ == ProtocolMode::noncrypto) {
    std::vector<TupleRecord> records(tuple_omega_.begin(), tuple_omega_.end());
    omega_bytes_ = encode_message(records);
  } else {
    std::vector<SignedRecord> records(signed_omega_.begin(), signed_omega_.end());
    omega_bytes_ = encode_message(records);
  }
}

ProtocolNode::ReceiveOutcome ProtocolNode::on_receive(NodeId sender, std::string_view bytes) {
  ReceiveOutcome out;
  if (mode_ == ProtocolMode::noncrypto) {
    auto decoded = decode_tuple_message(bytes);
    out.malformed = decoded.malformed;
    out.decoded = decoded.records.size();
    std::set<std::pair<NodeId, std::string>> touched;
    for (TupleRecord& rec : decoded.records) {
      // Rule 2: drop records the sender already relayed, extend the rest.
      if (std::binary_search(rec.visited.begin(), rec.visited.end(), sender)) continue;
      rec.visited.insert(std::lower_bound(rec.visited.begin(), rec.visited.end(), sender),
                         sender);
      if (tuple_omega_.insert(rec).second) {
        out.omega_changed = true;
        touched.emplace(rec.source, rec.payload);
      }
    }
    if (out.omega_changed) {
      refresh_omega_bytes();
      out.new_acceptances = try_accept_tuple(touched);
    }
  } else {
    auto decoded = decode_signed_message(bytes);
    out.malformed = decoded.malformed;
    out.decoded = decoded.records.size();
    std::vector<SignedRecord> fresh;
    for (SignedRecord& rec : decoded.records)
      if (signed_omega_.insert(rec).second) {
        out.omega_changed = true;
        fresh.push_back(rec);
      }
    if (out.omega_changed) {
      refresh_omega_bytes();
      out.new_acceptances = try_accept_signed(fresh);
    }
  }
  return out;
}

std::vector<std::pair<NodeId, std::string>> ProtocolNode::try_accept_tuple(
    const std::set<std::pair<NodeId, std::string>>& keys) {
  std::vector<std::pair<NodeId, std::string>> accepted;
  for (const auto& key : keys) {
    if (acc_.count(key)) continue;
    const auto& [source, payload] = key;
    // Candidate sets: stored visited sets that contain the source, minus the
    // source itself. A record missing its own source can only be a
    // fabrication — genuine relays always carry it from the first hop — so it
    // stays in the record set but never feeds the accept rule.
    std::vector<std::vector<NodeId>> candidates;
    for (auto it = tuple_omega_.lower_bound(TupleRecord{source, payload, {}});
         it != tuple_omega_.end() && it->source == source && it->payload == payload; ++it) {
      if (!std::binary_search(it->visited.begin(), it->visited.end(), source)) continue;
      std::vector<NodeId> s;
      s.reserve(it->visited.size() - 1);
      for (NodeId u : it->visited)
        if (u != source) s.push_back(u);
      candidates.push_back(std::move(s));
    }
    // Using every candidate is optimal: a hitting set for a collection also
    // hits any subcollection, so adding sets never lowers the min cut.
    if (!candidates.empty() &&
        min_cut_exceeds(PathSetCollection::normalized(std::move(candidates)), k_)) {
      acc_.insert(key);
      accepted.push_back(key);
    }
  }
  return accepted;
}

std::vector<std::pair<NodeId, std::string>> ProtocolNode::try_accept_signed(
    const std::vector<SignedRecord>& fresh) {
  std::vector<std::pair<NodeId, std::string>> accepted;
  for (const SignedRecord& rec : fresh) {
    auto payload = auth_->verify(rec.source, rec.blob);
    if (!payload) continue;
    auto key = std::make_pair(rec.source, *payload);
    if (acc_.insert(key).second) accepted.push_back(key);
  }
  return accepted;
}

}  // namespace relcomm
