#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "relcomm/auth.hpp"
#include "relcomm/wire.hpp"

namespace relcomm {

enum class ProtocolMode { noncrypto, crypto };

// Per-node broadcast state machine. Two variants behind one interface:
//
// Relay-tracking (noncrypto) rules:
//   1. initially, and whenever the record set or the local topology changes,
//      multicast the whole record set (the caller drives the multicast);
//   2. on receiving records from v, keep each (s, m, S) with v not in S as
//      (s, m, S ∪ {v});
//   3. accept (s, m) once the stored candidate sets for it cannot all be hit
//      by k nodes.
//
// Signature-based (crypto) rules: records are (s, blob) pairs, rule 2 is a
// plain union, rule 3 accepts whatever verifies.
//
// The machine is single-owner: the simulator's event loop is the only caller.
class ProtocolNode {
 public:
  ProtocolNode(NodeId self, std::size_t k, ProtocolMode mode, AuthProvider* auth);

  // Installs this node's own broadcast payload (at its broadcast start date).
  // Idempotent for an identical payload; a second different payload is an
  // error — one broadcast per node per run.
  bool seed_broadcast(const std::string& payload);

  struct ReceiveOutcome {
    bool omega_changed = false;
    std::vector<std::pair<NodeId, std::string>> new_acceptances;
    std::size_t decoded = 0;
    std::size_t malformed = 0;
  };

  // Rule 2 plus incremental rule 3 for the affected (source, payload) keys.
  // `bytes` is the raw message; undecodable content is counted, never fatal.
  ReceiveOutcome on_receive(NodeId sender, std::string_view bytes);

  // Current record set, encoded for multicast.
  const std::string& omega_bytes() const { return omega_bytes_; }

  NodeId self() const { return self_; }
  ProtocolMode mode() const { return mode_; }
  std::size_t record_count() const;
  bool has_accepted(NodeId source, const std::string& payload) const;
  const std::set<std::pair<NodeId, std::string>>& acceptances() const { return acc_; }
  const std::set<TupleRecord>& tuple_omega() const { return tuple_omega_; }
  const std::set<SignedRecord>& signed_omega() const { return signed_omega_; }

 private:
  void refresh_omega_bytes();
  std::vector<std::pair<NodeId, std::string>> try_accept_tuple(
      const std::set<std::pair<NodeId, std::string>>& keys);
  std::vector<std::pair<NodeId, std::string>> try_accept_signed(
      const std::vector<SignedRecord>& fresh);

  NodeId self_;
  std::size_t k_;
  ProtocolMode mode_;
  AuthProvider* auth_;
  bool seeded_ = false;
  std::string own_payload_;

  std::set<TupleRecord> tuple_omega_;
  std::set<SignedRecord> signed_omega_;
  std::set<std::pair<NodeId, std::string>> acc_;
  std::string omega_bytes_;
};

}  // namespace relcomm
