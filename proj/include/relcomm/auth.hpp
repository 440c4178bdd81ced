#pragma once

#include <map>
#include <optional>
#include <string>

#include "relcomm/tvg.hpp"

namespace relcomm {

// Signing interface for the signature-based broadcast. Contract:
//   - verify(s, sign(s, m)) == m
//   - no party restricted to signing under its own identity can produce a
//     blob that verifies under someone else's
class AuthProvider {
 public:
  virtual ~AuthProvider() = default;
  virtual std::string sign(NodeId signer, const std::string& payload) = 0;
  virtual std::optional<std::string> verify(NodeId claimed, const std::string& blob) const = 0;
};

// Registry-backed authenticator: sign() issues a run-unique token bound to
// (signer, payload) and verify() accepts a blob only if its token was issued
// for exactly that pair. Unforgeable by construction and fully deterministic,
// which real signature schemes are not across runs. Key distribution is out
// of scope; each simulation run owns one registry.
//
// Blob layout: token u64 BE | signer u64 BE | payload bytes.
class RegistryAuthenticator final : public AuthProvider {
 public:
  std::string sign(NodeId signer, const std::string& payload) override;
  std::optional<std::string> verify(NodeId claimed, const std::string& blob) const override;

 private:
  std::map<std::uint64_t, std::pair<NodeId, std::string>> issued_;
  std::uint64_t next_token_ = 1;
};

}  // namespace relcomm
