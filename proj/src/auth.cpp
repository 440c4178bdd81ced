#include "relcomm/auth.hpp"

#include "relcomm/wire.hpp"

namespace relcomm {

std::string RegistryAuthenticator::sign(NodeId signer, const std::string& payload) {
  const std::uint64_t token = next_token_++;
  issued_.emplace(token, std::make_pair(signer, payload));
  std::string blob;
  append_u64(blob, token);
  append_u64(blob, signer.value);
  blob += payload;
  return blob;
}

std::optional<std::string> RegistryAuthenticator::verify(NodeId claimed,
                                                         const std::string& blob) const {
  if (blob.size() < 16) return std::nullopt;
  std::uint64_t token = 0, signer = 0;
  for (int i = 0; i < 8; ++i) token = (token << 8) | static_cast<unsigned char>(blob[i]);
  for (int i = 8; i < 16; ++i) signer = (signer << 8) | static_cast<unsigned char>(blob[i]);
  if (NodeId(signer) != claimed) return std::nullopt;
  auto it = issued_.find(token);
  if (it == issued_.end()) return std::nullopt;
  const std::string payload = blob.substr(16);
  if (it->second.first != claimed || it->second.second != payload) return std::nullopt;
  return payload;
}

}  // namespace relcomm
