// Copyright 2026 The svcsdk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SVCSDK_PACKAGER_KEYS_H_
#define SVCSDK_PACKAGER_KEYS_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>

namespace svcsdk {

using PublicKey = std::array<std::uint8_t, 32>;
using SecretKey = std::array<std::uint8_t, 64>;
using Signature = std::array<std::uint8_t, 64>;

struct KeyPair {
  PublicKey public_key{};
  SecretKey secret_key{};
};

KeyPair GenerateKeyPair();
KeyPair KeyPairFromSeed(std::span<const std::uint8_t, 32> seed);

// First 16 hex characters of sha256(public key).
std::string KeyId(const PublicKey& key);

Signature Sign(std::string_view message, const SecretKey& key);
bool VerifySignature(const Signature& signature, std::string_view message,
                     const PublicKey& key);

// Key files hold one line of lowercase hex. The secret key file carries the
// 64-byte libsodium secret key (seed followed by public key).
void WriteSecretKey(const std::filesystem::path& path, const KeyPair& pair);
void WritePublicKey(const std::filesystem::path& path, const PublicKey& key);
// Throw Error(kSigning) on malformed content, Error(kIo) if unreadable.
KeyPair ReadSecretKey(const std::filesystem::path& path);
PublicKey ReadPublicKey(const std::filesystem::path& path);
PublicKey ParsePublicKey(std::string_view hex);

}  // namespace svcsdk

#endif  // SVCSDK_PACKAGER_KEYS_H_
