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

#include "svcsdk/packager/keys.h"

#include <sodium.h>
#include <sys/stat.h>

#include <algorithm>
#include <cstring>

#include "svcsdk/common/error.h"
#include "svcsdk/common/util.h"

namespace svcsdk {
namespace {

void EnsureSodium() {
  static const bool ready = sodium_init() >= 0;
  if (!ready) throw Error(ErrorCode::kSigning, "libsodium failed to start");
}

std::string Trim(std::string text) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  text.erase(text.begin(), std::find_if(text.begin(), text.end(), not_space));
  text.erase(std::find_if(text.rbegin(), text.rend(), not_space).base(),
             text.end());
  return text;
}

template <std::size_t N>
std::array<std::uint8_t, N> DecodeKey(std::string_view hex,
                                      std::string_view what) {
  std::string bytes;
  try {
    bytes = HexDecode(hex);
  } catch (const Error&) {
    throw Error(ErrorCode::kSigning, std::string(what) + " is not hex");
  }
  if (bytes.size() != N) {
    throw Error(ErrorCode::kSigning,
                std::string(what) + " must be " + std::to_string(N) +
                    " bytes, got " + std::to_string(bytes.size()));
  }
  std::array<std::uint8_t, N> key{};
  std::memcpy(key.data(), bytes.data(), N);
  return key;
}

}  // namespace

KeyPair GenerateKeyPair() {
  EnsureSodium();
  KeyPair pair;
  crypto_sign_keypair(pair.public_key.data(), pair.secret_key.data());
  return pair;
}

KeyPair KeyPairFromSeed(std::span<const std::uint8_t, 32> seed) {
  EnsureSodium();
  KeyPair pair;
  crypto_sign_seed_keypair(pair.public_key.data(), pair.secret_key.data(),
                           seed.data());
  return pair;
}

std::string KeyId(const PublicKey& key) {
  return Sha256Hex(std::span<const std::uint8_t>(key)).substr(0, 16);
}

Signature Sign(std::string_view message, const SecretKey& key) {
  EnsureSodium();
  Signature signature{};
  if (crypto_sign_detached(
          signature.data(), nullptr,
          reinterpret_cast<const unsigned char*>(message.data()),
          message.size(), key.data()) != 0) {
    throw Error(ErrorCode::kSigning, "signing failed");
  }
  return signature;
}

bool VerifySignature(const Signature& signature, std::string_view message,
                     const PublicKey& key) {
  EnsureSodium();
  return crypto_sign_verify_detached(
             signature.data(),
             reinterpret_cast<const unsigned char*>(message.data()),
             message.size(), key.data()) == 0;
}

void WriteSecretKey(const std::filesystem::path& path, const KeyPair& pair) {
  WriteFile(path, HexEncode(pair.secret_key) + "\n");
  ::chmod(path.c_str(), 0600);
}

void WritePublicKey(const std::filesystem::path& path, const PublicKey& key) {
  WriteFile(path, HexEncode(key) + "\n");
}

KeyPair ReadSecretKey(const std::filesystem::path& path) {
  KeyPair pair;
  pair.secret_key =
      DecodeKey<64>(Trim(ReadFile(path)), "secret key " + path.string());
  EnsureSodium();
  crypto_sign_ed25519_sk_to_pk(pair.public_key.data(), pair.secret_key.data());
  return pair;
}

PublicKey ReadPublicKey(const std::filesystem::path& path) {
  return DecodeKey<32>(Trim(ReadFile(path)), "public key " + path.string());
}

PublicKey ParsePublicKey(std::string_view hex) {
  return DecodeKey<32>(Trim(std::string(hex)), "public key");
}

}  // namespace svcsdk
