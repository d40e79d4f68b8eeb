// Copyright (c) 2026 the souk authors. All rights reserved.
// Licensed under the Apache License, Version 2.0. See the LICENSE
// file in the project root for full license information.

#pragma once

#include <sodium.h>

#include <openssl/evp.h>

#include <array>
#include <cstdint>
#include <cstring>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "souk/base58.hpp"
#include "souk/errors.hpp"

namespace souk::crypto {

inline void init_once()
{
    static const int rc = sodium_init();
    if (rc < 0)
        throw std::runtime_error("libsodium initialization failed");
}

// SHA3-256 over arbitrary bytes, rendered as 64-char lowercase hex.
inline std::string sha3_256_hex(std::span<const uint8_t> data)
{
    std::array<uint8_t, 32> digest{};
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha3_256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 ||
        EVP_DigestFinal_ex(ctx, digest.data(), &len) != 1 || len != digest.size())
    {
        EVP_MD_CTX_free(ctx);
        throw std::runtime_error("SHA3-256 digest failed");
    }
    EVP_MD_CTX_free(ctx);

    static const char hexdig[] = "0123456789abcdef";
    std::string out(64, '0');
    for (size_t i = 0; i < digest.size(); ++i)
    {
        out[2 * i] = hexdig[digest[i] >> 4];
        out[2 * i + 1] = hexdig[digest[i] & 0x0f];
    }
    return out;
}

inline std::string sha3_256_hex(const std::string& data)
{
    return sha3_256_hex(std::span<const uint8_t>(
        reinterpret_cast<const uint8_t*>(data.data()), data.size()));
}

inline constexpr size_t kPublicKeyBytes = crypto_sign_PUBLICKEYBYTES;  // 32
inline constexpr size_t kSecretKeyBytes = crypto_sign_SECRETKEYBYTES;  // 64
inline constexpr size_t kSignatureBytes = crypto_sign_BYTES;           // 64

// Ed25519 key pair. The public key circulates as base58 text everywhere
// outside this header.
struct KeyPair
{
    std::string public_key;                        // base58 of the 32 raw bytes
    std::array<uint8_t, kSecretKeyBytes> secret{}; // ed25519 expanded secret key
};

inline std::string encode_public(std::span<const uint8_t> raw)
{
    return base58::encode(raw);
}

inline bool decode_public(const std::string& text, std::array<uint8_t, kPublicKeyBytes>& out)
{
    auto bytes = base58::decode(text);
    if (!bytes || bytes->size() != kPublicKeyBytes)
        return false;
    std::memcpy(out.data(), bytes->data(), kPublicKeyBytes);
    return true;
}

inline KeyPair generate_keypair()
{
    init_once();
    std::array<uint8_t, kPublicKeyBytes> pb{};
    KeyPair kp;
    crypto_sign_keypair(pb.data(), kp.secret.data());
    kp.public_key = encode_public(pb);
    return kp;
}

// Deterministic pair for a numeric seed (test and simulation use).
inline KeyPair generate_keypair(uint64_t seed)
{
    init_once();
    std::array<uint8_t, 8> le{};
    for (int i = 0; i < 8; ++i)
        le[static_cast<size_t>(i)] = static_cast<uint8_t>(seed >> (8 * i));
    std::string hex = sha3_256_hex(std::span<const uint8_t>(le.data(), le.size()));

    std::array<uint8_t, crypto_sign_SEEDBYTES> seed32{};
    for (size_t i = 0; i < seed32.size(); ++i)
    {
        auto nib = [&](char c) -> uint8_t
        { return c <= '9' ? static_cast<uint8_t>(c - '0') : static_cast<uint8_t>(c - 'a' + 10); };
        seed32[i] = static_cast<uint8_t>(nib(hex[2 * i]) << 4 | nib(hex[2 * i + 1]));
    }

    std::array<uint8_t, kPublicKeyBytes> pb{};
    KeyPair kp;
    crypto_sign_seed_keypair(pb.data(), kp.secret.data(), seed32.data());
    kp.public_key = encode_public(pb);
    return kp;
}

// Detached multi-signature: an ordered list of per-key signatures over one
// message. A single signer is the degenerate one-element case.
struct Signature
{
    std::vector<std::array<uint8_t, kSignatureBytes>> parts;

    size_t signer_count() const { return parts.size(); }
    bool empty() const { return parts.empty(); }

    bool operator==(const Signature&) const = default;
};

inline std::array<uint8_t, kSignatureBytes> sign_raw(const KeyPair& kp, std::span<const uint8_t> message)
{
    init_once();
    std::array<uint8_t, kSignatureBytes> sig{};
    crypto_sign_detached(sig.data(), nullptr, message.data(), message.size(), kp.secret.data());
    return sig;
}

inline Signature sign(const KeyPair& kp, std::span<const uint8_t> message)
{
    return Signature{{sign_raw(kp, message)}};
}

inline Signature sign(const KeyPair& kp, const std::string& message)
{
    return sign(kp, std::span<const uint8_t>(
                        reinterpret_cast<const uint8_t*>(message.data()), message.size()));
}

inline Result<Signature> multi_sign(std::span<const KeyPair> keys, std::span<const uint8_t> message)
{
    if (keys.empty())
        return Status::error(ErrorCode::SignError, "multi_sign requires at least one key");
    Signature sig;
    sig.parts.reserve(keys.size());
    for (const auto& kp : keys)
        sig.parts.push_back(sign_raw(kp, message));
    return sig;
}

inline bool verify_raw(std::span<const uint8_t> sig, const std::string& public_key_b58,
                       std::span<const uint8_t> message)
{
    init_once();
    if (sig.size() != kSignatureBytes)
        return false;
    std::array<uint8_t, kPublicKeyBytes> pb{};
    if (!decode_public(public_key_b58, pb))
        return false;
    return crypto_sign_verify_detached(sig.data(), message.data(), message.size(), pb.data()) == 0;
}

// True iff every constituent signature verifies against its positional key.
inline bool verify(const Signature& sig, std::span<const std::string> public_keys,
                   std::span<const uint8_t> message)
{
    if (sig.parts.empty() || sig.parts.size() != public_keys.size())
        return false;
    for (size_t i = 0; i < sig.parts.size(); ++i)
        if (!verify_raw(sig.parts[i], public_keys[i], message))
            return false;
    return true;
}

inline bool verify(const Signature& sig, const std::string& public_key,
                   std::span<const uint8_t> message)
{
    const std::string keys[] = {public_key};
    return verify(sig, keys, message);
}

inline bool verify(const Signature& sig, const std::string& public_key, const std::string& message)
{
    return verify(sig, public_key,
                  std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(message.data()),
                                           message.size()));
}

// hex helpers for wire rendering of signatures
inline std::string to_hex(std::span<const uint8_t> data)
{
    static const char hexdig[] = "0123456789abcdef";
    std::string out;
    out.reserve(data.size() * 2);
    for (uint8_t b : data)
    {
        out += hexdig[b >> 4];
        out += hexdig[b & 0x0f];
    }
    return out;
}

inline std::optional<std::vector<uint8_t>> from_hex(const std::string& text)
{
    if (text.size() % 2 != 0)
        return std::nullopt;
    std::vector<uint8_t> out;
    out.reserve(text.size() / 2);
    auto nib = [](char c) -> int
    {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    for (size_t i = 0; i < text.size(); i += 2)
    {
        int hi = nib(text[i]), lo = nib(text[i + 1]);
        if (hi < 0 || lo < 0)
            return std::nullopt;
        out.push_back(static_cast<uint8_t>(hi << 4 | lo));
    }
    return out;
}

} // namespace souk::crypto
