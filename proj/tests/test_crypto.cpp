// Copyright (c) 2026 the souk authors. All rights reserved.
// Licensed under the Apache License, Version 2.0. See the LICENSE
// file in the project root for full license information.

#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>

#include "souk/base58.hpp"
#include "souk/crypto.hpp"

using namespace souk;

namespace {

std::span<const uint8_t> as_bytes(const std::string& s)
{
    return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

} // namespace

TEST_CASE("sha3-256 known vectors")
{
    CHECK(crypto::sha3_256_hex(std::string()) ==
          "a7ffc6f8bf1ed76651c14756a061d662f580ff4de43b49fa82d80a4b80f8434a");
    CHECK(crypto::sha3_256_hex(std::string("abc")) ==
          "3a985da74fe225b2045c172d6bd390bd855f086e3e9d525b46bfe24511431532");
}

TEST_CASE("base58 round trip")
{
    std::vector<uint8_t> data = {0, 0, 1, 2, 3, 254, 255};
    auto text = base58::encode(data);
    auto back = base58::decode(text);
    REQUIRE(back.has_value());
    CHECK(*back == data);
    CHECK_FALSE(base58::decode("0OIl").has_value()); // excluded characters
}

TEST_CASE("keypair generation is deterministic under a fixed seed")
{
    auto a = crypto::generate_keypair(0);
    auto b = crypto::generate_keypair(0);
    CHECK(a.public_key == b.public_key);
    CHECK(a.secret == b.secret);

    auto c = crypto::generate_keypair(1);
    CHECK(a.public_key != c.public_key);
}

TEST_CASE("1000 seeded pairs are pairwise distinct")
{
    std::set<std::string> keys;
    for (uint64_t s = 0; s < 1000; ++s)
        keys.insert(crypto::generate_keypair(s).public_key);
    CHECK(keys.size() == 1000);
}

TEST_CASE("sign then verify round trips and rejects the wrong key")
{
    auto k = crypto::generate_keypair(7);
    auto other = crypto::generate_keypair(8);
    std::string msg = "procurement reverse auction";

    auto sig = crypto::sign(k, msg);
    CHECK(crypto::verify(sig, k.public_key, msg));
    CHECK_FALSE(crypto::verify(sig, other.public_key, msg));
}

TEST_CASE("verification fails under any single-byte message mutation")
{
    auto k = crypto::generate_keypair(11);
    std::string msg = "short body";
    auto sig = crypto::sign(k, msg);
    for (size_t i = 0; i < msg.size(); ++i)
    {
        std::string mutated = msg;
        mutated[i] = static_cast<char>(mutated[i] ^ 0x01);
        CHECK_FALSE(crypto::verify(sig, k.public_key, mutated));
    }
}

TEST_CASE("verification fails under sampled signature mutations")
{
    auto k = crypto::generate_keypair(12);
    std::string msg = "mutate the signature";
    auto sig = crypto::sign(k, msg);
    for (size_t i = 0; i < crypto::kSignatureBytes; i += 7)
    {
        auto tampered = sig;
        tampered.parts[0][i] ^= 0x01;
        CHECK_FALSE(crypto::verify(tampered, k.public_key, msg));
    }
}

TEST_CASE("malformed signature bytes verify to false, not an exception")
{
    auto k = crypto::generate_keypair(13);
    std::string msg = "m";
    crypto::Signature sig; // empty
    CHECK_FALSE(crypto::verify(sig, k.public_key, as_bytes(msg)));
    CHECK_FALSE(crypto::verify_raw(std::vector<uint8_t>(10, 0), k.public_key, as_bytes(msg)));
    auto good = crypto::sign(k, msg);
    CHECK_FALSE(crypto::verify(good, "not-a-key", as_bytes(msg)));
}

TEST_CASE("multi-signature composes and detects tampering")
{
    std::vector<crypto::KeyPair> keys = {crypto::generate_keypair(20), crypto::generate_keypair(21),
                                         crypto::generate_keypair(22)};
    std::string msg = "joint custody";
    auto sig = crypto::multi_sign(keys, as_bytes(msg));
    REQUIRE(sig.is_ok());
    std::vector<std::string> pubs;
    for (const auto& kp : keys)
        pubs.push_back(kp.public_key);
    CHECK(crypto::verify(*sig, pubs, as_bytes(msg)));

    SECTION("single key degenerates to sign")
    {
        auto single = crypto::multi_sign(std::span(keys.data(), 1), as_bytes(msg));
        REQUIRE(single.is_ok());
        CHECK(single->parts.size() == 1);
        CHECK(crypto::verify(*single, keys[0].public_key, as_bytes(msg)));
        CHECK(single->parts[0] == crypto::sign(keys[0], msg).parts[0]);
    }
    SECTION("replacing one constituent signature fails verification")
    {
        auto tampered = *sig;
        tampered.parts[1] = crypto::sign_raw(crypto::generate_keypair(99), as_bytes(msg));
        CHECK_FALSE(crypto::verify(tampered, pubs, as_bytes(msg)));
    }
    SECTION("empty key list is an error")
    {
        auto none = crypto::multi_sign(std::span<const crypto::KeyPair>(), as_bytes(msg));
        CHECK_FALSE(none.is_ok());
        CHECK(none.status().code() == ErrorCode::SignError);
    }
}
