// Copyright (c) 2026 the souk authors. All rights reserved.
// Licensed under the Apache License, Version 2.0. See the LICENSE
// file in the project root for full license information.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "souk/crypto.hpp"
#include "souk/errors.hpp"

namespace souk {

using json = nlohmann::json;

inline constexpr const char* kProtocolVersion = "1.0-ed25519";

enum class Operation : uint8_t { Create, Transfer, Request, Bid, AcceptBid, Return };

inline constexpr const char* kOperationNames[] = {"CREATE",     "TRANSFER", "REQUEST",
                                                  "BID",        "ACCEPT_BID", "RETURN"};

inline const char* to_string(Operation op)
{
    return kOperationNames[static_cast<size_t>(op)];
}

inline std::optional<Operation> operation_from_string(const std::string& name)
{
    for (size_t i = 0; i < std::size(kOperationNames); ++i)
        if (name == kOperationNames[i])
            return static_cast<Operation>(i);
    return std::nullopt;
}

inline bool is_tx_id(const std::string& s)
{
    if (s.size() != 64)
        return false;
    return std::all_of(s.begin(), s.end(), [](char c)
                       { return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'); });
}

// Reference to a prior transaction's output, the unit of spending.
struct OutputRef
{
    std::string tx_id;
    uint32_t index = 0;

    auto operator<=>(const OutputRef&) const = default;
};

// A divisible asset: free-form nested document plus a share count. `id` is
// the CREATE transaction that minted it and is absent only inside a CREATE.
struct Asset
{
    json data = json::object();
    int64_t amt = 0;
    std::string id; // empty = absent

    bool operator==(const Asset&) const = default;
};

struct Output
{
    std::vector<std::string> owners;
    int64_t amount = 0;
    std::vector<std::string> prev_owners;

    bool operator==(const Output&) const = default;
};

struct Input
{
    std::optional<OutputRef> spends;
    std::vector<std::string> signers; // public keys the signature verifies against
    crypto::Signature signature;

    bool operator==(const Input&) const = default;
};

// The core transaction object: <ID, OP, A, O, I, Ch, R> plus metadata and
// a protocol version. Immutable by convention once signed.
struct Transaction
{
    std::string id;
    Operation op = Operation::Create;
    std::vector<Asset> assets;
    std::vector<Output> outputs;
    std::vector<Input> inputs;
    std::vector<std::string> children;
    std::vector<std::string> refs;
    json metadata; // null or object
    std::string version = kProtocolVersion;

    bool operator==(const Transaction&) const = default;
};

namespace wire {

inline json asset_to_json(const Asset& a)
{
    json j = json::object();
    if (a.id.empty())
    {
        j["data"] = a.data.is_null() ? json::object() : a.data;
        j["amt"] = a.amt;
    }
    else
    {
        j["id"] = a.id;
    }
    return j;
}

inline json output_to_json(const Output& o)
{
    return json{{"owners", o.owners}, {"amount", o.amount}, {"prev_owners", o.prev_owners}};
}

inline json input_to_json(const Input& in, bool blank_signatures)
{
    json j = json::object();
    if (in.spends)
        j["spends"] = json{{"tx_id", in.spends->tx_id}, {"output", in.spends->index}};
    else
        j["spends"] = nullptr;
    j["signers"] = in.signers;
    if (blank_signatures)
    {
        j["signatures"] = json::array();
    }
    else
    {
        json sigs = json::array();
        for (const auto& part : in.signature.parts)
            sigs.push_back(crypto::to_hex(part));
        j["signatures"] = sigs;
    }
    return j;
}

// Full wire document. With `blank` the id is dropped and every signature
// list is emptied; those bytes are the digest and signing pre-image.
inline json to_json(const Transaction& tx, bool blank = false)
{
    json j = json::object();
    if (!blank)
        j["id"] = tx.id;
    j["operation"] = to_string(tx.op);
    json assets = json::array();
    for (const auto& a : tx.assets)
        assets.push_back(asset_to_json(a));
    j["asset"] = assets;
    json outputs = json::array();
    for (const auto& o : tx.outputs)
        outputs.push_back(output_to_json(o));
    j["outputs"] = outputs;
    json inputs = json::array();
    for (const auto& in : tx.inputs)
        inputs.push_back(input_to_json(in, blank));
    j["inputs"] = inputs;
    j["children"] = tx.children;
    j["refs"] = tx.refs;
    j["metadata"] = tx.metadata.is_object() ? tx.metadata : json(nullptr);
    j["version"] = tx.version;
    return j;
}

inline Status check_canonical_values(const json& j, const std::string& path)
{
    if (j.is_number_float())
        return Status::error(ErrorCode::ValidationError,
                             "non-integer number at " + path + " is not serializable");
    if (j.is_binary() || j.is_discarded())
        return Status::error(ErrorCode::ValidationError, "non-serializable value at " + path);
    if (j.is_object())
    {
        for (const auto& [k, v] : j.items())
        {
            if (auto st = check_canonical_values(v, path + "." + k); !st)
                return st;
        }
    }
    else if (j.is_array())
    {
        for (size_t i = 0; i < j.size(); ++i)
            if (auto st = check_canonical_values(j[i], path + "[" + std::to_string(i) + "]"); !st)
                return st;
    }
    return Status::ok();
}

} // namespace wire

// Canonical bytes: recursively key-sorted, compact, integer-only numbers.
// nlohmann::json keeps object keys in sorted order, so a compact dump is
// already canonical; values are vetted first.
inline Result<std::string> canonical_dump(const json& j)
{
    if (auto st = wire::check_canonical_values(j, "$"); !st)
        return st;
    return j.dump();
}

inline Result<std::string> canonical_serialize(const Transaction& tx)
{
    return canonical_dump(wire::to_json(tx, /*blank=*/false));
}

// Digest / signing pre-image: the canonical body with the id removed and
// signatures blanked, so attaching signatures never perturbs the id.
inline Result<std::string> signing_payload(const Transaction& tx)
{
    return canonical_dump(wire::to_json(tx, /*blank=*/true));
}

inline Result<std::string> compute_tx_id(const Transaction& tx)
{
    auto body = signing_payload(tx);
    if (!body)
        return body.status();
    return crypto::sha3_256_hex(*body);
}

inline Result<Transaction> parse_transaction(const json& j)
{
    auto fail = [](const std::string& m)
    { return Result<Transaction>(Status::error(ErrorCode::ValidationError, m)); };

    if (!j.is_object())
        return fail("transaction document must be an object");

    Transaction tx;
    if (!j.contains("id") || !j["id"].is_string())
        return fail("missing field: id");
    tx.id = j["id"].get<std::string>();

    if (!j.contains("operation") || !j["operation"].is_string())
        return fail("missing field: operation");
    auto op = operation_from_string(j["operation"].get<std::string>());
    if (!op)
        return fail("unknown operation " + j["operation"].get<std::string>());
    tx.op = *op;

    if (!j.contains("version") || !j["version"].is_string())
        return fail("missing field: version");
    tx.version = j["version"].get<std::string>();

    if (!j.contains("asset") || !j["asset"].is_array())
        return fail("missing field: asset");
    for (const auto& aj : j["asset"])
    {
        Asset a;
        if (!aj.is_object())
            return fail("asset entries must be objects");
        if (aj.contains("id"))
        {
            if (!aj["id"].is_string())
                return fail("asset.id must be a string");
            a.id = aj["id"].get<std::string>();
        }
        if (aj.contains("data"))
        {
            if (!aj["data"].is_object())
                return fail("asset.data must be an object");
            a.data = aj["data"];
        }
        if (aj.contains("amt"))
        {
            if (!aj["amt"].is_number_integer())
                return fail("asset.amt must be an integer");
            a.amt = aj["amt"].get<int64_t>();
        }
        tx.assets.push_back(std::move(a));
    }

    if (!j.contains("outputs") || !j["outputs"].is_array())
        return fail("missing field: outputs");
    for (const auto& oj : j["outputs"])
    {
        Output o;
        if (!oj.is_object() || !oj.contains("owners") || !oj["owners"].is_array() ||
            !oj.contains("amount") || !oj["amount"].is_number_integer())
            return fail("output entries need owners and integer amount");
        for (const auto& k : oj["owners"])
        {
            if (!k.is_string())
                return fail("output owners must be strings");
            o.owners.push_back(k.get<std::string>());
        }
        o.amount = oj["amount"].get<int64_t>();
        if (oj.contains("prev_owners"))
        {
            if (!oj["prev_owners"].is_array())
                return fail("output prev_owners must be a list");
            for (const auto& k : oj["prev_owners"])
            {
                if (!k.is_string())
                    return fail("output prev_owners must be strings");
                o.prev_owners.push_back(k.get<std::string>());
            }
        }
        tx.outputs.push_back(std::move(o));
    }

    if (!j.contains("inputs") || !j["inputs"].is_array())
        return fail("missing field: inputs");
    for (const auto& ij : j["inputs"])
    {
        Input in;
        if (!ij.is_object())
            return fail("input entries must be objects");
        if (ij.contains("spends") && !ij["spends"].is_null())
        {
            const auto& sj = ij["spends"];
            if (!sj.is_object() || !sj.contains("tx_id") || !sj["tx_id"].is_string() ||
                !sj.contains("output") || !sj["output"].is_number_integer())
                return fail("input spends needs tx_id and output index");
            in.spends = OutputRef{sj["tx_id"].get<std::string>(), sj["output"].get<uint32_t>()};
        }
        if (ij.contains("signers"))
        {
            if (!ij["signers"].is_array())
                return fail("input signers must be a list");
            for (const auto& k : ij["signers"])
            {
                if (!k.is_string())
                    return fail("input signers must be strings");
                in.signers.push_back(k.get<std::string>());
            }
        }
        if (ij.contains("signatures"))
        {
            if (!ij["signatures"].is_array())
                return fail("input signatures must be a list");
            for (const auto& s : ij["signatures"])
            {
                if (!s.is_string())
                    return fail("input signatures must be hex strings");
                auto bytes = crypto::from_hex(s.get<std::string>());
                if (!bytes || bytes->size() != crypto::kSignatureBytes)
                    return fail("input signature is not a 64-byte hex string");
                std::array<uint8_t, crypto::kSignatureBytes> part{};
                std::copy(bytes->begin(), bytes->end(), part.begin());
                in.signature.parts.push_back(part);
            }
        }
        tx.inputs.push_back(std::move(in));
    }

    if (j.contains("children"))
    {
        if (!j["children"].is_array())
            return fail("children must be a list");
        for (const auto& c : j["children"])
        {
            if (!c.is_string())
                return fail("children entries must be transaction ids");
            tx.children.push_back(c.get<std::string>());
        }
    }
    if (j.contains("refs"))
    {
        if (!j["refs"].is_array())
            return fail("refs must be a list");
        for (const auto& r : j["refs"])
        {
            if (!r.is_string())
                return fail("refs entries must be transaction ids");
            tx.refs.push_back(r.get<std::string>());
        }
    }
    if (j.contains("metadata") && !j["metadata"].is_null())
    {
        if (!j["metadata"].is_object())
            return fail("metadata must be an object or null");
        tx.metadata = j["metadata"];
    }
    return tx;
}

inline Result<Transaction> parse_transaction(const std::string& text)
{
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        return Status::error(ErrorCode::ValidationError, "malformed JSON document");
    return parse_transaction(j);
}

// Asset lineage carried by a transaction: the CREATE id the moved shares
// trace back to. ACCEPT_BID anchors a bid id instead and REQUEST carries
// no asset, so neither has a lineage.
inline std::string asset_lineage(const Transaction& tx)
{
    switch (tx.op)
    {
        case Operation::Create: return tx.id;
        case Operation::Transfer:
        case Operation::Bid:
        case Operation::Return:
            return tx.assets.empty() ? std::string() : tx.assets[0].id;
        default: return {};
    }
}

// Settlement-plan outputs (ACCEPT_BID) declare intent and are realized by
// child transactions; they never enter the spendable output set.
inline bool outputs_spendable(Operation op)
{
    return op == Operation::Create || op == Operation::Transfer || op == Operation::Bid ||
           op == Operation::Return;
}

} // namespace souk
