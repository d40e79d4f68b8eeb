// Copyright (c) 2026 the souk authors. All rights reserved.
// Licensed under the Apache License, Version 2.0. See the LICENSE
// file in the project root for full license information.

#pragma once

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "souk/crypto.hpp"
#include "souk/ledger.hpp"
#include "souk/schema.hpp"
#include "souk/tx.hpp"
#include "souk/validation.hpp"

namespace tt {

using namespace souk;

inline const crypto::KeyPair& key(uint64_t seed)
{
    static std::map<uint64_t, crypto::KeyPair> cache;
    auto it = cache.find(seed);
    if (it == cache.end())
        it = cache.emplace(seed, crypto::generate_keypair(seed)).first;
    return it->second;
}

// Compute the id over the body, then attach one signature per input using
// the matching key list (keys[i] signs input i).
inline Transaction finalize(Transaction tx, const std::vector<std::vector<crypto::KeyPair>>& keys)
{
    tx.id.clear();
    auto body = signing_payload(tx);
    REQUIRE(body.is_ok());
    for (size_t i = 0; i < tx.inputs.size(); ++i)
    {
        auto& in = tx.inputs[i];
        in.signature.parts.clear();
        if (i < keys.size())
            for (const auto& kp : keys[i])
                in.signature.parts.push_back(crypto::sign_raw(
                    kp, std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(body->data()),
                                                 body->size())));
    }
    auto id = compute_tx_id(tx);
    REQUIRE(id.is_ok());
    tx.id = *id;
    return tx;
}

inline Transaction finalize(Transaction tx, const crypto::KeyPair& kp)
{
    std::vector<std::vector<crypto::KeyPair>> keys(tx.inputs.size(), {kp});
    return finalize(std::move(tx), keys);
}

inline Transaction make_create(const crypto::KeyPair& issuer, int64_t amt,
                               std::vector<std::string> caps, json extra_data = json::object())
{
    Transaction tx;
    tx.op = Operation::Create;
    Asset a;
    a.amt = amt;
    a.data = std::move(extra_data);
    if (!caps.empty())
        a.data["capabilities"] = caps;
    tx.assets.push_back(std::move(a));
    tx.inputs.push_back(Input{std::nullopt, {issuer.public_key}, {}});
    tx.outputs.push_back(Output{{issuer.public_key}, amt, {}});
    return finalize(std::move(tx), issuer);
}

inline Transaction make_request(const crypto::KeyPair& requester, std::vector<std::string> caps,
                                json extra_meta = json::object())
{
    Transaction tx;
    tx.op = Operation::Request;
    tx.metadata = std::move(extra_meta);
    if (!caps.empty())
        tx.metadata["capabilities"] = caps;
    tx.inputs.push_back(Input{std::nullopt, {requester.public_key}, {}});
    tx.outputs.push_back(Output{{requester.public_key}, 1, {}});
    return finalize(std::move(tx), requester);
}

inline Transaction make_transfer(const crypto::KeyPair& owner, const std::string& lineage_id,
                                 const OutputRef& spend, int64_t amount,
                                 const std::string& new_owner)
{
    Transaction tx;
    tx.op = Operation::Transfer;
    tx.assets.push_back(Asset{json::object(), 0, lineage_id});
    tx.inputs.push_back(Input{spend, {owner.public_key}, {}});
    tx.outputs.push_back(Output{{new_owner}, amount, {owner.public_key}});
    return finalize(std::move(tx), owner);
}

inline Transaction make_bid(const crypto::KeyPair& bidder, const std::string& lineage_id,
                            const OutputRef& spend, int64_t amount, const std::string& rfq_id,
                            const std::string& escrow_pb)
{
    Transaction tx;
    tx.op = Operation::Bid;
    tx.assets.push_back(Asset{json::object(), 0, lineage_id});
    tx.inputs.push_back(Input{spend, {bidder.public_key}, {}});
    tx.outputs.push_back(Output{{escrow_pb}, amount, {bidder.public_key}});
    tx.refs.push_back(rfq_id);
    return finalize(std::move(tx), bidder);
}

inline std::string escrow_owner(const Output& escrowed)
{
    return escrowed.owners.empty() ? std::string() : escrowed.owners[0];
}

// Settlement plan: one output per escrow-held bid, the winner's shares to
// the requester, every loser's shares back to its previous owners.
inline Transaction make_accept(const crypto::KeyPair& requester, const std::string& rfq_id,
                               const std::string& win_bid_id,
                               const std::vector<const Transaction*>& locked_bids)
{
    Transaction tx;
    tx.op = Operation::AcceptBid;
    tx.assets.push_back(Asset{json::object(), 0, win_bid_id});
    tx.refs.push_back(rfq_id);

    std::vector<const Transaction*> bids = locked_bids;
    std::sort(bids.begin(), bids.end(),
              [](const Transaction* a, const Transaction* b) { return a->id < b->id; });
    for (const Transaction* bid : bids)
    {
        tx.inputs.push_back(Input{OutputRef{bid->id, 0}, {requester.public_key}, {}});
        const Output& escrowed = bid->outputs[0];
        if (bid->id == win_bid_id)
            tx.outputs.push_back(Output{{requester.public_key}, escrowed.amount, {escrow_owner(escrowed)}});
        else
            tx.outputs.push_back(Output{escrowed.prev_owners, escrowed.amount, {escrow_owner(escrowed)}});
    }
    return finalize(std::move(tx), requester);
}

inline Transaction make_return(const crypto::KeyPair& escrow, const Transaction& bid,
                               const std::string& accept_id)
{
    Transaction tx;
    tx.op = Operation::Return;
    tx.assets.push_back(Asset{json::object(), 0, bid.assets[0].id});
    tx.inputs.push_back(Input{OutputRef{bid.id, 0}, {escrow.public_key}, {}});
    tx.outputs.push_back(Output{bid.outputs[0].prev_owners, bid.outputs[0].amount,
                                {escrow.public_key}});
    tx.refs.push_back(accept_id);
    return finalize(std::move(tx), escrow);
}

// Commit transactions straight into a ledger, bypassing consensus (unit
// tests for the validation and storage layers).
inline Status commit_directly(Ledger& ledger, std::vector<Transaction> txs,
                              uint64_t time_us = 1000)
{
    Block b;
    b.height = ledger.height() + 1;
    b.prev_digest = ledger.tip_digest();
    b.time_us = time_us;
    b.vote_count = 3;
    b.txs = std::move(txs);
    return ledger.commit_block(b);
}

} // namespace tt
