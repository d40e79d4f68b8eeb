// Copyright (c) 2026 the souk authors. All rights reserved.
// Licensed under the Apache License, Version 2.0. See the LICENSE
// file in the project root for full license information.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "souk/errors.hpp"
#include "souk/ledger.hpp"
#include "souk/schema.hpp"
#include "souk/tx.hpp"

namespace souk {

// A manufacturing capability advertised by assets and demanded by requests.
// Compared by exact, case-sensitive string equality.
struct Capability
{
    std::string name;
    auto operator<=>(const Capability&) const = default;
};

// Read-only view the validators run against: the committed ledger plus the
// transactions already accepted into the in-flight block, so intra-block
// double spends and duplicate settlements are caught deterministically.
struct ValidationContext
{
    const Ledger& ledger;
    const std::vector<Transaction>* current_block_txs = nullptr;
    std::string escrow_public_key;

    const Transaction* find_tx(const std::string& id) const
    {
        if (const Transaction* tx = ledger.get_tx(id))
            return tx;
        if (current_block_txs != nullptr)
            for (const auto& tx : *current_block_txs)
                if (tx.id == id)
                    return &tx;
        return nullptr;
    }

    bool output_spent(const OutputRef& ref) const
    {
        if (ledger.is_spent(ref))
            return true;
        if (current_block_txs != nullptr)
            for (const auto& tx : *current_block_txs)
            {
                if (tx.op == Operation::AcceptBid)
                    continue; // settlement parents do not consume their inputs
                for (const auto& in : tx.inputs)
                    if (in.spends && *in.spends == ref)
                        return true;
            }
        return false;
    }

    const Transaction* accept_for_rfq(const std::string& rfq_id) const
    {
        if (const Transaction* tx = ledger.get_accept_tx_for_rfq(rfq_id))
            return tx;
        if (current_block_txs != nullptr)
            for (const auto& tx : *current_block_txs)
                if (tx.op == Operation::AcceptBid && !tx.refs.empty() && tx.refs[0] == rfq_id)
                    return &tx;
        return nullptr;
    }
};

inline std::set<Capability> get_caps_from_rfq(const Transaction& request_tx)
{
    std::set<Capability> out;
    if (request_tx.metadata.is_object() && request_tx.metadata.contains("capabilities") &&
        request_tx.metadata["capabilities"].is_array())
        for (const auto& c : request_tx.metadata["capabilities"])
            if (c.is_string())
                out.insert(Capability{c.get<std::string>()});
    return out;
}

inline std::set<Capability> get_caps_from_asset(const Transaction& asset_tx)
{
    std::set<Capability> out;
    for (const auto& a : asset_tx.assets)
        if (a.data.is_object() && a.data.contains("capabilities") && a.data["capabilities"].is_array())
            for (const auto& c : a.data["capabilities"])
                if (c.is_string())
                    out.insert(Capability{c.get<std::string>()});
    return out;
}

namespace detail {

inline std::vector<std::string> sorted_distinct(std::vector<std::string> keys)
{
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return keys;
}

inline Result<std::string> body_bytes(const Transaction& tx)
{
    return signing_payload(tx);
}

inline bool verify_input_signature(const Input& in, std::span<const std::string> keys,
                                   const std::string& body)
{
    return crypto::verify(in.signature, keys, std::span<const uint8_t>(
                                                  reinterpret_cast<const uint8_t*>(body.data()),
                                                  body.size()));
}

} // namespace detail

// Checks shared by every operation: the id is the digest of the body, the
// reference vector never points at the transaction itself, and children are
// only ever populated by the engine.
inline Status validate_common(const Transaction& tx, const ValidationContext&)
{
    auto id = compute_tx_id(tx);
    if (!id)
        return id.status();
    if (*id != tx.id)
        return Status::error(ErrorCode::ValidationError,
                             "id does not match the digest of the transaction body");
    for (const auto& r : tx.refs)
        if (r == tx.id)
            return Status::error(ErrorCode::ValidationError, "refs must not contain the transaction itself");
    if (!tx.children.empty())
        return Status::error(ErrorCode::ValidationError,
                             "children are derived by the engine after commit and must be "
                             "submitted empty");
    return Status::ok();
}

// Def 3 condition 8 and the shared spend mechanics: every input addresses an
// existing, committed, unspent output; signatures verify against the spent
// owners (or a caller-supplied signer set); shares are conserved per asset;
// and outputs record the spent owners as previous owners.
inline Status validate_transfer_inputs(const Transaction& tx, const ValidationContext& ctx,
                                       const std::vector<std::string>* signer_override = nullptr)
{
    auto body = detail::body_bytes(tx);
    if (!body)
        return body.status();

    const std::string lineage = asset_lineage(tx);
    if (lineage.empty())
        return Status::error(ErrorCode::ValidationError, "transaction carries no asset lineage");

    std::set<OutputRef> seen;
    int64_t inflow = 0;
    std::vector<std::string> spent_owner_union;
    for (const auto& in : tx.inputs)
    {
        if (!in.spends)
            return Status::error(ErrorCode::ValidationError, "inputs of this operation must spend outputs");
        if (!seen.insert(*in.spends).second)
            return Status::error(ErrorCode::DoubleSpendError,
                                 "duplicate spend of " + in.spends->tx_id + " within one transaction");
        const Transaction* spent_tx = ctx.find_tx(in.spends->tx_id);
        if (spent_tx == nullptr)
            return Status::error(ErrorCode::InputDoesNotExistError,
                                 "spent transaction " + in.spends->tx_id + " is not committed");
        if (!outputs_spendable(spent_tx->op) || in.spends->index >= spent_tx->outputs.size())
            return Status::error(ErrorCode::InputDoesNotExistError,
                                 "no spendable output " + std::to_string(in.spends->index) + " on " +
                                     in.spends->tx_id);
        if (ctx.output_spent(*in.spends))
            return Status::error(ErrorCode::DoubleSpendError,
                                 "output " + in.spends->tx_id + ":" +
                                     std::to_string(in.spends->index) + " is already spent");
        const Output& spent = spent_tx->outputs[in.spends->index];
        const std::vector<std::string>& keys =
            signer_override != nullptr ? *signer_override : spent.owners;
        if (!detail::verify_input_signature(in, keys, *body))
            return Status::error(ErrorCode::InvalidSignature,
                                 "input signature does not verify against the spent owners");
        if (asset_lineage(*spent_tx) != lineage)
            return Status::error(ErrorCode::AmountMismatch,
                                 "input spends shares of a different asset than declared");
        inflow += spent.amount;
        for (const auto& k : spent.owners)
            spent_owner_union.push_back(k);
    }

    int64_t outflow = 0;
    const auto prev = detail::sorted_distinct(spent_owner_union);
    for (const auto& o : tx.outputs)
    {
        outflow += o.amount;
        if (detail::sorted_distinct(o.prev_owners) != prev)
            return Status::error(ErrorCode::ValidationError,
                                 "output prev_owners must record the spent outputs' owners");
    }
    if (inflow != outflow)
        return Status::error(ErrorCode::AmountMismatch,
                             "input shares (" + std::to_string(inflow) + ") != output shares (" +
                                 std::to_string(outflow) + ")");
    return Status::ok();
}

// CREATE: a genesis mint. No spends, issuer signature over the body, and
// the minted shares fully assigned to outputs.
inline Status validate_create(const Transaction& tx, const ValidationContext& ctx)
{
    if (auto st = validate_common(tx, ctx); !st)
        return st;
    if (tx.assets.size() != 1 || !tx.assets[0].id.empty())
        return Status::error(ErrorCode::ValidationError, "CREATE carries exactly one inline asset");
    if (tx.assets[0].amt < 1)
        return Status::error(ErrorCode::AmountMismatch, "minted share count must be >= 1");
    if (tx.inputs.size() != 1 || tx.inputs[0].spends)
        return Status::error(ErrorCode::ValidationError, "CREATE takes one input with no spends");

    auto body = detail::body_bytes(tx);
    if (!body)
        return body.status();
    if (tx.inputs[0].signers.empty() ||
        !detail::verify_input_signature(tx.inputs[0], tx.inputs[0].signers, *body))
        return Status::error(ErrorCode::InvalidSignature, "issuer signature does not verify");

    int64_t assigned = 0;
    for (const auto& o : tx.outputs)
    {
        assigned += o.amount;
        if (!o.prev_owners.empty())
            return Status::error(ErrorCode::ValidationError, "CREATE outputs have no previous owners");
    }
    if (assigned != tx.assets[0].amt)
        return Status::error(ErrorCode::AmountMismatch,
                             "outputs assign " + std::to_string(assigned) + " of " +
                                 std::to_string(tx.assets[0].amt) + " minted shares");
    return Status::ok();
}

// TRANSFER: the generic committed-output spend.
inline Status validate_transfer(const Transaction& tx, const ValidationContext& ctx)
{
    if (auto st = validate_common(tx, ctx); !st)
        return st;
    return validate_transfer_inputs(tx, ctx);
}

// REQUEST: a signed capability announcement. Spends nothing; its single
// output is a token owned by the requester, the anchor later transactions
// compare signers and payouts against.
inline Status validate_request(const Transaction& tx, const ValidationContext& ctx)
{
    if (auto st = validate_common(tx, ctx); !st)
        return st;
    if (tx.inputs.size() != 1 || tx.inputs[0].spends)
        return Status::error(ErrorCode::ValidationError, "REQUEST takes one input with no spends");

    auto caps = get_caps_from_rfq(tx);
    if (caps.empty())
        return Status::error(ErrorCode::MissingCapabilities,
                             "metadata.capabilities must list at least one requested capability");

    auto body = detail::body_bytes(tx);
    if (!body)
        return body.status();
    if (tx.inputs[0].signers.empty() ||
        !detail::verify_input_signature(tx.inputs[0], tx.inputs[0].signers, *body))
        return Status::error(ErrorCode::InvalidSignature, "requester signature does not verify");

    if (tx.outputs.size() != 1 || tx.outputs[0].owners != tx.inputs[0].signers)
        return Status::error(ErrorCode::ValidationError,
                             "REQUEST carries one token output owned by the requester");
    if (!tx.outputs[0].prev_owners.empty())
        return Status::error(ErrorCode::ValidationError, "REQUEST outputs have no previous owners");
    return Status::ok();
}

// BID: Def 3 conditions, checked in order. The offered shares move into
// escrow; the referenced request pins the auction context.
inline Status validate_bid(const Transaction& tx, const ValidationContext& ctx)
{
    if (auto st = validate_common(tx, ctx); !st)
        return st;

    // c1: at least one input object
    if (tx.inputs.empty())
        return Status::error(ErrorCode::ValidationError, "BID requires at least one input");
    // c2: at least one referenced transaction
    if (tx.refs.empty())
        return Status::error(ErrorCode::ValidationError, "BID requires at least one reference");

    // c3: exactly one referenced REQUEST
    const Transaction* rfq = nullptr;
    size_t request_refs = 0;
    for (const auto& r : tx.refs)
    {
        const Transaction* ref_tx = ctx.find_tx(r);
        if (ref_tx == nullptr)
            return Status::error(ErrorCode::InputDoesNotExistError,
                                 "referenced transaction " + r + " is not committed");
        if (ref_tx->op == Operation::Request)
        {
            ++request_refs;
            rfq = ref_tx;
        }
    }
    if (request_refs != 1 || rfq == nullptr)
        return Status::error(ErrorCode::ValidationError,
                             "reference vector must contain exactly one REQUEST");

    // A settled auction accepts no further bids; its escrow would be stuck.
    if (ctx.accept_for_rfq(rfq->id) != nullptr)
        return Status::error(ErrorCode::ValidationError,
                             "request " + rfq->id + " already has an accepted bid");

    // c4: some input carries asset shares
    bool has_shares = false;
    for (const auto& in : tx.inputs)
    {
        if (!in.spends)
            continue;
        const Transaction* spent_tx = ctx.find_tx(in.spends->tx_id);
        if (spent_tx == nullptr)
            return Status::error(ErrorCode::InputDoesNotExistError,
                                 "spent transaction " + in.spends->tx_id + " is not committed");
        if (asset_lineage(*spent_tx).empty() || in.spends->index >= spent_tx->outputs.size())
            continue;
        if (spent_tx->outputs[in.spends->index].amount > 0)
            has_shares = true;
    }
    if (!has_shares)
        return Status::error(ErrorCode::ValidationError, "no BID input carries asset shares");

    // c5: all input signatures verify against the spent owners
    auto bid_body = detail::body_bytes(tx);
    if (!bid_body)
        return bid_body.status();
    for (const auto& in : tx.inputs)
    {
        if (in.signature.empty())
            return Status::error(ErrorCode::InvalidSignature, "unsigned BID input");
        if (!in.spends)
            continue; // rejected as a transfer in c8
        const Transaction* spent_tx = ctx.find_tx(in.spends->tx_id);
        if (spent_tx == nullptr || in.spends->index >= spent_tx->outputs.size())
            continue; // existence errors surface in c8
        if (!detail::verify_input_signature(in, spent_tx->outputs[in.spends->index].owners,
                                            *bid_body))
            return Status::error(ErrorCode::InvalidSignature,
                                 "input signature does not verify against the spent owners");
    }

    // c6: every output is held by the escrow account
    for (const auto& o : tx.outputs)
        if (o.owners.size() != 1 || o.owners[0] != ctx.escrow_public_key)
            return Status::error(ErrorCode::ValidationError,
                                 "every BID output must be owned by the escrow account");
    if (tx.outputs.size() != 1)
        return Status::error(ErrorCode::ValidationError, "BID carries exactly one escrow output");

    // c7: requested capabilities within the union of the bid assets'
    auto requested = get_caps_from_rfq(*rfq);
    std::set<Capability> offered;
    for (const auto& in : tx.inputs)
    {
        if (!in.spends)
            continue;
        const Transaction* spent_tx = ctx.find_tx(in.spends->tx_id);
        if (spent_tx == nullptr)
            continue;
        const std::string lineage = asset_lineage(*spent_tx);
        if (lineage.empty())
            continue;
        const Transaction* create_tx = ctx.find_tx(lineage);
        if (create_tx == nullptr)
            return Status::error(ErrorCode::InputDoesNotExistError,
                                 "asset transaction " + lineage + " is not committed");
        auto caps = get_caps_from_asset(*create_tx);
        offered.insert(caps.begin(), caps.end());
    }
    for (const auto& cap : requested)
        if (offered.count(cap) == 0)
            return Status::error(ErrorCode::InsufficientCapabilitiesError,
                                 "bid assets lack requested capability: " + cap.name);

    // c8: the bid spends like a transfer
    return validate_transfer_inputs(tx, ctx);
}

// ACCEPT_BID: Def 4 conditions. The parent declares a settlement plan over
// all escrow-held bids for the request; its inputs are validated but not
// consumed, and the derived children realize the plan.
inline Status validate_accept_bid(const Transaction& tx, const ValidationContext& ctx)
{
    if (auto st = validate_common(tx, ctx); !st)
        return st;

    // c2: exactly one reference
    if (tx.refs.size() != 1)
        return Status::error(ErrorCode::ValidationError,
                             "ACCEPT_BID's reference vector contains exactly the request");
    // c3: the reference is a committed REQUEST
    const Transaction* rfq = ctx.find_tx(tx.refs[0]);
    if (rfq == nullptr || rfq->op != Operation::Request)
        return Status::error(ErrorCode::ValidationError,
                             "referenced request is not a committed REQUEST transaction");

    // the winning bid is anchored by the asset field and must be committed
    if (tx.assets.size() != 1 || tx.assets[0].id.empty())
        return Status::error(ErrorCode::ValidationError, "ACCEPT_BID anchors the winning bid id");
    const std::string win_bid_id = tx.assets[0].id;
    const Transaction* win = ctx.find_tx(win_bid_id);
    if (win == nullptr || win->op != Operation::Bid)
        return Status::error(ErrorCode::ValidationError,
                             "winning bid " + win_bid_id + " is not a committed BID");

    // only the requester settles their request
    std::vector<std::string> requester = rfq->inputs.empty() ? std::vector<std::string>{}
                                                             : rfq->inputs[0].signers;
    for (const auto& in : tx.inputs)
        if (in.signers != requester)
            return Status::error(ErrorCode::ValidationError,
                                 "ACCEPT_BID must be signed by the requester");

    // one settlement per request, also against the in-flight block
    if (const Transaction* dup = ctx.accept_for_rfq(rfq->id); dup != nullptr && dup->id != tx.id)
        return Status::error(ErrorCode::DuplicateTransactionError,
                             "request " + rfq->id + " already has an accepted bid");

    // the winning bid must be among the escrow-held bids
    auto locked = ctx.ledger.get_locked_bids(rfq->id);
    bool win_locked = false;
    for (const Transaction* bid : locked)
        win_locked = win_locked || bid->id == win_bid_id;
    if (!win_locked)
        return Status::error(ErrorCode::ValidationError,
                             "winning bid is not among the escrow-held bids for this request");

    // c1: one input per escrow-held bid
    if (tx.inputs.size() != locked.size())
        return Status::error(ErrorCode::ValidationError,
                             "ACCEPT_BID needs one input per escrow-held bid (" +
                                 std::to_string(locked.size()) + ")");

    // c7: each input spends a distinct escrow-held bid output
    std::map<std::string, const Transaction*> locked_by_id;
    for (const Transaction* bid : locked)
        locked_by_id[bid->id] = bid;
    std::set<OutputRef> seen;
    for (const auto& in : tx.inputs)
    {
        if (!in.spends)
            return Status::error(ErrorCode::ValidationError, "ACCEPT_BID inputs spend bid outputs");
        auto it = locked_by_id.find(in.spends->tx_id);
        if (it == locked_by_id.end() || in.spends->index >= it->second->outputs.size())
            return Status::error(ErrorCode::ValidationError,
                                 "input does not spend an escrow-held bid for this request");
        const Output& spent = it->second->outputs[in.spends->index];
        if (spent.owners.size() != 1 || spent.owners[0] != ctx.escrow_public_key)
            return Status::error(ErrorCode::ValidationError,
                                 "input does not spend an escrow-owned output");
        if (!seen.insert(*in.spends).second)
            return Status::error(ErrorCode::ValidationError,
                                 "inputs spend the same bid output twice");
        if (ctx.output_spent(*in.spends))
            return Status::error(ErrorCode::DoubleSpendError,
                                 "escrow output of bid " + in.spends->tx_id + " is already spent");
    }

    // c5: every input signature verifies (requester keys, see above)
    auto body = detail::body_bytes(tx);
    if (!body)
        return body.status();
    for (const auto& in : tx.inputs)
        if (!detail::verify_input_signature(in, requester, *body))
            return Status::error(ErrorCode::InvalidSignature,
                                 "ACCEPT_BID input signature does not verify against the requester");

    // c9: exactly one plan output pays the requester
    const std::vector<std::string> requester_owner = requester;
    size_t payouts = 0;
    for (const auto& o : tx.outputs)
        if (o.owners == requester_owner)
            ++payouts;
    if (payouts != 1)
        return Status::error(ErrorCode::ValidationError,
                             "exactly one output transfers the winning asset to the requester");

    // c6 + c8: the plan covers every spent bid — the winner's shares flow to
    // the requester, every losing bid's shares flow back to its previous
    // owners, one plan output per input.
    if (tx.outputs.size() != tx.inputs.size())
        return Status::error(ErrorCode::ValidationError,
                             "settlement plan needs one output per spent bid");
    std::vector<bool> used(tx.outputs.size(), false);
    for (const auto& in : tx.inputs)
    {
        const Transaction* bid = locked_by_id.at(in.spends->tx_id);
        const Output& spent = bid->outputs[in.spends->index];
        const std::vector<std::string>& payee =
            bid->id == win_bid_id ? requester_owner : spent.prev_owners;
        bool matched = false;
        for (size_t i = 0; i < tx.outputs.size(); ++i)
        {
            if (used[i] || tx.outputs[i].owners != payee)
                continue;
            if (tx.outputs[i].amount != spent.amount)
                return Status::error(ErrorCode::AmountMismatch,
                                     "plan output amount differs from the bid's escrowed shares");
            used[i] = true;
            matched = true;
            break;
        }
        if (!matched)
            return Status::error(ErrorCode::ValidationError,
                                 bid->id == win_bid_id
                                     ? "plan does not pay the winning shares to the requester"
                                     : "plan does not return losing bid " + bid->id +
                                           " to its previous owners");
    }
    return Status::ok();
}

// RETURN: a settlement child moving one losing bid's escrowed shares back
// to that bid's previous owners, referencing the parent ACCEPT_BID.
inline Status validate_return(const Transaction& tx, const ValidationContext& ctx)
{
    if (auto st = validate_common(tx, ctx); !st)
        return st;

    if (tx.refs.empty())
        return Status::error(ErrorCode::ValidationError, "RETURN references its parent ACCEPT_BID");
    const Transaction* parent = ctx.find_tx(tx.refs[0]);
    if (parent == nullptr)
        return Status::error(ErrorCode::InputDoesNotExistError,
                             "parent transaction " + tx.refs[0] + " is not committed");
    if (parent->op != Operation::AcceptBid)
        return Status::error(ErrorCode::ValidationError, "RETURN's parent must be an ACCEPT_BID");

    if (tx.inputs.size() != 1 || !tx.inputs[0].spends)
        return Status::error(ErrorCode::ValidationError, "RETURN spends exactly one bid output");
    const OutputRef& ref = *tx.inputs[0].spends;

    const Transaction* bid = ctx.find_tx(ref.tx_id);
    if (bid == nullptr)
        return Status::error(ErrorCode::InputDoesNotExistError,
                             "spent transaction " + ref.tx_id + " is not committed");
    if (bid->op != Operation::Bid || ref.index >= bid->outputs.size())
        return Status::error(ErrorCode::ValidationError, "RETURN must spend a BID output");
    const Output& spent = bid->outputs[ref.index];
    if (spent.owners.size() != 1 || spent.owners[0] != ctx.escrow_public_key)
        return Status::error(ErrorCode::ValidationError, "RETURN must spend an escrow-held output");

    bool settled_by_parent = false;
    for (const auto& in : parent->inputs)
        if (in.spends && *in.spends == ref)
            settled_by_parent = true;
    if (!settled_by_parent)
        return Status::error(ErrorCode::ValidationError,
                             "spent bid is not settled by the referenced ACCEPT_BID");
    if (!parent->assets.empty() && parent->assets[0].id == bid->id)
        return Status::error(ErrorCode::ValidationError,
                             "the winning bid is transferred to the requester, not returned");

    if (tx.outputs.size() != 1 || tx.outputs[0].owners != spent.prev_owners)
        return Status::error(ErrorCode::ValidationError,
                             "RETURN must pay the spent output's previous owners");

    return validate_transfer_inputs(tx, ctx);
}

inline Status validate_semantic(const Transaction& tx, const ValidationContext& ctx)
{
    switch (tx.op)
    {
        case Operation::Create: return validate_create(tx, ctx);
        case Operation::Transfer: return validate_transfer(tx, ctx);
        case Operation::Request: return validate_request(tx, ctx);
        case Operation::Bid: return validate_bid(tx, ctx);
        case Operation::AcceptBid: return validate_accept_bid(tx, ctx);
        case Operation::Return: return validate_return(tx, ctx);
    }
    return Status::error(ErrorCode::ValidationError, "unknown operation");
}

// Full admission pipeline over a wire document: schema pass, parse, then
// the ledger-aware semantic pass.
inline Result<Transaction> validate_wire(SchemaRegistry& registry, const json& doc,
                                         const ValidationContext& ctx)
{
    auto schema = registry.schema_for(doc);
    if (!schema)
        return schema.status();
    if (auto st = schema_status(validate_schema(*schema, doc)); !st)
        return st;
    auto tx = parse_transaction(doc);
    if (!tx)
        return tx.status();
    if (auto st = validate_semantic(*tx, ctx); !st)
        return st;
    return tx;
}

// Def 5: a workflow's head spends nothing, every later transaction's spends
// resolve to committed predecessors (here: the ledger or an earlier element),
// and the operation sequence is one of the supported patterns.
inline Status validate_workflow(std::span<const Transaction> seq, const Ledger* ledger = nullptr)
{
    if (seq.empty())
        return Status::error(ErrorCode::InvalidWorkflowHead, "empty workflow");
    for (const auto& in : seq[0].inputs)
        if (in.spends)
            return Status::error(ErrorCode::InvalidWorkflowHead,
                                 "the workflow head must not spend any output");

    for (size_t i = 1; i < seq.size(); ++i)
    {
        for (const auto& in : seq[i].inputs)
        {
            if (!in.spends)
                continue;
            bool resolved = ledger != nullptr && ledger->is_committed(in.spends->tx_id);
            for (size_t j = 0; !resolved && j < i; ++j)
                resolved = seq[j].id == in.spends->tx_id;
            if (!resolved)
                return Status::error(ErrorCode::UncommittedDependency,
                                     "input of step " + std::to_string(i) +
                                         " does not come from a committed transaction");
        }
    }

    static const std::vector<std::vector<Operation>> patterns = {
        {Operation::Create},
        {Operation::Create, Operation::Transfer},
        {Operation::Create, Operation::Request, Operation::Bid, Operation::AcceptBid,
         Operation::Transfer}};
    std::vector<Operation> ops;
    ops.reserve(seq.size());
    for (const auto& tx : seq)
        ops.push_back(tx.op);
    for (const auto& p : patterns)
        if (ops == p)
            return Status::ok();
    return Status::error(ErrorCode::InvalidOpSequence, "unsupported operation sequence");
}

} // namespace souk
