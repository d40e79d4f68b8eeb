// Copyright (c) 2026 the souk authors. All rights reserved.
// Licensed under the Apache License, Version 2.0. See the LICENSE
// file in the project root for full license information.

#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "souk/errors.hpp"
#include "souk/tx.hpp"

namespace souk {

namespace detail {

inline uint32_t crc32(std::span<const uint8_t> data)
{
    static const auto table = []
    {
        std::array<uint32_t, 256> t{};
        for (uint32_t i = 0; i < 256; ++i)
        {
            uint32_t c = i;
            for (int k = 0; k < 8; ++k)
                c = (c & 1) ? 0xedb88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    uint32_t c = 0xffffffffu;
    for (uint8_t b : data)
        c = table[(c ^ b) & 0xffu] ^ (c >> 8);
    return c ^ 0xffffffffu;
}

} // namespace detail

// Append-only record log with atomic batched appends. The in-memory record
// list models the durable medium for the simulator; with a path configured
// every batch is also framed to disk ([len][crc][payload]) and flushed, and
// a torn tail frame is dropped on reopen.
class Store
{
public:
    Store() = default;

    explicit Store(std::string path) : path_(std::move(path))
    {
        if (path_.empty())
            return;
        replay_file();
        file_ = std::fopen(path_.c_str(), "ab");
    }

    ~Store()
    {
        if (file_ != nullptr)
            std::fclose(file_);
    }

    Store(const Store&) = delete;
    Store& operator=(const Store&) = delete;

    // All records in one batch become durable together or not at all.
    void append_atomic(const std::vector<json>& batch)
    {
        if (batch.empty())
            return;
        if (file_ != nullptr)
        {
            json arr = json::array();
            for (const auto& r : batch)
                arr.push_back(r);
            const std::string payload = arr.dump();
            uint32_t len = static_cast<uint32_t>(payload.size());
            uint32_t crc = detail::crc32(std::span<const uint8_t>(
                reinterpret_cast<const uint8_t*>(payload.data()), payload.size()));
            std::fwrite(&len, sizeof(len), 1, file_);
            std::fwrite(&crc, sizeof(crc), 1, file_);
            std::fwrite(payload.data(), 1, payload.size(), file_);
            std::fflush(file_);
        }
        for (const auto& r : batch)
            records_.push_back(r);
    }

    void append(const json& record) { append_atomic({record}); }

    const std::vector<json>& records() const { return records_; }
    const std::string& path() const { return path_; }

private:
    void replay_file()
    {
        std::FILE* f = std::fopen(path_.c_str(), "rb");
        if (f == nullptr)
            return;
        for (;;)
        {
            uint32_t len = 0, crc = 0;
            if (std::fread(&len, sizeof(len), 1, f) != 1 || std::fread(&crc, sizeof(crc), 1, f) != 1)
                break;
            std::string payload(len, '\0');
            if (len > 0 && std::fread(payload.data(), 1, len, f) != len)
                break;
            if (detail::crc32(std::span<const uint8_t>(
                    reinterpret_cast<const uint8_t*>(payload.data()), payload.size())) != crc)
                break; // torn tail; everything before it is intact
            json arr = json::parse(payload, nullptr, false);
            if (arr.is_discarded() || !arr.is_array())
                break;
            for (const auto& r : arr)
                records_.push_back(r);
        }
        std::fclose(f);
    }

    std::string path_;
    std::FILE* file_ = nullptr;
    std::vector<json> records_;
};

// Ordered batch of committed transactions. Content bytes (and so the
// digest) are identical on every node; the digest deliberately excludes
// the vote tally.
struct Block
{
    uint64_t height = 0;
    std::string prev_digest = std::string(64, '0');
    uint64_t time_us = 0;
    uint32_t vote_count = 0;
    std::vector<Transaction> txs;

    json content_json() const
    {
        json txs_j = json::array();
        for (const auto& tx : txs)
            txs_j.push_back(wire::to_json(tx));
        return json{{"height", height}, {"prev_digest", prev_digest}, {"time_us", time_us},
                    {"txs", txs_j}};
    }

    std::string digest() const { return crypto::sha3_256_hex(content_json().dump()); }

    json to_json() const
    {
        json j = content_json();
        j["vote_count"] = vote_count;
        return j;
    }

    static Result<Block> from_json(const json& j)
    {
        Block b;
        if (!j.is_object() || !j.contains("height") || !j.contains("prev_digest") ||
            !j.contains("time_us") || !j.contains("txs"))
            return Status::error(ErrorCode::InternalError, "malformed block record");
        b.height = j["height"].get<uint64_t>();
        b.prev_digest = j["prev_digest"].get<std::string>();
        b.time_us = j["time_us"].get<uint64_t>();
        b.vote_count = j.value("vote_count", 0u);
        for (const auto& tj : j["txs"])
        {
            auto tx = parse_transaction(tj);
            if (!tx)
                return tx.status();
            b.txs.push_back(std::move(*tx));
        }
        return b;
    }
};

enum class ChildStatus : uint8_t { Pending, Enqueued, Committed };

inline const char* to_string(ChildStatus s)
{
    switch (s)
    {
        case ChildStatus::Pending: return "pending";
        case ChildStatus::Enqueued: return "enqueued";
        case ChildStatus::Committed: return "committed";
    }
    return "pending";
}

inline std::optional<ChildStatus> child_status_from_string(const std::string& s)
{
    if (s == "pending") return ChildStatus::Pending;
    if (s == "enqueued") return ChildStatus::Enqueued;
    if (s == "committed") return ChildStatus::Committed;
    return std::nullopt;
}

// Durable record of an ACCEPT_BID settlement: the derived children (the
// winner transfer plus the returns) and how far each one has progressed.
struct RecoveryLogEntry
{
    std::string accept_tx_id;
    std::string rfq_id;
    struct Child
    {
        std::string tx_id;
        Operation op = Operation::Return;
        ChildStatus status = ChildStatus::Pending;
    };
    std::vector<Child> children;
    std::string parent_status = "commit";

    bool fully_committed() const
    {
        return std::all_of(children.begin(), children.end(),
                           [](const Child& c) { return c.status == ChildStatus::Committed; });
    }

    json to_json() const
    {
        json ch = json::array();
        for (const auto& c : children)
            ch.push_back(json{{"tx_id", c.tx_id}, {"op", souk::to_string(c.op)},
                              {"status", souk::to_string(c.status)}});
        return json{{"accept_tx_id", accept_tx_id}, {"rfq_id", rfq_id}, {"children", ch},
                    {"parent_status", parent_status}};
    }

    static RecoveryLogEntry from_json(const json& j)
    {
        RecoveryLogEntry e;
        e.accept_tx_id = j["accept_tx_id"].get<std::string>();
        e.rfq_id = j["rfq_id"].get<std::string>();
        e.parent_status = j.value("parent_status", "commit");
        for (const auto& cj : j["children"])
        {
            Child c;
            c.tx_id = cj["tx_id"].get<std::string>();
            c.op = operation_from_string(cj["op"].get<std::string>()).value_or(Operation::Return);
            c.status = child_status_from_string(cj["status"].get<std::string>())
                           .value_or(ChildStatus::Pending);
            e.children.push_back(std::move(c));
        }
        return e;
    }
};

// Committed state of one node: block chain, transaction and spent-output
// indexes, escrow-held-bid and settlement indexes, the recovery collection,
// and receivership notes. Single writer (the commit path); reads are const.
class Ledger
{
public:
    explicit Ledger(std::shared_ptr<Store> store) : store_(std::move(store))
    {
        for (const auto& rec : store_->records())
            apply_record(rec, /*from_replay=*/true);
    }

    // ---- reads ----------------------------------------------------------

    uint64_t height() const { return blocks_.empty() ? 0 : blocks_.back().height; }
    bool empty() const { return blocks_.empty(); }
    const std::vector<Block>& blocks() const { return blocks_; }
    std::string tip_digest() const
    {
        return blocks_.empty() ? std::string(64, '0') : blocks_.back().digest();
    }

    const Transaction* get_tx(const std::string& tx_id) const
    {
        auto it = tx_index_.find(tx_id);
        if (it == tx_index_.end())
            return nullptr;
        return &blocks_[it->second.first].txs[it->second.second];
    }

    bool is_committed(const std::string& tx_id) const { return tx_index_.count(tx_id) != 0; }

    const Output* output_at(const OutputRef& ref) const
    {
        const Transaction* tx = get_tx(ref.tx_id);
        if (tx == nullptr || ref.index >= tx->outputs.size())
            return nullptr;
        return &tx->outputs[ref.index];
    }

    const std::string* spender_of(const OutputRef& ref) const
    {
        auto it = spent_.find(ref);
        return it == spent_.end() ? nullptr : &it->second;
    }

    bool is_spent(const OutputRef& ref) const { return spent_.count(ref) != 0; }

    // Committed BIDs referencing the request whose escrow outputs are all
    // still unspent.
    std::vector<const Transaction*> get_locked_bids(const std::string& rfq_id) const
    {
        std::vector<const Transaction*> out;
        auto it = bids_by_rfq_.find(rfq_id);
        if (it == bids_by_rfq_.end())
            return out;
        for (const auto& bid_id : it->second)
        {
            const Transaction* bid = get_tx(bid_id);
            if (bid == nullptr)
                continue;
            bool locked = true;
            for (uint32_t i = 0; i < bid->outputs.size(); ++i)
                if (is_spent(OutputRef{bid_id, i}))
                {
                    locked = false;
                    break;
                }
            if (locked)
                out.push_back(bid);
        }
        return out;
    }

    const Transaction* get_accept_tx_for_rfq(const std::string& rfq_id) const
    {
        auto it = accept_by_rfq_.find(rfq_id);
        return it == accept_by_rfq_.end() ? nullptr : get_tx(it->second);
    }

    // Exact-value metadata query. Declared paths are index-backed; any other
    // dotted path falls back to a scan. A scalar value matches a list field
    // through membership.
    std::vector<std::string> query_by_metadata(std::optional<Operation> op_filter,
                                               const std::string& path, const json& value) const
    {
        std::vector<std::string> out;
        if (value.is_string() &&
            (path == "metadata.capabilities" || path == "asset.data.capabilities"))
        {
            const auto& index =
                path == "metadata.capabilities" ? caps_meta_index_ : caps_asset_index_;
            auto it = index.find(value.get<std::string>());
            if (it == index.end())
                return out;
            for (const auto& id : it->second)
            {
                const Transaction* tx = get_tx(id);
                if (tx != nullptr && (!op_filter || tx->op == *op_filter))
                    out.push_back(id);
            }
            return out;
        }
        for (const auto& [id, loc] : tx_index_)
        {
            const Transaction& tx = blocks_[loc.first].txs[loc.second];
            if (op_filter && tx.op != *op_filter)
                continue;
            json doc = wire::to_json(tx);
            const json* cur = &doc;
            bool found = true;
            size_t start = 0;
            while (start <= path.size())
            {
                size_t dot = path.find('.', start);
                std::string key =
                    dot == std::string::npos ? path.substr(start) : path.substr(start, dot - start);
                if (!cur->is_object() || !cur->contains(key))
                {
                    found = false;
                    break;
                }
                cur = &(*cur)[key];
                if (dot == std::string::npos)
                    break;
                start = dot + 1;
            }
            if (!found)
                continue;
            if (*cur == value ||
                (cur->is_array() &&
                 std::find(cur->begin(), cur->end(), value) != cur->end()))
                out.push_back(id);
        }
        return out;
    }

    // Requests with no committed ACCEPT_BID yet, optionally filtered by a
    // requested capability.
    std::vector<std::string> query_open_requests(const std::string& capability = {}) const
    {
        std::vector<std::string> candidates;
        if (capability.empty())
        {
            for (const auto& [id, loc] : tx_index_)
                if (blocks_[loc.first].txs[loc.second].op == Operation::Request)
                    candidates.push_back(id);
        }
        else
        {
            candidates = query_by_metadata(Operation::Request, "metadata.capabilities",
                                           json(capability));
        }
        std::vector<std::string> out;
        for (const auto& id : candidates)
            if (get_accept_tx_for_rfq(id) == nullptr)
                out.push_back(id);
        return out;
    }

    // Unspent spendable share balances for one asset lineage, keyed by the
    // owner set ("+"-joined when jointly owned).
    std::map<std::string, int64_t> balances(const std::string& lineage_id) const
    {
        std::map<std::string, int64_t> out;
        for (const auto& [id, loc] : tx_index_)
        {
            const Transaction& tx = blocks_[loc.first].txs[loc.second];
            if (!outputs_spendable(tx.op) || asset_lineage(tx) != lineage_id)
                continue;
            for (uint32_t i = 0; i < tx.outputs.size(); ++i)
            {
                if (is_spent(OutputRef{id, i}))
                    continue;
                std::string owner;
                for (const auto& k : tx.outputs[i].owners)
                    owner += owner.empty() ? k : "+" + k;
                out[owner] += tx.outputs[i].amount;
            }
        }
        return out;
    }

    // ---- commit path -----------------------------------------------------

    // Appends the block, indexes its transactions, writes spent markers and
    // any receiver-side recovery entries in one durable batch. Replaying an
    // already-committed block is a no-op.
    Status commit_block(const Block& block, const std::vector<RecoveryLogEntry>& new_entries = {})
    {
        if (!blocks_.empty() && block.height >= 1 && block.height <= blocks_.back().height)
        {
            const Block& existing = blocks_[block.height - 1];
            if (existing.digest() == block.digest())
                return Status::ok(); // idempotent replay
            return Status::error(ErrorCode::InternalError,
                                 "chain integrity: conflicting block at height " +
                                     std::to_string(block.height));
        }
        if (block.height != height() + 1)
            return Status::error(ErrorCode::InternalError,
                                 "chain integrity: expected height " + std::to_string(height() + 1));
        if (block.prev_digest != tip_digest())
            return Status::error(ErrorCode::InternalError, "chain integrity: prev digest mismatch");
        for (const auto& tx : block.txs)
        {
            if (tx.op == Operation::AcceptBid)
                continue;
            for (const auto& in : tx.inputs)
                if (in.spends && spent_.count(*in.spends) != 0)
                    return Status::error(ErrorCode::InternalError,
                                         "chain integrity: conflicting spent marker for " +
                                             in.spends->tx_id);
        }

        std::vector<json> batch;
        batch.push_back(json{{"kind", "block"}, {"block", block.to_json()}});
        for (const auto& e : new_entries)
            batch.push_back(json{{"kind", "recovery"}, {"entry", e.to_json()}});
        store_->append_atomic(batch);
        for (const auto& rec : batch)
            apply_record(rec, /*from_replay=*/false);
        return Status::ok();
    }

    // Durable note that this node is the receiver for a transaction; written
    // before the transaction is handed to consensus.
    void note_receiver(const std::string& tx_id)
    {
        if (receiver_notes_.count(tx_id) != 0)
            return;
        json rec{{"kind", "recv_note"}, {"tx_id", tx_id}};
        store_->append(rec);
        receiver_notes_.insert(tx_id);
    }

    bool has_receiver_note(const std::string& tx_id) const
    {
        return receiver_notes_.count(tx_id) != 0;
    }

    Status log_accept_recovery(const RecoveryLogEntry& entry)
    {
        if (!is_committed(entry.accept_tx_id))
            return Status::error(ErrorCode::ValidationError,
                                 "recovery entry references an uncommitted transaction");
        if (recovery_.count(entry.accept_tx_id) != 0)
            return Status::ok(); // already logged; statuses advance via updates
        json rec{{"kind", "recovery"}, {"entry", entry.to_json()}};
        store_->append(rec);
        apply_record(rec, false);
        return Status::ok();
    }

    // Forward-only status advance; regressions are ignored.
    Status update_return_status(const std::string& accept_tx_id, const std::string& child_tx_id,
                                ChildStatus status)
    {
        auto it = recovery_.find(accept_tx_id);
        if (it == recovery_.end())
            return Status::error(ErrorCode::InternalError,
                                 "no recovery entry for " + accept_tx_id);
        auto child = std::find_if(it->second.children.begin(), it->second.children.end(),
                                  [&](const RecoveryLogEntry::Child& c)
                                  { return c.tx_id == child_tx_id; });
        if (child == it->second.children.end())
            return Status::error(ErrorCode::InternalError,
                                 "unknown settlement child " + child_tx_id);
        if (static_cast<uint8_t>(status) <= static_cast<uint8_t>(child->status))
            return Status::ok();
        json rec{{"kind", "recovery_upd"},
                 {"accept_tx_id", accept_tx_id},
                 {"child_tx_id", child_tx_id},
                 {"status", to_string(status)}};
        store_->append(rec);
        apply_record(rec, false);
        return Status::ok();
    }

    const RecoveryLogEntry* recovery_entry(const std::string& accept_tx_id) const
    {
        auto it = recovery_.find(accept_tx_id);
        return it == recovery_.end() ? nullptr : &it->second;
    }

    std::vector<RecoveryLogEntry> load_pending_recovery() const
    {
        std::vector<RecoveryLogEntry> out;
        for (const auto& [id, e] : recovery_)
            if (!e.fully_committed())
                out.push_back(e);
        return out;
    }

    std::vector<RecoveryLogEntry> all_recovery_entries() const
    {
        std::vector<RecoveryLogEntry> out;
        out.reserve(recovery_.size());
        for (const auto& [id, e] : recovery_)
            out.push_back(e);
        return out;
    }

    // ---- audits ----------------------------------------------------------

    Status verify_chain() const
    {
        std::string prev(64, '0');
        for (size_t i = 0; i < blocks_.size(); ++i)
        {
            if (blocks_[i].height != i + 1)
                return Status::error(ErrorCode::InternalError, "height gap in chain");
            if (blocks_[i].prev_digest != prev)
                return Status::error(ErrorCode::InternalError,
                                     "prev digest mismatch at height " +
                                         std::to_string(blocks_[i].height));
            prev = blocks_[i].digest();
        }
        std::set<OutputRef> seen;
        for (const auto& [ref, spender] : spent_)
            if (!seen.insert(ref).second)
                return Status::error(ErrorCode::InternalError, "duplicate spent marker");
        return Status::ok();
    }

    void export_blocks(std::ostream& os) const
    {
        for (const auto& b : blocks_)
        {
            json j = b.to_json();
            j["digest"] = b.digest();
            os << j.dump() << "\n";
        }
    }

    const Store& store() const { return *store_; }

private:
    void apply_record(const json& rec, bool from_replay)
    {
        const std::string kind = rec.value("kind", "");
        if (kind == "block")
        {
            auto block = Block::from_json(rec["block"]);
            if (!block)
                return;
            if (from_replay && !blocks_.empty() && block->height <= blocks_.back().height)
                return;
            blocks_.push_back(std::move(*block));
            const Block& b = blocks_.back();
            size_t block_idx = blocks_.size() - 1;
            for (size_t t = 0; t < b.txs.size(); ++t)
            {
                const Transaction& tx = b.txs[t];
                tx_index_[tx.id] = {block_idx, t};
                if (tx.op != Operation::AcceptBid)
                    for (const auto& in : tx.inputs)
                        if (in.spends)
                            spent_[*in.spends] = tx.id;
                if (tx.op == Operation::Bid)
                {
                    for (const auto& r : tx.refs)
                    {
                        const Transaction* ref_tx = get_tx(r);
                        bool in_block = false;
                        if (ref_tx == nullptr)
                            for (size_t u = 0; u < t; ++u)
                                if (b.txs[u].id == r && b.txs[u].op == Operation::Request)
                                    in_block = true;
                        if ((ref_tx != nullptr && ref_tx->op == Operation::Request) || in_block)
                        {
                            bids_by_rfq_[r].push_back(tx.id);
                            break;
                        }
                    }
                }
                if (tx.op == Operation::AcceptBid && !tx.refs.empty())
                    accept_by_rfq_[tx.refs[0]] = tx.id;
                if (tx.metadata.is_object() && tx.metadata.contains("capabilities") &&
                    tx.metadata["capabilities"].is_array())
                    for (const auto& c : tx.metadata["capabilities"])
                        if (c.is_string())
                            caps_meta_index_[c.get<std::string>()].insert(tx.id);
                for (const auto& a : tx.assets)
                    if (a.data.is_object() && a.data.contains("capabilities") &&
                        a.data["capabilities"].is_array())
                        for (const auto& c : a.data["capabilities"])
                            if (c.is_string())
                                caps_asset_index_[c.get<std::string>()].insert(tx.id);
            }
        }
        else if (kind == "recovery")
        {
            RecoveryLogEntry e = RecoveryLogEntry::from_json(rec["entry"]);
            recovery_.emplace(e.accept_tx_id, std::move(e));
        }
        else if (kind == "recovery_upd")
        {
            auto it = recovery_.find(rec["accept_tx_id"].get<std::string>());
            if (it == recovery_.end())
                return;
            auto status = child_status_from_string(rec["status"].get<std::string>());
            for (auto& c : it->second.children)
                if (c.tx_id == rec["child_tx_id"].get<std::string>() && status &&
                    static_cast<uint8_t>(*status) > static_cast<uint8_t>(c.status))
                    c.status = *status;
        }
        else if (kind == "recv_note")
        {
            receiver_notes_.insert(rec["tx_id"].get<std::string>());
        }
    }

    std::shared_ptr<Store> store_;
    std::vector<Block> blocks_;
    std::map<std::string, std::pair<size_t, size_t>> tx_index_; // id -> (block, pos)
    std::map<OutputRef, std::string> spent_;
    std::map<std::string, std::vector<std::string>> bids_by_rfq_;
    std::map<std::string, std::string> accept_by_rfq_;
    std::map<std::string, std::set<std::string>> caps_meta_index_;
    std::map<std::string, std::set<std::string>> caps_asset_index_;
    std::map<std::string, RecoveryLogEntry> recovery_;
    std::set<std::string> receiver_notes_;
};

} // namespace souk
