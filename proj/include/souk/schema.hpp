// Copyright (c) 2026 the souk authors. All rights reserved.
// Licensed under the Apache License, Version 2.0. See the LICENSE
// file in the project root for full license information.

#pragma once

#include <yaml-cpp/yaml.h>

#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "souk/base58.hpp"
#include "souk/errors.hpp"
#include "souk/tx.hpp"

namespace souk {

// Keys that may not appear inside asset data or metadata documents; they
// collide with the transaction structure itself.
inline const std::set<std::string>& reserved_keywords()
{
    static const std::set<std::string> kw = {
        "id",      "operation",  "asset",   "assets", "inputs",      "outputs",
        "children", "refs",      "metadata", "version", "amt",        "amount",
        "spends",  "signatures", "signers", "owners", "prev_owners"};
    return kw;
}

struct FieldRule
{
    std::string type; // string | list | map_or_null
    std::optional<std::string> pattern;
    std::optional<std::string> const_value;
    std::optional<size_t> min_items;
    std::optional<size_t> max_items;
    std::string item;   // tx_id | asset_create | asset_ref | input | output
    std::string spends; // require | forbid | allow (input lists only)
};

// Compiled per-operation blueprint loaded from a schema-definition file.
struct TransactionSchema
{
    Operation op = Operation::Create;
    std::set<std::string> required_fields;
    std::map<std::string, FieldRule> fields;
    std::vector<std::string> language_keys;
};

struct SchemaViolationDetail
{
    std::string field;
    std::string rule;
    std::string message;
};

namespace detail {

inline bool is_base58_key(const std::string& s)
{
    return !s.empty() && s.size() <= 64 && base58::looks_like(s);
}

inline void check_language_keys(const json& doc, const std::string& path,
                                std::vector<SchemaViolationDetail>& out)
{
    if (!doc.is_object())
        return;
    for (const auto& [k, v] : doc.items())
    {
        if (reserved_keywords().count(k) != 0)
            out.push_back({path + "." + k, "language_key",
                           "reserved keyword used as a document key: " + k});
        check_language_keys(v, path + "." + k, out);
    }
}

inline void check_output_item(const json& o, const std::string& path,
                              std::vector<SchemaViolationDetail>& out)
{
    if (!o.is_object())
    {
        out.push_back({path, "type", "output must be an object"});
        return;
    }
    if (!o.contains("owners") || !o["owners"].is_array() || o["owners"].empty())
        out.push_back({path + ".owners", "non_empty", "output owners must be a non-empty list"});
    else
        for (const auto& k : o["owners"])
            if (!k.is_string() || !is_base58_key(k.get<std::string>()))
                out.push_back({path + ".owners", "pattern", "owner keys must be base58 strings"});
    if (!o.contains("amount") || !o["amount"].is_number_integer() || o["amount"].get<int64_t>() < 1)
        out.push_back({path + ".amount", "min", "output amount must be an integer >= 1"});
    if (o.contains("prev_owners"))
    {
        if (!o["prev_owners"].is_array())
            out.push_back({path + ".prev_owners", "type", "prev_owners must be a list"});
        else
            for (const auto& k : o["prev_owners"])
                if (!k.is_string() || !is_base58_key(k.get<std::string>()))
                    out.push_back(
                        {path + ".prev_owners", "pattern", "prev_owners must be base58 strings"});
    }
    for (const auto& [k, v] : o.items())
        if (k != "owners" && k != "amount" && k != "prev_owners")
            out.push_back({path + "." + k, "unknown_field", "unknown output field: " + k});
}

inline void check_input_item(const json& in, const std::string& path, const std::string& spends_rule,
                             std::vector<SchemaViolationDetail>& out)
{
    if (!in.is_object())
    {
        out.push_back({path, "type", "input must be an object"});
        return;
    }
    const bool has_spends = in.contains("spends") && !in["spends"].is_null();
    if (spends_rule == "require" && !has_spends)
        out.push_back({path + ".spends", "required", "this operation's inputs must spend an output"});
    if (spends_rule == "forbid" && has_spends)
        out.push_back({path + ".spends", "forbidden", "this operation's inputs cannot spend outputs"});
    if (has_spends)
    {
        const auto& s = in["spends"];
        if (!s.is_object() || !s.contains("tx_id") || !s["tx_id"].is_string() ||
            !is_tx_id(s["tx_id"].get<std::string>()) || !s.contains("output") ||
            !s["output"].is_number_integer() || s["output"].get<int64_t>() < 0)
            out.push_back({path + ".spends", "pattern",
                           "spends must reference {tx_id: sha3_hexdigest, output: index >= 0}"});
    }
    if (!in.contains("signers") || !in["signers"].is_array() || in["signers"].empty())
        out.push_back({path + ".signers", "non_empty", "input signers must be a non-empty list"});
    else
        for (const auto& k : in["signers"])
            if (!k.is_string() || !is_base58_key(k.get<std::string>()))
                out.push_back({path + ".signers", "pattern", "signer keys must be base58 strings"});
    if (!in.contains("signatures") || !in["signatures"].is_array())
        out.push_back({path + ".signatures", "required", "input signatures must be a list"});
    else
        for (const auto& s : in["signatures"])
            if (!s.is_string() || s.get<std::string>().size() != 2 * crypto::kSignatureBytes ||
                !crypto::from_hex(s.get<std::string>()))
                out.push_back(
                    {path + ".signatures", "pattern", "signatures must be 128-char hex strings"});
    for (const auto& [k, v] : in.items())
        if (k != "spends" && k != "signers" && k != "signatures")
            out.push_back({path + "." + k, "unknown_field", "unknown input field: " + k});
}

inline void check_asset_item(const json& a, const std::string& path, bool create_style,
                             std::vector<SchemaViolationDetail>& out)
{
    if (!a.is_object())
    {
        out.push_back({path, "type", "asset must be an object"});
        return;
    }
    if (create_style)
    {
        if (a.contains("id"))
            out.push_back({path + ".id", "forbidden", "a CREATE asset carries no id"});
        if (!a.contains("data") || !a["data"].is_object())
            out.push_back({path + ".data", "required", "asset data must be an object"});
        if (!a.contains("amt") || !a["amt"].is_number_integer() || a["amt"].get<int64_t>() < 0)
            out.push_back({path + ".amt", "min", "asset amt must be an integer >= 0"});
        for (const auto& [k, v] : a.items())
            if (k != "data" && k != "amt")
                out.push_back({path + "." + k, "unknown_field", "unknown asset field: " + k});
    }
    else
    {
        if (!a.contains("id") || !a["id"].is_string() || !is_tx_id(a["id"].get<std::string>()))
            out.push_back({path + ".id", "pattern", "asset id must be a sha3_hexdigest"});
        for (const auto& [k, v] : a.items())
            if (k != "id")
                out.push_back({path + "." + k, "unknown_field", "unknown asset field: " + k});
    }
}

} // namespace detail

// Pure structural validation of a wire document against a compiled schema.
// Never touches the ledger; every violation names the offending field.
inline std::vector<SchemaViolationDetail> validate_schema(const TransactionSchema& schema,
                                                          const json& doc)
{
    std::vector<SchemaViolationDetail> out;
    if (!doc.is_object())
    {
        out.push_back({"$", "type", "transaction document must be an object"});
        return out;
    }

    for (const auto& f : schema.required_fields)
        if (!doc.contains(f))
            out.push_back({f, "required", "missing required field: " + f});

    for (const auto& [k, v] : doc.items())
        if (schema.fields.find(k) == schema.fields.end())
            out.push_back({k, "unknown_field", "unknown transaction field: " + k});

    for (const auto& [name, rule] : schema.fields)
    {
        if (!doc.contains(name))
            continue;
        const json& field = doc[name];

        if (rule.type == "string")
        {
            if (!field.is_string())
            {
                out.push_back({name, "type", name + " must be a string"});
                continue;
            }
            const auto s = field.get<std::string>();
            if (rule.pattern && *rule.pattern == "sha3_hexdigest" && !is_tx_id(s))
                out.push_back({name, "pattern", name + " must be a 64-char lowercase hex digest"});
            if (rule.const_value && s != *rule.const_value)
                out.push_back({name, "const", name + " must equal " + *rule.const_value});
        }
        else if (rule.type == "map_or_null")
        {
            if (!field.is_null() && !field.is_object())
                out.push_back({name, "type", name + " must be an object or null"});
        }
        else if (rule.type == "list")
        {
            if (!field.is_array())
            {
                out.push_back({name, "type", name + " must be a list"});
                continue;
            }
            if (rule.min_items && field.size() < *rule.min_items)
                out.push_back({name, "min_items",
                               name + " must contain at least " + std::to_string(*rule.min_items) +
                                   " entries"});
            if (rule.max_items && field.size() > *rule.max_items)
                out.push_back({name, "max_items",
                               name + " must contain at most " + std::to_string(*rule.max_items) +
                                   " entries"});
            for (size_t i = 0; i < field.size(); ++i)
            {
                const std::string path = name + "[" + std::to_string(i) + "]";
                if (rule.item == "tx_id")
                {
                    if (!field[i].is_string() || !is_tx_id(field[i].get<std::string>()))
                        out.push_back({path, "pattern", path + " must be a sha3_hexdigest"});
                }
                else if (rule.item == "output")
                    detail::check_output_item(field[i], path, out);
                else if (rule.item == "input")
                    detail::check_input_item(field[i], path, rule.spends.empty() ? "allow" : rule.spends,
                                             out);
                else if (rule.item == "asset_create")
                    detail::check_asset_item(field[i], path, true, out);
                else if (rule.item == "asset_ref")
                    detail::check_asset_item(field[i], path, false, out);
            }
        }
    }

    for (const auto& scope : schema.language_keys)
    {
        if (scope == "metadata" && doc.contains("metadata"))
            detail::check_language_keys(doc["metadata"], "metadata", out);
        if (scope == "asset_data" && doc.contains("asset") && doc["asset"].is_array())
            for (size_t i = 0; i < doc["asset"].size(); ++i)
                if (doc["asset"][i].is_object() && doc["asset"][i].contains("data"))
                    detail::check_language_keys(doc["asset"][i]["data"],
                                                "asset[" + std::to_string(i) + "].data", out);
    }
    return out;
}

inline Status schema_status(const std::vector<SchemaViolationDetail>& violations)
{
    if (violations.empty())
        return Status::ok();
    std::string msg;
    for (const auto& v : violations)
    {
        if (!msg.empty())
            msg += "; ";
        msg += v.field + " (" + v.rule + "): " + v.message;
    }
    return Status::error(ErrorCode::SchemaViolation, msg);
}

// Loads and caches the per-operation schema files. The directory is the
// `schema_dir` config key, else $SOUK_SCHEMA_DIR, else <source>/schemas.
class SchemaRegistry
{
public:
    explicit SchemaRegistry(std::string dir = {}) : dir_(resolve_dir(std::move(dir))) {}

    static std::string resolve_dir(std::string dir)
    {
        if (!dir.empty())
            return dir;
        if (const char* env = std::getenv("SOUK_SCHEMA_DIR"); env != nullptr && *env != '\0')
            return env;
#ifdef SOUK_SOURCE_ROOT
        return std::string(SOUK_SOURCE_ROOT) + "/schemas";
#else
        return "schemas";
#endif
    }

    Result<TransactionSchema> load_schema(const std::string& op_name)
    {
        auto op = operation_from_string(op_name);
        if (!op)
            return Status::error(ErrorCode::SchemaNotFound, "no schema for operation " + op_name);
        return load_schema(*op);
    }

    Result<TransactionSchema> load_schema(Operation op)
    {
        if (auto it = cache_.find(op); it != cache_.end())
            return it->second;

        static const std::map<Operation, std::string> files = {
            {Operation::Create, "create.yaml"},       {Operation::Transfer, "transfer.yaml"},
            {Operation::Request, "request.yaml"},     {Operation::Bid, "bid.yaml"},
            {Operation::AcceptBid, "accept_bid.yaml"}, {Operation::Return, "return.yaml"}};
        const std::string path = dir_ + "/" + files.at(op);
        if (!std::filesystem::exists(path))
            return Status::error(ErrorCode::SchemaNotFound, "schema file missing: " + path);

        TransactionSchema schema;
        try
        {
            YAML::Node root = YAML::LoadFile(path);
            auto declared = operation_from_string(root["operation"].as<std::string>());
            if (!declared || *declared != op)
                return Status::error(ErrorCode::SchemaNotFound,
                                     "schema file declares a different operation: " + path);
            schema.op = op;
            for (const auto& f : root["required"])
                schema.required_fields.insert(f.as<std::string>());
            for (const auto& kv : root["fields"])
            {
                FieldRule rule;
                const YAML::Node& spec = kv.second;
                if (spec["type"])
                    rule.type = spec["type"].as<std::string>();
                if (spec["pattern"])
                    rule.pattern = spec["pattern"].as<std::string>();
                if (spec["const"])
                    rule.const_value = spec["const"].as<std::string>();
                if (spec["min_items"])
                    rule.min_items = spec["min_items"].as<size_t>();
                if (spec["max_items"])
                    rule.max_items = spec["max_items"].as<size_t>();
                if (spec["item"])
                    rule.item = spec["item"].as<std::string>();
                if (spec["spends"])
                    rule.spends = spec["spends"].as<std::string>();
                schema.fields[kv.first.as<std::string>()] = rule;
            }
            if (root["language_keys"])
                for (const auto& s : root["language_keys"])
                    schema.language_keys.push_back(s.as<std::string>());
        }
        catch (const YAML::Exception& e)
        {
            return Status::error(ErrorCode::SchemaNotFound,
                                 "unparseable schema file " + path + ": " + e.what());
        }
        cache_[op] = schema;
        return schema;
    }

    // Convenience: schema lookup keyed on the document's own operation field.
    Result<TransactionSchema> schema_for(const json& doc)
    {
        if (!doc.is_object() || !doc.contains("operation") || !doc["operation"].is_string())
            return Status::error(ErrorCode::SchemaViolation, "operation (required): missing field");
        return load_schema(doc["operation"].get<std::string>());
    }

    const std::string& dir() const { return dir_; }

private:
    std::string dir_;
    std::map<Operation, TransactionSchema> cache_;
};

} // namespace souk
