// Copyright (c) 2026 the souk authors. All rights reserved.
// Licensed under the Apache License, Version 2.0. See the LICENSE
// file in the project root for full license information.

#include "helpers.hpp"

#include <random>

using namespace souk;

namespace {

json valid_bid_doc()
{
    // structurally valid; ids are placeholders with the right shape
    const std::string rfq(64, '6');
    auto create = tt::make_create(tt::key(2), 5, {"weld"});
    auto bid = tt::make_bid(tt::key(2), create.id, OutputRef{create.id, 0}, 5, rfq,
                            tt::key(90).public_key);
    return wire::to_json(bid);
}

} // namespace

TEST_CASE("schemas load for the closed operation set and reject others")
{
    SchemaRegistry reg;
    for (const char* op : {"CREATE", "TRANSFER", "REQUEST", "BID", "ACCEPT_BID", "RETURN"})
    {
        auto schema = reg.load_schema(op);
        REQUIRE(schema.is_ok());
        CHECK(schema->required_fields.count("id") == 1);
        CHECK(schema->required_fields.count("inputs") == 1);
        CHECK(schema->required_fields.count("outputs") == 1);
        CHECK(schema->required_fields.count("operation") == 1);
        CHECK(schema->required_fields.count("metadata") == 1);
        CHECK(schema->required_fields.count("asset") == 1);
        CHECK(schema->required_fields.count("version") == 1);
    }
    auto missing = reg.load_schema("FOO");
    CHECK_FALSE(missing.is_ok());
    CHECK(missing.status().code() == ErrorCode::SchemaNotFound);
}

TEST_CASE("the BID schema requires a non-empty reference vector")
{
    SchemaRegistry reg;
    auto schema = reg.load_schema(Operation::Bid);
    REQUIRE(schema.is_ok());
    auto it = schema->fields.find("refs");
    REQUIRE(it != schema->fields.end());
    CHECK(it->second.min_items == 1);

    json doc = valid_bid_doc();
    doc["refs"] = json::array();
    auto violations = validate_schema(*schema, doc);
    REQUIRE_FALSE(violations.empty());
    CHECK(violations[0].field == "refs");
}

TEST_CASE("the CREATE schema allows absent input spends")
{
    SchemaRegistry reg;
    auto schema = reg.load_schema(Operation::Create);
    REQUIRE(schema.is_ok());
    json doc = wire::to_json(tt::make_create(tt::key(3), 7, {"cast"}));
    CHECK(validate_schema(*schema, doc).empty());
}

TEST_CASE("unknown operations are rejected before semantic validation")
{
    SchemaRegistry reg;
    json doc = valid_bid_doc();
    doc["operation"] = "MINT";
    auto schema = reg.schema_for(doc);
    CHECK_FALSE(schema.is_ok());
    CHECK(schema.status().code() == ErrorCode::SchemaNotFound);
}

TEST_CASE("malformed digests fail the id pattern")
{
    SchemaRegistry reg;
    auto schema = reg.load_schema(Operation::Bid);
    REQUIRE(schema.is_ok());
    json doc = valid_bid_doc();
    doc["id"] = doc["id"].get<std::string>().substr(0, 63);
    auto violations = validate_schema(*schema, doc);
    REQUIRE_FALSE(violations.empty());
    CHECK(violations[0].field == "id");
    CHECK(violations[0].rule == "pattern");
}

TEST_CASE("a structurally valid BID document passes")
{
    SchemaRegistry reg;
    auto schema = reg.load_schema(Operation::Bid);
    REQUIRE(schema.is_ok());
    json doc = valid_bid_doc();
    auto violations = validate_schema(*schema, doc);
    CAPTURE(schema_status(violations).to_string());
    CHECK(violations.empty());
}

TEST_CASE("schema validation is pure and idempotent over reserialization")
{
    SchemaRegistry reg;
    auto schema = reg.load_schema(Operation::Bid);
    REQUIRE(schema.is_ok());
    json doc = valid_bid_doc();
    REQUIRE(validate_schema(*schema, doc).empty());
    json again = json::parse(doc.dump());
    CHECK(validate_schema(*schema, again).empty());
}

TEST_CASE("reserved keywords are rejected inside asset data and metadata")
{
    SchemaRegistry reg;
    auto schema = reg.load_schema(Operation::Create);
    REQUIRE(schema.is_ok());

    auto tx = tt::make_create(tt::key(4), 3, {"drill"});
    json doc = wire::to_json(tx);
    doc["asset"][0]["data"]["outputs"] = "collides";
    auto violations = validate_schema(*schema, doc);
    REQUIRE_FALSE(violations.empty());
    CHECK(violations[0].rule == "language_key");

    json doc2 = wire::to_json(tx);
    doc2["metadata"] = json{{"nested", json{{"version", 1}}}};
    violations = validate_schema(*schema, doc2);
    REQUIRE_FALSE(violations.empty());
    CHECK(violations[0].rule == "language_key");
    CHECK(violations[0].field.find("version") != std::string::npos);
}

TEST_CASE("fuzz: deleting any field from a valid document names that field")
{
    SchemaRegistry reg;
    json doc = valid_bid_doc();
    auto schema = reg.load_schema(Operation::Bid);
    REQUIRE(schema.is_ok());
    REQUIRE(validate_schema(*schema, doc).empty());

    std::vector<std::string> fields;
    for (const auto& [k, v] : doc.items())
        fields.push_back(k);

    std::mt19937 rng(1234);
    std::shuffle(fields.begin(), fields.end(), rng);
    for (const auto& field : fields)
    {
        if (field == "operation")
            continue; // deleting it fails earlier, at schema lookup
        json mutated = doc;
        mutated.erase(field);
        auto violations = validate_schema(*schema, mutated);
        REQUIRE_FALSE(violations.empty());
        bool named = false;
        for (const auto& v : violations)
            named = named || v.field.find(field) != std::string::npos;
        CAPTURE(field);
        CHECK(named);
    }

    SECTION("deleting the operation fails schema lookup by name")
    {
        json mutated = doc;
        mutated.erase("operation");
        auto lookup = reg.schema_for(mutated);
        CHECK_FALSE(lookup.is_ok());
    }
}

TEST_CASE("schema validation needs no ledger handle")
{
    // compile-time property: validate_schema takes (schema, document) only
    static_assert(std::is_invocable_r_v<std::vector<SchemaViolationDetail>,
                                        decltype(&validate_schema), const TransactionSchema&,
                                        const json&>);
    SUCCEED();
}
