// Copyright (c) 2026 the souk authors. All rights reserved.
// Licensed under the Apache License, Version 2.0. See the LICENSE
// file in the project root for full license information.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace souk::base58 {

inline constexpr char kAlphabet[] =
    "123456789ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz";

inline std::string encode(std::span<const uint8_t> data)
{
    size_t zeroes = 0;
    while (zeroes < data.size() && data[zeroes] == 0)
        ++zeroes;

    // log(256)/log(58) rounded up
    std::vector<uint8_t> b58((data.size() - zeroes) * 138 / 100 + 1, 0);
    size_t length = 0;
    for (size_t i = zeroes; i < data.size(); ++i)
    {
        int carry = data[i];
        size_t j = 0;
        for (auto it = b58.rbegin(); (carry != 0 || j < length) && it != b58.rend(); ++it, ++j)
        {
            carry += 256 * (*it);
            *it = static_cast<uint8_t>(carry % 58);
            carry /= 58;
        }
        length = j;
    }

    auto it = b58.begin() + static_cast<long>(b58.size() - length);
    while (it != b58.end() && *it == 0)
        ++it;

    std::string out;
    out.reserve(zeroes + static_cast<size_t>(b58.end() - it));
    out.assign(zeroes, '1');
    while (it != b58.end())
        out += kAlphabet[*it++];
    return out;
}

inline std::optional<std::vector<uint8_t>> decode(const std::string& text)
{
    static const auto index = []
    {
        std::array<int8_t, 128> m{};
        m.fill(-1);
        for (int i = 0; kAlphabet[i] != '\0'; ++i)
            m[static_cast<size_t>(kAlphabet[i])] = static_cast<int8_t>(i);
        return m;
    }();

    size_t zeroes = 0;
    while (zeroes < text.size() && text[zeroes] == '1')
        ++zeroes;

    std::vector<uint8_t> b256((text.size() - zeroes) * 733 / 1000 + 1, 0);
    size_t length = 0;
    for (size_t i = zeroes; i < text.size(); ++i)
    {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (c >= 128 || index[c] == -1)
            return std::nullopt;
        int carry = index[c];
        size_t j = 0;
        for (auto it = b256.rbegin(); (carry != 0 || j < length) && it != b256.rend(); ++it, ++j)
        {
            carry += 58 * (*it);
            *it = static_cast<uint8_t>(carry % 256);
            carry /= 256;
        }
        length = j;
    }

    auto it = b256.begin() + static_cast<long>(b256.size() - length);
    std::vector<uint8_t> out;
    out.reserve(zeroes + static_cast<size_t>(b256.end() - it));
    out.assign(zeroes, 0);
    while (it != b256.end())
        out.push_back(*it++);
    return out;
}

inline bool looks_like(const std::string& text)
{
    if (text.empty())
        return false;
    for (char c : text)
    {
        bool found = false;
        for (const char* p = kAlphabet; *p; ++p)
            if (*p == c)
            {
                found = true;
                break;
            }
        if (!found)
            return false;
    }
    return true;
}

} // namespace souk::base58
