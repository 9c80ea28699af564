/*
 *  Copyright 2026 The genlaw Authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 */
#pragma once

#include <set>
#include <string>

#include "genlaw/common.hpp"
#include "json.hpp"

namespace genlaw::json_util {

/// Reads optional keys out of a JSON object section, keeping defaults for
/// absent keys. Type mismatches and unknown keys are configuration errors.
class Reader {
public:
    Reader(const nlohmann::json& j, std::string section) : j_(j), section_(std::move(section))
    {
        if (!j_.is_object())
            config_error("'" + section_ + "' must be a JSON object");
    }

    template <typename T>
    bool get(const char* key, T& out)
    {
        seen_.insert(key);
        auto it = j_.find(key);
        if (it == j_.end())
            return false;
        try {
            out = it->template get<T>();
        } catch (const nlohmann::json::exception&) {
            config_error("'" + section_ + "." + key + "' has the wrong type");
        }
        return true;
    }

    const nlohmann::json* child(const char* key)
    {
        seen_.insert(key);
        auto it = j_.find(key);
        return it == j_.end() ? nullptr : &*it;
    }

    void finish() const
    {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key()))
                config_error("unknown key '" + section_ + "." + it.key() + "'");
    }

private:
    const nlohmann::json& j_;
    std::string section_;
    std::set<std::string> seen_;
};

}  // namespace genlaw::json_util
