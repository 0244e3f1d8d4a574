#pragma once

#include <fstream>
#include <mutex>

#include "torusrank/serialize.hpp"

namespace torusrank {

inline constexpr int cache_schema_version = 1;

// Append-only JSONL expansion cache. One record per line:
//   {"schema_version":1,"a":..,"b":..,"c":..,"d":..,"preperiod":[..],"period":[..]}
// Records load into memory on construction; lookups are read-only and safe for
// concurrent readers. New records are staged in memory and appended, sorted by
// key, by flush() through a single writer.
class jsonl_expansion_cache final : public expansion_store {
public:
    jsonl_expansion_cache() = default;
    explicit jsonl_expansion_cache(std::string path) : path_(std::move(path)) { load(); }

    std::optional<std::pair<std::vector<mpz_class>, std::vector<mpz_class>>> lookup(
        const quadratic_irrational& key) const override {
        auto it = records_.find(key);
        if (it == records_.end()) return std::nullopt;
        return it->second;
    }

    void store(const quadratic_irrational& key, const std::vector<mpz_class>& preperiod,
               const std::vector<mpz_class>& period) override {
        std::lock_guard<std::mutex> lock(mutex_);
        if (records_.emplace(key, std::make_pair(preperiod, period)).second)
            staged_.push_back(key);
    }

    size_t size() const { return records_.size(); }

    // Appends staged records to the backing file in key order.
    void flush() {
        std::lock_guard<std::mutex> lock(mutex_);
        if (path_.empty() || staged_.empty()) return;
        std::sort(staged_.begin(), staged_.end());
        std::ofstream out(path_, std::ios::app);
        for (const auto& key : staged_) {
            const auto& [pre, per] = records_.at(key);
            json j;
            j["schema_version"] = cache_schema_version;
            j["a"] = json_int(key.a);
            j["b"] = json_int(key.b);
            j["c"] = json_int(key.c);
            j["d"] = json_int(key.d);
            j["preperiod"] = json_int_list(pre);
            j["period"] = json_int_list(per);
            out << j.dump() << '\n';
        }
        staged_.clear();
    }

private:
    void load() {
        std::ifstream in(path_);
        if (!in) return;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            json j = json::parse(line, nullptr, false);
            if (j.is_discarded() || !j.is_object()) continue;
            if (!j.contains("schema_version") || j["schema_version"] != cache_schema_version) continue;
            try {
                quadratic_irrational key{int_from_json(j.at("a")), int_from_json(j.at("b")),
                                         int_from_json(j.at("c")), int_from_json(j.at("d"))};
                std::vector<mpz_class> pre, per;
                for (const auto& e : j.at("preperiod")) pre.push_back(int_from_json(e));
                for (const auto& e : j.at("period")) per.push_back(int_from_json(e));
                records_.emplace(std::move(key), std::make_pair(std::move(pre), std::move(per)));
            } catch (const std::exception&) {
                continue;  // tolerate malformed lines
            }
        }
    }

    std::string path_;
    std::map<quadratic_irrational, std::pair<std::vector<mpz_class>, std::vector<mpz_class>>> records_;
    std::vector<quadratic_irrational> staged_;
    std::mutex mutex_;
};

}  // namespace torusrank
