#pragma once

// Persistent store of verified factorizations, keyed by the factored value.
// On-disk format: one JSON object; keys are decimal value strings, values
// are arrays of [decimal prime string, exponent] pairs, primes ascending.
// Saves are atomic (write to a temporary file, then rename).

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "e8v/factorization.hpp"
#include "e8v/nat.hpp"

namespace e8v {

class FactorCache {
 public:
  struct Stats {
    std::size_t entries = 0;
    std::size_t rejected_on_load = 0;
    std::size_t hits = 0;
    std::size_t misses = 0;
  };

  FactorCache() = default;
  explicit FactorCache(std::filesystem::path path) : path_(std::move(path)) {}

  FactorCache(FactorCache&& other) noexcept
      : entries_(std::move(other.entries_)),
        path_(std::move(other.path_)),
        dirty_(other.dirty_.load()),
        hits_(other.hits_.load()),
        misses_(other.misses_.load()),
        rejected_on_load_(other.rejected_on_load_) {}
  FactorCache& operator=(FactorCache&&) = delete;
  FactorCache(const FactorCache&) = delete;
  FactorCache& operator=(const FactorCache&) = delete;

  // Loads a cache from `path`. A missing file yields an empty cache; entries
  // failing the product/primality re-verification are dropped and counted.
  static FactorCache load(const std::filesystem::path& path) {
    FactorCache cache(path);
    if (!std::filesystem::exists(path)) return cache;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read cache file: " + path.string());
    nlohmann::json doc;
    in >> doc;
    if (!doc.is_object()) throw std::runtime_error("cache file is not a JSON object: " + path.string());
    for (const auto& [key, arr] : doc.items()) {
      Factorization f;
      bool ok = arr.is_array();
      if (ok) {
        try {
          f.value = Nat(key);
          for (const auto& pair : arr) {
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
                !pair[1].is_number_unsigned()) {
              ok = false;
              break;
            }
            f.factors.emplace_back(Nat(pair[0].get<std::string>()),
                                   pair[1].get<unsigned>());
          }
        } catch (const std::exception&) {
          ok = false;
        }
      }
      if (ok && f.verify()) {
        cache.entries_.emplace(f.value, std::move(f));
      } else {
        ++cache.rejected_on_load_;
      }
    }
    return cache;
  }

  std::optional<Factorization> lookup(const Nat& n) const {
    std::shared_lock lock(mutex_);
    auto it = entries_.find(n);
    if (it == entries_.end()) {
      ++misses_;
      return std::nullopt;
    }
    ++hits_;
    return it->second;
  }

  void insert(const Factorization& f) {
    std::unique_lock lock(mutex_);
    // Identical recomputations make last-write-wins safe.
    entries_.insert_or_assign(f.value, f);
    dirty_ = true;
  }

  void save() const {
    std::shared_lock lock(mutex_);
    if (path_.empty()) return;
    nlohmann::json doc = nlohmann::json::object();
    for (const auto& [value, f] : entries_) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& [prime, exp] : f.factors)
        arr.push_back({prime.str(), exp});
      doc[value.str()] = std::move(arr);
    }
    const std::filesystem::path tmp = path_.string() + ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) throw std::runtime_error("cannot write cache file: " + tmp.string());
      out << doc.dump(1) << "\n";
    }
    std::filesystem::rename(tmp, path_);
    dirty_ = false;
  }

  void save_if_dirty() const {
    if (dirty_) save();
  }

  Stats stats() const {
    std::shared_lock lock(mutex_);
    return {entries_.size(), rejected_on_load_, hits_, misses_};
  }

  const std::filesystem::path& path() const { return path_; }
  void set_path(std::filesystem::path path) { path_ = std::move(path); }

  // Re-verifies every entry; returns the number of failures (0 expected).
  std::size_t verify_all() const {
    std::shared_lock lock(mutex_);
    std::size_t bad = 0;
    for (const auto& [value, f] : entries_)
      if (!f.verify()) ++bad;
    return bad;
  }

 private:
  std::map<Nat, Factorization> entries_;
  std::filesystem::path path_;
  mutable std::shared_mutex mutex_;
  mutable std::atomic<bool> dirty_ = false;
  mutable std::atomic<std::size_t> hits_ = 0;
  mutable std::atomic<std::size_t> misses_ = 0;
  std::size_t rejected_on_load_ = 0;
};

}  // namespace e8v
