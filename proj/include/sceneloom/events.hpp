#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <filesystem>
#include <mutex>
#include <string>
#include <vector>

#include <json.hpp>

namespace sceneloom {

/// Per-session append-only event list with gapless sequence numbers
/// starting at 1. Mirrored to a JSONL file when a path is given.
class EventLog {
public:
    explicit EventLog(std::string session_id, std::filesystem::path file = {});

    /// Returns the sequence number of the new event.
    std::uint64_t append(std::string_view kind, nlohmann::json payload);

    /// Events with seq >= from, in order.
    std::vector<nlohmann::json> since(std::uint64_t from) const;

    /// Like since(), but waits up to `timeout` for at least one event.
    std::vector<nlohmann::json> wait_since(std::uint64_t from, std::chrono::milliseconds timeout) const;

    std::uint64_t last_seq() const;

private:
    std::string session_id_;
    std::filesystem::path file_;
    mutable std::mutex mutex_;
    mutable std::condition_variable cv_;
    std::vector<nlohmann::json> events_;
};

}  // namespace sceneloom
