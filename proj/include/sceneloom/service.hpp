#pragma once

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "sceneloom/session.hpp"

namespace sceneloom {

/// Hosts many sessions under one data directory and exposes them over
/// HTTP (REST) and WebSocket (event stream). Each running session advances
/// on its own thread.
class SessionService {
public:
    explicit SessionService(std::filesystem::path data_dir, SessionConfig defaults = SessionConfig::from_environment());
    ~SessionService();

    SessionService(const SessionService&) = delete;
    SessionService& operator=(const SessionService&) = delete;

    /// Loads every session directory; running and paused ones resume.
    void load_existing();

    /// Binds and starts serving in the background. Port 0 picks a free
    /// port. Returns the bound port.
    unsigned short start(const std::string& host, unsigned short port);
    /// Stops the listener and session threads. Session state stays on disk
    /// as of the last step boundary.
    void stop();

    // Direct API, also used by the HTTP handlers.
    nlohmann::ordered_json create_session(const std::string& instruction, const nlohmann::json& config_overrides);
    nlohmann::ordered_json list_sessions() const;
    nlohmann::ordered_json get_state(const std::string& id) const;
    nlohmann::ordered_json post_message(const std::string& id, const std::string& text);
    nlohmann::ordered_json abort_session(const std::string& id);
    nlohmann::ordered_json resume_session(const std::string& id);
    /// PNG bytes of steps/step_<t>.png. Throws NotFound.
    std::string step_image(const std::string& id, int t) const;
    /// Throws NotFound.
    EventLog& events(const std::string& id);

    /// Blocks until the session's loop thread is idle.
    void wait_idle(const std::string& id);

private:
    struct Entry {
        std::unique_ptr<Session> session;
        std::mutex runner_mutex;
        std::thread runner;
        std::atomic<bool> active{false};
    };

    Entry& entry(const std::string& id) const;
    void ensure_running(Entry& e);

    std::filesystem::path data_dir_;
    SessionConfig defaults_;
    mutable std::mutex sessions_mutex_;
    std::map<std::string, std::unique_ptr<Entry>> sessions_;
    std::atomic<bool> stopping_{false};

    struct Net;
    std::unique_ptr<Net> net_;
};

}  // namespace sceneloom
