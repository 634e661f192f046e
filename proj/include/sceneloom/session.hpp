#pragma once

#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sceneloom/actions.hpp"
#include "sceneloom/assets.hpp"
#include "sceneloom/camera.hpp"
#include "sceneloom/collision.hpp"
#include "sceneloom/events.hpp"
#include "sceneloom/gateway.hpp"
#include "sceneloom/prompt.hpp"
#include "sceneloom/scene.hpp"

namespace sceneloom {

inline constexpr int kDefaultMaxSteps = 20;

struct SessionConfig {
    int max_steps = kDefaultMaxSteps;
    double collision_margin = kDefaultCollisionMargin;
    bool visual_prompting = true;
    bool collision_check = true;
    std::string gateway = "scripted:grid-layout";  // remote | replay:<file> | scripted:<policy>
    std::string assets = "procedural";             // procedural | remote | remote:<url>
    int image_width = 1024;
    int image_height = 768;

    /// Remote gateway when SCENELOOM_VLM_ENDPOINT is set, remote assets when
    /// SCENELOOM_ASSET_ENDPOINT is set.
    static SessionConfig from_environment();

    nlohmann::ordered_json to_json() const;
    /// Applies the keys of `overrides` on top of `base`. Throws BadConfig on
    /// unknown keys, wrong types or out-of-range values.
    static SessionConfig from_json(const nlohmann::json& overrides, SessionConfig base);
    static SessionConfig from_json(const nlohmann::json& overrides) { return from_json(overrides, SessionConfig()); }
};

enum class SessionStatus { Running, Paused, Finished, Exhausted, Aborted };
std::string_view to_string(SessionStatus status);
SessionStatus parse_session_status(std::string_view text);

struct DeliveryAck {
    int delivery_step = 0;  // prompt of this step will carry the message
    SessionStatus status = SessionStatus::Running;
    int budget = 0;
    bool reopened = false;
};

/// One generation run. All public members are thread-safe; the model call
/// runs without holding the state lock, so messages injected meanwhile are
/// queued for the following step.
class Session {
public:
    /// Starts a new session in `dir` (created if needed). Throws BadConfig for
    /// an empty instruction or an existing session.json.
    static std::unique_ptr<Session> create(const std::filesystem::path& dir, std::string id, std::string instruction,
                                           SessionConfig config);
    /// Reloads a session written by create()/step(). Throws Io, NotFound.
    static std::unique_ptr<Session> open(const std::filesystem::path& dir);

    /// Test hooks; by default both come from the config.
    void set_gateway(std::unique_ptr<VlmGateway> gateway);
    void set_providers(std::shared_ptr<AssetProvider> assets, std::shared_ptr<TextureProvider> textures);

    /// One loop iteration. Returns false when nothing was recorded (not
    /// running, or the gateway failed and the session paused).
    bool step();
    /// Steps until the session leaves the running state.
    SessionStatus run();

    /// Queues a user edit. Finished and exhausted sessions re-open with
    /// budget step_counter + max_steps / 2; paused sessions resume. Throws
    /// SessionAborted, BadConfig (empty text).
    DeliveryAck inject_user_message(const std::string& text);
    void abort();
    /// Paused -> running. Returns false for any other status.
    bool resume();

    /// Descriptor plus scene and camera, as of the last step boundary.
    nlohmann::ordered_json snapshot() const;
    nlohmann::ordered_json descriptor() const;

    const std::string& id() const { return id_; }
    const std::filesystem::path& dir() const { return dir_; }
    SessionStatus status() const;
    int step_counter() const;
    int budget() const;
    const SessionConfig& config() const { return config_; }
    EventLog& events() { return *events_; }

    Scene scene() const;
    CameraState camera() const;
    std::vector<SystemMessage> pending_messages() const;
    /// Messages sent at the most recent step (empty before the first).
    std::vector<ChatMessage> last_prompt() const;

private:
    Session() = default;
    void persist_locked() const;
    void set_status_locked(SessionStatus s, const std::string& reason = {});
    void ensure_dependencies_locked();

    std::string id_;
    std::filesystem::path dir_;
    std::string instruction_;
    std::string created_at_;
    SessionConfig config_;

    mutable std::mutex mutex_;
    SessionStatus status_ = SessionStatus::Running;
    std::string status_reason_;
    int step_counter_ = 0;
    int budget_ = kDefaultMaxSteps;
    int prompt_step_ = 0;  // step whose prompt has drained the queue
    Scene scene_;
    CameraState camera_;
    std::vector<SystemMessage> pending_;
    std::vector<HistoryEntry> history_;
    std::string last_hash_;
    std::string last_scene_hash_;
    std::vector<ChatMessage> last_prompt_;

    std::unique_ptr<VlmGateway> gateway_;
    std::shared_ptr<AssetProvider> assets_;
    std::shared_ptr<TextureProvider> textures_;
    std::unique_ptr<EventLog> events_;
};

/// Result of re-executing a trajectory log.
struct ReplayReport {
    int steps = 0;
    bool chain_ok = true;
    int first_mismatch_step = 0;  // 0 when every step's scene hash matched
    std::string recorded_final_hash;
    std::string final_hash;
    std::string detail;

    bool ok() const { return chain_ok && first_mismatch_step == 0 && recorded_final_hash == final_hash; }
};

/// Re-executes the accepted batches of a trajectory.jsonl (assets come
/// from the session directory next to it) and compares scene hashes.
ReplayReport replay_trajectory(const std::filesystem::path& trajectory_jsonl);

/// Recomputes the record hash chain. Returns the index (1-based) of the
/// first broken record, or 0.
int verify_hash_chain(const std::filesystem::path& trajectory_jsonl);

/// Collision message text naming every pair.
std::string collision_message(const std::vector<NamePair>& pairs);

/// Prompt history rebuilt from trajectory records.
std::vector<HistoryEntry> history_from_trajectory(const std::vector<nlohmann::json>& records);
std::vector<nlohmann::json> read_trajectory(const std::filesystem::path& trajectory_jsonl);

}  // namespace sceneloom
