#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace sceneloom {

struct ContentPart {
    enum class Kind { Text, Image };
    Kind kind = Kind::Text;
    std::string text;
    std::vector<std::uint8_t> png;

    static ContentPart make_text(std::string t) { return {Kind::Text, std::move(t), {}}; }
    static ContentPart make_image(std::vector<std::uint8_t> bytes) { return {Kind::Image, {}, std::move(bytes)}; }
};

struct ChatMessage {
    std::string role;  // "system" or "user"
    std::vector<ContentPart> parts;

    /// Concatenated text parts.
    std::string text() const;
    std::size_t image_count() const;
};

/// Transport to the multimodal model. Never touches scene state.
class VlmGateway {
public:
    virtual ~VlmGateway() = default;
    /// Raw model text. Throws Unreachable, AuthFailure, ReplayExhausted.
    virtual std::string complete(const std::vector<ChatMessage>& messages) = 0;
};

/// Serves recorded responses strictly in order.
class ReplayGateway final : public VlmGateway {
public:
    explicit ReplayGateway(std::vector<std::string> responses, std::size_t cursor = 0);
    std::string complete(const std::vector<ChatMessage>& messages) override;
    std::size_t cursor() const { return cursor_; }

private:
    std::vector<std::string> responses_;
    std::size_t cursor_;
};

/// A JSON array of response strings, or a trajectory.jsonl whose records
/// carry "raw_response". Throws Io.
std::vector<std::string> load_replay_responses(const std::string& path);

/// Rule-based policies that read the scene JSON out of the user prompt and
/// answer with a valid batch. Stateless: the reply depends only on the
/// prompt.
///   grid-layout[:N]  create N objects (3 per batch), place them on a 2 m
///                    grid (3 per batch), then Finish. N defaults to 4.
///   never-finish     create one cube, then nudge it along X forever.
class ScriptedGateway final : public VlmGateway {
public:
    /// Throws BadConfig for unknown policies.
    explicit ScriptedGateway(std::string policy);
    std::string complete(const std::vector<ChatMessage>& messages) override;

private:
    std::string policy_;
    int grid_count_ = 4;
};

struct RemoteGatewayOptions {
    std::string endpoint;  // full chat-completions URL
    std::string model = "scene-agent";
    std::string token;     // empty: no Authorization header
    int max_retries = 3;
    std::chrono::milliseconds backoff{500};
    std::chrono::seconds timeout{120};
};

/// Chat-completions style HTTP client (wire format in docs/vlm-gateway.md).
/// Retries connection errors, 429 and 5xx with exponential backoff.
class RemoteGateway final : public VlmGateway {
public:
    explicit RemoteGateway(RemoteGatewayOptions options);
    std::string complete(const std::vector<ChatMessage>& messages) override;

    /// Request body for `messages`; exposed for tests and docs.
    std::string request_body(const std::vector<ChatMessage>& messages) const;

private:
    RemoteGatewayOptions opts_;
    std::string origin_;
    std::string path_;
};

/// "remote", "replay:<file>" or "scripted:<policy>". Remote settings come
/// from SCENELOOM_VLM_ENDPOINT, SCENELOOM_VLM_TOKEN and SCENELOOM_VLM_MODEL.
/// `replay_cursor` skips already consumed responses. Throws BadConfig.
std::unique_ptr<VlmGateway> make_gateway(const std::string& spec, std::size_t replay_cursor = 0);

/// Formats a Reason/Action reply around a JSON action list.
std::string format_response(const std::string& reason, const std::string& actions_json);

}  // namespace sceneloom
