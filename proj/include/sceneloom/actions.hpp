#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "sceneloom/assets.hpp"
#include "sceneloom/camera.hpp"
#include "sceneloom/messages.hpp"
#include "sceneloom/scene.hpp"

namespace sceneloom {

// Axis, view and direction stay as the model wrote them; validate_batch
// checks their domain so a bad value rejects the batch instead of failing
// the parse.
struct CreateAction {
    std::string name;
    std::string description;
    friend bool operator==(const CreateAction&, const CreateAction&) = default;
};
struct DuplicateAction {
    std::string name;
    long long count = 1;
    friend bool operator==(const DuplicateAction&, const DuplicateAction&) = default;
};
struct DeleteAction {
    std::string name;
    friend bool operator==(const DeleteAction&, const DeleteAction&) = default;
};
struct TranslateAction {
    std::string name;
    std::string axis;
    double distance = 0.0;
    friend bool operator==(const TranslateAction&, const TranslateAction&) = default;
};
struct PlaceAction {
    std::string name;
    Vec3 position;
    friend bool operator==(const PlaceAction&, const PlaceAction&) = default;
};
struct RotateAction {
    std::string name;
    std::string axis;
    double angle_degrees = 0.0;
    friend bool operator==(const RotateAction&, const RotateAction&) = default;
};
struct ScaleAction {
    std::string name;
    std::variant<double, Vec3> value = 1.0;
    friend bool operator==(const ScaleAction&, const ScaleAction&) = default;
};
struct ViewSceneAction {
    std::string view = "Iso";
    double zoom = 1.0;
    friend bool operator==(const ViewSceneAction&, const ViewSceneAction&) = default;
};
struct FocusOnAction {
    std::string target;
    std::string view = "Iso";
    double zoom = 1.0;
    friend bool operator==(const FocusOnAction&, const FocusOnAction&) = default;
};
struct RotateCameraAction {
    double horizontal = 0.0;
    double vertical = 0.0;
    friend bool operator==(const RotateCameraAction&, const RotateCameraAction&) = default;
};
struct MoveCameraAction {
    std::string direction;
    double distance = 0.0;
    friend bool operator==(const MoveCameraAction&, const MoveCameraAction&) = default;
};
struct GenerateFloorTextureAction {
    std::string description;
    friend bool operator==(const GenerateFloorTextureAction&, const GenerateFloorTextureAction&) = default;
};
struct FinishAction {
    friend bool operator==(const FinishAction&, const FinishAction&) = default;
};

using Action = std::variant<CreateAction, DuplicateAction, DeleteAction, TranslateAction, PlaceAction, RotateAction,
                            ScaleAction, ViewSceneAction, FocusOnAction, RotateCameraAction, MoveCameraAction,
                            GenerateFloorTextureAction, FinishAction>;

std::string_view action_type(const Action& action);
bool is_creation(const Action& action);

/// {"type": ..., "args": [...]} with every argument spelled out.
nlohmann::json action_to_json(const Action& action);
/// Throws ParseFailure.
Action action_from_json(const nlohmann::json& j);

/// Call-style text, e.g. Place("a", [1, 2, 0]).
std::string format_action(const Action& action);

struct ActionBatch {
    std::string reason;
    std::vector<Action> actions;
    friend bool operator==(const ActionBatch&, const ActionBatch&) = default;
};

nlohmann::json batch_to_json(const ActionBatch& batch);
ActionBatch batch_from_json(const nlohmann::json& j);

enum class ParseErrorKind { NoActionBlock, MalformedJson, UnknownActionType, ArityMismatch, BadArgumentType, EmptyBatch };
std::string_view to_string(ParseErrorKind kind);

class ParseFailure : public std::runtime_error {
public:
    ParseFailure(ParseErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind)
    {
    }
    ParseErrorKind kind() const noexcept { return kind_; }

private:
    ParseErrorKind kind_;
};

/// Reason is the text after "Reason:" (up to "Action:"); actions come from
/// the first fenced block after "Action:". Throws ParseFailure.
ActionBatch parse_response(std::string_view text);

struct ValidationVerdict {
    bool accepted = true;
    std::string rejection_reason;
    std::vector<std::string> warnings;
};

inline constexpr std::size_t kMaxObjectsPerBatch = 3;
inline constexpr long long kMaxDuplicateCount = 50;

ValidationVerdict validate_batch(const ActionBatch& batch, const Scene& scene);

/// Asset produced while executing one action, kept so the session can
/// store it and replays can serve it back.
struct ProducedAsset {
    std::size_t action_index = 0;
    std::shared_ptr<const TriangleMesh> mesh;        // Create
    std::shared_ptr<const TextureImage> texture;     // GenerateFloorTexture
};

struct ExecutionResult {
    std::vector<std::string> executed;  // format_action of every applied action
    std::vector<SystemMessage> messages;
    std::vector<ProducedAsset> assets;
    bool finished = false;
};

/// Applies an accepted batch in order. Provider failures skip the action
/// and add a message; nothing here throws for runtime failures.
ExecutionResult execute_batch(Scene& scene, CameraState& cam, const ActionBatch& batch, AssetProvider& assets,
                              TextureProvider& textures);

}  // namespace sceneloom
