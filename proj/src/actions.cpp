#include "sceneloom/actions.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "sceneloom/error.hpp"

namespace sceneloom {
namespace {

using json = nlohmann::json;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

struct Signature {
    std::string_view type;
    std::vector<std::string_view> params;
    std::size_t required;
};

const std::vector<Signature>& signatures()
{
    static const std::vector<Signature> table{
        {"Create", {"name", "description"}, 2},
        {"Duplicate", {"name", "count"}, 2},
        {"Delete", {"name"}, 1},
        {"Translate", {"name", "axis", "distance"}, 3},
        {"Place", {"name", "position"}, 2},
        {"Rotate", {"name", "axis", "angle_degrees"}, 3},
        {"Scale", {"name", "value"}, 2},
        {"ViewScene", {"view", "zoom"}, 0},
        {"FocusOn", {"target", "view", "zoom"}, 1},
        {"RotateCamera", {"horizontal", "vertical"}, 2},
        {"MoveCamera", {"direction", "distance"}, 2},
        {"GenerateFloorTexture", {"description"}, 1},
        {"Finish", {}, 0},
    };
    return table;
}

const Signature& signature_of(std::string_view type)
{
    for (const auto& s : signatures())
        if (s.type == type)
            return s;
    throw ParseFailure(ParseErrorKind::UnknownActionType, fmt::format("unknown action type '{}'", type));
}

// Positional view of the arguments; object-style args are mapped by
// parameter name.
std::vector<json> positional_args(const Signature& sig, const json& entry)
{
    const auto it = entry.find("args");
    if (it == entry.end() || it->is_null())
        return {};
    std::vector<json> args;
    if (it->is_array()) {
        args.assign(it->begin(), it->end());
    } else if (it->is_object()) {
        for (const auto& [key, _] : it->items())
            if (std::find(sig.params.begin(), sig.params.end(), key) == sig.params.end())
                throw ParseFailure(ParseErrorKind::ArityMismatch,
                                   fmt::format("{} has no argument named '{}'", sig.type, key));
        for (auto p : sig.params) {
            const auto v = it->find(std::string(p));
            if (v == it->end())
                break;
            args.push_back(*v);
        }
        if (args.size() != it->size())
            throw ParseFailure(ParseErrorKind::ArityMismatch,
                               fmt::format("{} arguments must be given in order without gaps", sig.type));
    } else {
        throw ParseFailure(ParseErrorKind::MalformedJson, fmt::format("{}: \"args\" must be a list", sig.type));
    }
    if (args.size() < sig.required || args.size() > sig.params.size()) {
        const auto expected = sig.required == sig.params.size()
                                  ? fmt::format("{}", sig.required)
                                  : fmt::format("{} to {}", sig.required, sig.params.size());
        throw ParseFailure(ParseErrorKind::ArityMismatch,
                           fmt::format("{} takes {} argument(s), got {}", sig.type, expected, args.size()));
    }
    return args;
}

[[noreturn]] void bad_type(const Signature& sig, std::size_t i, std::string_view expected)
{
    throw ParseFailure(ParseErrorKind::BadArgumentType,
                       fmt::format("{} argument '{}' must be {}", sig.type, sig.params[i], expected));
}

std::string as_string(const Signature& sig, const std::vector<json>& a, std::size_t i)
{
    if (!a[i].is_string())
        bad_type(sig, i, "a string");
    return a[i].get<std::string>();
}

double as_number(const Signature& sig, const std::vector<json>& a, std::size_t i)
{
    if (!a[i].is_number())
        bad_type(sig, i, "a number");
    return a[i].get<double>();
}

bool is_triple(const json& j)
{
    return j.is_array() && j.size() == 3 && std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_number(); });
}

Vec3 as_triple(const Signature& sig, const std::vector<json>& a, std::size_t i)
{
    if (!is_triple(a[i]))
        bad_type(sig, i, "a list of 3 numbers");
    return {a[i][0].get<double>(), a[i][1].get<double>(), a[i][2].get<double>()};
}

long long as_integer(const Signature& sig, const std::vector<json>& a, std::size_t i)
{
    const auto& j = a[i];
    if (j.is_number_integer())
        return j.get<long long>();
    if (j.is_number_float()) {
        const double d = j.get<double>();
        if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 1e15)
            return static_cast<long long>(d);
    }
    bad_type(sig, i, "an integer");
}

json triple_json(const Vec3& v)
{
    return json::array({v.x, v.y, v.z});
}

std::string quoted(const std::string& s)
{
    return json(s).dump();
}

std::string num(double v)
{
    return fmt::format("{}", v);
}

std::string triple_text(const Vec3& v)
{
    return fmt::format("[{}, {}, {}]", num(v.x), num(v.y), num(v.z));
}

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

}  // namespace

std::string_view to_string(ParseErrorKind kind)
{
    switch (kind) {
    case ParseErrorKind::NoActionBlock: return "NoActionBlock";
    case ParseErrorKind::MalformedJson: return "MalformedJson";
    case ParseErrorKind::UnknownActionType: return "UnknownActionType";
    case ParseErrorKind::ArityMismatch: return "ArityMismatch";
    case ParseErrorKind::BadArgumentType: return "BadArgumentType";
    case ParseErrorKind::EmptyBatch: return "EmptyBatch";
    }
    return "?";
}

std::string_view action_type(const Action& action)
{
    return signatures()[action.index()].type;
}

bool is_creation(const Action& action)
{
    return std::holds_alternative<CreateAction>(action) || std::holds_alternative<DuplicateAction>(action);
}

json action_to_json(const Action& action)
{
    json args = std::visit(
        overloaded{
            [](const CreateAction& a) { return json::array({a.name, a.description}); },
            [](const DuplicateAction& a) { return json::array({a.name, a.count}); },
            [](const DeleteAction& a) { return json::array({a.name}); },
            [](const TranslateAction& a) { return json::array({a.name, a.axis, a.distance}); },
            [](const PlaceAction& a) { return json::array({a.name, triple_json(a.position)}); },
            [](const RotateAction& a) { return json::array({a.name, a.axis, a.angle_degrees}); },
            [](const ScaleAction& a) {
                if (const auto* v = std::get_if<Vec3>(&a.value))
                    return json::array({a.name, triple_json(*v)});
                return json::array({a.name, std::get<double>(a.value)});
            },
            [](const ViewSceneAction& a) { return json::array({a.view, a.zoom}); },
            [](const FocusOnAction& a) { return json::array({a.target, a.view, a.zoom}); },
            [](const RotateCameraAction& a) { return json::array({a.horizontal, a.vertical}); },
            [](const MoveCameraAction& a) { return json::array({a.direction, a.distance}); },
            [](const GenerateFloorTextureAction& a) { return json::array({a.description}); },
            [](const FinishAction&) { return json::array(); },
        },
        action);
    return json{{"type", action_type(action)}, {"args", std::move(args)}};
}

Action action_from_json(const json& entry)
{
    if (!entry.is_object())
        throw ParseFailure(ParseErrorKind::MalformedJson, "each action must be an object with \"type\" and \"args\"");
    const auto t = entry.find("type");
    if (t == entry.end() || !t->is_string())
        throw ParseFailure(ParseErrorKind::MalformedJson, "action is missing a string \"type\"");
    const auto type = t->get<std::string>();
    const Signature& sig = signature_of(type);
    const auto a = positional_args(sig, entry);

    if (type == "Create")
        return CreateAction{as_string(sig, a, 0), as_string(sig, a, 1)};
    if (type == "Duplicate")
        return DuplicateAction{as_string(sig, a, 0), as_integer(sig, a, 1)};
    if (type == "Delete")
        return DeleteAction{as_string(sig, a, 0)};
    if (type == "Translate")
        return TranslateAction{as_string(sig, a, 0), as_string(sig, a, 1), as_number(sig, a, 2)};
    if (type == "Place")
        return PlaceAction{as_string(sig, a, 0), as_triple(sig, a, 1)};
    if (type == "Rotate")
        return RotateAction{as_string(sig, a, 0), as_string(sig, a, 1), as_number(sig, a, 2)};
    if (type == "Scale") {
        ScaleAction s{as_string(sig, a, 0)};
        if (a[1].is_number())
            s.value = a[1].get<double>();
        else if (is_triple(a[1]))
            s.value = as_triple(sig, a, 1);
        else
            bad_type(sig, 1, "a number or a list of 3 numbers");
        return s;
    }
    if (type == "ViewScene") {
        ViewSceneAction v;
        if (a.size() > 0)
            v.view = as_string(sig, a, 0);
        if (a.size() > 1)
            v.zoom = as_number(sig, a, 1);
        return v;
    }
    if (type == "FocusOn") {
        FocusOnAction f{as_string(sig, a, 0)};
        if (a.size() > 1)
            f.view = as_string(sig, a, 1);
        if (a.size() > 2)
            f.zoom = as_number(sig, a, 2);
        return f;
    }
    if (type == "RotateCamera")
        return RotateCameraAction{as_number(sig, a, 0), as_number(sig, a, 1)};
    if (type == "MoveCamera")
        return MoveCameraAction{as_string(sig, a, 0), as_number(sig, a, 1)};
    if (type == "GenerateFloorTexture")
        return GenerateFloorTextureAction{as_string(sig, a, 0)};
    return FinishAction{};
}

std::string format_action(const Action& action)
{
    const std::string args = std::visit(
        overloaded{
            [](const CreateAction& a) { return quoted(a.name) + ", " + quoted(a.description); },
            [](const DuplicateAction& a) { return fmt::format("{}, {}", quoted(a.name), a.count); },
            [](const DeleteAction& a) { return quoted(a.name); },
            [](const TranslateAction& a) { return fmt::format("{}, {}, {}", quoted(a.name), quoted(a.axis), num(a.distance)); },
            [](const PlaceAction& a) { return quoted(a.name) + ", " + triple_text(a.position); },
            [](const RotateAction& a) {
                return fmt::format("{}, {}, {}", quoted(a.name), quoted(a.axis), num(a.angle_degrees));
            },
            [](const ScaleAction& a) {
                if (const auto* v = std::get_if<Vec3>(&a.value))
                    return quoted(a.name) + ", " + triple_text(*v);
                return quoted(a.name) + ", " + num(std::get<double>(a.value));
            },
            [](const ViewSceneAction& a) { return quoted(a.view) + ", " + num(a.zoom); },
            [](const FocusOnAction& a) { return fmt::format("{}, {}, {}", quoted(a.target), quoted(a.view), num(a.zoom)); },
            [](const RotateCameraAction& a) { return num(a.horizontal) + ", " + num(a.vertical); },
            [](const MoveCameraAction& a) { return quoted(a.direction) + ", " + num(a.distance); },
            [](const GenerateFloorTextureAction& a) { return quoted(a.description); },
            [](const FinishAction&) { return std::string(); },
        },
        action);
    return fmt::format("{}({})", action_type(action), args);
}

json batch_to_json(const ActionBatch& batch)
{
    json actions = json::array();
    for (const auto& a : batch.actions)
        actions.push_back(action_to_json(a));
    return json{{"reason", batch.reason}, {"actions", std::move(actions)}};
}

ActionBatch batch_from_json(const json& j)
{
    ActionBatch batch;
    batch.reason = j.at("reason").get<std::string>();
    for (const auto& a : j.at("actions"))
        batch.actions.push_back(action_from_json(a));
    return batch;
}

ActionBatch parse_response(std::string_view text)
{
    const auto reason_pos = text.find("Reason:");
    const auto search_from = reason_pos == std::string_view::npos ? 0 : reason_pos;
    const auto action_pos = text.find("Action:", search_from);
    if (action_pos == std::string_view::npos)
        throw ParseFailure(ParseErrorKind::NoActionBlock, "no \"Action:\" section found");
    const auto fence = text.find("```", action_pos);
    if (fence == std::string_view::npos)
        throw ParseFailure(ParseErrorKind::NoActionBlock, "no fenced code block after \"Action:\"");

    auto body_start = fence + 3;
    while (body_start < text.size() && (std::isalnum(static_cast<unsigned char>(text[body_start])) ||
                                        text[body_start] == '_' || text[body_start] == '-'))
        ++body_start;
    const auto close = text.find("```", body_start);
    const auto body = text.substr(body_start, close == std::string_view::npos ? std::string_view::npos : close - body_start);

    json doc;
    try {
        doc = json::parse(body);
    } catch (const json::parse_error& e) {
        throw ParseFailure(ParseErrorKind::MalformedJson, fmt::format("action block is not valid JSON: {}", e.what()));
    }
    if (!doc.is_array())
        throw ParseFailure(ParseErrorKind::MalformedJson, "action block must be a JSON list");
    if (doc.empty())
        throw ParseFailure(ParseErrorKind::EmptyBatch, "action list is empty");

    ActionBatch batch;
    if (reason_pos != std::string_view::npos)
        batch.reason = std::string(trim(text.substr(reason_pos + 7, action_pos - (reason_pos + 7))));
    for (const auto& entry : doc)
        batch.actions.push_back(action_from_json(entry));
    return batch;
}

ValidationVerdict validate_batch(const ActionBatch& batch, const Scene& scene)
{
    ValidationVerdict verdict;
    auto reject = [&](std::string reason) {
        verdict.accepted = false;
        verdict.rejection_reason = std::move(reason);
        verdict.warnings.clear();
        return verdict;
    };

    if (batch.actions.empty())
        return reject("the batch contains no actions");

    const bool has_finish = std::any_of(batch.actions.begin(), batch.actions.end(),
                                        [](const Action& a) { return std::holds_alternative<FinishAction>(a); });
    if (has_finish && batch.actions.size() > 1)
        return reject("Finish must be called as a single batch with no other actions");

    const auto creations = std::count_if(batch.actions.begin(), batch.actions.end(), is_creation);
    if (creations > 0 && static_cast<std::size_t>(creations) < batch.actions.size()) {
        const auto other = std::find_if_not(batch.actions.begin(), batch.actions.end(), is_creation);
        return reject(fmt::format("Create and Duplicate must be executed in a separate batch; found {} alongside them",
                                  action_type(*other)));
    }

    std::set<std::string, std::less<>> names;
    for (const auto& obj : scene.objects())
        names.insert(obj.name);
    std::vector<std::string> touched;
    auto touch = [&](const std::string& n) {
        if (std::find(touched.begin(), touched.end(), n) == touched.end())
            touched.push_back(n);
    };
    auto require = [&](const std::string& n) {
        if (!names.count(n))
            throw Error(ErrorCode::UnknownObject, fmt::format("no object named '{}'", n));
    };
    auto positive = [](double v, ErrorCode code, std::string_view what) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw Error(code, fmt::format("{} must be > 0, got {}", what, v));
    };

    for (const auto& action : batch.actions) {
        try {
            std::visit(
                overloaded{
                    [&](const CreateAction& a) {
                        if (a.name.empty())
                            throw Error(ErrorCode::UnknownObject, "object name must not be empty");
                        if (trim(a.description).empty())
                            throw Error(ErrorCode::GenerationFailed, "description must not be empty");
                        if (names.count(a.name))
                            throw Error(ErrorCode::DuplicateName, fmt::format("an object named '{}' already exists", a.name));
                        names.insert(a.name);
                        touch(a.name);
                    },
                    [&](const DuplicateAction& a) {
                        require(a.name);
                        if (a.count < 1 || a.count > kMaxDuplicateCount)
                            throw Error(ErrorCode::BadCount,
                                        fmt::format("count must be between 1 and {}, got {}", kMaxDuplicateCount, a.count));
                        int suffix = 2;
                        for (long long i = 0; i < a.count; ++i) {
                            std::string copy;
                            do {
                                copy = fmt::format("{}_{}", a.name, suffix++);
                            } while (names.count(copy));
                            names.insert(copy);
                        }
                        touch(a.name);
                    },
                    [&](const DeleteAction& a) {
                        require(a.name);
                        names.erase(a.name);
                        touch(a.name);
                    },
                    [&](const TranslateAction& a) {
                        require(a.name);
                        parse_axis(a.axis);
                        touch(a.name);
                    },
                    [&](const PlaceAction& a) {
                        require(a.name);
                        if (!is_finite(a.position))
                            throw Error(ErrorCode::NonFinite, "position must be finite");
                        touch(a.name);
                    },
                    [&](const RotateAction& a) {
                        require(a.name);
                        parse_axis(a.axis);
                        touch(a.name);
                    },
                    [&](const ScaleAction& a) {
                        require(a.name);
                        if (const auto* v = std::get_if<Vec3>(&a.value)) {
                            for (int i = 0; i < 3; ++i)
                                positive((*v)[i], ErrorCode::NonPositiveScale, "scale");
                        } else {
                            positive(std::get<double>(a.value), ErrorCode::NonPositiveScale, "scale");
                        }
                        touch(a.name);
                    },
                    [&](const ViewSceneAction& a) {
                        parse_view(a.view);
                        positive(a.zoom, ErrorCode::BadZoom, "zoom");
                    },
                    [&](const FocusOnAction& a) {
                        require(a.target);
                        parse_view(a.view);
                        positive(a.zoom, ErrorCode::BadZoom, "zoom");
                    },
                    [&](const RotateCameraAction&) {},
                    [&](const MoveCameraAction& a) {
                        parse_direction(a.direction);
                        if (!(a.distance >= 0.0))
                            throw Error(ErrorCode::BadDirection, fmt::format("distance must be >= 0, got {}", a.distance));
                    },
                    [&](const GenerateFloorTextureAction& a) {
                        if (trim(a.description).empty())
                            throw Error(ErrorCode::GenerationFailed, "description must not be empty");
                    },
                    [&](const FinishAction&) {},
                },
                action);
        } catch (const Error& e) {
            return reject(fmt::format("{} rejected: {}", format_action(action), e.what()));
        }
    }

    if (touched.size() > kMaxObjectsPerBatch) {
        std::string list;
        for (const auto& n : touched)
            list += (list.empty() ? "" : ", ") + n;
        verdict.warnings.push_back(fmt::format(
            "this batch touched {} objects ({}); manipulate, create or duplicate at most {} per batch",
            touched.size(), list, kMaxObjectsPerBatch));
    }
    return verdict;
}

ExecutionResult execute_batch(Scene& scene, CameraState& cam, const ActionBatch& batch, AssetProvider& assets,
                              TextureProvider& textures)
{
    ExecutionResult result;
    auto message = [&](MessageOrigin origin, std::string text) {
        result.messages.push_back({origin, std::move(text), 0});
    };

    for (std::size_t i = 0; i < batch.actions.size(); ++i) {
        const Action& action = batch.actions[i];
        bool applied = true;
        try {
            std::visit(
                overloaded{
                    [&](const CreateAction& a) {
                        try {
                            auto mesh = std::make_shared<const TriangleMesh>(assets.generate_asset({a.name, a.description}));
                            scene.add_object(a.name, *mesh);
                            result.assets.push_back({i, mesh, nullptr});
                        } catch (const Error&) {
                            message(MessageOrigin::ProviderFailure, fmt::format("creation failed: {}", a.name));
                            applied = false;
                        }
                    },
                    [&](const DuplicateAction& a) { scene.duplicate(a.name, static_cast<int>(a.count)); },
                    [&](const DeleteAction& a) { scene.remove(a.name); },
                    [&](const TranslateAction& a) { scene.translate(a.name, parse_axis(a.axis), a.distance); },
                    [&](const PlaceAction& a) { scene.place(a.name, a.position); },
                    [&](const RotateAction& a) { scene.rotate(a.name, parse_axis(a.axis), a.angle_degrees); },
                    [&](const ScaleAction& a) {
                        if (const auto* v = std::get_if<Vec3>(&a.value))
                            scene.set_scale(a.name, *v);
                        else
                            scene.set_scale(a.name, std::get<double>(a.value));
                    },
                    [&](const ViewSceneAction& a) { cam = view_scene(scene, parse_view(a.view), a.zoom); },
                    [&](const FocusOnAction& a) { cam = focus_on(scene, a.target, parse_view(a.view), a.zoom); },
                    [&](const RotateCameraAction& a) { cam = rotate_camera(cam, a.horizontal, a.vertical); },
                    [&](const MoveCameraAction& a) { cam = move_camera(cam, parse_direction(a.direction), a.distance); },
                    [&](const GenerateFloorTextureAction& a) {
                        std::shared_ptr<const TextureImage> tex;
                        try {
                            tex = std::make_shared<const TextureImage>(
                                textures.generate_texture(a.description, scene.floor_extent()));
                        } catch (const Error& e) {
                            if (e.code() != ErrorCode::ProviderUnavailable) {
                                message(MessageOrigin::ProviderFailure,
                                        fmt::format("floor texture generation failed: {}", a.description));
                                applied = false;
                                return;
                            }
                            tex = std::make_shared<const TextureImage>(fallback_texture(a.description));
                            message(MessageOrigin::Warning,
                                    fmt::format("floor texture provider unavailable; using a checker floor for: {}",
                                                a.description));
                        }
                        scene.set_floor_texture(*tex);
                        result.assets.push_back({i, nullptr, tex});
                    },
                    [&](const FinishAction&) { result.finished = batch.actions.size() == 1; },
                },
                action);
        } catch (const Error& e) {
            message(MessageOrigin::Warning, fmt::format("{} failed: {}", format_action(action), e.what()));
            applied = false;
        }
        if (applied)
            result.executed.push_back(format_action(action));
    }
    return result;
}

}  // namespace sceneloom
