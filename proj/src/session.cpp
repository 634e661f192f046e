#include "sceneloom/session.hpp"

#include <ctime>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/chrono.h>
#include <fmt/format.h>

#include "sceneloom/error.hpp"
#include "sceneloom/hash.hpp"
#include "sceneloom/render.hpp"
#include "sceneloom/scene_io.hpp"

namespace sceneloom {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

const std::string kGenesisHash(64, '0');

ojson camera_to_json(const CameraState& c)
{
    return ojson{{"target", ojson::array({c.target.x, c.target.y, c.target.z})},
                 {"azimuth", c.azimuth},
                 {"elevation", c.elevation},
                 {"distance", c.distance},
                 {"fov", c.fov}};
}

CameraState camera_from_json(const json& j)
{
    CameraState c;
    const auto& t = j.at("target");
    c.target = {t[0].get<double>(), t[1].get<double>(), t[2].get<double>()};
    c.azimuth = j.at("azimuth").get<double>();
    c.elevation = j.at("elevation").get<double>();
    c.distance = j.at("distance").get<double>();
    c.fov = j.at("fov").get<double>();
    return c;
}

ojson message_to_json(const SystemMessage& m)
{
    return ojson{{"origin", to_string(m.origin)}, {"text", m.text}, {"created_at_step", m.created_at_step}};
}

SystemMessage message_from_json(const json& j)
{
    return {parse_message_origin(j.at("origin").get<std::string>()), j.at("text").get<std::string>(),
            j.at("created_at_step").get<int>()};
}

ojson messages_to_json(const std::vector<SystemMessage>& ms)
{
    ojson out = ojson::array();
    for (const auto& m : ms)
        out.push_back(message_to_json(m));
    return out;
}

std::string record_hash(const std::string& prev, ojson record)
{
    record.erase("record_hash");
    return sha256_hex(prev + "\n" + record.dump());
}

std::string utc_now()
{
    return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(std::time(nullptr)));
}

// Serves the assets a trajectory recorded, so re-execution does not depend
// on the original provider.
class RecordedAssets final : public AssetProvider, public TextureProvider {
public:
    RecordedAssets(const fs::path& dir, const json& assets)
    {
        for (const auto& a : assets) {
            if (a.contains("mesh_ref"))
                meshes_[a.at("name").get<std::string>()] = read_obj_file((dir / a.at("mesh_ref").get<std::string>()).string());
            else
                textures_.push_back({decode_png(read_file_bytes((dir / a.at("texture_ref").get<std::string>()).string())),
                                     a.at("tile_m").get<double>()});
        }
    }

    TriangleMesh generate_asset(const AssetRequest& request) override
    {
        const auto it = meshes_.find(request.name);
        if (it == meshes_.end())
            throw Error(ErrorCode::GenerationFailed, fmt::format("no recorded mesh for '{}'", request.name));
        return it->second;
    }

    TextureImage generate_texture(const std::string& description, const Aabb&) override
    {
        if (textures_.empty())
            throw Error(ErrorCode::GenerationFailed, fmt::format("no recorded texture for '{}'", description));
        auto t = std::move(textures_.front());
        textures_.pop_front();
        return t;
    }

private:
    std::map<std::string, TriangleMesh> meshes_;
    std::deque<TextureImage> textures_;
};

template <class T>
T config_value(const json& j, const char* key, T fallback)
{
    const auto it = j.find(key);
    if (it == j.end())
        return fallback;
    try {
        return it->get<T>();
    } catch (const json::exception&) {
        throw Error(ErrorCode::BadConfig, fmt::format("config '{}' has the wrong type", key));
    }
}

}  // namespace

SessionConfig SessionConfig::from_environment()
{
    SessionConfig c;
    if (const char* e = std::getenv("SCENELOOM_VLM_ENDPOINT"); e && *e)
        c.gateway = "remote";
    if (const char* e = std::getenv("SCENELOOM_ASSET_ENDPOINT"); e && *e)
        c.assets = "remote";
    return c;
}

nlohmann::ordered_json SessionConfig::to_json() const
{
    return ojson{{"max_steps", max_steps},
                 {"collision_margin", collision_margin},
                 {"visual_prompting", visual_prompting},
                 {"collision_check", collision_check},
                 {"gateway", gateway},
                 {"assets", assets},
                 {"image_width", image_width},
                 {"image_height", image_height}};
}

SessionConfig SessionConfig::from_json(const nlohmann::json& j, SessionConfig c)
{
    if (j.is_null())
        return c;
    if (!j.is_object())
        throw Error(ErrorCode::BadConfig, "config must be a JSON object");
    static const std::vector<std::string> keys{"max_steps", "collision_margin", "visual_prompting", "collision_check",
                                               "gateway",   "assets",           "image_width",      "image_height"};
    for (const auto& [k, _] : j.items())
        if (std::find(keys.begin(), keys.end(), k) == keys.end())
            throw Error(ErrorCode::BadConfig, fmt::format("unknown config key '{}'", k));
    c.max_steps = config_value(j, "max_steps", c.max_steps);
    c.collision_margin = config_value(j, "collision_margin", c.collision_margin);
    c.visual_prompting = config_value(j, "visual_prompting", c.visual_prompting);
    c.collision_check = config_value(j, "collision_check", c.collision_check);
    c.gateway = config_value(j, "gateway", c.gateway);
    c.assets = config_value(j, "assets", c.assets);
    c.image_width = config_value(j, "image_width", c.image_width);
    c.image_height = config_value(j, "image_height", c.image_height);
    if (c.max_steps < 1)
        throw Error(ErrorCode::BadConfig, "max_steps must be >= 1");
    if (!(c.collision_margin >= 0.0 && c.collision_margin < 1.0))
        throw Error(ErrorCode::BadConfig, "collision_margin must be in [0, 1)");
    if (c.image_width < 64 || c.image_height < 64)
        throw Error(ErrorCode::BadConfig, "image size must be at least 64 x 64");
    return c;
}

std::string_view to_string(SessionStatus status)
{
    switch (status) {
    case SessionStatus::Running: return "running";
    case SessionStatus::Paused: return "paused";
    case SessionStatus::Finished: return "finished";
    case SessionStatus::Exhausted: return "exhausted";
    case SessionStatus::Aborted: return "aborted";
    }
    return "?";
}

SessionStatus parse_session_status(std::string_view text)
{
    for (auto s : {SessionStatus::Running, SessionStatus::Paused, SessionStatus::Finished, SessionStatus::Exhausted,
                   SessionStatus::Aborted})
        if (to_string(s) == text)
            return s;
    throw Error(ErrorCode::BadConfig, fmt::format("unknown session status '{}'", text));
}

std::string collision_message(const std::vector<NamePair>& pairs)
{
    std::vector<std::string> parts;
    for (const auto& [a, b] : pairs)
        parts.push_back(fmt::format("{} and {}", a, b));
    return fmt::format("Collision detected between {}. Move them apart so they no longer intersect.",
                       fmt::join(parts, "; "));
}

std::unique_ptr<Session> Session::create(const fs::path& dir, std::string id, std::string instruction,
                                         SessionConfig config)
{
    if (instruction.find_first_not_of(" \t\r\n") == std::string::npos)
        throw Error(ErrorCode::BadConfig, "instruction must not be empty");
    if (fs::exists(dir / "session.json"))
        throw Error(ErrorCode::BadConfig, fmt::format("{} already holds a session", dir.string()));
    fs::create_directories(dir / "steps");

    std::unique_ptr<Session> s(new Session());
    s->id_ = std::move(id);
    s->dir_ = dir;
    s->instruction_ = std::move(instruction);
    s->created_at_ = utc_now();
    s->config_ = config;
    s->budget_ = config.max_steps;
    s->camera_ = view_scene(s->scene_);
    s->last_hash_ = kGenesisHash;
    s->events_ = std::make_unique<EventLog>(s->id_, dir / "events.jsonl");
    std::lock_guard lock(s->mutex_);
    s->last_scene_hash_ = sha256_hex(save_scene(s->scene_, dir));
    s->persist_locked();
    s->events_->append("status_changed", {{"status", "running"}, {"step", 0}});
    return s;
}

std::unique_ptr<Session> Session::open(const fs::path& dir)
{
    if (!fs::exists(dir / "session.json"))
        throw Error(ErrorCode::NotFound, fmt::format("no session in {}", dir.string()));
    json doc;
    try {
        doc = json::parse(read_file_text((dir / "session.json").string()));
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Io, fmt::format("{}: {}", (dir / "session.json").string(), e.what()));
    }

    std::unique_ptr<Session> s(new Session());
    try {
        s->id_ = doc.at("id").get<std::string>();
        s->dir_ = dir;
        s->instruction_ = doc.at("instruction").get<std::string>();
        s->created_at_ = doc.value("created_at", "");
        s->config_ = SessionConfig::from_json(doc.at("config"));
        s->status_ = parse_session_status(doc.at("status").get<std::string>());
        s->status_reason_ = doc.value("status_reason", "");
        s->step_counter_ = doc.at("step_counter").get<int>();
        s->budget_ = doc.at("budget").get<int>();
        s->camera_ = camera_from_json(doc.at("camera"));
        for (const auto& m : doc.at("pending_messages"))
            s->pending_.push_back(message_from_json(m));
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Io, fmt::format("{}: {}", (dir / "session.json").string(), e.what()));
    }
    s->prompt_step_ = s->step_counter_;
    if (fs::exists(dir / "scene.json"))
        s->scene_ = load_scene(dir / "scene.json");
    s->last_scene_hash_ = scene_hash(s->scene_);

    const auto records = read_trajectory(dir / "trajectory.jsonl");
    s->history_ = history_from_trajectory(records);
    s->last_hash_ = records.empty() ? kGenesisHash : records.back().at("record_hash").get<std::string>();
    if (static_cast<int>(records.size()) > s->step_counter_) {
        // The trajectory was appended but session.json not rewritten.
        const auto& last = records.back();
        s->step_counter_ = static_cast<int>(records.size());
        s->prompt_step_ = s->step_counter_;
        s->camera_ = camera_from_json(last.at("camera"));
        s->pending_.clear();
        for (const auto& m : last.at("emitted_messages"))
            s->pending_.push_back(message_from_json(m));
    }
    s->events_ = std::make_unique<EventLog>(s->id_, dir / "events.jsonl");
    return s;
}

void Session::set_gateway(std::unique_ptr<VlmGateway> gateway)
{
    std::lock_guard lock(mutex_);
    gateway_ = std::move(gateway);
}

void Session::set_providers(std::shared_ptr<AssetProvider> assets, std::shared_ptr<TextureProvider> textures)
{
    std::lock_guard lock(mutex_);
    assets_ = std::move(assets);
    textures_ = std::move(textures);
}

void Session::ensure_dependencies_locked()
{
    if (!gateway_)
        gateway_ = make_gateway(config_.gateway, static_cast<std::size_t>(step_counter_));
    if (!assets_ || !textures_) {
        auto p = make_providers(config_.assets);
        assets_ = p.assets;
        textures_ = p.textures;
    }
}

void Session::set_status_locked(SessionStatus s, const std::string& reason)
{
    if (s == status_ && reason == status_reason_)
        return;
    status_ = s;
    status_reason_ = reason;
    json payload{{"status", to_string(s)}, {"step", step_counter_}, {"budget", budget_}};
    if (!reason.empty())
        payload["reason"] = reason;
    events_->append("status_changed", std::move(payload));
}

void Session::persist_locked() const
{
    ojson doc{{"id", id_},
              {"instruction", instruction_},
              {"created_at", created_at_},
              {"config", config_.to_json()},
              {"status", to_string(status_)},
              {"status_reason", status_reason_},
              {"step_counter", step_counter_},
              {"budget", budget_},
              {"replay_cursor", step_counter_},
              {"camera", camera_to_json(camera_)},
              {"pending_messages", messages_to_json(pending_)},
              {"last_record_hash", last_hash_}};
    write_file((dir_ / "session.json").string(), doc.dump(2) + "\n");
}

bool Session::step()
{
    std::unique_lock lock(mutex_);
    if (status_ != SessionStatus::Running)
        return false;
    if (step_counter_ >= budget_) {
        set_status_locked(SessionStatus::Exhausted);
        persist_locked();
        return false;
    }
    try {
        ensure_dependencies_locked();
    } catch (const Error& e) {
        set_status_locked(SessionStatus::Paused, e.what());
        persist_locked();
        return false;
    }

    const int t = step_counter_ + 1;
    events_->append("step_started", {{"step", t}});

    RenderOptions opts;
    opts.width = config_.image_width;
    opts.height = config_.image_height;
    opts.visual_prompting = config_.visual_prompting;
    auto png = encode_png(render(scene_, camera_, opts));
    const auto image_ref = fmt::format("steps/step_{}.png", t);
    write_file((dir_ / image_ref).string(), png);
    const auto image_sha = sha256_hex(png);
    events_->append("image_ready", {{"step", t}, {"image", image_ref}});

    std::vector<SystemMessage> delivered = std::move(pending_);
    pending_.clear();
    prompt_step_ = t;
    auto prompt = assemble_prompt(instruction_, std::move(png), history_, scene_summary(scene_), delivered);
    last_prompt_ = prompt;
    VlmGateway* gateway = gateway_.get();
    lock.unlock();

    std::string response;
    std::optional<std::string> failure;
    try {
        response = gateway->complete(prompt);
    } catch (const std::exception& e) {
        failure = e.what();
    }

    lock.lock();
    if (failure || status_ != SessionStatus::Running) {
        pending_.insert(pending_.begin(), delivered.begin(), delivered.end());
        prompt_step_ = step_counter_;
        if (failure && status_ == SessionStatus::Running)
            set_status_locked(SessionStatus::Paused, *failure);
        persist_locked();
        return false;
    }
    events_->append("response_received", {{"step", t}, {"text", response}});

    ojson record;
    record["t"] = t;
    record["image"] = image_ref;
    record["image_sha256"] = image_sha;
    record["system_prompt_sha256"] = sha256_hex(kSystemPrompt);
    record["prompt"] = prompt[1].text();
    record["raw_response"] = response;

    std::vector<SystemMessage> emitted;
    auto emit = [&](MessageOrigin origin, std::string text) { emitted.push_back({origin, std::move(text), t}); };
    HistoryEntry entry{t, {}, {}};
    ojson parse_error = nullptr, batch_json = nullptr, verdict_json = nullptr;
    ojson executed = ojson::array(), assets = ojson::array();
    bool finished = false;

    try {
        const ActionBatch batch = parse_response(response);
        batch_json = batch_to_json(batch);
        const ValidationVerdict verdict = validate_batch(batch, scene_);
        verdict_json = ojson{{"accepted", verdict.accepted},
                             {"rejection_reason", verdict.rejection_reason},
                             {"warnings", verdict.warnings}};
        if (!verdict.accepted) {
            for (const auto& a : batch.actions)
                entry.actions.push_back(format_action(a));
            entry.rejection = verdict.rejection_reason;
            emit(MessageOrigin::BatchRejected, "Batch rejected, nothing was executed: " + verdict.rejection_reason);
            events_->append("batch_rejected", {{"step", t}, {"reason", verdict.rejection_reason}});
        } else {
            for (const auto& w : verdict.warnings)
                emit(MessageOrigin::Warning, w);
            auto result = execute_batch(scene_, camera_, batch, *assets_, *textures_);
            for (const auto& a : result.assets) {
                if (a.mesh) {
                    const auto& create = std::get<CreateAction>(batch.actions[a.action_index]);
                    assets.push_back(ojson{{"action_index", a.action_index},
                                           {"name", create.name},
                                           {"mesh_ref", store_mesh(*a.mesh, dir_)}});
                } else {
                    const auto& gen = std::get<GenerateFloorTextureAction>(batch.actions[a.action_index]);
                    assets.push_back(ojson{{"action_index", a.action_index},
                                           {"description", gen.description},
                                           {"texture_ref", store_texture(*a.texture, dir_)},
                                           {"tile_m", a.texture->tile_size_m}});
                }
            }
            for (auto& m : result.messages)
                emit(m.origin, std::move(m.text));
            entry.actions = result.executed;
            executed = result.executed;
            finished = result.finished;
            events_->append("batch_executed", {{"step", t}, {"executed", result.executed}});
            if (config_.collision_check) {
                const auto pairs = detect_collisions(scene_, config_.collision_margin);
                if (!pairs.empty())
                    emit(MessageOrigin::Collision, collision_message(pairs));
            }
        }
    } catch (const ParseFailure& e) {
        parse_error = ojson{{"kind", to_string(e.kind())}, {"message", e.what()}};
        entry.rejection = fmt::format("could not parse response: {}", e.what());
        emit(MessageOrigin::ParseFailure,
             fmt::format("Your last response could not be parsed ({}): {}. Nothing was executed.", to_string(e.kind()),
                         e.what()));
        events_->append("batch_rejected", {{"step", t}, {"reason", entry.rejection}, {"parse_error", true}});
    }

    for (const auto& m : emitted) {
        pending_.push_back(m);
        events_->append("system_message", {{"step", t}, {"origin", to_string(m.origin)}, {"text", m.text}});
    }
    step_counter_ = t;
    history_.push_back(std::move(entry));
    last_scene_hash_ = sha256_hex(save_scene(scene_, dir_));

    record["parse_error"] = std::move(parse_error);
    record["batch"] = std::move(batch_json);
    record["verdict"] = std::move(verdict_json);
    record["executed"] = std::move(executed);
    record["assets"] = std::move(assets);
    record["delivered_messages"] = messages_to_json(delivered);
    record["emitted_messages"] = messages_to_json(emitted);
    record["camera"] = camera_to_json(camera_);
    record["scene_hash"] = last_scene_hash_;
    record["prev_hash"] = last_hash_;
    record["record_hash"] = record_hash(last_hash_, record);
    last_hash_ = record["record_hash"].get<std::string>();
    {
        std::ofstream out(dir_ / "trajectory.jsonl", std::ios::app | std::ios::binary);
        out << record.dump() << '\n';
        if (!out)
            throw Error(ErrorCode::Io, "cannot append to trajectory.jsonl");
    }

    if (finished)
        set_status_locked(SessionStatus::Finished);
    else if (step_counter_ >= budget_)
        set_status_locked(SessionStatus::Exhausted);
    persist_locked();
    return true;
}

SessionStatus Session::run()
{
    while (step()) {
    }
    return status();
}

DeliveryAck Session::inject_user_message(const std::string& text)
{
    std::lock_guard lock(mutex_);
    if (status_ == SessionStatus::Aborted)
        throw Error(ErrorCode::SessionAborted, fmt::format("session {} was aborted", id_));
    if (text.find_first_not_of(" \t\r\n") == std::string::npos)
        throw Error(ErrorCode::BadConfig, "message must not be empty");

    DeliveryAck ack;
    if (status_ == SessionStatus::Finished || status_ == SessionStatus::Exhausted) {
        budget_ = step_counter_ + config_.max_steps / 2;
        ack.reopened = true;
        set_status_locked(budget_ > step_counter_ ? SessionStatus::Running : SessionStatus::Exhausted, "re-opened");
    } else if (status_ == SessionStatus::Paused) {
        set_status_locked(SessionStatus::Running);
    }
    pending_.push_back({MessageOrigin::UserEdit, text, step_counter_});
    events_->append("system_message", {{"step", step_counter_}, {"origin", "user_edit"}, {"text", text}});
    persist_locked();

    ack.delivery_step = std::max(step_counter_, prompt_step_) + 1;
    ack.status = status_;
    ack.budget = budget_;
    return ack;
}

void Session::abort()
{
    std::lock_guard lock(mutex_);
    if (status_ == SessionStatus::Aborted)
        return;
    set_status_locked(SessionStatus::Aborted);
    persist_locked();
}

bool Session::resume()
{
    std::lock_guard lock(mutex_);
    if (status_ != SessionStatus::Paused)
        return false;
    set_status_locked(SessionStatus::Running);
    persist_locked();
    return true;
}

nlohmann::ordered_json Session::descriptor() const
{
    std::lock_guard lock(mutex_);
    return ojson{{"id", id_},
                 {"instruction", instruction_},
                 {"status", to_string(status_)},
                 {"status_reason", status_reason_},
                 {"step_counter", step_counter_},
                 {"budget", budget_},
                 {"max_steps", config_.max_steps},
                 {"created_at", created_at_}};
}

nlohmann::ordered_json Session::snapshot() const
{
    auto out = descriptor();
    std::lock_guard lock(mutex_);
    out["config"] = config_.to_json();
    out["latest_image"] = step_counter_ > 0 ? ojson(fmt::format("steps/step_{}.png", step_counter_)) : ojson(nullptr);
    out["scene"] = ojson::parse(scene_summary(scene_));
    out["camera"] = camera_to_json(camera_);
    out["pending_messages"] = messages_to_json(pending_);
    out["scene_hash"] = last_scene_hash_;
    out["trajectory_tail_hash"] = last_hash_;
    out["last_event_seq"] = events_->last_seq();
    return out;
}

SessionStatus Session::status() const
{
    std::lock_guard lock(mutex_);
    return status_;
}

int Session::step_counter() const
{
    std::lock_guard lock(mutex_);
    return step_counter_;
}

int Session::budget() const
{
    std::lock_guard lock(mutex_);
    return budget_;
}

Scene Session::scene() const
{
    std::lock_guard lock(mutex_);
    return scene_;
}

CameraState Session::camera() const
{
    std::lock_guard lock(mutex_);
    return camera_;
}

std::vector<SystemMessage> Session::pending_messages() const
{
    std::lock_guard lock(mutex_);
    return pending_;
}

std::vector<ChatMessage> Session::last_prompt() const
{
    std::lock_guard lock(mutex_);
    return last_prompt_;
}

std::vector<nlohmann::json> read_trajectory(const fs::path& path)
{
    std::vector<json> out;
    if (!fs::exists(path))
        return out;
    std::istringstream lines(read_file_text(path.string()));
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty())
            continue;
        try {
            out.push_back(json::parse(line));
        } catch (const json::exception& e) {
            throw Error(ErrorCode::Io, fmt::format("{}: record {}: {}", path.string(), out.size() + 1, e.what()));
        }
    }
    return out;
}

std::vector<HistoryEntry> history_from_trajectory(const std::vector<nlohmann::json>& records)
{
    std::vector<HistoryEntry> out;
    for (const auto& r : records) {
        HistoryEntry h{r.at("t").get<int>(), {}, {}};
        if (!r.at("parse_error").is_null()) {
            h.rejection = fmt::format("could not parse response: {}", r.at("parse_error").at("message").get<std::string>());
        } else if (!r.at("verdict").at("accepted").get<bool>()) {
            for (const auto& a : r.at("batch").at("actions"))
                h.actions.push_back(format_action(action_from_json(a)));
            h.rejection = r.at("verdict").at("rejection_reason").get<std::string>();
        } else {
            h.actions = r.at("executed").get<std::vector<std::string>>();
        }
        out.push_back(std::move(h));
    }
    return out;
}

int verify_hash_chain(const fs::path& path)
{
    std::istringstream lines(read_file_text(path.string()));
    std::string line, prev = kGenesisHash;
    int index = 0;
    while (std::getline(lines, line)) {
        if (line.empty())
            continue;
        ++index;
        ojson rec;
        try {
            rec = ojson::parse(line);
        } catch (const ojson::exception&) {
            return index;
        }
        if (!rec.contains("record_hash") || rec.value("prev_hash", "") != prev)
            return index;
        const auto stored = rec["record_hash"].get<std::string>();
        if (record_hash(prev, rec) != stored)
            return index;
        prev = stored;
    }
    return 0;
}

ReplayReport replay_trajectory(const fs::path& path)
{
    ReplayReport report;
    const fs::path dir = path.parent_path();
    const auto records = read_trajectory(path);
    report.steps = static_cast<int>(records.size());
    if (const int broken = verify_hash_chain(path)) {
        report.chain_ok = false;
        report.detail = fmt::format("hash chain broken at record {}", broken);
    }

    Scene scene;
    CameraState cam = view_scene(scene);
    report.final_hash = scene_hash(scene);
    for (const auto& r : records) {
        const int t = r.at("t").get<int>();
        if (r.at("parse_error").is_null() && r.at("verdict").at("accepted").get<bool>()) {
            const ActionBatch batch = batch_from_json(r.at("batch"));
            const auto verdict = validate_batch(batch, scene);
            if (!verdict.accepted && report.first_mismatch_step == 0) {
                report.first_mismatch_step = t;
                report.detail = fmt::format("step {}: batch no longer validates: {}", t, verdict.rejection_reason);
            }
            RecordedAssets recorded(dir, r.at("assets"));
            execute_batch(scene, cam, batch, recorded, recorded);
        }
        report.final_hash = scene_hash(scene);
        if (report.final_hash != r.at("scene_hash").get<std::string>() && report.first_mismatch_step == 0) {
            report.first_mismatch_step = t;
            report.detail = fmt::format("step {}: scene hash differs", t);
        }
    }
    report.recorded_final_hash = records.empty() ? scene_hash(Scene{}) : records.back().at("scene_hash").get<std::string>();
    return report;
}

}  // namespace sceneloom
