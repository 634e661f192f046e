#include "sceneloom/gateway.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <httplib.h>
#include <json.hpp>

#include "sceneloom/assets.hpp"
#include "sceneloom/error.hpp"
#include "sceneloom/hash.hpp"
#include "sceneloom/image.hpp"

namespace sceneloom {
namespace {

using json = nlohmann::json;

struct PromptObject {
    std::string name;
    double x = 0.0, y = 0.0;
};

// Scene objects from the "Current Scene Data" block of the latest user
// message.
std::vector<PromptObject> scene_from_prompt(const std::vector<ChatMessage>& messages)
{
    std::string text;
    for (auto it = messages.rbegin(); it != messages.rend(); ++it)
        if (it->role == "user") {
            text = it->text();
            break;
        }
    const auto header = text.find("# Current Scene Data");
    const auto open = text.find("```json", header == std::string::npos ? 0 : header);
    if (header == std::string::npos || open == std::string::npos)
        return {};
    const auto start = open + 7;
    const auto close = text.find("```", start);
    std::vector<PromptObject> out;
    try {
        const auto doc = json::parse(text.substr(start, close - start));
        for (const auto& o : doc.at("objects")) {
            const auto& p = o.at("position");
            out.push_back({o.at("name").get<std::string>(), p[0].get<double>(), p[1].get<double>()});
        }
    } catch (const json::exception&) {
        return {};
    }
    return out;
}

struct GridItem {
    const char* name;
    const char* description;
};

constexpr GridItem kGridItems[] = {
    {"table", "round wooden table"}, {"chair", "wooden chair"},     {"lamp", "tall floor lamp"},
    {"shelf", "narrow bookshelf"},   {"plant", "potted plant"},     {"sofa", "two-seat sofa"},
    {"crate", "wooden crate"},       {"vase", "ceramic vase"},      {"stool", "bar stool"},
};
constexpr int kGridItemCount = static_cast<int>(std::size(kGridItems));
constexpr double kGridSpacing = 2.0;

std::string grid_name(int i)
{
    const auto& item = kGridItems[i % kGridItemCount];
    return i < kGridItemCount ? item.name : fmt::format("{}{}", item.name, i / kGridItemCount + 1);
}

std::pair<double, double> grid_slot(int i, int n)
{
    const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    const int rows = (n + cols - 1) / cols;
    const int c = i % cols, r = i / cols;
    return {(c - 0.5 * (cols - 1)) * kGridSpacing, (r - 0.5 * (rows - 1)) * kGridSpacing};
}

std::string grid_layout_reply(const std::vector<PromptObject>& scene, int n)
{
    auto find = [&](const std::string& name) -> const PromptObject* {
        for (const auto& o : scene)
            if (o.name == name)
                return &o;
        return nullptr;
    };

    json creates = json::array();
    std::vector<std::string> created;
    for (int i = 0; i < n && creates.size() < 3; ++i) {
        const auto name = grid_name(i);
        if (!find(name)) {
            creates.push_back({{"type", "Create"}, {"args", {name, kGridItems[i % kGridItemCount].description}}});
            created.push_back(name);
        }
    }
    if (!creates.empty())
        return format_response(fmt::format("Creating {} before arranging them.", fmt::join(created, ", ")),
                               creates.dump());

    json places = json::array();
    std::vector<std::string> placed;
    for (int i = 0; i < n && places.size() < 3; ++i) {
        const auto name = grid_name(i);
        const auto [gx, gy] = grid_slot(i, n);
        const auto* o = find(name);
        if (std::abs(o->x - gx) > 1e-3 || std::abs(o->y - gy) > 1e-3) {
            places.push_back({{"type", "Place"}, {"args", {name, {gx, gy, 0.0}}}});
            placed.push_back(name);
        }
    }
    if (!places.empty()) {
        places.push_back({{"type", "ViewScene"}, {"args", {"Iso", 1.5}}});
        return format_response(fmt::format("Moving {} onto the grid.", fmt::join(placed, ", ")), places.dump());
    }
    return format_response("Every object sits on its grid slot.", R"([{"type": "Finish", "args": []}])");
}

std::string never_finish_reply(const std::vector<PromptObject>& scene)
{
    if (scene.empty())
        return format_response("The scene needs an object to adjust.",
                               R"([{"type": "Create", "args": ["cube", "simple cube"]}])");
    const auto& o = scene.front();
    const double step = o.x > 0.0 ? -0.25 : 0.25;
    const json actions = json::array({{{"type", "Translate"}, {"args", {o.name, "X", step}}}});
    return format_response(fmt::format("Still adjusting {}.", o.name), actions.dump());
}

std::string env_or(const char* name, std::string fallback)
{
    const char* v = std::getenv(name);
    return v && *v ? std::string(v) : std::move(fallback);
}

}  // namespace

std::string ChatMessage::text() const
{
    std::string out;
    for (const auto& p : parts)
        if (p.kind == ContentPart::Kind::Text)
            out += p.text;
    return out;
}

std::size_t ChatMessage::image_count() const
{
    std::size_t n = 0;
    for (const auto& p : parts)
        n += p.kind == ContentPart::Kind::Image;
    return n;
}

std::string format_response(const std::string& reason, const std::string& actions_json)
{
    return fmt::format("Reason: {}\n\nAction:\n```json\n{}\n```\n", reason, actions_json);
}

ReplayGateway::ReplayGateway(std::vector<std::string> responses, std::size_t cursor)
    : responses_(std::move(responses)), cursor_(cursor)
{
}

std::string ReplayGateway::complete(const std::vector<ChatMessage>&)
{
    if (cursor_ >= responses_.size())
        throw Error(ErrorCode::ReplayExhausted, fmt::format("all {} recorded responses consumed", responses_.size()));
    return responses_[cursor_++];
}

std::vector<std::string> load_replay_responses(const std::string& path)
{
    const auto text = read_file_text(path);
    std::vector<std::string> out;
    try {
        const auto first = text.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && text[first] == '[') {
            for (const auto& r : json::parse(text))
                out.push_back(r.get<std::string>());
            return out;
        }
        std::istringstream lines(text);
        std::string line;
        while (std::getline(lines, line))
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                out.push_back(json::parse(line).at("raw_response").get<std::string>());
    } catch (const json::exception& e) {
        throw Error(ErrorCode::Io, fmt::format("{}: {}", path, e.what()));
    }
    return out;
}

ScriptedGateway::ScriptedGateway(std::string policy) : policy_(std::move(policy))
{
    if (policy_.rfind("grid-layout", 0) == 0) {
        const auto rest = policy_.substr(11);
        if (!rest.empty()) {
            char* end = nullptr;
            const long n = rest[0] == ':' ? std::strtol(rest.c_str() + 1, &end, 10) : 0;
            if (rest[0] != ':' || *end != '\0' || n < 1 || n > 36)
                throw Error(ErrorCode::BadConfig, fmt::format("bad grid-layout count in '{}'", policy_));
            grid_count_ = static_cast<int>(n);
        }
        policy_ = "grid-layout";
    } else if (policy_ != "never-finish") {
        throw Error(ErrorCode::BadConfig, fmt::format("unknown scripted policy '{}'", policy_));
    }
}

std::string ScriptedGateway::complete(const std::vector<ChatMessage>& messages)
{
    const auto scene = scene_from_prompt(messages);
    if (policy_ == "grid-layout")
        return grid_layout_reply(scene, grid_count_);
    return never_finish_reply(scene);
}

RemoteGateway::RemoteGateway(RemoteGatewayOptions options) : opts_(std::move(options))
{
    if (opts_.endpoint.empty())
        throw Error(ErrorCode::BadConfig, "remote gateway needs SCENELOOM_VLM_ENDPOINT");
    std::tie(origin_, path_) = split_endpoint(opts_.endpoint);
    if (path_.empty())
        path_ = "/v1/chat/completions";
}

std::string RemoteGateway::request_body(const std::vector<ChatMessage>& messages) const
{
    json msgs = json::array();
    for (const auto& m : messages) {
        json content = json::array();
        for (const auto& p : m.parts) {
            if (p.kind == ContentPart::Kind::Text)
                content.push_back({{"type", "text"}, {"text", p.text}});
            else
                content.push_back({{"type", "image_url"},
                                   {"image_url", {{"url", "data:image/png;base64," + base64_encode(p.png)}}}});
        }
        msgs.push_back({{"role", m.role}, {"content", std::move(content)}});
    }
    return json{{"model", opts_.model}, {"messages", std::move(msgs)}}.dump();
}

std::string RemoteGateway::complete(const std::vector<ChatMessage>& messages)
{
    const auto body = request_body(messages);
    httplib::Headers headers;
    if (!opts_.token.empty())
        headers.emplace("Authorization", "Bearer " + opts_.token);

    std::string last_error;
    for (int attempt = 0; attempt <= opts_.max_retries; ++attempt) {
        if (attempt > 0)
            std::this_thread::sleep_for(opts_.backoff * (1 << (attempt - 1)));
        httplib::Client client(origin_);
        client.set_connection_timeout(opts_.timeout);
        client.set_read_timeout(opts_.timeout);
        client.set_write_timeout(opts_.timeout);
        const auto res = client.Post(path_, headers, body, "application/json");
        if (!res) {
            last_error = httplib::to_string(res.error());
            continue;
        }
        if (res->status == 401 || res->status == 403)
            throw Error(ErrorCode::AuthFailure, fmt::format("{}{}: HTTP {}", origin_, path_, res->status));
        if (res->status == 429 || res->status >= 500) {
            last_error = fmt::format("HTTP {}", res->status);
            continue;
        }
        if (res->status != 200)
            throw Error(ErrorCode::Unreachable, fmt::format("{}{}: HTTP {}", origin_, path_, res->status));
        try {
            const auto doc = json::parse(res->body);
            const auto& content = doc.at("choices").at(0).at("message").at("content");
            if (content.is_string())
                return content.get<std::string>();
            std::string out;
            for (const auto& part : content)
                if (part.value("type", "") == "text")
                    out += part.at("text").get<std::string>();
            return out;
        } catch (const json::exception& e) {
            throw Error(ErrorCode::Unreachable, fmt::format("unexpected response body: {}", e.what()));
        }
    }
    throw Error(ErrorCode::Unreachable,
                fmt::format("{}{}: gave up after {} attempts ({})", origin_, path_, opts_.max_retries + 1, last_error));
}

std::unique_ptr<VlmGateway> make_gateway(const std::string& spec, std::size_t replay_cursor)
{
    if (spec == "remote") {
        RemoteGatewayOptions o;
        o.endpoint = env_or("SCENELOOM_VLM_ENDPOINT", "");
        o.token = env_or("SCENELOOM_VLM_TOKEN", "");
        o.model = env_or("SCENELOOM_VLM_MODEL", o.model);
        return std::make_unique<RemoteGateway>(std::move(o));
    }
    if (spec.rfind("replay:", 0) == 0)
        return std::make_unique<ReplayGateway>(load_replay_responses(spec.substr(7)), replay_cursor);
    if (spec.rfind("scripted:", 0) == 0)
        return std::make_unique<ScriptedGateway>(spec.substr(9));
    throw Error(ErrorCode::BadConfig, fmt::format("unknown gateway '{}'; use remote, replay:<file> or scripted:<policy>", spec));
}

}  // namespace sceneloom
