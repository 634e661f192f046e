#include <doctest.h>

#include <httplib.h>

#include <future>
#include <set>

#include "sceneloom/error.hpp"
#include "sceneloom/image.hpp"
#include "sceneloom/service.hpp"
#include "temp_dir.hpp"
#include "ws_client.hpp"

using namespace sceneloom;
using nlohmann::json;

namespace {

SessionConfig small_defaults()
{
    SessionConfig c;
    c.image_width = 160;
    c.image_height = 120;
    return c;
}

struct Running {
    TempDir dir{"svc"};
    SessionService svc{dir.path(), small_defaults()};
    unsigned short port = svc.start("127.0.0.1", 0);
    httplib::Client http{"127.0.0.1", port};

    ~Running() { svc.stop(); }

    json post(const std::string& path, const json& body, int want_status)
    {
        const auto res = http.Post(path, body.dump(), "application/json");
        REQUIRE(res);
        CHECK(res->status == want_status);
        return json::parse(res->body);
    }
    json get(const std::string& path, int want_status = 200)
    {
        const auto res = http.Get(path);
        REQUIRE(res);
        CHECK(res->status == want_status);
        return json::parse(res->body);
    }
    std::string create(const json& config = json::object())
    {
        const auto d = post("/sessions", {{"instruction", "a small room"}, {"config", config}}, 201);
        return d.at("id");
    }
};

// Reads events until one satisfies `done`.
std::vector<json> read_until(WsClient& ws, const std::function<bool(const json&)>& done)
{
    std::vector<json> out;
    do
        out.push_back(ws.next());
    while (!done(out.back()));
    return out;
}

bool is_terminal(const json& e)
{
    if (e.at("kind") != "status_changed")
        return false;
    const auto s = e.at("payload").at("status");
    return s == "finished" || s == "exhausted" || s == "aborted";
}

}  // namespace

TEST_CASE("service: REST lifecycle")
{
    Running r;
    const auto id = r.create();
    r.svc.wait_idle(id);

    const auto state = r.get("/sessions/" + id);
    CHECK(state.at("id") == id);
    CHECK(state.at("status") == "finished");
    CHECK(state.at("max_steps") == 20);
    CHECK(state.at("scene").at("objects").size() == 4);
    const int steps = state.at("step_counter");
    CHECK(steps > 1);
    CHECK(state.at("latest_image") == "steps/step_" + std::to_string(steps) + ".png");

    const auto list = r.get("/sessions");
    REQUIRE(list.size() == 1);
    CHECK(list[0].at("id") == id);

    const auto img = r.http.Get("/sessions/" + id + "/steps/1/image");
    REQUIRE(img);
    CHECK(img->status == 200);
    CHECK(img->get_header_value("Content-Type") == "image/png");
    const auto* bytes = reinterpret_cast<const std::uint8_t*>(img->body.data());
    CHECK(decode_png({bytes, img->body.size()}).width() == 160);
    CHECK(img->get_header_value("Access-Control-Allow-Origin") == "*");

    // Re-open with a message: budget grows by half the step limit.
    const auto ack = r.post("/sessions/" + id + "/messages", {{"text", "add a rug"}}, 202);
    CHECK(ack.at("reopened") == true);
    CHECK(ack.at("budget") == steps + 10);
    CHECK(ack.at("delivery_step") == steps + 1);
    r.svc.wait_idle(id);
    CHECK(r.get("/sessions/" + id).at("step_counter") == steps + 1);

    CHECK(r.post("/sessions/" + id + "/abort", json::object(), 200).at("status") == "aborted");
    CHECK(r.post("/sessions/" + id + "/messages", {{"text", "more"}}, 409).at("error") == "SessionAborted");
}

TEST_CASE("service: errors and ids")
{
    Running r;
    CHECK(r.get("/sessions/nope", 404).at("error") == "NotFound");
    CHECK(r.get("/elsewhere", 404).at("error") == "NotFound");
    r.post("/sessions", {{"instruction", ""}}, 400);
    r.post("/sessions", {{"instruction", "x"}, {"config", {{"max_steps", -1}}}}, 400);
    r.post("/sessions", {{"instruction", "x"}, {"config", {{"gateway", "carrier-pigeon"}}}}, 400);
    const auto bad = r.http.Post("/sessions", "{not json", "application/json");
    REQUIRE(bad);
    CHECK(bad->status == 400);

    std::set<std::string> ids;
    for (int i = 0; i < 5; ++i)
        ids.insert(r.create({{"max_steps", 1}}));
    CHECK(ids.size() == 5);
    const auto id = *ids.begin();
    r.svc.wait_idle(id);
    r.get("/sessions/" + id + "/steps/0/image", 404);
    r.get("/sessions/" + id + "/steps/2/image", 404);
    r.get("/sessions/" + id + "/steps/x/image", 404);
    CHECK(r.get("/sessions/" + id).at("budget") == 1);

    const auto opts = r.http.Options("/sessions");
    REQUIRE(opts);
    CHECK(opts->status == 204);
}

TEST_CASE("service: event stream replays history and follows live")
{
    Running r;
    const auto id = r.create({{"gateway", "scripted:never-finish"}, {"max_steps", 6}});

    // Two live subscribers see the same gapless sequence.
    auto sub = [&] {
        WsClient ws(r.port, "/sessions/" + id + "/events?from=0");
        return read_until(ws, is_terminal);
    };
    auto a = std::async(std::launch::async, sub);
    auto b = std::async(std::launch::async, sub);
    const auto ea = a.get(), eb = b.get();
    CHECK(ea == eb);
    for (std::size_t i = 0; i < ea.size(); ++i)
        CHECK(ea[i].at("seq") == i + 1);
    CHECK(ea.front().at("kind") == "status_changed");
    CHECK(ea.back().at("payload").at("status") == "exhausted");
    r.svc.wait_idle(id);
    const std::size_t total = r.get("/sessions/" + id).at("last_event_seq");
    CHECK(total == ea.size());

    // Reconnect mid-way without gaps or repeats.
    std::vector<json> joined;
    {
        WsClient ws(r.port, "/sessions/" + id + "/events?from=1");
        for (int i = 0; i < 7; ++i)
            joined.push_back(ws.next());
    }
    {
        WsClient ws(r.port, "/sessions/" + id + "/events?from=" + std::to_string(joined.back().at("seq").get<int>() + 1));
        while (joined.size() < total)
            joined.push_back(ws.next());
    }
    CHECK(joined == ea);

    // A message re-opens the session; the subscriber sees the new events.
    WsClient ws(r.port, "/sessions/" + id + "/events?from=" + std::to_string(total + 1));
    r.post("/sessions/" + id + "/messages", {{"text", "one more"}}, 202);
    const auto more = read_until(ws, is_terminal);
    CHECK(more.front().at("seq") == total + 1);
    CHECK(more.front().at("payload").at("status") == "running");
    bool delivered = false;
    for (const auto& e : more)
        delivered = delivered || (e.at("kind") == "system_message" && e.at("payload").at("text") == "one more");
    CHECK(delivered);

    // Unknown sessions refuse the upgrade.
    CHECK_THROWS(WsClient(r.port, "/sessions/missing/events"));
}

TEST_CASE("service: restart resumes unfinished sessions")
{
    TempDir dir("svc");
    std::string id;
    {
        SessionService svc(dir.path(), small_defaults());
        id = svc.create_session("boxes", {{"gateway", "scripted:never-finish"}, {"max_steps", 60}}).at("id");
        svc.stop();
    }
    auto before = Session::open(dir / id);
    CHECK(before->status() == SessionStatus::Running);
    CHECK(before->step_counter() < 60);
    before.reset();

    SessionService svc(dir.path(), small_defaults());
    svc.load_existing();
    svc.wait_idle(id);
    const auto state = svc.get_state(id);
    CHECK(state.at("status") == "exhausted");
    CHECK(state.at("step_counter") == 60);
    CHECK(verify_hash_chain(dir / id / "trajectory.jsonl") == 0);
    CHECK(replay_trajectory(dir / id / "trajectory.jsonl").ok());
    svc.stop();

    CHECK_THROWS_AS(svc.get_state("nope"), Error);
}
