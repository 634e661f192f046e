#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "local_server.hpp"
#include "sceneloom/error.hpp"
#include "sceneloom/gateway.hpp"

using namespace sceneloom;
using nlohmann::json;

namespace {

ErrorCode code_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return ErrorCode::NotFound;
}

std::vector<ChatMessage> sample_prompt()
{
    return {{"system", {ContentPart::make_text("be helpful")}},
            {"user", {ContentPart::make_image({1, 2, 3, 250}), ContentPart::make_text("hello")}}};
}

json reply(const std::string& text)
{
    return {{"choices", json::array({{{"message", {{"role", "assistant"}, {"content", text}}}}})}};
}

}  // namespace

TEST_CASE("replay gateway returns recorded text verbatim, in order")
{
    const std::string r1 = "Reason: a\nAction:\n```json\n[{\"type\":\"Finish\",\"args\":[]}]\n```  \n\n";
    ReplayGateway g({r1, "second"});
    CHECK(g.complete({}) == r1);
    CHECK(g.cursor() == 1);
    CHECK(g.complete(sample_prompt()) == "second");
    CHECK(code_of([&] { g.complete({}); }) == ErrorCode::ReplayExhausted);

    ReplayGateway skipped({"a", "b"}, 1);
    CHECK(skipped.complete({}) == "b");
}

TEST_CASE("load_replay_responses reads arrays and trajectories")
{
    const auto dir = std::filesystem::temp_directory_path() / "sceneloom-replay-test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream(dir / "r.json") << json::array({"x", "y\nz"}).dump();
        std::ofstream t(dir / "t.jsonl");
        t << json{{"step", 1}, {"raw_response", "one"}}.dump() << "\n\n"
          << json{{"step", 2}, {"raw_response", "two"}}.dump() << "\n";
    }
    CHECK(load_replay_responses((dir / "r.json").string()) == std::vector<std::string>{"x", "y\nz"});
    CHECK(load_replay_responses((dir / "t.jsonl").string()) == std::vector<std::string>{"one", "two"});
    CHECK(code_of([&] { load_replay_responses((dir / "missing").string()); }) == ErrorCode::Io);
    std::filesystem::remove_all(dir);
}

TEST_CASE("remote gateway: wire format")
{
    LocalServer srv;
    json seen;
    std::string auth;
    srv.server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
        seen = json::parse(req.body);
        auth = req.get_header_value("Authorization");
        res.set_content(reply("Reason: ok").dump(), "application/json");
    });
    srv.start();

    RemoteGatewayOptions o;
    o.endpoint = srv.url();
    o.token = "tok";
    o.model = "m1";
    RemoteGateway g(o);
    CHECK(g.complete(sample_prompt()) == "Reason: ok");
    CHECK(auth == "Bearer tok");
    CHECK(seen.at("model") == "m1");
    REQUIRE(seen.at("messages").size() == 2);
    CHECK(seen["messages"][0]["role"] == "system");
    CHECK(seen["messages"][0]["content"][0] == json{{"type", "text"}, {"text", "be helpful"}});
    CHECK(seen["messages"][1]["content"][0]["type"] == "image_url");
    CHECK(seen["messages"][1]["content"][0]["image_url"]["url"] == "data:image/png;base64,AQID+g==");
    CHECK(seen["messages"][1]["content"][1]["text"] == "hello");
    CHECK(json::parse(g.request_body(sample_prompt())) == seen);
}

TEST_CASE("remote gateway: retries 5xx, fails fast on 401")
{
    LocalServer srv;
    std::atomic<int> calls{0};
    srv.server.Post("/flaky", [&](const httplib::Request&, httplib::Response& res) {
        if (++calls <= 2) {
            res.status = 500;
            return;
        }
        json parts = json::array({{{"type", "text"}, {"text", "Reason: "}}, {{"type", "text"}, {"text", "late"}}});
        res.set_content(json{{"choices", json::array({{{"message", {{"content", parts}}}}})}}.dump(), "application/json");
    });
    std::atomic<int> auth_calls{0};
    srv.server.Post("/auth", [&](const httplib::Request&, httplib::Response& res) {
        ++auth_calls;
        res.status = 401;
    });
    std::atomic<int> down_calls{0};
    srv.server.Post("/down", [&](const httplib::Request&, httplib::Response& res) {
        ++down_calls;
        res.status = 503;
    });
    srv.server.Post("/junk", [&](const httplib::Request&, httplib::Response& res) { res.set_content("{}", "application/json"); });
    srv.start();

    auto opts = [&](const std::string& path) {
        RemoteGatewayOptions o;
        o.endpoint = srv.url(path);
        o.backoff = std::chrono::milliseconds(5);
        o.timeout = std::chrono::seconds(5);
        return o;
    };
    CHECK(RemoteGateway(opts("/flaky")).complete(sample_prompt()) == "Reason: late");
    CHECK(calls == 3);

    CHECK(code_of([&] { RemoteGateway(opts("/auth")).complete(sample_prompt()); }) == ErrorCode::AuthFailure);
    CHECK(auth_calls == 1);

    CHECK(code_of([&] { RemoteGateway(opts("/down")).complete(sample_prompt()); }) == ErrorCode::Unreachable);
    CHECK(down_calls == 4);

    CHECK(code_of([&] { RemoteGateway(opts("/junk")).complete(sample_prompt()); }) == ErrorCode::Unreachable);

    auto gone = opts("");
    gone.endpoint = "http://127.0.0.1:1/v1/chat/completions";
    gone.max_retries = 1;
    CHECK(code_of([&] { RemoteGateway(gone).complete(sample_prompt()); }) == ErrorCode::Unreachable);
}

TEST_CASE("make_gateway")
{
    CHECK(dynamic_cast<ScriptedGateway*>(make_gateway("scripted:grid-layout:6").get()) != nullptr);
    CHECK(code_of([] { make_gateway("scripted:dance"); }) == ErrorCode::BadConfig);
    CHECK(code_of([] { make_gateway("scripted:grid-layout:0"); }) == ErrorCode::BadConfig);
    CHECK(code_of([] { make_gateway("carrier-pigeon"); }) == ErrorCode::BadConfig);
    CHECK(code_of([] { make_gateway("replay:/nonexistent/file.json"); }) == ErrorCode::Io);
}

TEST_CASE("ChatMessage helpers")
{
    const auto p = sample_prompt();
    CHECK(p[1].text() == "hello");
    CHECK(p[1].image_count() == 1);
    CHECK(p[0].image_count() == 0);
}
