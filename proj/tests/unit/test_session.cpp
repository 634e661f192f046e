#include <doctest.h>

#include <fstream>
#include <functional>
#include <set>

#include "sceneloom/error.hpp"
#include "sceneloom/hash.hpp"
#include "sceneloom/image.hpp"
#include "sceneloom/session.hpp"
#include "temp_dir.hpp"

using namespace sceneloom;
using nlohmann::json;

namespace {

class CallbackGateway final : public VlmGateway {
public:
    using Fn = std::function<std::string(const std::vector<ChatMessage>&)>;
    explicit CallbackGateway(Fn fn) : fn_(std::move(fn)) {}
    std::string complete(const std::vector<ChatMessage>& m) override { return fn_(m); }

private:
    Fn fn_;
};

SessionConfig small(int max_steps = kDefaultMaxSteps)
{
    SessionConfig c;
    c.max_steps = max_steps;
    c.image_width = 128;
    c.image_height = 96;
    return c;
}

std::string reply(const json& actions) { return format_response("r", actions.dump()); }

const std::string kFinish = reply(json::array({{{"type", "Finish"}, {"args", json::array()}}}));

std::unique_ptr<Session> replay_session(const std::filesystem::path& dir, std::vector<std::string> responses,
                                        SessionConfig config = small())
{
    auto s = Session::create(dir, "s1", "a desk and a chair", config);
    s->set_gateway(std::make_unique<ReplayGateway>(std::move(responses)));
    return s;
}

std::string section(const std::string& prompt, const std::string& head)
{
    const auto at = prompt.find(head);
    REQUIRE(at != std::string::npos);
    const auto start = prompt.find('\n', at) + 1;
    const auto end = prompt.find("\n#", start);
    std::string out = prompt.substr(start, end == std::string::npos ? std::string::npos : end - start);
    while (!out.empty() && out.back() == '\n')
        out.pop_back();
    return out;
}

std::string user_text(const Session& s)
{
    const auto p = s.last_prompt();
    REQUIRE(p.size() == 2);
    return p[1].text();
}

// Create two boxes, then put them on top of each other.
std::vector<std::string> overlapping_script()
{
    return {
        reply(json::array({{{"type", "Create"}, {"args", {"desk", "desk"}}}, {{"type", "Create"}, {"args", {"chair", "chair"}}}})),
        reply(json::array({{{"type", "Place"}, {"args", {"desk", json::array({0, 0, 0})}}},
                           {{"type", "Place"}, {"args", {"chair", json::array({0.1, 0, 0})}}}})),
        reply(json::array({{{"type", "Place"}, {"args", {"chair", json::array({3, 0, 0})}}}})),
        kFinish,
    };
}

}  // namespace

TEST_CASE("termination: never-finish runs out the default budget")
{
    TempDir d("sess");
    SessionConfig c = small();
    c.gateway = "scripted:never-finish";
    auto s = Session::create(d.path(), "s1", "anything", c);
    CHECK(s->budget() == 20);
    CHECK(s->run() == SessionStatus::Exhausted);
    CHECK(s->step_counter() == 20);
    CHECK_FALSE(s->step());
    CHECK(read_trajectory(d / "trajectory.jsonl").size() == 20);
    CHECK(std::filesystem::exists(d / "steps/step_20.png"));
    CHECK_FALSE(std::filesystem::exists(d / "steps/step_21.png"));
}

TEST_CASE("termination: Finish ends the run at T = 1")
{
    TempDir d("sess");
    auto s = replay_session(d.path(), {kFinish});
    CHECK(s->run() == SessionStatus::Finished);
    CHECK(s->step_counter() == 1);
    CHECK(s->descriptor().at("status") == "finished");
}

TEST_CASE("closed loop: collisions surface in the next prompt only")
{
    TempDir d("sess");
    auto s = replay_session(d.path(), overlapping_script());
    REQUIRE(s->step());
    CHECK(s->pending_messages().empty());  // stacked on creation
    REQUIRE(s->step());
    const auto pending = s->pending_messages();
    REQUIRE(pending.size() == 1);
    CHECK(pending[0].origin == MessageOrigin::Collision);
    CHECK(pending[0].text == collision_message({{"chair", "desk"}}));

    REQUIRE(s->step());
    const std::string msgs = section(user_text(*s), "# System Messages");
    CHECK(msgs == "- [collision] " + pending[0].text);
    CHECK(s->pending_messages().empty());

    REQUIRE(s->step());
    CHECK(section(user_text(*s), "# System Messages") == "none");
    CHECK(s->status() == SessionStatus::Finished);

    const auto records = read_trajectory(d / "trajectory.jsonl");
    CHECK(records[1].at("emitted_messages").size() == 1);
    CHECK(records[2].at("delivered_messages") == records[1].at("emitted_messages"));
}

TEST_CASE("collision checking can be disabled")
{
    TempDir d("sess");
    SessionConfig c = small();
    c.collision_check = false;
    auto s = replay_session(d.path(), overlapping_script(), c);
    s->run();
    for (const auto& r : read_trajectory(d / "trajectory.jsonl"))
        for (const auto& m : r.at("emitted_messages"))
            CHECK(m.at("origin") != "collision");
}

TEST_CASE("rejected and unparsable batches change nothing and are reported")
{
    TempDir d("sess");
    auto s = replay_session(d.path(),
                            {reply(json::array({{{"type", "Create"}, {"args", {"a", "x"}}},
                                                {{"type", "Place"}, {"args", {"a", json::array({0, 0, 0})}}}})),
                             "I am not sure what to do.", kFinish});
    REQUIRE(s->step());
    CHECK(s->scene().objects().empty());
    REQUIRE(s->pending_messages().size() == 1);
    CHECK(s->pending_messages()[0].origin == MessageOrigin::BatchRejected);
    REQUIRE(s->step());
    const std::string text = user_text(*s);
    CHECK(section(text, "# All Previous Actions").find("[rejected: ") != std::string::npos);
    CHECK(section(text, "# System Messages").rfind("- [batch_rejected] ", 0) == 0);
    REQUIRE(s->pending_messages().size() == 1);
    CHECK(s->pending_messages()[0].origin == MessageOrigin::ParseFailure);
    CHECK(s->run() == SessionStatus::Finished);
    CHECK(s->step_counter() == 3);
    const auto records = read_trajectory(d / "trajectory.jsonl");
    CHECK(records[1].at("parse_error").at("kind") == "NoActionBlock");
}

TEST_CASE("user messages: delivered exactly once, in the next prompt")
{
    TempDir d("sess");
    Session* session = nullptr;
    DeliveryAck ack;
    int calls = 0;
    auto s = Session::create(d.path(), "s1", "a room", small());
    session = s.get();
    s->set_gateway(std::make_unique<CallbackGateway>([&](const std::vector<ChatMessage>&) {
        if (++calls == 2)
            ack = session->inject_user_message("make it blue");  // arrives while step 2 is in flight
        return calls < 5 ? reply(json::array({{{"type", "RotateCamera"}, {"args", {10, 0}}}})) : kFinish;
    }));
    REQUIRE(s->step());
    REQUIRE(s->step());
    CHECK(ack.delivery_step == 3);
    CHECK(ack.status == SessionStatus::Running);
    CHECK_FALSE(ack.reopened);
    CHECK(s->run() == SessionStatus::Finished);

    const auto records = read_trajectory(d / "trajectory.jsonl");
    int seen = 0;
    for (const auto& r : records)
        for (const auto& m : r.at("delivered_messages"))
            if (m.at("text") == "make it blue") {
                ++seen;
                CHECK(r.at("t") == 3);
                CHECK(r.at("prompt").get<std::string>().find("- [user_edit] make it blue") != std::string::npos);
            }
    CHECK(seen == 1);
}

TEST_CASE("user messages: re-open finished sessions, refuse aborted ones")
{
    TempDir d("sess");
    auto s = replay_session(d.path(), {kFinish, kFinish});
    CHECK(s->run() == SessionStatus::Finished);
    const DeliveryAck ack = s->inject_user_message("add a lamp");
    CHECK(ack.reopened);
    CHECK(ack.budget == 1 + 10);
    CHECK(ack.delivery_step == 2);
    CHECK(s->status() == SessionStatus::Running);
    CHECK(s->run() == SessionStatus::Finished);
    CHECK(s->step_counter() == 2);
    CHECK(section(user_text(*s), "# System Messages") == "- [user_edit] add a lamp");

    CHECK_THROWS_AS(s->inject_user_message("   "), Error);
    s->abort();
    CHECK(s->status() == SessionStatus::Aborted);
    try {
        s->inject_user_message("too late");
        FAIL("expected SessionAborted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SessionAborted);
    }
    CHECK_FALSE(s->resume());
}

TEST_CASE("exhausted sessions re-open with half the budget")
{
    TempDir d("sess");
    SessionConfig c = small(4);
    c.gateway = "scripted:never-finish";
    auto s = Session::create(d.path(), "s1", "x", c);
    CHECK(s->run() == SessionStatus::Exhausted);
    const auto ack = s->inject_user_message("keep going");
    CHECK(ack.budget == 6);
    CHECK(s->run() == SessionStatus::Exhausted);
    CHECK(s->step_counter() == 6);
}

TEST_CASE("gateway failure pauses and keeps queued messages")
{
    TempDir d("sess");
    bool fail = true;
    auto s = Session::create(d.path(), "s1", "x", small());
    s->inject_user_message("hello");
    s->set_gateway(std::make_unique<CallbackGateway>([&](const std::vector<ChatMessage>&) -> std::string {
        if (fail)
            throw Error(ErrorCode::Unreachable, "down");
        return kFinish;
    }));
    CHECK_FALSE(s->step());
    CHECK(s->status() == SessionStatus::Paused);
    CHECK(s->step_counter() == 0);
    CHECK(s->pending_messages().size() == 1);
    CHECK_FALSE(std::filesystem::exists(d / "trajectory.jsonl"));
    fail = false;
    CHECK(s->resume());
    CHECK(s->run() == SessionStatus::Finished);
    CHECK(section(user_text(*s), "# System Messages") == "- [user_edit] hello");
}

TEST_CASE("trajectory: hash chain, replay and prompt reconstruction")
{
    TempDir d("sess");
    SessionConfig c = small();
    c.gateway = "scripted:grid-layout:5";
    auto s = Session::create(d.path(), "s1", "five boxes", c);
    CHECK(s->run() == SessionStatus::Finished);
    const auto traj = d / "trajectory.jsonl";
    CHECK(verify_hash_chain(traj) == 0);
    const auto report = replay_trajectory(traj);
    CHECK(report.ok());
    CHECK(report.steps == s->step_counter());

    const auto records = read_trajectory(traj);
    for (std::size_t k = 0; k < records.size(); ++k) {
        const std::vector<json> before(records.begin(), records.begin() + static_cast<long>(k));
        const std::string prompt = records[k].at("prompt");
        CHECK(section(prompt, "# All Previous Actions") == summarize_actions(history_from_trajectory(before)));
        CHECK(records[k].at("image_sha256") ==
              sha256_hex(read_file_bytes((d / records[k].at("image").get<std::string>()).string())));
        CHECK(records[k].at("system_prompt_sha256") == sha256_hex(kSystemPrompt));
    }

    // Tampering with a record breaks the chain from that record on.
    std::vector<std::string> lines;
    {
        std::ifstream in(traj);
        for (std::string l; std::getline(in, l);)
            lines.push_back(l);
    }
    auto rec = json::parse(lines[1]);
    rec["raw_response"] = "edited";
    lines[1] = rec.dump();
    {
        std::ofstream out(traj, std::ios::trunc);
        for (const auto& l : lines)
            out << l << '\n';
    }
    CHECK(verify_hash_chain(traj) == 2);
    CHECK_FALSE(replay_trajectory(traj).ok());
}

TEST_CASE("open: a reloaded session continues where it stopped")
{
    TempDir a("sess"), b("sess");
    SessionConfig c = small();
    c.gateway = "scripted:grid-layout:6";
    {
        auto s = Session::create(a.path(), "s1", "six boxes", c);
        s->step();
        s->step();
        s->inject_user_message("note");
    }
    auto reopened = Session::open(a.path());
    CHECK(reopened->step_counter() == 2);
    CHECK(reopened->pending_messages().size() == 1);
    CHECK(reopened->scene().objects().size() == 6);
    CHECK(reopened->run() == SessionStatus::Finished);

    auto straight = Session::create(b.path(), "s1", "six boxes", c);
    straight->step();
    straight->step();
    straight->inject_user_message("note");
    straight->run();
    CHECK(read_file_text((a / "trajectory.jsonl").string()) == read_file_text((b / "trajectory.jsonl").string()));
    CHECK(read_file_text((a / "scene.json").string()) == read_file_text((b / "scene.json").string()));

    CHECK_THROWS_AS(Session::open(a / "nowhere"), Error);
    CHECK_THROWS_AS(Session::create(a.path(), "s2", "again", c), Error);
    CHECK_THROWS_AS(Session::create(b / "x", "s3", "  ", c), Error);
}

TEST_CASE("events: gapless sequence covering each step")
{
    TempDir d("sess");
    auto s = replay_session(d.path(), overlapping_script());
    s->run();
    const auto events = s->events().since(0);
    REQUIRE_FALSE(events.empty());
    std::set<std::string> kinds;
    for (std::size_t i = 0; i < events.size(); ++i) {
        CHECK(events[i].at("seq") == i + 1);
        CHECK(events[i].at("session") == "s1");
        kinds.insert(events[i].at("kind").get<std::string>());
    }
    for (const char* k : {"step_started", "image_ready", "response_received", "batch_executed", "system_message",
                          "status_changed"})
        CHECK(kinds.count(k) == 1);
    CHECK(s->events().since(events.size()).size() == 1);
    CHECK(s->events().since(events.size() + 1).empty());
    CHECK(s->events().wait_since(events.size() + 1, std::chrono::milliseconds(10)).empty());

    // The JSONL mirror matches the in-memory log.
    std::ifstream in(d / "events.jsonl");
    std::size_t n = 0;
    for (std::string l; std::getline(in, l); ++n)
        CHECK(json::parse(l) == events[n]);
    CHECK(n == events.size());
}

TEST_CASE("config parsing")
{
    const auto c = SessionConfig::from_json(json{{"max_steps", 7}, {"visual_prompting", false}});
    CHECK(c.max_steps == 7);
    CHECK_FALSE(c.visual_prompting);
    CHECK(c.collision_check);
    CHECK(SessionConfig::from_json(json(nullptr)).max_steps == 20);
    CHECK(SessionConfig::from_json(c.to_json()).to_json() == c.to_json());
    CHECK_THROWS_AS(SessionConfig::from_json(json{{"max_steps", 0}}), Error);
    CHECK_THROWS_AS(SessionConfig::from_json(json{{"colour", 1}}), Error);
    CHECK_THROWS_AS(SessionConfig::from_json(json{{"max_steps", "many"}}), Error);
    CHECK_THROWS_AS(SessionConfig::from_json(json::array()), Error);
}
