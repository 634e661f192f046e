// Command-line front end: generate, serve, render, replay.

#include <csignal>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "sceneloom/camera.hpp"
#include "sceneloom/error.hpp"
#include "sceneloom/image.hpp"
#include "sceneloom/render.hpp"
#include "sceneloom/scene_io.hpp"
#include "sceneloom/service.hpp"
#include "sceneloom/session.hpp"

namespace fs = std::filesystem;
using namespace sceneloom;

namespace {

struct GenerateArgs {
    std::string instruction;
    int max_steps = kDefaultMaxSteps;
    std::string vlm;
    std::string assets;
    bool no_visual_prompt = false;
    bool no_collision_check = false;
    std::string out = "sceneloom-out";
};

int run_generate(const GenerateArgs& a)
{
    SessionConfig config = SessionConfig::from_environment();
    config.max_steps = a.max_steps;
    if (!a.vlm.empty())
        config.gateway = a.vlm;
    if (!a.assets.empty())
        config.assets = a.assets;
    config.visual_prompting = !a.no_visual_prompt;
    config.collision_check = !a.no_collision_check;
    config = SessionConfig::from_json(config.to_json(), config);  // range checks

    const fs::path dir = fs::absolute(a.out);
    auto session = Session::create(dir, dir.filename().string(), a.instruction, config);
    while (session->step()) {
        fmt::print("step {}/{}\n", session->step_counter(), session->budget());
    }
    const auto status = session->status();
    const auto snap = session->snapshot();
    fmt::print("status: {}\n", to_string(status));
    if (snap.contains("status_reason") && !snap["status_reason"].get<std::string>().empty())
        fmt::print("reason: {}\n", snap["status_reason"].get<std::string>());
    fmt::print("scene: {}\n", (dir / "scene.json").string());
    fmt::print("trajectory: {}\n", (dir / "trajectory.jsonl").string());
    return status == SessionStatus::Finished || status == SessionStatus::Exhausted ? 0 : 1;
}

int run_serve(const std::string& addr, const std::string& data)
{
    const auto colon = addr.rfind(':');
    if (colon == std::string::npos)
        throw Error(ErrorCode::BadConfig, fmt::format("--addr must be host:port, got '{}'", addr));
    const std::string host = addr.substr(0, colon);
    const int port = std::stoi(addr.substr(colon + 1));
    if (port < 0 || port > 65535)
        throw Error(ErrorCode::BadConfig, fmt::format("bad port in '{}'", addr));

    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);  // inherited by worker threads

    SessionService service(data);
    service.load_existing();
    const auto bound = service.start(host, static_cast<unsigned short>(port));
    fmt::print("listening on {}:{} (data: {})\n", host, bound, fs::absolute(data).string());
    std::fflush(stdout);

    int sig = 0;
    sigwait(&signals, &sig);
    fmt::print("shutting down\n");
    service.stop();
    return 0;
}

int run_render(const std::string& scene_path, const std::string& view, double zoom, const std::string& out, int width,
               int height, bool no_visual_prompt)
{
    const Scene scene = load_scene(scene_path);
    const CameraState cam = view_scene(scene, parse_view(view), zoom);
    RenderOptions opts;
    opts.width = width;
    opts.height = height;
    opts.visual_prompting = !no_visual_prompt;
    write_file(out, encode_png(render(scene, cam, opts)));
    fmt::print("wrote {}\n", out);
    return 0;
}

int run_replay(const std::string& trajectory, bool verify)
{
    const ReplayReport r = replay_trajectory(trajectory);
    fmt::print("steps: {}\n", r.steps);
    fmt::print("hash chain: {}\n", r.chain_ok ? "ok" : "BROKEN");
    if (r.first_mismatch_step)
        fmt::print("first scene mismatch at step {}\n", r.first_mismatch_step);
    fmt::print("recorded final scene hash: {}\n", r.recorded_final_hash);
    fmt::print("replayed final scene hash: {}\n", r.final_hash);
    if (!r.detail.empty())
        fmt::print("detail: {}\n", r.detail);
    fmt::print("{}\n", r.ok() ? "replay OK" : "replay MISMATCH");
    return verify && !r.ok() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"sceneloom: agentic 3D scene generation"};
    app.require_subcommand(1);

    GenerateArgs gen;
    auto* generate = app.add_subcommand("generate", "run one session to completion");
    generate->add_option("instruction", gen.instruction, "scene description")->required();
    generate->add_option("--max-steps", gen.max_steps, "step budget")->check(CLI::Range(1, 10000));
    generate->add_option("--vlm", gen.vlm, "remote | replay:<file> | scripted:<policy>");
    generate->add_option("--assets", gen.assets, "procedural | remote | remote:<url>");
    generate->add_flag("--no-visual-prompt", gen.no_visual_prompt, "render without labels and axis HUD");
    generate->add_flag("--no-collision-check", gen.no_collision_check, "skip collision feedback");
    generate->add_option("--out", gen.out, "session directory");

    std::string addr = "127.0.0.1:8080", data = "sceneloom-data";
    auto* serve = app.add_subcommand("serve", "host sessions over HTTP and WebSocket");
    serve->add_option("--addr", addr, "host:port");
    serve->add_option("--data", data, "data directory");

    std::string scene_path, view = "Iso", out = "render.png";
    double zoom = 1.0;
    int width = 1024, height = 768;
    bool no_vp = false;
    auto* render_cmd = app.add_subcommand("render", "render a saved scene");
    render_cmd->add_option("scene", scene_path, "scene.json")->required();
    render_cmd->add_option("--view", view, "Front | Side | Top | Iso");
    render_cmd->add_option("--zoom", zoom, "zoom factor");
    render_cmd->add_option("--out", out, "output PNG");
    render_cmd->add_option("--width", width);
    render_cmd->add_option("--height", height);
    render_cmd->add_flag("--no-visual-prompt", no_vp);

    std::string trajectory;
    bool verify = false;
    auto* replay = app.add_subcommand("replay", "re-execute a trajectory and compare scene hashes");
    replay->add_option("trajectory", trajectory, "trajectory.jsonl")->required();
    replay->add_flag("--verify", verify, "exit non-zero on any mismatch");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*generate)
            return run_generate(gen);
        if (*serve)
            return run_serve(addr, data);
        if (*render_cmd)
            return run_render(scene_path, view, zoom, out, width, height, no_vp);
        return run_replay(trajectory, verify);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == ErrorCode::BadConfig ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
