#include "sceneloom/service.hpp"

#include <chrono>
#include <random>

#include <sys/socket.h>

#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <fmt/format.h>

#include "sceneloom/error.hpp"
#include "sceneloom/image.hpp"

namespace sceneloom {

namespace fs = std::filesystem;
namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;
using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

std::string new_session_id()
{
    static std::mutex m;
    static std::mt19937_64 rng{std::random_device{}()};
    std::lock_guard lock(m);
    return fmt::format("s{:012x}", rng() & 0xffffffffffffull);
}

int http_status(ErrorCode code)
{
    switch (code) {
    case ErrorCode::NotFound: return 404;
    case ErrorCode::BadConfig: return 400;
    case ErrorCode::SessionAborted: return 409;
    default: return 500;
    }
}

std::vector<std::string> split_path(std::string_view path)
{
    std::vector<std::string> parts;
    std::size_t i = 0;
    while (i < path.size()) {
        const auto j = path.find('/', i);
        const auto part = path.substr(i, j == std::string_view::npos ? std::string_view::npos : j - i);
        if (!part.empty())
            parts.emplace_back(part);
        if (j == std::string_view::npos)
            break;
        i = j + 1;
    }
    return parts;
}

std::string query_param(std::string_view query, std::string_view key)
{
    std::size_t i = 0;
    while (i <= query.size()) {
        const auto j = query.find('&', i);
        const auto pair = query.substr(i, j == std::string_view::npos ? std::string_view::npos : j - i);
        const auto eq = pair.find('=');
        if (pair.substr(0, eq) == key)
            return eq == std::string_view::npos ? std::string() : std::string(pair.substr(eq + 1));
        if (j == std::string_view::npos)
            break;
        i = j + 1;
    }
    return {};
}

using Response = http::response<http::string_body>;

Response make_response(http::status status, std::string body, std::string_view content_type)
{
    Response res{status, 11};
    res.set(http::field::content_type, boost::beast::string_view(content_type.data(), content_type.size()));
    res.set(http::field::access_control_allow_origin, "*");
    res.body() = std::move(body);
    return res;
}

Response json_response(int status, const ojson& body)
{
    return make_response(static_cast<http::status>(status), body.dump(), "application/json");
}

Response error_response(int status, std::string_view kind, std::string_view message)
{
    return json_response(status, ojson{{"error", kind}, {"message", message}});
}

}  // namespace

struct SessionService::Net {
    asio::io_context io;
    std::unique_ptr<tcp::acceptor> acceptor;
    std::thread accept_thread;
    std::mutex conn_mutex;
    std::vector<std::thread> connections;
    std::vector<std::shared_ptr<tcp::socket>> sockets;
};

SessionService::SessionService(fs::path data_dir, SessionConfig defaults)
    : data_dir_(std::move(data_dir)), defaults_(std::move(defaults)), net_(std::make_unique<Net>())
{
    fs::create_directories(data_dir_);
}

SessionService::~SessionService()
{
    stop();
}

void SessionService::load_existing()
{
    for (const auto& dirent : fs::directory_iterator(data_dir_)) {
        if (!dirent.is_directory() || !fs::exists(dirent.path() / "session.json"))
            continue;
        auto session = Session::open(dirent.path());
        const auto id = session->id();
        auto e = std::make_unique<Entry>();
        e->session = std::move(session);
        Entry& ref = *e;
        {
            std::lock_guard lock(sessions_mutex_);
            if (sessions_.count(id))
                continue;
            sessions_.emplace(id, std::move(e));
        }
        ref.session->resume();
        if (ref.session->status() == SessionStatus::Running)
            ensure_running(ref);
    }
}

SessionService::Entry& SessionService::entry(const std::string& id) const
{
    std::lock_guard lock(sessions_mutex_);
    const auto it = sessions_.find(id);
    if (it == sessions_.end())
        throw Error(ErrorCode::NotFound, fmt::format("no session '{}'", id));
    return *it->second;
}

void SessionService::ensure_running(Entry& e)
{
    std::lock_guard lock(e.runner_mutex);
    if (e.active || stopping_)
        return;
    if (e.runner.joinable())
        e.runner.join();
    e.active = true;
    e.runner = std::thread([this, &e] {
        for (;;) {
            while (!stopping_ && e.session->step()) {
            }
            std::lock_guard inner(e.runner_mutex);
            if (!stopping_ && e.session->status() == SessionStatus::Running)
                continue;
            e.active = false;
            return;
        }
    });
}

void SessionService::wait_idle(const std::string& id)
{
    Entry& e = entry(id);
    while (e.active)
        std::this_thread::sleep_for(std::chrono::milliseconds(5));
}

ojson SessionService::create_session(const std::string& instruction, const json& overrides)
{
    const SessionConfig config = SessionConfig::from_json(overrides, defaults_);
    // Fail fast on unusable gateway/provider settings instead of pausing later.
    make_gateway(config.gateway);
    make_providers(config.assets);

    std::string id;
    {
        std::lock_guard lock(sessions_mutex_);
        do {
            id = new_session_id();
        } while (sessions_.count(id) || fs::exists(data_dir_ / id));
    }
    auto e = std::make_unique<Entry>();
    e->session = Session::create(data_dir_ / id, id, instruction, config);
    Entry& ref = *e;
    {
        std::lock_guard lock(sessions_mutex_);
        sessions_.emplace(id, std::move(e));
    }
    ensure_running(ref);
    return ref.session->descriptor();
}

ojson SessionService::list_sessions() const
{
    std::lock_guard lock(sessions_mutex_);
    ojson out = ojson::array();
    for (const auto& [_, e] : sessions_)
        out.push_back(e->session->descriptor());
    return out;
}

ojson SessionService::get_state(const std::string& id) const
{
    return entry(id).session->snapshot();
}

ojson SessionService::post_message(const std::string& id, const std::string& text)
{
    Entry& e = entry(id);
    const DeliveryAck ack = e.session->inject_user_message(text);
    if (ack.status == SessionStatus::Running)
        ensure_running(e);
    return ojson{{"delivery_step", ack.delivery_step},
                 {"status", to_string(ack.status)},
                 {"budget", ack.budget},
                 {"reopened", ack.reopened}};
}

ojson SessionService::abort_session(const std::string& id)
{
    Entry& e = entry(id);
    e.session->abort();
    return e.session->descriptor();
}

ojson SessionService::resume_session(const std::string& id)
{
    Entry& e = entry(id);
    if (e.session->resume())
        ensure_running(e);
    return e.session->descriptor();
}

std::string SessionService::step_image(const std::string& id, int t) const
{
    const Entry& e = entry(id);
    if (t < 1 || t > e.session->step_counter())
        throw Error(ErrorCode::NotFound, fmt::format("session '{}' has no step {}", id, t));
    const auto path = e.session->dir() / fmt::format("steps/step_{}.png", t);
    if (!fs::exists(path))
        throw Error(ErrorCode::NotFound, fmt::format("missing image for step {}", t));
    const auto bytes = read_file_bytes(path.string());
    return {bytes.begin(), bytes.end()};
}

EventLog& SessionService::events(const std::string& id)
{
    return entry(id).session->events();
}

namespace {

Response route(SessionService& svc, const http::request<http::string_body>& req)
{
    const std::string target(req.target());
    const auto qpos = target.find('?');
    const auto parts = split_path(std::string_view(target).substr(0, qpos));
    const auto method = req.method();

    if (method == http::verb::options) {
        Response res = make_response(http::status::no_content, "", "text/plain");
        res.set(http::field::access_control_allow_methods, "GET, POST, OPTIONS");
        res.set(http::field::access_control_allow_headers, "Content-Type");
        return res;
    }

    try {
        if (parts.empty() || parts[0] != "sessions")
            return error_response(404, "NotFound", "unknown route");

        if (parts.size() == 1 && method == http::verb::get)
            return json_response(200, svc.list_sessions());
        if (parts.size() == 1 && method == http::verb::post) {
            const auto body = json::parse(req.body().empty() ? "{}" : req.body());
            if (!body.is_object())
                return error_response(400, "BadConfig", "body must be a JSON object");
            const auto instruction = body.value("instruction", std::string());
            return json_response(201, svc.create_session(instruction, body.value("config", json::object())));
        }

        const auto& id = parts[1];
        if (parts.size() == 2 && method == http::verb::get)
            return json_response(200, svc.get_state(id));
        if (parts.size() == 3 && method == http::verb::post && parts[2] == "messages") {
            const auto body = json::parse(req.body().empty() ? "{}" : req.body());
            return json_response(202, svc.post_message(id, body.value("text", std::string())));
        }
        if (parts.size() == 3 && method == http::verb::post && parts[2] == "abort")
            return json_response(200, svc.abort_session(id));
        if (parts.size() == 3 && method == http::verb::post && parts[2] == "resume")
            return json_response(200, svc.resume_session(id));
        if (parts.size() == 5 && method == http::verb::get && parts[2] == "steps" && parts[4] == "image") {
            int t = 0;
            try {
                t = std::stoi(parts[3]);
            } catch (const std::exception&) {
                return error_response(404, "NotFound", "bad step index");
            }
            return make_response(http::status::ok, svc.step_image(id, t), "image/png");
        }
        return error_response(404, "NotFound", "unknown route");
    } catch (const Error& e) {
        return error_response(http_status(e.code()), to_string(e.code()), e.what());
    } catch (const json::exception& e) {
        return error_response(400, "BadConfig", e.what());
    }
}

void stream_events(SessionService& svc, const std::atomic<bool>& stopping, tcp::socket socket,
                   const http::request<http::string_body>& req)
{
    const std::string target(req.target());
    const auto qpos = target.find('?');
    const auto parts = split_path(std::string_view(target).substr(0, qpos));
    websocket::stream<tcp::socket> ws(std::move(socket));
    beast::error_code ec;

    EventLog* log = nullptr;
    if (parts.size() == 3 && parts[0] == "sessions" && parts[2] == "events") {
        try {
            log = &svc.events(parts[1]);
        } catch (const Error&) {
        }
    }
    if (!log) {
        // Refuse the upgrade with a plain 404.
        auto res = error_response(404, "NotFound", "no such session");
        res.prepare_payload();
        http::write(ws.next_layer(), res, ec);
        return;
    }

    std::uint64_t next = 1;
    if (qpos != std::string::npos) {
        const auto from = query_param(std::string_view(target).substr(qpos + 1), "from");
        if (!from.empty())
            next = std::max<std::uint64_t>(1, std::strtoull(from.c_str(), nullptr, 10));
    }

    ws.accept(req, ec);
    if (ec)
        return;
    ws.text(true);
    while (!stopping) {
        for (const auto& e : log->wait_since(next, std::chrono::milliseconds(200))) {
            ws.write(asio::buffer(e.dump()), ec);
            if (ec)
                return;
            next = e.at("seq").get<std::uint64_t>() + 1;
        }
    }
    ws.close(websocket::close_code::going_away, ec);
}

void serve(SessionService& svc, const std::atomic<bool>& stopping, std::shared_ptr<tcp::socket> sock)
{
    beast::flat_buffer buffer;
    beast::error_code ec;
    while (!stopping) {
        http::request<http::string_body> req;
        http::read(*sock, buffer, req, ec);
        if (ec)
            break;
        if (websocket::is_upgrade(req)) {
            stream_events(svc, stopping, std::move(*sock), req);
            return;
        }
        Response res = route(svc, req);
        res.keep_alive(req.keep_alive());
        res.prepare_payload();
        http::write(*sock, res, ec);
        if (ec || !res.keep_alive())
            break;
    }
    sock->shutdown(tcp::socket::shutdown_both, ec);
}

}  // namespace

unsigned short SessionService::start(const std::string& host, unsigned short port)
{
    const auto address = asio::ip::make_address(host);
    net_->acceptor = std::make_unique<tcp::acceptor>(net_->io);
    tcp::endpoint ep{address, port};
    net_->acceptor->open(ep.protocol());
    net_->acceptor->set_option(asio::socket_base::reuse_address(true));
    net_->acceptor->bind(ep);
    net_->acceptor->listen();
    const auto bound = net_->acceptor->local_endpoint().port();

    net_->accept_thread = std::thread([this] {
        for (;;) {
            auto sock = std::make_shared<tcp::socket>(net_->io);
            beast::error_code ec;
            net_->acceptor->accept(*sock, ec);
            if (ec || stopping_)
                return;
            std::lock_guard lock(net_->conn_mutex);
            net_->sockets.push_back(sock);
            net_->connections.emplace_back([this, sock] { serve(*this, stopping_, sock); });
        }
    });
    return bound;
}

void SessionService::stop()
{
    if (stopping_.exchange(true))
        return;
    beast::error_code ec;
    if (net_->acceptor) {
        // shutdown() wakes a thread blocked in accept(); close() alone does not.
        ::shutdown(net_->acceptor->native_handle(), SHUT_RDWR);
        net_->acceptor->close(ec);
    }
    if (net_->accept_thread.joinable())
        net_->accept_thread.join();
    {
        std::lock_guard lock(net_->conn_mutex);
        for (auto& s : net_->sockets)
            s->shutdown(tcp::socket::shutdown_both, ec);
    }
    for (auto& t : net_->connections)
        if (t.joinable())
            t.join();

    std::vector<std::thread> runners;
    {
        std::lock_guard lock(sessions_mutex_);
        for (auto& [_, e] : sessions_) {
            std::lock_guard inner(e->runner_mutex);
            runners.push_back(std::move(e->runner));
        }
    }
    for (auto& t : runners)
        if (t.joinable())
            t.join();
}

}  // namespace sceneloom
