#include "sceneloom/events.hpp"

#include <fstream>
#include <sstream>

#include "sceneloom/image.hpp"

namespace sceneloom {

EventLog::EventLog(std::string session_id, std::filesystem::path file)
    : session_id_(std::move(session_id)), file_(std::move(file))
{
    if (file_.empty() || !std::filesystem::exists(file_))
        return;
    std::istringstream lines(read_file_text(file_.string()));
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty())
            continue;
        try {
            events_.push_back(nlohmann::json::parse(line));
        } catch (const nlohmann::json::exception&) {
            break;  // torn final line after a crash
        }
    }
}

std::uint64_t EventLog::append(std::string_view kind, nlohmann::json payload)
{
    std::uint64_t seq;
    {
        std::lock_guard lock(mutex_);
        seq = events_.size() + 1;
        nlohmann::json event{{"seq", seq}, {"session", session_id_}, {"kind", kind}, {"payload", std::move(payload)}};
        if (!file_.empty()) {
            std::ofstream out(file_, std::ios::app | std::ios::binary);
            out << event.dump() << '\n';
        }
        events_.push_back(std::move(event));
    }
    cv_.notify_all();
    return seq;
}

std::vector<nlohmann::json> EventLog::since(std::uint64_t from) const
{
    std::lock_guard lock(mutex_);
    const std::size_t start = from == 0 ? 0 : std::min<std::size_t>(from - 1, events_.size());
    return {events_.begin() + static_cast<std::ptrdiff_t>(start), events_.end()};
}

std::vector<nlohmann::json> EventLog::wait_since(std::uint64_t from, std::chrono::milliseconds timeout) const
{
    std::unique_lock lock(mutex_);
    const std::size_t start = from == 0 ? 0 : from - 1;
    cv_.wait_for(lock, timeout, [&] { return events_.size() > start; });
    if (events_.size() <= start)
        return {};
    return {events_.begin() + static_cast<std::ptrdiff_t>(start), events_.end()};
}

std::uint64_t EventLog::last_seq() const
{
    std::lock_guard lock(mutex_);
    return events_.size();
}

}  // namespace sceneloom
