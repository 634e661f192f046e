#include "sceneloom/messages.hpp"

#include <array>

#include <fmt/format.h>

#include "sceneloom/error.hpp"

namespace sceneloom {
namespace {

constexpr std::array<std::string_view, 6> kOriginNames{"collision",   "batch_rejected", "provider_failure",
                                                       "user_edit",   "parse_failure",  "warning"};

}  // namespace

std::string_view to_string(MessageOrigin origin)
{
    return kOriginNames[static_cast<std::size_t>(origin)];
}

MessageOrigin parse_message_origin(std::string_view text)
{
    for (std::size_t i = 0; i < kOriginNames.size(); ++i)
        if (kOriginNames[i] == text)
            return static_cast<MessageOrigin>(i);
    throw Error(ErrorCode::BadConfig, fmt::format("unknown message origin '{}'", text));
}

}  // namespace sceneloom
