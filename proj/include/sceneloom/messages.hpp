#pragma once

#include <string>
#include <string_view>

namespace sceneloom {

enum class MessageOrigin { Collision, BatchRejected, ProviderFailure, UserEdit, ParseFailure, Warning };

std::string_view to_string(MessageOrigin origin);
MessageOrigin parse_message_origin(std::string_view text);

/// Engine-to-agent notification, delivered in the prompt of the first step
/// after it was created.
struct SystemMessage {
    MessageOrigin origin = MessageOrigin::Warning;
    std::string text;
    int created_at_step = 0;

    friend bool operator==(const SystemMessage&, const SystemMessage&) = default;
};

}  // namespace sceneloom
