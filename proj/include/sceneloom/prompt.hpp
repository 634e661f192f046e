#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sceneloom/gateway.hpp"
#include "sceneloom/messages.hpp"

namespace sceneloom {

/// Fixed agent instructions sent as the system message on every turn.
extern const std::string_view kSystemPrompt;

/// Placeholders: {user_instruction}, {action_summary}, {scene_json},
/// {system_messages}.
extern const std::string_view kUserPromptTemplate;

/// One step of the action history shown to the model.
struct HistoryEntry {
    int step = 0;
    std::vector<std::string> actions;  // executed actions, call-style
    std::string rejection;             // non-empty for rejected or unparsable batches
};

/// "Step t: A(...), B(...)" per entry, with " [rejected: reason]" for
/// rejected steps; "none yet" when empty.
std::string summarize_actions(const std::vector<HistoryEntry>& history);

/// "- [origin] text" per message; "none" when empty.
std::string format_system_messages(const std::vector<SystemMessage>& messages);

std::string user_prompt_text(std::string_view instruction, std::string_view action_summary,
                             std::string_view scene_json, std::string_view system_messages);

/// System message plus one user message holding the image then the text.
std::vector<ChatMessage> assemble_prompt(std::string_view instruction, std::vector<std::uint8_t> png,
                                         const std::vector<HistoryEntry>& history, std::string_view scene_json,
                                         const std::vector<SystemMessage>& pending);

}  // namespace sceneloom
