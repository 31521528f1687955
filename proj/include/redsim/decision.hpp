#pragma once

#include <string>
#include <vector>

#include "redsim/dates.hpp"

namespace redsim {

enum class Action { Buy, Sell, Hold };

inline std::string_view to_string(Action a) {
    switch (a) {
        case Action::Buy: return "Buy";
        case Action::Sell: return "Sell";
        case Action::Hold: return "Hold";
    }
    return "?";
}

enum class RunSetting { Clean, Injected };

inline std::string_view to_string(RunSetting s) {
    return s == RunSetting::Clean ? "Clean" : "Injected";
}

/// One day's agent output.
struct Decision {
    Date date;
    Action action = Action::Hold;
    std::string rationale;
    std::vector<std::string> retrieved_ids;
    RunSetting setting = RunSetting::Clean;
    bool parse_failed = false; // Hold fallback after an unparseable response
};

} // namespace redsim
