#pragma once

#include <cstdlib>
#include <memory>
#include <string>

#include <httplib.h>
#include <json.hpp>

#include "redsim/gateway.hpp"

namespace redsim {

/// Chat-completions-style HTTP backend. Auth token comes from the environment
/// variable named in the config, never from the config file itself.
class HttpBackend final : public TextBackend {
public:
    explicit HttpBackend(GatewayConfig config) : config_(std::move(config)) {}

    std::string complete(const GenerationRequest& req) override {
        httplib::Client client(config_.endpoint);
        client.set_read_timeout(config_.timeout_seconds, 0);
        client.set_connection_timeout(config_.timeout_seconds, 0);

        nlohmann::json payload;
        payload["model"] = config_.model;
        payload["messages"] = nlohmann::json::array(
            {nlohmann::json{{"role", "user"}, {"content", req.filled_prompt}}});
        payload["temperature"] = req.temperature;
        payload["max_tokens"] = req.max_tokens;
        if (req.seed) payload["seed"] = *req.seed;

        httplib::Headers headers;
        if (const char* token = std::getenv(config_.auth_token_env.c_str()))
            headers.emplace("Authorization", std::string("Bearer ") + token);

        auto res = client.Post(config_.completion_path, headers, payload.dump(),
                               "application/json");
        if (!res)
            throw GatewayError("http backend: transport error " +
                               httplib::to_string(res.error()));
        if (res->status != 200)
            throw GatewayError("http backend: status " + std::to_string(res->status));

        nlohmann::json body = nlohmann::json::parse(res->body, nullptr, false);
        if (body.is_discarded())
            throw GatewayError("http backend: response body is not JSON");
        try {
            return body.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const std::exception&) {
            throw GatewayError("http backend: unexpected response shape");
        }
    }

private:
    GatewayConfig config_;
};

} // namespace redsim
