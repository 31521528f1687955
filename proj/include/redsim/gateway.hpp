#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>
#include <openssl/evp.h>

#include "redsim/common.hpp"
#include "redsim/prompts.hpp"

namespace redsim {

/// One text-generation call. The fingerprint is derived from exactly these
/// fields; unrelated configuration never changes it.
struct GenerationRequest {
    std::string template_id;
    std::string filled_prompt;
    double temperature = 0.2;
    int max_tokens = 512;
    std::optional<std::int64_t> seed;
};

namespace detail {

inline std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    EVP_DigestUpdate(ctx, data.data(), data.size());
    EVP_DigestFinal_ex(ctx, digest, &len);
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

} // namespace detail

inline std::string fingerprint(const GenerationRequest& req) {
    char num[64];
    std::snprintf(num, sizeof(num), "%.17g|%d|%lld", req.temperature, req.max_tokens,
                  req.seed ? static_cast<long long>(*req.seed) : -1ll);
    std::string canon = "gen\x1f" + req.template_id + "\x1f" + req.filled_prompt + "\x1f" + num;
    return detail::sha256_hex(canon);
}

inline std::string embed_fingerprint(std::string_view text) {
    return detail::sha256_hex("emb\x1f" + std::string(text));
}

// ---------------------------------------------------------------------------
// Replay store
// ---------------------------------------------------------------------------

/// Fingerprint-keyed store of recorded responses. File form is append-only
/// JSONL: {"fingerprint": ..., "kind": "text"|"embedding", ...}.
class ReplayStore {
public:
    void put_text(const std::string& fp, std::string text) { texts_[fp] = std::move(text); }
    void put_vector(const std::string& fp, std::vector<double> v) {
        vectors_[fp] = std::move(v);
    }

    std::optional<std::string> text(const std::string& fp) const {
        auto it = texts_.find(fp);
        if (it == texts_.end()) return std::nullopt;
        return it->second;
    }
    std::optional<std::vector<double>> vector(const std::string& fp) const {
        auto it = vectors_.find(fp);
        if (it == vectors_.end()) return std::nullopt;
        return it->second;
    }

    std::size_t size() const { return texts_.size() + vectors_.size(); }

    static ReplayStore load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("replay store: cannot open " + path);
        ReplayStore store;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (detail::trim(line).empty()) continue;
            nlohmann::json rec = nlohmann::json::parse(line, nullptr, false);
            if (rec.is_discarded() || !rec.is_object() || !rec.contains("fingerprint"))
                throw ConfigError("replay store: bad record at line " + std::to_string(line_no));
            std::string fp = rec["fingerprint"].get<std::string>();
            std::string kind = rec.value("kind", "text");
            if (kind == "embedding")
                store.put_vector(fp, rec["vector"].get<std::vector<double>>());
            else
                store.put_text(fp, rec["response"].get<std::string>());
        }
        return store;
    }

    static std::string text_record(const std::string& fp, const std::string& response) {
        nlohmann::ordered_json rec;
        rec["fingerprint"] = fp;
        rec["kind"] = "text";
        rec["response"] = response;
        return rec.dump();
    }
    static std::string vector_record(const std::string& fp, const std::vector<double>& v) {
        nlohmann::ordered_json rec;
        rec["fingerprint"] = fp;
        rec["kind"] = "embedding";
        rec["vector"] = v;
        return rec.dump();
    }

private:
    std::map<std::string, std::string> texts_;
    std::map<std::string, std::vector<double>> vectors_;
};

// ---------------------------------------------------------------------------
// Backends
// ---------------------------------------------------------------------------

/// Produces raw model text for a request. Implementations: HTTP client for
/// real runs, deterministic stubs in tests.
class TextBackend {
public:
    virtual ~TextBackend() = default;
    virtual std::string complete(const GenerationRequest& req) = 0;
};

enum class GatewayMode { Http, Replay, Record };
enum class EmbedderKind { Fallback, Http };

struct GatewayConfig {
    GatewayMode mode = GatewayMode::Replay;
    std::string endpoint = "http://localhost:8080";
    std::string completion_path = "/v1/chat/completions";
    std::string model = "local-model";
    std::string auth_token_env = "REDSIM_API_TOKEN";
    int timeout_seconds = 30;
    int transport_retries = 2;       // transport failures only; content errors
                                     // consume the generation retry budget K
    double default_temperature = 0.2;
    int default_max_tokens = 512;
    EmbedderKind embedder = EmbedderKind::Fallback;
    std::size_t embedding_dim = 256;
    std::string replay_store_path;   // empty = in-memory only
};

struct AuditEntry {
    enum class Kind { Generate, Embed };
    enum class Mode { Live, ReplayHit, RecordMiss, RecordHit, Fallback };
    Kind kind = Kind::Generate;
    Mode mode = Mode::Live;
    std::string template_id;
    std::string fp;
    std::string prompt; // filled prompt (generate) or input text (embed)
};

inline const char* to_string(AuditEntry::Mode m) {
    switch (m) {
        case AuditEntry::Mode::Live: return "live";
        case AuditEntry::Mode::ReplayHit: return "replay-hit";
        case AuditEntry::Mode::RecordMiss: return "record-miss";
        case AuditEntry::Mode::RecordHit: return "record-hit";
        case AuditEntry::Mode::Fallback: return "fallback";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Fallback embedder: hashed bag of tokens, L2-normalized. Offline and pure,
// so the whole test suite runs without a network.
// ---------------------------------------------------------------------------

inline std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (char ch : text) {
        unsigned char c = static_cast<unsigned char>(ch);
        if (std::isalnum(c)) {
            cur.push_back(static_cast<char>(std::tolower(c)));
        } else if (!cur.empty()) {
            tokens.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

inline std::vector<double> fallback_embedding(std::string_view text, std::size_t dim) {
    std::vector<double> v(dim, 0.0);
    for (const auto& tok : tokenize(text)) v[detail::fnv1a64(tok) % dim] += 1.0;
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm > 0.0)
        for (double& x : v) x /= norm;
    return v;
}

inline double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size())
        throw GatewayError("embedding dimension mismatch: " + std::to_string(a.size()) +
                           " vs " + std::to_string(b.size()));
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

// ---------------------------------------------------------------------------
// Response parsing
// ---------------------------------------------------------------------------

/// Extracts the `response` field from model output. Tolerates code fences and
/// surrounding prose. nullopt = parse failure (one consumed retry upstream).
inline std::optional<std::string> parse_json_response(std::string_view text) {
    auto extract = [](const nlohmann::json& j) -> std::optional<std::string> {
        if (j.is_object() && j.contains("response") && j["response"].is_string())
            return j["response"].get<std::string>();
        return std::nullopt;
    };
    std::string body = detail::trim(text);
    // Strip a ``` fence (with optional language tag) if the text is fenced.
    if (body.rfind("```", 0) == 0) {
        auto nl = body.find('\n');
        auto close = body.rfind("```");
        if (nl != std::string::npos && close != std::string::npos && close > nl)
            body = detail::trim(body.substr(nl + 1, close - nl - 1));
    }
    nlohmann::json whole = nlohmann::json::parse(body, nullptr, false);
    if (!whole.is_discarded())
        return extract(whole);
    // Prose around the object: try balanced {...} spans, outermost first.
    for (std::size_t start = body.find('{'); start != std::string::npos;
         start = body.find('{', start + 1)) {
        int depth = 0;
        bool in_str = false, esc = false;
        for (std::size_t i = start; i < body.size(); ++i) {
            char c = body[i];
            if (in_str) {
                if (esc) esc = false;
                else if (c == '\\') esc = true;
                else if (c == '"') in_str = false;
                continue;
            }
            if (c == '"') in_str = true;
            else if (c == '{') ++depth;
            else if (c == '}' && --depth == 0) {
                auto candidate =
                    nlohmann::json::parse(body.substr(start, i - start + 1), nullptr, false);
                if (!candidate.is_discarded()) {
                    if (auto r = extract(candidate)) return r;
                }
                break;
            }
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Gateway
// ---------------------------------------------------------------------------

/// Single entry point for all model traffic. Replay mode is strict: a miss is
/// an error, never a silent live call. Record mode reads through the store and
/// appends misses. Every call lands in the audit log.
class LlmGateway {
public:
    explicit LlmGateway(GatewayConfig config, std::shared_ptr<TextBackend> backend = nullptr,
                        ReplayStore store = {})
        : config_(std::move(config)), backend_(std::move(backend)), store_(std::move(store)) {
        if (config_.mode != GatewayMode::Replay && !backend_)
            throw ConfigError("gateway: http/record mode requires a backend");
    }

    const GatewayConfig& config() const { return config_; }

    std::string generate(const GenerationRequest& req) {
        if (req.filled_prompt.empty()) throw GatewayError("generate: empty prompt");
        const std::string fp = fingerprint(req);
        std::lock_guard<std::mutex> lock(mutex_);
        switch (config_.mode) {
            case GatewayMode::Replay: {
                auto hit = store_.text(fp);
                if (!hit)
                    throw GatewayError("replay miss for fingerprint " + fp + " (template " +
                                       req.template_id + ")");
                log(AuditEntry::Kind::Generate, AuditEntry::Mode::ReplayHit, req.template_id, fp,
                    req.filled_prompt);
                return *hit;
            }
            case GatewayMode::Record: {
                if (auto hit = store_.text(fp)) {
                    log(AuditEntry::Kind::Generate, AuditEntry::Mode::RecordHit, req.template_id,
                        fp, req.filled_prompt);
                    return *hit;
                }
                std::string response = call_backend(req, fp);
                store_.put_text(fp, response);
                persist(ReplayStore::text_record(fp, response));
                log(AuditEntry::Kind::Generate, AuditEntry::Mode::RecordMiss, req.template_id, fp,
                    req.filled_prompt);
                return response;
            }
            case GatewayMode::Http: {
                std::string response = call_backend(req, fp);
                log(AuditEntry::Kind::Generate, AuditEntry::Mode::Live, req.template_id, fp,
                    req.filled_prompt);
                return response;
            }
        }
        throw GatewayError("generate: invalid gateway mode");
    }

    std::vector<double> embed(const std::string& text) {
        if (text.empty()) throw GatewayError("embed: empty text");
        std::lock_guard<std::mutex> lock(mutex_);
        std::vector<double> v;
        if (config_.embedder == EmbedderKind::Fallback) {
            v = fallback_embedding(text, config_.embedding_dim);
            log(AuditEntry::Kind::Embed, AuditEntry::Mode::Fallback, "", embed_fingerprint(text),
                text);
        } else {
            const std::string fp = embed_fingerprint(text);
            if (auto hit = store_.vector(fp)) {
                v = *hit;
                log(AuditEntry::Kind::Embed,
                    config_.mode == GatewayMode::Record ? AuditEntry::Mode::RecordHit
                                                        : AuditEntry::Mode::ReplayHit,
                    "", fp, text);
            } else if (config_.mode == GatewayMode::Replay) {
                throw GatewayError("replay miss for embedding fingerprint " + fp);
            } else {
                throw GatewayError("http embedding backend not configured; use the fallback "
                                   "embedder or a recorded store");
            }
        }
        if (embedding_dim_seen_ == 0) embedding_dim_seen_ = v.size();
        if (v.size() != embedding_dim_seen_)
            throw GatewayError("embedding dimension changed mid-run: " +
                               std::to_string(v.size()) + " vs " +
                               std::to_string(embedding_dim_seen_));
        return v;
    }

    const std::vector<AuditEntry>& audit_log() const { return audit_; }
    void clear_audit_log() {
        std::lock_guard<std::mutex> lock(mutex_);
        audit_.clear();
    }

    std::size_t live_call_count() const {
        std::size_t n = 0;
        for (const auto& e : audit_)
            if (e.mode == AuditEntry::Mode::Live || e.mode == AuditEntry::Mode::RecordMiss) ++n;
        return n;
    }

    const ReplayStore& store() const { return store_; }

private:
    std::string call_backend(const GenerationRequest& req, const std::string& fp) {
        std::string last_error;
        for (int attempt = 0; attempt <= config_.transport_retries; ++attempt) {
            if (attempt > 0)
                std::this_thread::sleep_for(
                    std::chrono::milliseconds(100ll << (attempt - 1)));
            try {
                return backend_->complete(req);
            } catch (const std::exception& e) {
                last_error = e.what();
            }
        }
        throw GatewayError("transport failure after " +
                           std::to_string(config_.transport_retries + 1) + " attempts for " + fp +
                           ": " + last_error);
    }

    void log(AuditEntry::Kind kind, AuditEntry::Mode mode, std::string template_id,
             std::string fp, std::string prompt) {
        audit_.push_back(AuditEntry{kind, mode, std::move(template_id), std::move(fp),
                                    std::move(prompt)});
    }

    void persist(const std::string& record_line) {
        if (config_.replay_store_path.empty()) return;
        std::ofstream out(config_.replay_store_path, std::ios::app | std::ios::binary);
        if (!out) throw GatewayError("cannot append to replay store " + config_.replay_store_path);
        out << record_line << '\n';
    }

    GatewayConfig config_;
    std::shared_ptr<TextBackend> backend_;
    ReplayStore store_;
    std::vector<AuditEntry> audit_;
    std::size_t embedding_dim_seen_ = 0;
    std::mutex mutex_;
};

} // namespace redsim
