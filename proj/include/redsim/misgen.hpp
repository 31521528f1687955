#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "redsim/common.hpp"
#include "redsim/corpus.hpp"
#include "redsim/gateway.hpp"
#include "redsim/prompts.hpp"
#include "redsim/sampler.hpp"
#include "redsim/strategy.hpp"

namespace redsim {

/// System-prompt fragment that perturbs the agent's reasoning frame. Stays
/// within the context region the attacker can write to.
struct BiasPrompt {
    BiasType bias = BiasType::Overconfidence;
    std::string text;
};

/// Pure template lookup; no model call.
inline BiasPrompt apply_bias(BiasType bias) {
    return BiasPrompt{bias, prompts::template_text(prompts::bias_template_id(bias))};
}

enum class CandidateStage { AfterMinor, AfterRewrite };

inline std::string_view to_string(CandidateStage s) {
    return s == CandidateStage::AfterMinor ? "AfterMinor" : "AfterRewrite";
}

/// One generation attempt. Accepted candidates satisfy their stage's
/// acceptance predicate: sim >= tau_sim and det <= tau_det at AfterMinor,
/// det <= tau_det at AfterRewrite. Scores are absent when the filtering
/// stage is ablated.
struct MisinfoCandidate {
    std::string parent;
    std::string text;
    StrategyTriple strategy;
    std::optional<double> sim_score;
    std::optional<double> det_score;
    CandidateStage stage = CandidateStage::AfterMinor;
    bool accepted = false;
};

struct MisGenConfig {
    double bias_probability = 0.5; // p
    double tau_sim = 0.80;
    double tau_det = 0.50;
    int max_retries = 3; // K
    std::uint64_t seed = 0;
    bool strict_rewrite_check = false; // re-check similarity after rewrite

    // Ablation toggles (wired by the harness).
    bool bias_enabled = true;
    bool minor_enabled = true;
    bool rewrite_enabled = true;
    bool filtering_enabled = true;

    void validate() const {
        if (bias_probability < 0.0 || bias_probability > 1.0)
            throw ConfigError("misgen: bias_probability must be in [0,1]");
        if (tau_sim < 0.0 || tau_sim > 1.0) throw ConfigError("misgen: tau_sim must be in [0,1]");
        if (tau_det < 0.0 || tau_det > 1.0) throw ConfigError("misgen: tau_det must be in [0,1]");
        if (max_retries < 0) throw ConfigError("misgen: max_retries must be >= 0");
        if (!minor_enabled && !rewrite_enabled)
            throw ConfigError("misgen: disabling both the minor and rewrite stages would "
                              "generate nothing");
    }
};

struct MisGenResult {
    std::optional<BiasPrompt> bias_prompt; // first successful bias draw of the round
    std::vector<MisinfoCandidate> accepted;
    std::vector<MisinfoCandidate> attempts; // every attempt, accepted or not
    std::vector<std::pair<std::string, std::string>> skipped; // (item id, reason)
    std::vector<std::string> warnings;
};

/// Misinformation generation pipeline: classification, minor perturbation,
/// style repair, and similarity/detectability filtering, all behind the
/// gateway.
class MisGen {
public:
    MisGen(LlmGateway& gateway, MisGenConfig config)
        : gateway_(gateway), config_(config) {
        config_.validate();
    }

    const MisGenConfig& config() const { return config_; }

    /// Multi-label minor-type classification. Unknown labels are dropped;
    /// a bare "No-Categorized" (or nothing usable) maps to {Other}.
    std::set<MinorType> classify_minor_types(const NewsItem& item,
                                             std::vector<std::string>* warnings = nullptr) {
        if (item.body.empty()) throw ConfigError("classify_minor_types: empty body");
        GenerationRequest req = make_request("category_classification",
                                             prompts::fill("category_classification", item.body));
        std::string raw;
        try {
            raw = gateway_.generate(req);
        } catch (const GatewayError& e) {
            if (warnings)
                warnings->push_back("classification failed for " + item.id + ": " + e.what() +
                                    "; falling back to {Other}");
            return {MinorType::Other};
        }
        std::string labels = parse_json_response(raw).value_or(raw);
        std::set<MinorType> out;
        bool saw_no_categorized = false;
        for (const auto& part : detail::split(labels, ',')) {
            std::string label = detail::trim(part);
            if (label.empty()) continue;
            if (detail::to_lower(label) == "no-categorized") {
                saw_no_categorized = true;
                continue;
            }
            if (auto m = label_to_minor(label)) out.insert(*m);
        }
        if (out.empty()) {
            if (!saw_no_categorized && warnings)
                warnings->push_back("classification for " + item.id +
                                    " produced no known labels; falling back to {Other}");
            return {MinorType::Other};
        }
        return out;
    }

    /// Minor perturbation via the per-type editor prompt. nullopt = the
    /// response had no extractable text (one consumed attempt upstream).
    std::optional<std::string> apply_minor(const NewsItem& item, MinorType minor,
                                           std::int64_t seed) {
        GenerationRequest req =
            make_request(prompts::minor_template_id(minor),
                         prompts::fill(prompts::minor_template_id(minor), item.body));
        req.seed = seed;
        auto text = parse_json_response(gateway_.generate(req));
        if (text && text->empty()) return std::nullopt;
        return text;
    }

    /// Style repair of a candidate that failed the detector constraint.
    std::optional<std::string> apply_rewrite(const std::string& text, RewriteStyle style,
                                             std::int64_t seed) {
        GenerationRequest req =
            make_request(prompts::rewrite_template_id(style),
                         prompts::fill(prompts::rewrite_template_id(style), text));
        req.seed = seed;
        auto out = parse_json_response(gateway_.generate(req));
        if (out && out->empty()) return std::nullopt;
        return out;
    }

    /// Cosine similarity of gateway embeddings, mapped from [-1,1] to [0,1].
    double similarity_score(const std::string& candidate, const std::string& original) {
        if (candidate.empty() || original.empty())
            throw ConfigError("similarity_score: empty input");
        double c = cosine_similarity(gateway_.embed(candidate), gateway_.embed(original));
        return std::clamp((c + 1.0) / 2.0, 0.0, 1.0);
    }

    /// Judge-model probability that a standard detector flags the text.
    /// Unjudgeable text scores 1.0 (treated as detectable).
    double detectability_score(const std::string& candidate,
                               std::vector<std::string>* warnings = nullptr) {
        if (candidate.empty()) throw ConfigError("detectability_score: empty input");
        GenerationRequest req = make_request("detectability_judge",
                                             prompts::fill("detectability_judge", candidate));
        std::string raw = gateway_.generate(req);
        std::string verdict = parse_json_response(raw).value_or(raw);
        verdict = detail::trim(verdict);
        char* end = nullptr;
        double value = std::strtod(verdict.c_str(), &end);
        if (end == verdict.c_str()) {
            if (warnings)
                warnings->push_back("non-numeric detectability verdict `" + verdict +
                                    "`; scoring 1.0");
            return 1.0;
        }
        return std::clamp(value, 0.0, 1.0);
    }

    /// One generation round over the corpus: up to K attempts per item, at
    /// most one accepted candidate per item. A hard gateway failure skips the
    /// item; the round itself never aborts.
    MisGenResult generate_misinfo(const std::vector<NewsItem>& corpus, double cumulative_return,
                                  StrategySampler& sampler) {
        MisGenResult result;
        for (const auto& item : corpus) {
            try {
                run_item(item, cumulative_return, sampler, result);
            } catch (const GatewayError& e) {
                result.skipped.emplace_back(item.id, e.what());
            }
        }
        return result;
    }

private:
    GenerationRequest make_request(std::string template_id, std::string filled) const {
        GenerationRequest req;
        req.template_id = std::move(template_id);
        req.filled_prompt = std::move(filled);
        req.temperature = gateway_.config().default_temperature;
        req.max_tokens = gateway_.config().default_max_tokens;
        return req;
    }

    static std::optional<MinorType> label_to_minor(const std::string& label) {
        std::string l = detail::to_lower(label);
        if (l == "causal") return MinorType::Causal;
        if (l == "flipping") return MinorType::Flipping;
        if (l == "sentiment") return MinorType::Sentiment;
        if (l == "numerical") return MinorType::Numerical;
        if (l == "temporal" || l == "temporalshift") return MinorType::TemporalShift;
        if (l == "concept" || l == "conceptshift") return MinorType::ConceptShift;
        if (l == "entity" || l == "entityshift") return MinorType::EntityShift;
        if (l == "other") return MinorType::Other;
        return std::nullopt;
    }

    std::int64_t attempt_seed(const std::string& item_id, int attempt, const char* stage) const {
        return static_cast<std::int64_t>(
            detail::fnv1a64(item_id + "\x1f" + stage + "\x1f" + std::to_string(attempt)) ^
            config_.seed);
    }

    void run_item(const NewsItem& item, double cumulative_return, StrategySampler& sampler,
                  MisGenResult& result) {
        std::optional<std::set<MinorType>> applicable; // classified once per round
        for (int attempt = 0; attempt < config_.max_retries; ++attempt) {
            std::optional<BiasType> bias;
            if (config_.bias_enabled && sampler.draw_bias_gate(config_.bias_probability)) {
                bias = sampler.select_bias(cumulative_return);
                if (!result.bias_prompt) result.bias_prompt = apply_bias(*bias);
            }

            MisinfoCandidate cand;
            cand.parent = item.id;
            cand.strategy.bias = bias;

            if (config_.minor_enabled) {
                if (!applicable) applicable = classify_minor_types(item, &result.warnings);
                cand.strategy.minor = sampler.select_minor(*applicable);
                auto minor_text =
                    apply_minor(item, cand.strategy.minor, attempt_seed(item.id, attempt, "minor"));
                if (!minor_text) {
                    cand.stage = CandidateStage::AfterMinor;
                    result.attempts.push_back(cand);
                    continue; // consumed one of the K attempts
                }
                cand.text = *minor_text;
                cand.stage = CandidateStage::AfterMinor;

                if (!config_.filtering_enabled) {
                    cand.accepted = true;
                } else {
                    cand.sim_score = similarity_score(cand.text, item.body);
                    cand.det_score = detectability_score(cand.text, &result.warnings);
                    if (*cand.sim_score >= config_.tau_sim && *cand.det_score <= config_.tau_det) {
                        cand.accepted = true;
                    } else if (config_.rewrite_enabled) {
                        if (!try_rewrite(item, attempt, sampler, cand, result)) {
                            result.attempts.push_back(cand);
                            continue;
                        }
                    }
                }
            } else {
                // Rewrite-only variant: the style stage acts on the original
                // text; Other marks the absent minor perturbation.
                cand.strategy.minor = MinorType::Other;
                cand.strategy.rewrite = sampler.select_rewrite();
                auto rewritten = apply_rewrite(item.body, *cand.strategy.rewrite,
                                               attempt_seed(item.id, attempt, "rewrite"));
                if (!rewritten) {
                    cand.stage = CandidateStage::AfterRewrite;
                    result.attempts.push_back(cand);
                    continue;
                }
                cand.text = *rewritten;
                cand.stage = CandidateStage::AfterRewrite;
                if (!config_.filtering_enabled) {
                    cand.accepted = true;
                } else {
                    cand.det_score = detectability_score(cand.text, &result.warnings);
                    cand.accepted = *cand.det_score <= config_.tau_det;
                }
            }

            result.attempts.push_back(cand);
            if (cand.accepted) {
                result.accepted.push_back(cand);
                return; // one accepted candidate per item per round
            }
        }
    }

    // Repair branch: restyle the failed minor candidate, re-judge
    // detectability. Returns false when the attempt stays rejected.
    bool try_rewrite(const NewsItem& item, int attempt, StrategySampler& sampler,
                     MisinfoCandidate& cand, MisGenResult& result) {
        cand.strategy.rewrite = sampler.select_rewrite();
        auto rewritten = apply_rewrite(cand.text, *cand.strategy.rewrite,
                                       attempt_seed(item.id, attempt, "rewrite"));
        if (!rewritten) return false;
        cand.text = *rewritten;
        cand.stage = CandidateStage::AfterRewrite;
        cand.det_score = detectability_score(cand.text, &result.warnings);
        if (*cand.det_score > config_.tau_det) return false;
        if (config_.strict_rewrite_check) {
            cand.sim_score = similarity_score(cand.text, item.body);
            if (*cand.sim_score < config_.tau_sim) return false;
        }
        cand.accepted = true;
        return true;
    }

    LlmGateway& gateway_;
    MisGenConfig config_;
};

} // namespace redsim
