#include "assetrank/generator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "assetrank/errors.hpp"

namespace assetrank {
namespace {

// Largest-remainder apportionment of n units over the given shares. Realized
// counts differ from share * n by less than 1, which is what keeps realized
// mixes inside the documented tolerances at any n.
std::vector<std::size_t> apportion(const std::vector<double>& shares, std::size_t n) {
    const std::size_t k = shares.size();
    std::vector<std::size_t> counts(k);
    std::vector<std::pair<double, std::size_t>> remainders(k);
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const double target = shares[i] * static_cast<double>(n);
        counts[i] = static_cast<std::size_t>(target);
        remainders[i] = {target - static_cast<double>(counts[i]), i};
        assigned += counts[i];
    }
    std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (std::size_t i = 0; assigned < n; ++i, ++assigned) {
        ++counts[remainders[i % k].second];
    }
    return counts;
}

void shuffle(std::vector<std::uint32_t>& v, SplitMix64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::swap(v[i - 1], v[rng.next_below(i)]);
    }
}

// Category indices laid out by quota, then shuffled: realized counts are the
// quotas exactly, assignment to assets is pseudo-random.
std::vector<std::uint32_t> quota_assignment(const std::vector<double>& shares, std::size_t n,
                                            SplitMix64& rng) {
    const auto counts = apportion(shares, n);
    std::vector<std::uint32_t> out;
    out.reserve(n);
    for (std::size_t i = 0; i < counts.size(); ++i) {
        out.insert(out.end(), counts[i], static_cast<std::uint32_t>(i));
    }
    shuffle(out, rng);
    return out;
}

std::vector<std::uint32_t> quota_flags(double rate, std::size_t n, SplitMix64& rng) {
    return quota_assignment({1.0 - rate, rate}, n, rng);
}

std::size_t categorical(const std::vector<double>& shares, SplitMix64& rng) {
    const double u = rng.next_double();
    double acc = 0.0;
    for (std::size_t i = 0; i < shares.size(); ++i) {
        acc += shares[i];
        if (u < acc) return i;
    }
    return shares.size() - 1;
}

// Geometric on {1, 2, ...} with success probability 1/mean, capped.
std::size_t geometric_count(double mean, SplitMix64& rng) {
    if (mean <= 1.0) return 1;
    const double p = 1.0 / mean;
    const double u = rng.next_double();
    const double k = 1.0 + std::floor(std::log1p(-u) / std::log1p(-p));
    return static_cast<std::size_t>(std::clamp(k, 1.0, 64.0));
}

void check_mix(const std::vector<MixEntry>& mix, const char* name) {
    if (mix.empty()) throw ConfigError(std::string(name) + " must be non-empty");
    double sum = 0.0;
    for (const auto& e : mix) {
        if (e.name.empty()) throw ConfigError(std::string(name) + ": empty category name");
        if (!(e.share > 0.0)) {
            throw ConfigError(std::string(name) + ": share for '" + e.name + "' must be > 0");
        }
        sum += e.share;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw ConfigError(std::string(name) + ": shares sum to " + std::to_string(sum) +
                          ", expected 1");
    }
}

void check_rate(double rate, const char* name) {
    if (!(rate >= 0.0 && rate <= 1.0)) {
        throw ConfigError(std::string(name) + " must be in [0,1]");
    }
}

std::string zero_padded_id(const char* prefix, std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%08zu", prefix, i);
    return buf;
}

// Asset type pools keyed by domain; anything unknown falls back to a generic
// pool. Types are open-world strings, so these are purely cosmetic.
const std::vector<std::string>& type_pool(const std::string& domain) {
    static const std::vector<std::pair<std::string, std::vector<std::string>>> kPools = {
        {"Compute & Containers", {"vm_instance", "container_cluster", "serverless_function", "container_service"}},
        {"Identity & Access", {"iam_role", "iam_user", "service_account", "directory_group"}},
        {"Storage & Data", {"object_bucket", "sql_database", "nosql_table", "data_warehouse"}},
        {"Network & Edge", {"virtual_network", "load_balancer", "cdn_distribution", "dns_zone"}},
        {"Source Control & CI", {"code_repository", "ci_pipeline", "artifact_registry"}},
        {"SaaS / Business Apps", {"saas_tenant", "crm_org", "ticketing_project"}},
        {"Other", {"unclassified"}},
    };
    static const std::vector<std::string> kFallback = {"generic_resource"};
    for (const auto& [name, pool] : kPools) {
        if (name == domain) return pool;
    }
    return kFallback;
}

const std::vector<std::string>& control_pool() {
    static const std::vector<std::string> kControls = [] {
        std::vector<std::string> v;
        v.reserve(40);
        for (std::size_t i = 0; i < 40; ++i) v.push_back(zero_padded_id("ctl-", i));
        return v;
    }();
    return kControls;
}

}  // namespace

std::uint64_t SplitMix64::next_below(std::uint64_t n) {
    // Rejection sampling over the top multiple of n keeps the draw unbiased.
    const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return x % n;
}

GeneratorConfig default_generator_config() {
    GeneratorConfig cfg;
    // Published corpus shape: per-vendor and per-domain resource counts out
    // of 131,625 total, finding rate 0.299, 8 confirmed-attack-path assets.
    const double total = 131625.0;
    cfg.vendor_mix = {
        {"AWS", 103474 / total},        {"Salesforce", 13491 / total},
        {"Azure", 6354 / total},        {"Azure AD", 2707 / total},
        {"GitHub", 2349 / total},       {"Cloudflare", 1198 / total},
        {"Okta", 613 / total},          {"GCP", 524 / total},
        {"JumpCloud", 400 / total},     {"Jira Cloud", 207 / total},
        {"Google Workspace", 92 / total}, {"Jamf", 82 / total},
        {"HiBob", 68 / total},          {"CrowdStrike", 57 / total},
        {"NetSuite", 9 / total},
    };
    // The published domain counts sum to 131,624; normalize by their own sum
    // so the shares sum to exactly 1.
    const double domain_total = 131624.0;
    cfg.domain_mix = {
        {"Compute & Containers", 62450 / domain_total}, {"Identity & Access", 36525 / domain_total},
        {"Storage & Data", 23272 / domain_total},       {"Network & Edge", 4587 / domain_total},
        {"Source Control & CI", 2424 / domain_total},   {"SaaS / Business Apps", 1591 / domain_total},
        {"Other", 775 / domain_total},
    };
    cfg.severity_mix = {
        {Severity::Info, 0.25}, {Severity::Low, 0.30},    {Severity::Medium, 0.25},
        {Severity::High, 0.15}, {Severity::Critical, 0.05},
    };
    return cfg;
}

Snapshot generate_snapshot(const GeneratorConfig& cfg) {
    check_mix(cfg.vendor_mix, "vendor_mix");
    check_mix(cfg.domain_mix, "domain_mix");
    if (cfg.severity_mix.empty()) throw ConfigError("severity_mix must be non-empty");
    {
        double sum = 0.0;
        for (const auto& [sev, share] : cfg.severity_mix) {
            if (!(share > 0.0)) throw ConfigError("severity_mix: shares must be > 0");
            sum += share;
        }
        if (std::abs(sum - 1.0) > 1e-9) {
            throw ConfigError("severity_mix: shares sum to " + std::to_string(sum) +
                              ", expected 1");
        }
    }
    check_rate(cfg.finding_rate, "finding_rate");
    check_rate(cfg.attack_vector_rate, "attack_vector_rate");
    check_rate(cfg.context_coverage, "context_coverage");
    if (!(cfg.mean_findings >= 1.0)) throw ConfigError("mean_findings must be >= 1");
    if (cfg.path_count_min < 1 || cfg.path_count_max < cfg.path_count_min) {
        throw ConfigError("path_count range must satisfy 1 <= min <= max");
    }

    const std::size_t n = cfg.asset_count;
    SplitMix64 rng(cfg.seed);

    std::vector<double> vendor_shares, domain_shares, severity_shares;
    for (const auto& e : cfg.vendor_mix) vendor_shares.push_back(e.share);
    for (const auto& e : cfg.domain_mix) domain_shares.push_back(e.share);
    for (const auto& [sev, share] : cfg.severity_mix) severity_shares.push_back(share);

    const auto vendor_of = quota_assignment(vendor_shares, n, rng);
    const auto domain_of = quota_assignment(domain_shares, n, rng);
    const auto has_findings = quota_flags(cfg.finding_rate, n, rng);
    const auto has_vectors = quota_flags(cfg.attack_vector_rate, n, rng);
    const auto has_context = quota_flags(cfg.context_coverage, n, rng);

    // Decreasing-weight distribution over the path-count support.
    std::vector<double> path_shares;
    {
        double w = 1.0, sum = 0.0;
        for (std::int64_t p = cfg.path_count_min; p <= cfg.path_count_max; ++p, w *= 0.5) {
            path_shares.push_back(w);
            sum += w;
        }
        for (double& s : path_shares) s /= sum;
    }

    Snapshot snap;
    snap.snapshot_id = "synthetic";
    snap.assets.reserve(n);

    const std::vector<std::string> kEnvTags = {"prod", "staging", "dev"};
    const std::vector<double> kEnvShares = {0.5, 0.2, 0.3};

    for (std::size_t i = 0; i < n; ++i) {
        Asset a;
        a.asset_id = zero_padded_id("asset-", i);
        a.vendor = cfg.vendor_mix[vendor_of[i]].name;
        const std::string& domain = cfg.domain_mix[domain_of[i]].name;
        const auto& types = type_pool(domain);
        a.asset_type = types[rng.next_below(types.size())];

        a.metadata_tags.emplace("domain", domain);
        a.metadata_tags.emplace("env", kEnvTags[categorical(kEnvShares, rng)]);

        if (has_findings[i]) {
            const std::size_t count = geometric_count(cfg.mean_findings, rng);
            a.findings.reserve(count);
            for (std::size_t j = 0; j < count; ++j) {
                Finding f;
                f.finding_id = a.asset_id + "-f" + std::to_string(j);
                f.control_id = control_pool()[rng.next_below(control_pool().size())];
                f.original_severity = cfg.severity_mix[categorical(severity_shares, rng)].first;
                a.findings.push_back(std::move(f));
            }
        }

        if (has_vectors[i]) {
            const std::int64_t paths =
                cfg.path_count_min + static_cast<std::int64_t>(categorical(path_shares, rng));
            a.attack_vectors.path_count = paths;
            for (std::int64_t j = 0; j < paths; ++j) {
                a.attack_vectors.pattern_ids.push_back(a.asset_id + "-p" + std::to_string(j));
            }
        }

        // Structural telemetry on every asset: exponential-ish raw magnitudes
        // normalized later against the peer group.
        a.structural.anomaly_raw = -8.0 * std::log1p(-rng.next_double());
        a.structural.blast_raw = std::floor(-24.0 * std::log1p(-rng.next_double()));

        if (has_context[i]) {
            for (const CriterionSpec& spec : criterion_catalog()) {
                const double pick = rng.next_double();
                if (pick < 0.25) continue;  // criterion unassessed
                CriterionAssessment ca;
                ca.criterion_id = std::string(spec.id);
                if (pick < 0.32) {
                    ca.label = std::string(kNotApplicable);
                } else {
                    const auto& label = spec.labels[rng.next_below(spec.labels.size())];
                    ca.label = std::string(label.label);
                    ca.score = label.score;
                }
                ca.confidence = 0.6 + 0.4 * rng.next_double();
                auto& list = spec.family == CriterionFamily::BusinessFunction ? a.bfc_criteria
                                                                              : a.dc_criteria;
                list.push_back(std::move(ca));
            }
        }

        snap.assets.push_back(std::move(a));
    }
    return snap;
}

}  // namespace assetrank
