#include "assetrank/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

#include "assetrank/errors.hpp"

namespace assetrank {
namespace {

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

std::ofstream open_csv(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open file for writing: " + path);
    return out;
}

void finish_csv(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

void check_sweep_values(std::span<const double> values, const char* name, double lo, double hi) {
    if (values.empty()) throw ConfigError(std::string(name) + ": no sweep values given");
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = values[i];
        if (!(std::isfinite(v) && v >= lo && v <= hi)) {
            throw ConfigError(std::string(name) + ": value " + std::to_string(v) +
                              " outside valid range");
        }
        if (i > 0 && !(v > values[i - 1])) {
            throw ConfigError(std::string(name) + ": values must be strictly increasing");
        }
    }
}

Severity highest_effective_severity(const Asset& a, bool use_adjusted) {
    Severity top = Severity::Info;
    for (const Finding& f : a.findings) {
        top = std::max(top, f.effective_severity(use_adjusted));
    }
    return top;
}

}  // namespace

ScoreBin bin_of(double score) {
    if (!(score >= 0.0 && score <= 1.0)) {
        throw std::invalid_argument("bin_of: score " + std::to_string(score) +
                                    " outside [0,1]");
    }
    for (std::size_t b = 0; b + 1 < kBinCount; ++b) {
        if (score < kBinEdges[b + 1]) return static_cast<ScoreBin>(b);
    }
    return ScoreBin::Critical;  // top bin closes at 1.0
}

BinDistribution bin_distribution(std::span<const double> scores) {
    BinDistribution dist;
    dist.total = scores.size();
    for (double s : scores) {
        ++dist.counts[static_cast<std::size_t>(bin_of(s))];
    }
    if (dist.total > 0) {
        for (std::size_t b = 0; b < kBinCount; ++b) {
            dist.shares[b] = static_cast<double>(dist.counts[b]) / static_cast<double>(dist.total);
        }
    }
    return dist;
}

SeveritySweepResult severity_sweep(const Snapshot& snapshot,
                                   std::span<const SeverityWeightConfig> presets,
                                   const ScoringConfig& cfg) {
    if (presets.empty()) throw ConfigError("severity_sweep: no presets given");

    std::vector<const Asset*> subset;
    for (const Asset& a : snapshot.assets) {
        if (in_scope(a) && !a.findings.empty()) subset.push_back(&a);
    }

    SeveritySweepResult out;
    out.subset_size = subset.size();
    for (const SeverityWeightConfig& preset : presets) {
        ExposureConfig exp_cfg = cfg.exposure;
        exp_cfg.severity_weights = preset;

        SeveritySweepEntry entry;
        entry.preset = preset.name;

        std::map<std::pair<Severity, std::int64_t>, std::pair<double, std::size_t>> cells;
        std::vector<double> scores;
        scores.reserve(subset.size());
        for (const Asset* a : subset) {
            const double b_mis = misconfiguration_exposure(a->findings, exp_cfg);
            scores.push_back(b_mis);
            const auto key = std::make_pair(
                highest_effective_severity(*a, exp_cfg.use_adjusted_severity),
                static_cast<std::int64_t>(a->findings.size()));
            auto& [sum, count] = cells[key];
            sum += b_mis;
            ++count;
        }
        for (const auto& [key, cell] : cells) {
            entry.curve.push_back({key.first, key.second,
                                   cell.first / static_cast<double>(cell.second), cell.second});
        }
        entry.b_mis_bins = bin_distribution(scores);
        out.entries.push_back(std::move(entry));
    }
    return out;
}

std::vector<double> attack_vector_curve(double tau, int p_max) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(p_max));
    ExposureConfig cfg;
    cfg.tau = tau;
    for (int p = 1; p <= p_max; ++p) {
        out.push_back(attack_vector_exposure(p, cfg));
    }
    return out;
}

TauSweepResult tau_sweep(const Snapshot& snapshot, std::span<const double> taus,
                         const ScoringConfig& cfg, int p_max) {
    check_sweep_values(taus, "tau_sweep", 1e-12, std::numeric_limits<double>::max());
    if (p_max < 1) throw ConfigError("tau_sweep: p_max must be >= 1");

    std::vector<std::int64_t> path_counts;
    for (const Asset& a : snapshot.assets) {
        if (a.attack_vectors.path_count >= 1) path_counts.push_back(a.attack_vectors.path_count);
    }

    TauSweepResult out;
    out.subset_size = path_counts.size();
    out.p_max = p_max;
    for (double tau : taus) {
        ExposureConfig exp_cfg = cfg.exposure;
        exp_cfg.tau = tau;
        TauSweepPoint point;
        point.tau = tau;
        if (!path_counts.empty()) {
            double sum = 0.0;
            for (std::int64_t p : path_counts) sum += attack_vector_exposure(p, exp_cfg);
            point.mean_b_vec = sum / static_cast<double>(path_counts.size());
        }
        point.curve = attack_vector_curve(tau, p_max);
        out.points.push_back(std::move(point));
    }
    return out;
}

AlphaSweepResult alpha_sweep(const Snapshot& snapshot, std::span<const double> alphas,
                             const ScoringConfig& cfg) {
    check_sweep_values(alphas, "alpha_sweep", 0.0, 1.0);

    // One scoring pass gives the alpha-independent pieces: base exposure and
    // criticality index per in-scope asset with usable bfc/dc context.
    const auto breakdowns = score_snapshot(snapshot, cfg);
    std::vector<double> bases;
    std::vector<ContextIndex> indices;
    for (const ScoreBreakdown& b : breakdowns) {
        if (!b.context.business_function && !b.context.data_criticality) continue;
        bases.push_back(b.exposure.b_base);
        indices.push_back(b.index);
    }

    AlphaSweepResult out;
    out.subset_size = bases.size();
    out.base_bins = bin_distribution(bases);
    if (!indices.empty()) {
        double sum = 0.0;
        for (const ContextIndex& ci : indices) sum += ci.index;
        out.mean_index = sum / static_cast<double>(indices.size());
    }

    for (double alpha : alphas) {
        ModulationConfig mod{alpha};
        AlphaSweepPoint point;
        point.alpha = alpha;
        std::vector<double> finals;
        finals.reserve(bases.size());
        for (std::size_t i = 0; i < bases.size(); ++i) {
            finals.push_back(std::min(1.0, bases[i] * modulation_multiplier(indices[i], mod)));
        }
        if (!finals.empty()) {
            double sum = 0.0;
            for (double f : finals) sum += f;
            point.mean_final = sum / static_cast<double>(finals.size());
        }
        point.final_bins = bin_distribution(finals);
        out.points.push_back(std::move(point));
    }
    return out;
}

std::vector<BinDelta> adjustment_delta(const BinDistribution& before,
                                       const BinDistribution& after, bool filter_zero) {
    std::vector<BinDelta> out;
    for (std::size_t b = 0; b < kBinCount; ++b) {
        BinDelta d;
        d.bin = static_cast<ScoreBin>(b);
        d.before_share = before.shares[b];
        d.after_share = after.shares[b];
        d.delta = d.after_share - d.before_share;
        if (filter_zero && d.delta == 0.0) continue;
        out.push_back(d);
    }
    return out;
}

void export_csv(const BinDistribution& dist, const std::string& path) {
    auto out = open_csv(path);
    out << "bin,lower,upper,count,share\n";
    for (std::size_t b = 0; b < kBinCount; ++b) {
        out << to_string(static_cast<ScoreBin>(b)) << ',' << fmt6(kBinEdges[b]) << ','
            << fmt6(kBinEdges[b + 1]) << ',' << dist.counts[b] << ',' << fmt6(dist.shares[b])
            << '\n';
    }
    finish_csv(out, path);
}

void export_csv(const TauSweepResult& result, const std::string& path) {
    auto out = open_csv(path);
    out << "tau,mean_b_vec,subset_size\n";
    for (const TauSweepPoint& p : result.points) {
        out << fmt6(p.tau) << ',' << (p.mean_b_vec ? fmt6(*p.mean_b_vec) : "") << ','
            << result.subset_size << '\n';
    }
    finish_csv(out, path);
}

void export_tau_curves_csv(const TauSweepResult& result, const std::string& path) {
    auto out = open_csv(path);
    out << "tau,path_count,b_vec\n";
    for (const TauSweepPoint& p : result.points) {
        for (std::size_t i = 0; i < p.curve.size(); ++i) {
            out << fmt6(p.tau) << ',' << (i + 1) << ',' << fmt6(p.curve[i]) << '\n';
        }
    }
    finish_csv(out, path);
}

void export_csv(const AlphaSweepResult& result, const std::string& path) {
    auto out = open_csv(path);
    out << "alpha,mean_final,subset_size\n";
    for (const AlphaSweepPoint& p : result.points) {
        out << fmt6(p.alpha) << ',' << fmt6(p.mean_final) << ',' << result.subset_size << '\n';
    }
    finish_csv(out, path);
}

void export_alpha_bins_csv(const AlphaSweepResult& result, const std::string& path) {
    auto out = open_csv(path);
    out << "alpha,bin,base_share,final_share\n";
    for (const AlphaSweepPoint& p : result.points) {
        for (std::size_t b = 0; b < kBinCount; ++b) {
            out << fmt6(p.alpha) << ',' << to_string(static_cast<ScoreBin>(b)) << ','
                << fmt6(result.base_bins.shares[b]) << ',' << fmt6(p.final_bins.shares[b])
                << '\n';
        }
    }
    finish_csv(out, path);
}

void export_csv(const SeveritySweepEntry& entry, const std::string& path) {
    auto out = open_csv(path);
    out << "preset,severity_group,finding_count,mean_b_mis,assets\n";
    for (const SeverityCurvePoint& p : entry.curve) {
        out << entry.preset << ',' << to_string(p.group) << ',' << p.finding_count << ','
            << fmt6(p.mean_b_mis) << ',' << p.assets << '\n';
    }
    finish_csv(out, path);
}

void export_severity_bins_csv(const SeveritySweepResult& result, const std::string& path) {
    auto out = open_csv(path);
    out << "preset,bin,count,share\n";
    for (const SeveritySweepEntry& entry : result.entries) {
        for (std::size_t b = 0; b < kBinCount; ++b) {
            out << entry.preset << ',' << to_string(static_cast<ScoreBin>(b)) << ','
                << entry.b_mis_bins.counts[b] << ',' << fmt6(entry.b_mis_bins.shares[b]) << '\n';
        }
    }
    finish_csv(out, path);
}

void export_csv(std::span<const BinDelta> deltas, const std::string& path) {
    auto out = open_csv(path);
    out << "bin,before_share,after_share,delta\n";
    for (const BinDelta& d : deltas) {
        out << to_string(d.bin) << ',' << fmt6(d.before_share) << ',' << fmt6(d.after_share)
            << ',' << fmt6(d.delta) << '\n';
    }
    finish_csv(out, path);
}

}  // namespace assetrank
