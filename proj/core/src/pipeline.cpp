#include "polsar/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "polsar/parallel.hpp"

namespace polsar {
namespace {

constexpr float kNaN = std::numeric_limits<float>::quiet_NaN();

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

// Per-row tallies, merged in row order after the parallel pass.
struct RowCounts {
    std::size_t invalid = 0;
    std::size_t failed = 0;
    std::size_t flagged = 0;
};

}  // namespace

DecompositionMethod parse_decomposition_method(std::string_view name) {
    const std::string n = lower(name);
    if (n == "y4o") {
        return DecompositionMethod::Y4O;
    }
    if (n == "y4r") {
        return DecompositionMethod::Y4R;
    }
    if (n == "sdy4o" || n == "sd-y4o") {
        return DecompositionMethod::SdY4O;
    }
    throw Error(ErrorCode::InvalidParams, "unknown decomposition method '" + std::string(name) + "'");
}

std::string_view to_string(DecompositionMethod m) {
    switch (m) {
    case DecompositionMethod::Y4O: return "y4o";
    case DecompositionMethod::Y4R: return "y4r";
    case DecompositionMethod::SdY4O: return "sdy4o";
    }
    return "unknown";
}

OaMethod parse_oa_method(std::string_view name) {
    const std::string n = lower(name);
    if (n == "lee") {
        return OaMethod::Lee;
    }
    if (n == "sd") {
        return OaMethod::Sd;
    }
    throw Error(ErrorCode::InvalidParams, "unknown OA method '" + std::string(name) + "'");
}

std::string_view to_string(OaMethod m) {
    return m == OaMethod::Lee ? "lee" : "sd";
}

DecomposeResult decompose_raster(const T3Raster& input, const DecomposeOptions& opts) {
    opts.search.validate();
    if (!(opts.l_cap > 0.0)) {
        throw Error(ErrorCode::InvalidParams, "look cap must be > 0");
    }
    const bool sd = opts.method == DecompositionMethod::SdY4O;
    const OaSearch search(opts.search);

    DecomposeResult result;
    PowerRaster& out = result.raster;
    out = PowerRaster(input.rows, input.cols, std::string(to_string(opts.method)));
    if (sd) {
        out.theta0_deg.emplace(input.pixels(), 0.0F);
        out.delta_h_max.emplace(input.pixels(), 0.0F);
    }

    std::vector<RowCounts> counts(static_cast<std::size_t>(input.rows));
    parallel_for_rows(input.rows, opts.workers, [&](int row) {
        RowCounts& rc = counts[static_cast<std::size_t>(row)];
        for (int col = 0; col < input.cols; ++col) {
            const std::size_t i = static_cast<std::size_t>(row) * static_cast<std::size_t>(input.cols) +
                                  static_cast<std::size_t>(col);
            if (!input.valid(i)) {
                ++rc.invalid;
                out.set_invalid(i);
                continue;
            }
            const CoherencyMatrix t = input.matrix(i);
            try {
                switch (opts.method) {
                case DecompositionMethod::Y4O: out.set(i, y4o_decompose(t)); break;
                case DecompositionMethod::Y4R: out.set(i, y4r_decompose(t)); break;
                case DecompositionMethod::SdY4O: {
                    const SdY4oResult r = sdy4o_decompose(t, search, opts.l_cap);
                    out.set(i, r.powers);
                    (*out.theta0_deg)[i] = static_cast<float>(rad_to_deg(r.oa.theta0));
                    (*out.delta_h_max)[i] = static_cast<float>(r.params.delta_h_max);
                    rc.flagged += r.oa.flagged ? 1 : 0;
                    break;
                }
                }
            } catch (const Error& e) {
                // Structural failures are not per-pixel conditions.
                if (e.code() == ErrorCode::InvalidParams) {
                    throw;
                }
                ++rc.failed;
                out.set_invalid(i);
            }
        }
    });

    DecomposeSummary& s = result.summary;
    s.pixels = input.pixels();
    for (const auto& rc : counts) {
        s.invalid_input += rc.invalid;
        s.failed += rc.failed;
        s.flagged += rc.flagged;
    }
    if (s.invalid_input + s.failed < s.pixels) {
        s.negatives = negative_power_stats(out);
    }
    return result;
}

OaRasterResult oa_raster(const T3Raster& input, const OaOptions& opts) {
    opts.search.validate();
    const OaSearch search(opts.search);

    OaRasterResult result;
    AngleRaster& out = result.raster;
    out.rows = input.rows;
    out.cols = input.cols;
    out.method = std::string(to_string(opts.method));
    out.theta_deg.assign(input.pixels(), 0.0F);

    std::vector<RowCounts> counts(static_cast<std::size_t>(input.rows));
    parallel_for_rows(input.rows, opts.workers, [&](int row) {
        RowCounts& rc = counts[static_cast<std::size_t>(row)];
        for (int col = 0; col < input.cols; ++col) {
            const std::size_t i = static_cast<std::size_t>(row) * static_cast<std::size_t>(input.cols) +
                                  static_cast<std::size_t>(col);
            if (!input.valid(i)) {
                ++rc.invalid;
                out.theta_deg[i] = kNaN;
                continue;
            }
            const CoherencyMatrix t = input.matrix(i);
            try {
                double theta = 0.0;
                if (opts.method == OaMethod::Lee) {
                    theta = wrap_oa(lee_oa(t).radians).radians;
                } else {
                    const OaEstimate e = search.estimate(t);
                    theta = e.theta0;
                    rc.flagged += e.flagged ? 1 : 0;
                }
                out.theta_deg[i] = static_cast<float>(rad_to_deg(theta));
            } catch (const Error& e) {
                if (e.code() == ErrorCode::InvalidParams) {
                    throw;
                }
                ++rc.failed;
                out.theta_deg[i] = kNaN;
            }
        }
    });

    result.summary.pixels = input.pixels();
    for (const auto& rc : counts) {
        result.summary.invalid_input += rc.invalid;
        result.summary.failed += rc.failed;
        result.summary.flagged += rc.flagged;
    }
    return result;
}

NegativePowerStats negative_power_stats(const PowerRaster& raster) {
    NegativePowerStats stats;
    for (std::size_t i = 0; i < raster.pixels(); ++i) {
        if (!raster.valid(i)) {
            continue;
        }
        ++stats.pixels;
        const bool ps_neg = raster.ps[i] < 0.0F;
        const bool pd_neg = raster.pd[i] < 0.0F;
        stats.negative_ps += ps_neg ? 1 : 0;
        stats.negative_pd += pd_neg ? 1 : 0;
        stats.negative += (ps_neg || pd_neg) ? 1 : 0;
    }
    if (stats.pixels == 0) {
        throw Error(ErrorCode::EmptyRaster, "power raster has no valid pixel");
    }
    return stats;
}

Roi Roi::parse(std::string_view text) {
    int v[4] = {0, 0, 0, 0};
    const char* p = text.data();
    const char* end = text.data() + text.size();
    for (int k = 0; k < 4; ++k) {
        while (p < end && *p == ' ') {
            ++p;
        }
        const auto [next, ec] = std::from_chars(p, end, v[k]);
        if (ec != std::errc{}) {
            throw Error(ErrorCode::BadRoi, "ROI must be r0,c0,r1,c1, got '" + std::string(text) + "'");
        }
        p = next;
        while (p < end && *p == ' ') {
            ++p;
        }
        if (k < 3) {
            if (p == end || *p != ',') {
                throw Error(ErrorCode::BadRoi, "ROI must be r0,c0,r1,c1, got '" + std::string(text) + "'");
            }
            ++p;
        }
    }
    if (p != end) {
        throw Error(ErrorCode::BadRoi, "trailing characters in ROI '" + std::string(text) + "'");
    }
    return {v[0], v[1], v[2], v[3]};
}

std::string Roi::to_string() const {
    return std::to_string(r0) + "," + std::to_string(c0) + "," + std::to_string(r1) + "," + std::to_string(c1);
}

RoiStats roi_stats(const PowerRaster& raster, const Roi& roi) {
    if (roi.r0 < 0 || roi.c0 < 0 || roi.r1 > raster.rows || roi.c1 > raster.cols || roi.r0 >= roi.r1 ||
        roi.c0 >= roi.c1) {
        throw Error(ErrorCode::BadRoi, "ROI " + roi.to_string() + " is empty or outside the " +
                                           std::to_string(raster.rows) + "x" + std::to_string(raster.cols) +
                                           " raster");
    }
    RoiStats s;
    s.roi = roi;
    s.method = raster.method;
    double sum_ps = 0.0;
    double sum_pd = 0.0;
    double sum_pv = 0.0;
    double sum_pc = 0.0;
    std::size_t negative = 0;
    for (int r = roi.r0; r < roi.r1; ++r) {
        for (int c = roi.c0; c < roi.c1; ++c) {
            const std::size_t i =
                static_cast<std::size_t>(r) * static_cast<std::size_t>(raster.cols) + static_cast<std::size_t>(c);
            if (!raster.valid(i)) {
                continue;
            }
            ++s.pixels;
            sum_ps += raster.ps[i];
            sum_pd += raster.pd[i];
            sum_pv += raster.pv[i];
            sum_pc += raster.pc[i];
            negative += (raster.ps[i] < 0.0F || raster.pd[i] < 0.0F) ? 1 : 0;
        }
    }
    if (s.pixels == 0) {
        throw Error(ErrorCode::EmptyRaster, "ROI " + roi.to_string() + " has no valid pixel");
    }
    const double n = static_cast<double>(s.pixels);
    s.mean_ps = sum_ps / n;
    s.mean_pd = sum_pd / n;
    s.mean_pv = sum_pv / n;
    s.mean_pc = sum_pc / n;
    s.mean_total = s.mean_ps + s.mean_pd + s.mean_pv + s.mean_pc;
    if (s.mean_total > 0.0) {
        s.frac_ps = s.mean_ps / s.mean_total;
        s.frac_pd = s.mean_pd / s.mean_total;
        s.frac_pv = s.mean_pv / s.mean_total;
        s.frac_pc = s.mean_pc / s.mean_total;
    }
    s.negative_pct = 100.0 * static_cast<double>(negative) / n;
    return s;
}

void write_stats_csv(std::ostream& os, const std::vector<RoiStats>& rows) {
    os << "roi,method,pixels,mean_ps,mean_pd,mean_pv,mean_pc,mean_total,frac_ps,frac_pd,frac_pv,frac_pc,"
          "negative_pct\n";
    const auto flags = os.flags();
    const auto prec = os.precision();
    os << std::setprecision(10);
    for (const auto& s : rows) {
        os << '"' << s.roi.to_string() << "\"," << s.method << ',' << s.pixels << ',' << s.mean_ps << ','
           << s.mean_pd << ',' << s.mean_pv << ',' << s.mean_pc << ',' << s.mean_total << ',' << s.frac_ps << ','
           << s.frac_pd << ',' << s.frac_pv << ',' << s.frac_pc << ',' << s.negative_pct << '\n';
    }
    os.flags(flags);
    os.precision(prec);
}

void write_stats_json(std::ostream& os, const std::vector<RoiStats>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : rows) {
        arr.push_back({{"roi", {s.roi.r0, s.roi.c0, s.roi.r1, s.roi.c1}},
                       {"method", s.method},
                       {"pixels", s.pixels},
                       {"mean", {{"ps", s.mean_ps}, {"pd", s.mean_pd}, {"pv", s.mean_pv}, {"pc", s.mean_pc},
                                 {"total", s.mean_total}}},
                       {"fraction", {{"ps", s.frac_ps}, {"pd", s.frac_pd}, {"pv", s.frac_pv}, {"pc", s.frac_pc}}},
                       {"negative_pct", s.negative_pct}});
    }
    os << arr.dump(2) << '\n';
}

}  // namespace polsar
